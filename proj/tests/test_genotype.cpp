#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "luo/genotype.hpp"
#include "luo/random.hpp"
#include "support/oracles.hpp"

using namespace luo;

namespace {

Genotype random_genotype(RandomStream& rng, int n, int ones) {
    Genotype g(static_cast<std::size_t>(n), 0);
    for (int idx : rng.sample_without_replacement(n, ones)) g[static_cast<std::size_t>(idx)] = 1;
    return g;
}

std::set<int> mask_union(const MaskSet& masks) {
    std::set<int> all;
    for (const auto& m : masks) all.insert(m.begin(), m.end());
    return all;
}

}  // namespace

TEST_CASE("unitation", "[genotype]") {
    CHECK(unitation(Genotype(8, 0)) == 0);
    CHECK(unitation(Genotype(12, 1)) == 12);
    CHECK(unitation(Genotype{1, 0, 1, 1, 0}) == 3);
}

TEST_CASE("decode applies the mapping rule", "[genotype]") {
    const auto layout = oracles::hand_layout();
    const Instance& inst = layout.inst;

    SECTION("all-zeros genotype is the identity") {
        const DecodedMap m = decode(Genotype(9, 0), inst);
        CHECK(m.cat == inst.categories());
    }
    SECTION("three selected cells yield six urban cells before repair") {
        Genotype g(9, 0);
        g[0] = g[4] = g[7] = 1;  // u(x) = 3 < T = 4
        const DecodedMap m = decode(g, inst);
        int urban = 0;
        for (int i = 0; i < inst.size(); ++i) urban += m.at(i) == kUrban;
        CHECK(urban == 6);
    }
    SECTION("a single bit changes exactly one cell") {
        Genotype g(9, 0);
        g[5] = 1;
        const DecodedMap m = decode(g, inst);
        int differing = 0;
        for (int i = 0; i < inst.size(); ++i) differing += m.at(i) != inst.category(i);
        CHECK(differing == 1);
    }
    SECTION("length mismatch is a contract error") {
        CHECK_THROWS_AS(decode(Genotype(5, 0), inst), std::invalid_argument);
    }
    SECTION("decode round trip reproduces the genotype") {
        RandomStream rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            const Genotype g = random_genotype(rng, 9, static_cast<int>(rng.uniform_index(10)));
            const DecodedMap m = decode(g, inst);
            Genotype back(9, 0);
            for (int i = 0; i < inst.size(); ++i)
                if (inst.category(i) == kAgricultural && m.at(i) == kUrban)
                    back[static_cast<std::size_t>(inst.gene_at(i))] = 1;
            CHECK(back == g);
        }
    }
}

TEST_CASE("urban regions use von Neumann connectivity", "[genotype]") {
    SECTION("no urban cells") {
        DecodedMap m{2, 2, {2, 2, 2, 2}};
        CHECK(urban_regions(m).empty());
    }
    SECTION("diagonal cells are separate regions") {
        DecodedMap m{2, 2, {1, 2, 2, 1}};
        CHECK(urban_regions(m).size() == 2);
    }
    SECTION("converted cells merge with a fixed urban block") {
        const auto layout = oracles::hand_layout();
        Genotype g(9, 0);
        g[3] = 1;  // (1,0) touches the fixed block at (2,0)
        const auto regions = urban_regions(decode(g, layout.inst));
        REQUIRE(regions.size() == 1);
        CHECK(regions[0].size() == 4);
    }
}

TEST_CASE("DRC clustering on the hand layout matches the derived mask counts", "[genotype]") {
    const auto layout = oracles::hand_layout();
    const MaskSet drc = cluster_drc(layout.parent_a, layout.parent_b, layout.inst);
    REQUIRE(drc.size() == 3);
    CHECK(drc[0] == std::vector<int>{2});
    CHECK(drc[1] == std::vector<int>{3, 4});
    CHECK(drc[2] == std::vector<int>{6});

    const MaskSet idrc = cluster_idrc(layout.parent_a, layout.parent_b, layout.inst);
    REQUIRE(idrc.size() == 4);  // the second DRC mask divides in two
    CHECK(idrc[0] == std::vector<int>{2});
    CHECK(idrc[1] == std::vector<int>{3});
    CHECK(idrc[2] == std::vector<int>{4});
    CHECK(idrc[3] == std::vector<int>{6});
}

TEST_CASE("identical parents produce empty DRC and IDRC mask sets", "[genotype]") {
    const auto layout = oracles::hand_layout();
    CHECK(cluster_drc(layout.parent_a, layout.parent_a, layout.inst).empty());
    CHECK(cluster_idrc(layout.parent_b, layout.parent_b, layout.inst).empty());
}

TEST_CASE("an L-shaped differing block is one DRC mask", "[genotype]") {
    const Instance inst = oracles::make_instance({"2222", "2222", "2222", "2222"}, 3);
    Genotype a(16, 0), b(16, 0);
    // L shape at (0,0),(1,0),(1,1): genes 0, 4, 5
    a[0] = a[4] = b[5] = 1;
    const MaskSet drc = cluster_drc(a, b, inst);
    REQUIRE(drc.size() == 1);
    CHECK(drc[0] == std::vector<int>{0, 4, 5});
}

TEST_CASE("fixed urban bridging is off by default and honored when enabled", "[genotype]") {
    // two differing cells separated by a fixed urban cell
    const Instance inst = oracles::make_instance({"212", "222", "222"}, 2);
    // genes: (0,0)=g0 (0,2)=g1 (1,0)=g2 (1,1)=g3 (1,2)=g4 (2,*)=g5..g7
    Genotype a(8, 0), b(8, 0);
    a[0] = 1;  // (0,0)
    b[1] = 1;  // (0,2)
    CHECK(cluster_drc(a, b, inst).size() == 2);
    const MaskSet bridged = cluster_drc(a, b, inst, true);
    REQUIRE(bridged.size() == 1);
    CHECK(bridged[0] == std::vector<int>{0, 1});
    // IDRC splits the bridged mask back apart (different directions)
    CHECK(cluster_idrc(a, b, inst, true).size() == 2);
}

TEST_CASE("SRC clustering groups urban regions and merges overlaps", "[genotype]") {
    const auto layout = oracles::hand_layout();
    SECTION("hand layout: two parent regions sharing cells merge into one mask") {
        const MaskSet src = cluster_src(layout.parent_a, layout.parent_b, layout.inst);
        REQUIRE(src.size() == 3);
        CHECK(src[0] == std::vector<int>{2});
        CHECK(src[1] == std::vector<int>{3, 6, 7, 8});
        CHECK(src[2] == std::vector<int>{4});
    }
    SECTION("equal parents: masks are that parent's regions restricted to positions") {
        const MaskSet src = cluster_src(layout.parent_a, layout.parent_a, layout.inst);
        REQUIRE(src.size() == 2);
        CHECK(src[0] == std::vector<int>{2});
        CHECK(src[1] == std::vector<int>{3, 7, 8});
    }
    SECTION("two converted blobs joined by fixed urban form one mask") {
        const Instance inst = oracles::make_instance({"212", "222", "222"}, 2);
        Genotype a(8, 0), b(8, 0);
        a[0] = a[1] = 1;  // (0,0) and (0,2), bridged by the fixed urban (0,1)
        const MaskSet src = cluster_src(a, b, inst);
        REQUIRE(src.size() == 1);
        CHECK(src[0] == std::vector<int>{0, 1});
    }
}

TEST_CASE("clustering properties on random parent pairs", "[genotype]") {
    const Instance inst = generate_instance(5, 12, 12);
    RandomStream rng(99);
    const int n = inst.gene_count();
    for (int trial = 0; trial < 200; ++trial) {
        const Genotype a = random_genotype(rng, n, inst.budget());
        const Genotype b = random_genotype(rng, n, inst.budget());

        std::set<int> differing;
        for (int i = 0; i < n; ++i)
            if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
                differing.insert(i);

        const MaskSet drc = cluster_drc(a, b, inst);
        // partition of the differing set: disjoint, union exact
        std::size_t total = 0;
        for (const auto& m : drc) total += m.size();
        CHECK(total == differing.size());
        CHECK(mask_union(drc) == differing);
        // matches the union-find oracle
        CHECK(oracles::canonical(drc) == oracles::drc_masks_oracle(a, b, inst));
        // symmetric in the parents
        CHECK(oracles::canonical(drc) == oracles::canonical(cluster_drc(b, a, inst)));

        const MaskSet idrc = cluster_idrc(a, b, inst);
        CHECK(mask_union(idrc) == differing);
        std::size_t idrc_total = 0;
        for (const auto& m : idrc) idrc_total += m.size();
        CHECK(idrc_total == differing.size());
        // refinement: every IDRC mask lies inside exactly one DRC mask
        for (const auto& sub : idrc) {
            int containers = 0;
            for (const auto& coarse : drc) {
                if (std::includes(coarse.begin(), coarse.end(), sub.begin(), sub.end()))
                    ++containers;
            }
            CHECK(containers == 1);
        }
        CHECK(oracles::canonical(idrc) == oracles::canonical(cluster_idrc(b, a, inst)));

        const MaskSet src = cluster_src(a, b, inst);
        std::set<int> seen;
        for (const auto& m : src)
            for (int p : m) CHECK(seen.insert(p).second);  // pairwise disjoint
        CHECK(oracles::canonical(src) == oracles::src_masks_oracle(a, b, inst));
    }
}

TEST_CASE("genotype string serialization", "[genotype]") {
    const Genotype g{1, 0, 0, 1, 1};
    CHECK(genotype_to_string(g) == "10011");
    CHECK(genotype_from_string("10011") == g);
    CHECK_THROWS_AS(genotype_from_string("10x"), ParseError);
}
