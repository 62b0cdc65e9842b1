#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <thread>

#include "luo/objectives.hpp"
#include "support/oracles.hpp"

using namespace luo;

TEST_CASE("LAP sums converted soil normalized by the total", "[objectives]") {
    const Instance inst(2, 2, {2, 2, 2, 2}, {1.0, 2.0, 3.0, 4.0}, 1);
    SECTION("no conversions") {
        CHECK(eval_lap(decode(Genotype(4, 0), inst), inst) == 0.0);
    }
    SECTION("cheapest cell only") {
        Genotype g{1, 0, 0, 0};
        CHECK(eval_lap(decode(g, inst), inst) == Catch::Approx(0.1));
    }
    SECTION("all conversions reach exactly one") {
        CHECK(eval_lap(decode(Genotype(4, 1), inst), inst) == 1.0);
    }
}

TEST_CASE("TEL hand values", "[objectives]") {
    SECTION("1x2 same category") {
        const Instance inst(1, 2, {2, 2}, {1.0, 1.0}, 1);
        const DecodedMap m = decode(Genotype(2, 0), inst);
        CHECK(eval_tel(m, inst, TelMode::literal) == 2.0);
        CHECK(eval_tel(m, inst, TelMode::boundary) == 6.0);  // perimeter only
    }
    SECTION("2x2 with four distinct categories") {
        const Instance inst(2, 2, {2, 3, 4, 5}, {1.0, 0, 0, 0}, 1);
        const DecodedMap m = decode(Genotype(1, 0), inst);
        CHECK(eval_tel(m, inst, TelMode::literal) == 0.0);
        CHECK(eval_tel(m, inst, TelMode::boundary) == 12.0);  // 4 differing + 8 perimeter
    }
    SECTION("2x2 all agricultural, one conversion") {
        const Instance inst(2, 2, {2, 2, 2, 2}, {1.0, 2.0, 3.0, 4.0}, 1);
        const DecodedMap m = decode(Genotype{1, 0, 0, 0}, inst);
        CHECK(eval_tel(m, inst, TelMode::literal) == 4.0);
        CHECK(eval_tel(m, inst, TelMode::boundary) == 10.0);
    }
}

TEST_CASE("boundary TEL identity against a brute-force pair scanner", "[objectives]") {
    RandomStream rng(17);
    const Instance inst = generate_instance(21, 10, 14);
    for (int trial = 0; trial < 1000; ++trial) {
        Genotype g(static_cast<std::size_t>(inst.gene_count()), 0);
        for (auto& bit : g) bit = rng.bernoulli(0.4);
        const DecodedMap m = decode(g, inst);
        const long same = oracles::same_category_pairs_scanner(m);
        const long total_pairs = 10L * 13 + 14L * 9;
        const long perimeter = 2L * (10 + 14);
        CHECK(eval_tel(m, inst, TelMode::literal) == static_cast<double>(2 * same));
        CHECK(eval_tel(m, inst, TelMode::boundary) ==
              static_cast<double>(total_pairs + perimeter - same));
    }
}

TEST_CASE("TEL is invariant under category relabeling", "[objectives]") {
    const Instance inst = generate_instance(31, 8, 8);
    RandomStream rng(5);
    Genotype g(static_cast<std::size_t>(inst.gene_count()), 0);
    for (auto& bit : g) bit = rng.bernoulli(0.3);
    DecodedMap m = decode(g, inst);
    const double literal = eval_tel(m, inst, TelMode::literal);
    const double boundary = eval_tel(m, inst, TelMode::boundary);
    std::map<std::uint8_t, std::uint8_t> relabel;
    for (auto c : m.cat)
        if (!relabel.count(c)) relabel[c] = static_cast<std::uint8_t>(40 + relabel.size() * 7);
    for (auto& c : m.cat) c = relabel[c];
    CHECK(eval_tel(m, inst, TelMode::literal) == literal);
    CHECK(eval_tel(m, inst, TelMode::boundary) == boundary);
}

TEST_CASE("an isolated conversion raises boundary TEL by four", "[objectives]") {
    // 5x5 all agricultural; converting the center adds 4 differing adjacencies
    const Instance inst = oracles::make_instance({"22222", "22222", "22222", "22222", "22222"}, 1);
    const DecodedMap before = decode(Genotype(25, 0), inst);
    Genotype g(25, 0);
    g[12] = 1;  // center (2,2)
    const DecodedMap after = decode(g, inst);
    CHECK(eval_tel(after, inst) == eval_tel(before, inst) + 4.0);
}

TEST_CASE("LAP lies in [0,1] for feasible genotypes", "[objectives]") {
    const Instance inst = generate_instance(3, 10, 10);
    RandomStream rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        Genotype g(static_cast<std::size_t>(inst.gene_count()), 0);
        for (int idx : rng.sample_without_replacement(inst.gene_count(), inst.budget()))
            g[static_cast<std::size_t>(idx)] = 1;
        const double lap = eval_lap(decode(g, inst), inst);
        CHECK(lap >= 0.0);
        CHECK(lap <= 1.0);
    }
}

TEST_CASE("evaluate accounts exactly one FFE per call", "[objectives]") {
    const Instance inst(2, 2, {2, 2, 2, 2}, {1.0, 2.0, 3.0, 4.0}, 1);
    FfeCounter ffe(3);
    const Genotype g{1, 0, 0, 0};

    const auto first = evaluate(g, inst, ffe);
    const auto second = evaluate(g, inst, ffe);
    REQUIRE(first.has_value());
    REQUIRE(second.has_value());
    CHECK(first->lap == second->lap);
    CHECK(first->tel == second->tel);
    CHECK(first->lap == Catch::Approx(0.1));
    CHECK(first->tel == 10.0);
    CHECK(ffe.used() == 2);

    CHECK(evaluate(g, inst, ffe).has_value());
    CHECK(ffe.used() == 3);
    // budget exhausted: signal, no evaluation, counter unchanged
    CHECK_FALSE(evaluate(g, inst, ffe).has_value());
    CHECK(ffe.used() == 3);
}

TEST_CASE("evaluate rejects infeasible genotypes", "[objectives]") {
    const Instance inst(2, 2, {2, 2, 2, 2}, {1.0, 2.0, 3.0, 4.0}, 1);
    FfeCounter ffe(10);
    CHECK_THROWS_AS(evaluate(Genotype{1, 1, 0, 0}, inst, ffe), std::invalid_argument);
    CHECK(ffe.used() == 0);
}

TEST_CASE("FFE counter supports concurrent increment-and-check", "[objectives]") {
    FfeCounter ffe(10000);
    std::vector<std::thread> pool;
    std::atomic<long> consumed{0};
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&]() {
            while (ffe.try_consume()) consumed.fetch_add(1);
        });
    }
    for (auto& t : pool) t.join();
    CHECK(consumed.load() == 10000);
    CHECK(ffe.used() == 10000);
    CHECK(ffe.remaining() == 0);
}

TEST_CASE("dominance relation", "[objectives]") {
    CHECK(dominates({1, 1}, {2, 2}));
    CHECK_FALSE(dominates({1, 2}, {2, 1}));
    CHECK_FALSE(dominates({2, 1}, {1, 2}));
    CHECK_FALSE(dominates({1, 1}, {1, 1}));
    CHECK(dominates({1, 2}, {1, 3}));
}
