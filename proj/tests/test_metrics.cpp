#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "luo/metrics.hpp"
#include "support/oracles.hpp"

using namespace luo;

TEST_CASE("pseudo-optimal front pools and filters", "[metrics]") {
    SECTION("a single front is idempotent") {
        const Front f{{1, 3}, {2, 2}};
        CHECK(pseudo_optimal_front({f}) == f);
    }
    SECTION("incomparable points are both kept") {
        CHECK(pseudo_optimal_front({{{1, 3}}, {{2, 2}}}) == Front{{1, 3}, {2, 2}});
    }
    SECTION("dominated points are dropped") {
        CHECK(pseudo_optimal_front({{{1, 3}}, {{1, 4}}}) == Front{{1, 3}});
    }
    SECTION("duplicates are removed") {
        CHECK(pseudo_optimal_front({{{1, 3}, {1, 3}}, {{1, 3}}}) == Front{{1, 3}});
    }
    SECTION("empty input is a contract error") {
        CHECK_THROWS_AS(pseudo_optimal_front({}), std::invalid_argument);
        CHECK_THROWS_AS(pseudo_optimal_front({Front{}, Front{}}), std::invalid_argument);
    }
    SECTION("output never contains a dominated pair") {
        RandomStream rng(1);
        for (int t = 0; t < 50; ++t) {
            std::vector<Front> inputs;
            for (int f = 0; f < 4; ++f) {
                Front raw;
                for (int i = 0; i < 10; ++i)
                    raw.push_back({rng.uniform_real() * 5, rng.uniform_real() * 5});
                inputs.push_back(std::move(raw));
            }
            const Front pooled = pseudo_optimal_front(inputs);
            CHECK(igd(pooled, pooled) == 0.0);
            for (const auto& p : pooled)
                for (const auto& q : pooled)
                    if (!(p == q)) CHECK_FALSE(dominates(p, q));
            for (const auto& f : inputs)
                if (!f.empty()) CHECK(igd(pooled, f) >= 0.0);
        }
    }
}

TEST_CASE("IGD matches hand values and the brute-force oracle", "[metrics]") {
    SECTION("coverage means zero") {
        const Front ref{{0, 1}, {1, 0}};
        const Front eval{{1, 0}, {0, 1}, {5, 5}};
        CHECK(igd(ref, eval) == 0.0);
    }
    SECTION("two unit distances averaged") {
        CHECK(igd({{0, 1}, {1, 0}}, {{1, 1}}) == Catch::Approx(1.0));
    }
    SECTION("empty fronts are contract errors") {
        CHECK_THROWS_AS(igd({}, {{1, 1}}), std::invalid_argument);
        CHECK_THROWS_AS(igd({{1, 1}}, {}), std::invalid_argument);
    }
    SECTION("random pairs agree with the double loop within 1e-12") {
        RandomStream rng(2);
        for (int t = 0; t < 100; ++t) {
            const Front a = oracles::random_front(rng, 20);
            const Front b = oracles::random_front(rng, 20);
            CHECK(std::abs(igd(a, b) - oracles::igd_oracle(a, b)) <= 1e-12);
        }
    }
}

TEST_CASE("2D hypervolume sweep", "[metrics]") {
    SECTION("hand-computed staircase") {
        CHECK(hypervolume_2d({{1, 3}, {2, 2}, {3, 1}}, {4, 4}) == 6.0);
    }
    SECTION("unit square") {
        CHECK(hypervolume_2d({{1, 1}}, {2, 2}) == 1.0);
    }
    SECTION("a point at the reference contributes nothing") {
        CHECK(hypervolume_2d({{2, 2}}, {2, 2}) == 0.0);
        CHECK(hypervolume_2d({{1, 1}, {2, 2}}, {2, 2}) == 1.0);
    }
    SECTION("points beyond the reference are contract errors naming the point") {
        CHECK_THROWS_MATCHES(hypervolume_2d({{1, 5}}, {4, 4}), std::invalid_argument,
                             Catch::Matchers::MessageMatches(
                                 Catch::Matchers::ContainsSubstring("5.0")));
    }
    SECTION("dominated points inside the front do not change the area") {
        CHECK(hypervolume_2d({{1, 3}, {2, 2}, {3, 1}, {3, 3}}, {4, 4}) == 6.0);
    }
    SECTION("adding a non-dominated point never lowers the volume") {
        RandomStream rng(3);
        for (int t = 0; t < 50; ++t) {
            Front f = oracles::random_front(rng, 10, 1.0);
            const ObjectivePoint ref{1.0, 1.0};
            const double before = hypervolume_2d(f, ref);
            f.push_back({rng.uniform_real(), rng.uniform_real()});
            CHECK(hypervolume_2d(f, ref) >= before - 1e-12);
        }
    }
    SECTION("matches a Monte Carlo estimate within three sigma") {
        RandomStream rng(4);
        int failures = 0;
        for (int t = 0; t < 20; ++t) {
            const Front f = oracles::random_front(rng, 15);
            const ObjectivePoint ref{11.0, 11.0};
            const double exact = hypervolume_2d(f, ref);
            const auto mc = oracles::mc_hypervolume(f, ref, 100000, rng);
            if (std::abs(exact - mc.value) > 3.0 * mc.sigma) ++failures;
        }
        CHECK(failures <= 1);  // 3-sigma misses are expected at ~0.3% per trial
    }
    SECTION("clipped variant tolerates stray points") {
        CHECK(hypervolume_2d_clipped({{1, 1}, {9, 9}}, {2, 2}) == 1.0);
        CHECK(hypervolume_2d_clipped({{9, 9}}, {2, 2}) == 0.0);
    }
}

TEST_CASE("reference point construction", "[metrics]") {
    const ObjectivePoint ref = reference_point({{{1, 3}}, {{2, 1}}});
    CHECK(ref.lap == Catch::Approx(2.02));
    CHECK(ref.tel == Catch::Approx(3.03));
    const ObjectivePoint degenerate = reference_point({{{0.0, 2.0}}});
    CHECK(degenerate.lap == Catch::Approx(1.01));  // additive bump on a zero coordinate
    CHECK(degenerate.tel == Catch::Approx(2.02));
}

TEST_CASE("min-max normalization", "[metrics]") {
    CHECK(normalize(5, 0, 10) == 0.5);
    CHECK(normalize(0, 0, 10) == 0.0);
    CHECK(normalize(10, 0, 10) == 1.0);
    CHECK(normalize(7, 7, 7) == 0.5);  // degenerate span maps to the neutral value
    CHECK_THROWS_AS(normalize(11, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(normalize(5, 10, 0), std::invalid_argument);
}

TEST_CASE("rank tables", "[metrics]") {
    SECTION("a uniformly best optimizer ranks first everywhere") {
        const auto ranks = rank_matrix({{1, 1, 1}, {2, 3, 4}, {3, 4, 5}}, RankDirection::minimize);
        const RankStats best = rank_stats(ranks[0]);
        CHECK(best.average == 1.0);
        CHECK(best.min == 1.0);
        CHECK(best.max == 1.0);
    }
    SECTION("ties share the average rank") {
        const auto ranks = rank_matrix({{1}, {1}, {2}}, RankDirection::minimize);
        CHECK(ranks[0][0] == 1.5);
        CHECK(ranks[1][0] == 1.5);
        CHECK(ranks[2][0] == 3.0);
    }
    SECTION("hand-built three-optimizer table") {
        // HV direction: higher is better
        const std::vector<std::vector<double>> hv{{0.9, 0.4}, {0.5, 0.8}, {0.1, 0.6}};
        const auto ranks = rank_matrix(hv, RankDirection::maximize);
        CHECK(ranks[0] == std::vector<double>{1, 3});
        CHECK(ranks[1] == std::vector<double>{2, 1});
        CHECK(ranks[2] == std::vector<double>{3, 2});
        const RankStats s1 = rank_stats(ranks[1]);
        CHECK(s1.average == 1.5);
        CHECK(s1.median == 1.5);
    }
    SECTION("ranking is invariant under strictly monotone transforms") {
        RandomStream rng(5);
        for (int t = 0; t < 30; ++t) {
            std::vector<std::vector<double>> scores(4, std::vector<double>(6));
            for (auto& row : scores)
                for (auto& v : row) v = rng.uniform_real() * 3.0;
            auto transformed = scores;
            for (auto& row : transformed)
                for (auto& v : row) v = std::exp(2.0 * v) + 1.0;
            CHECK(rank_matrix(scores, RankDirection::minimize) ==
                  rank_matrix(transformed, RankDirection::minimize));
        }
    }
    SECTION("incomplete matrices are rejected") {
        CHECK_THROWS_AS(rank_matrix({{1, 2}, {1}}, RankDirection::minimize),
                        std::invalid_argument);
    }
}

TEST_CASE("Wilcoxon signed-rank test", "[metrics]") {
    SECTION("five all-positive differences: exact tail probabilities") {
        const std::vector<double> x{1, 2, 3, 4, 5};
        const std::vector<double> y{0, 0, 0, 0, 0};
        const WilcoxonResult res = wilcoxon_signed_rank(x, y);
        CHECK(res.n_used == 5);
        CHECK(res.w_plus == 15.0);
        CHECK(res.w_minus == 0.0);
        CHECK(res.p_one_sided == Catch::Approx(1.0 / 32.0));
        CHECK(res.p_two_sided == Catch::Approx(0.0625));
        CHECK_FALSE(res.significant);  // 0.0625 misses the 5% level
        CHECK(res.method_used == WilcoxonMethod::exact);
    }
    SECTION("identical samples yield no decision") {
        const std::vector<double> x{1, 2, 3, 4, 5};
        const WilcoxonResult res = wilcoxon_signed_rank(x, x);
        CHECK(res.no_decision);
    }
    SECTION("matches a 2^n enumeration oracle on small mixed samples") {
        RandomStream rng(6);
        for (int t = 0; t < 50; ++t) {
            std::vector<double> x(8), y(8);
            for (std::size_t i = 0; i < 8; ++i) {
                x[i] = std::floor(rng.uniform_real() * 10);
                y[i] = std::floor(rng.uniform_real() * 10);
            }
            bool all_zero = true;
            for (std::size_t i = 0; i < 8; ++i) all_zero &= x[i] == y[i];
            if (all_zero) continue;
            const WilcoxonResult res = wilcoxon_signed_rank(x, y);
            CHECK(res.p_two_sided ==
                  Catch::Approx(oracles::wilcoxon_two_sided_enumeration(x, y)));
        }
    }
    SECTION("exact and normal approximation agree within 0.01 at n = 20") {
        RandomStream rng(7);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> x(20), y(20);
            for (std::size_t i = 0; i < 20; ++i) {
                x[i] = rng.uniform_real();
                y[i] = rng.uniform_real();
            }
            const double exact =
                wilcoxon_signed_rank(x, y, 0.05, WilcoxonMethod::exact).p_two_sided;
            const double approx =
                wilcoxon_signed_rank(x, y, 0.05, WilcoxonMethod::normal_approx).p_two_sided;
            CHECK(std::abs(exact - approx) <= 0.01);
        }
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(wilcoxon_signed_rank({1, 2}, {3, 4}), std::invalid_argument);
        CHECK_THROWS_AS(wilcoxon_signed_rank({1, 2, 3, 4, 5}, {1, 2, 3}), std::invalid_argument);
    }
}
