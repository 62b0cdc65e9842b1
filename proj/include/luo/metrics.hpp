#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "objectives.hpp"

namespace luo {

// A Pareto front: finite set of mutually non-dominated objective points.
using Front = std::vector<ObjectivePoint>;

namespace detail {

// Sort by (lap, tel), drop exact duplicates, keep the non-dominated subset.
inline Front nondominated_subset(Front points) {
    std::sort(points.begin(), points.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
        if (a.lap != b.lap) return a.lap < b.lap;
        return a.tel < b.tel;
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    Front kept;
    double best_tel = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        if (p.tel < best_tel) {
            kept.push_back(p);
            best_tel = p.tel;
        }
    }
    return kept;
}

}  // namespace detail

// Pooled pseudo-optimal front: union of all fronts, duplicates removed,
// non-dominated subset kept. Stands in for the unknown true Pareto front.
inline Front pseudo_optimal_front(const std::vector<Front>& all_fronts) {
    Front pooled;
    for (const auto& f : all_fronts) pooled.insert(pooled.end(), f.begin(), f.end());
    if (pooled.empty())
        throw std::invalid_argument("pseudo_optimal_front: no points in any input front");
    return detail::nondominated_subset(std::move(pooled));
}

// Inverted generational distance: mean Euclidean distance from each reference
// point to its nearest evaluated point. 0 iff the evaluated front covers the
// reference.
inline double igd(const Front& reference, const Front& evaluated) {
    if (reference.empty() || evaluated.empty())
        throw std::invalid_argument("igd: fronts must be non-empty");
    double total = 0.0;
    for (const auto& r : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : evaluated) {
            const double dl = r.lap - s.lap, dt = r.tel - s.tel;
            best = std::min(best, dl * dl + dt * dt);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

// 2D hypervolume (minimization): area dominated by the front and bounded by
// the reference point, by sweep over the first objective.
inline double hypervolume_2d(const Front& front, const ObjectivePoint& ref) {
    if (front.empty()) throw std::invalid_argument("hypervolume_2d: empty front");
    for (const auto& p : front) {
        if (p.lap > ref.lap || p.tel > ref.tel)
            throw std::invalid_argument("hypervolume_2d: point (" + std::to_string(p.lap) + ", " +
                                        std::to_string(p.tel) +
                                        ") lies beyond the reference point");
    }
    const Front kept = detail::nondominated_subset(front);
    double hv = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double next_lap = i + 1 < kept.size() ? kept[i + 1].lap : ref.lap;
        hv += (ref.tel - kept[i].tel) * (next_lap - kept[i].lap);
    }
    return hv;
}

// Hypervolume against a fixed reference point where the front may contain
// points beyond it; such points contribute no area. Used by the tuning climb,
// whose reference point is frozen at the start of a session.
inline double hypervolume_2d_clipped(const Front& front, const ObjectivePoint& ref) {
    Front inside;
    for (const auto& p : front)
        if (p.lap <= ref.lap && p.tel <= ref.tel) inside.push_back(p);
    if (inside.empty()) return 0.0;
    return hypervolume_2d(inside, ref);
}

// Shared reference point for a set of compared fronts: componentwise maximum
// scaled by 1.01, additively bumped where the maximum is 0.
inline ObjectivePoint reference_point(const std::vector<Front>& fronts) {
    double max_lap = 0.0, max_tel = 0.0;
    bool any = false;
    for (const auto& f : fronts)
        for (const auto& p : f) {
            max_lap = any ? std::max(max_lap, p.lap) : p.lap;
            max_tel = any ? std::max(max_tel, p.tel) : p.tel;
            any = true;
        }
    if (!any) throw std::invalid_argument("reference_point: no points");
    ObjectivePoint ref;
    ref.lap = max_lap != 0.0 ? max_lap * 1.01 : 1.01;
    ref.tel = max_tel != 0.0 ? max_tel * 1.01 : 1.01;
    return ref;
}

// Min-max normalization over the values reached by all compared optimizers.
// A degenerate span maps everything to the neutral 0.5.
inline double normalize(double value, double vmin, double vmax) {
    if (vmax < vmin) throw std::invalid_argument("normalize: vmax < vmin");
    if (value < vmin || value > vmax)
        throw std::invalid_argument("normalize: value outside [vmin, vmax]");
    if (vmax == vmin) return 0.5;
    return (value - vmin) / (vmax - vmin);
}

enum class RankDirection { minimize, maximize };

// Per-instance competition ranks (1 = best) with average ranks on ties.
// scores[optimizer][instance]; all rows must have equal positive length.
inline std::vector<std::vector<double>> rank_matrix(
    const std::vector<std::vector<double>>& scores, RankDirection direction) {
    if (scores.empty()) throw std::invalid_argument("rank_matrix: no optimizers");
    const std::size_t n_inst = scores.front().size();
    if (n_inst == 0) throw std::invalid_argument("rank_matrix: no instances");
    for (const auto& row : scores)
        if (row.size() != n_inst)
            throw std::invalid_argument("rank_matrix: incomplete score matrix");
    const std::size_t m = scores.size();
    std::vector<std::vector<double>> ranks(m, std::vector<double>(n_inst, 0.0));
    for (std::size_t inst = 0; inst < n_inst; ++inst) {
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return direction == RankDirection::minimize ? scores[a][inst] < scores[b][inst]
                                                        : scores[a][inst] > scores[b][inst];
        });
        std::size_t k = 0;
        while (k < m) {
            std::size_t tie_end = k + 1;
            while (tie_end < m && scores[order[tie_end]][inst] == scores[order[k]][inst])
                ++tie_end;
            const double avg_rank = (static_cast<double>(k + 1) + static_cast<double>(tie_end)) / 2.0;
            for (std::size_t t = k; t < tie_end; ++t) ranks[order[t]][inst] = avg_rank;
            k = tie_end;
        }
    }
    return ranks;
}

// The Table-1 columns for one optimizer: median / average / min / max rank.
struct RankStats {
    double median = 0.0;
    double average = 0.0;
    double min = 0.0;
    double max = 0.0;
};

inline RankStats rank_stats(std::vector<double> ranks) {
    if (ranks.empty()) throw std::invalid_argument("rank_stats: empty rank list");
    RankStats s;
    std::sort(ranks.begin(), ranks.end());
    const std::size_t n = ranks.size();
    s.median = n % 2 == 1 ? ranks[n / 2] : (ranks[n / 2 - 1] + ranks[n / 2]) / 2.0;
    s.average = std::accumulate(ranks.begin(), ranks.end(), 0.0) / static_cast<double>(n);
    s.min = ranks.front();
    s.max = ranks.back();
    return s;
}

enum class WilcoxonMethod { automatic, exact, normal_approx };

struct WilcoxonResult {
    int n_used = 0;          // pairs remaining after dropping zero differences
    double w_plus = 0.0;
    double w_minus = 0.0;
    double statistic = 0.0;  // min(w_plus, w_minus)
    double p_one_sided = 1.0;
    double p_two_sided = 1.0;
    bool significant = false;
    bool no_decision = false;  // every difference was zero
    WilcoxonMethod method_used = WilcoxonMethod::exact;
};

namespace detail {

inline double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace detail

// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences are
// dropped; |d| ranks use average ranks on ties. Exact p by enumerating the sign
// distribution for n <= 25 (dynamic program over doubled ranks), normal
// approximation with tie correction and continuity correction above.
inline WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& x,
                                           const std::vector<double>& y, double alpha = 0.05,
                                           WilcoxonMethod method = WilcoxonMethod::automatic) {
    if (x.size() != y.size())
        throw std::invalid_argument("wilcoxon_signed_rank: sample sizes differ");
    if (x.size() < 5) throw std::invalid_argument("wilcoxon_signed_rank: need at least 5 pairs");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("wilcoxon_signed_rank: alpha must lie in (0, 1)");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) diffs.push_back(d);
    }
    WilcoxonResult res;
    if (diffs.empty()) {
        res.no_decision = true;
        return res;
    }
    const std::size_t n = diffs.size();
    res.n_used = static_cast<int>(n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(diffs[a]) < std::abs(diffs[b]);
    });
    std::vector<double> rank(n, 0.0);
    std::vector<std::size_t> tie_sizes;
    std::size_t k = 0;
    while (k < n) {
        std::size_t tie_end = k + 1;
        while (tie_end < n && std::abs(diffs[order[tie_end]]) == std::abs(diffs[order[k]]))
            ++tie_end;
        const double avg = (static_cast<double>(k + 1) + static_cast<double>(tie_end)) / 2.0;
        for (std::size_t t = k; t < tie_end; ++t) rank[order[t]] = avg;
        tie_sizes.push_back(tie_end - k);
        k = tie_end;
    }
    for (std::size_t i = 0; i < n; ++i) (diffs[i] > 0.0 ? res.w_plus : res.w_minus) += rank[i];
    res.statistic = std::min(res.w_plus, res.w_minus);

    const bool use_exact =
        method == WilcoxonMethod::exact || (method == WilcoxonMethod::automatic && n <= 25);
    if (use_exact) {
        res.method_used = WilcoxonMethod::exact;
        // ranks are integers or half-integers; double them to index the DP
        std::vector<int> r2(n);
        int max_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            r2[i] = static_cast<int>(std::llround(rank[i] * 2.0));
            max_sum += r2[i];
        }
        std::vector<double> count(static_cast<std::size_t>(max_sum) + 1, 0.0);
        count[0] = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (int s = max_sum; s >= r2[i]; --s)
                count[static_cast<std::size_t>(s)] +=
                    count[static_cast<std::size_t>(s - r2[i])];
        }
        const double total = std::ldexp(1.0, static_cast<int>(n));  // 2^n sign assignments
        const int w2 = static_cast<int>(std::llround(res.w_plus * 2.0));
        double below = 0.0, above = 0.0;
        for (int s = 0; s <= max_sum; ++s) {
            if (s <= w2) below += count[static_cast<std::size_t>(s)];
            if (s >= w2) above += count[static_cast<std::size_t>(s)];
        }
        res.p_one_sided = std::min(below, above) / total;
        res.p_two_sided = std::min(1.0, 2.0 * res.p_one_sided);
    } else {
        res.method_used = WilcoxonMethod::normal_approx;
        const double dn = static_cast<double>(n);
        const double mean = dn * (dn + 1.0) / 4.0;
        double tie_term = 0.0;
        for (std::size_t t : tie_sizes) {
            const double td = static_cast<double>(t);
            tie_term += td * td * td - td;
        }
        const double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0;
        const double sd = std::sqrt(var);
        const double dev = std::abs(res.w_plus - mean);
        const double z = (dev - 0.5) / sd;  // continuity correction
        res.p_one_sided = detail::normal_upper_tail(z);
        res.p_two_sided = std::min(1.0, 2.0 * res.p_one_sided);
    }
    res.significant = res.p_two_sided < alpha;
    return res;
}

}  // namespace luo
