#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genotype.hpp"
#include "instance.hpp"
#include "objectives.hpp"
#include "random.hpp"

namespace luo {

enum class CrossoverKind { AC, SRC, DRC, IDRC };
enum class MutationKind { MutC, MutC2 };
enum class RepairKind { RRM, BRM };
enum class InitKind { SP_I, SQ_I, TEL_I, HYB_I, HAL_I };

inline std::string to_string(CrossoverKind k) {
    switch (k) {
        case CrossoverKind::AC: return "AC";
        case CrossoverKind::SRC: return "SRC";
        case CrossoverKind::DRC: return "DRC";
        default: return "IDRC";
    }
}
inline std::string to_string(MutationKind k) {
    return k == MutationKind::MutC ? "MutC" : "MutC2";
}
inline std::string to_string(RepairKind k) { return k == RepairKind::RRM ? "RRM" : "BRM"; }
inline std::string to_string(InitKind k) {
    switch (k) {
        case InitKind::SP_I: return "SP-I";
        case InitKind::SQ_I: return "SQ-I";
        case InitKind::TEL_I: return "TEL-I";
        case InitKind::HYB_I: return "HYB-I";
        default: return "HAL-I";
    }
}

inline CrossoverKind crossover_from_string(const std::string& s) {
    if (s == "AC") return CrossoverKind::AC;
    if (s == "SRC") return CrossoverKind::SRC;
    if (s == "DRC") return CrossoverKind::DRC;
    if (s == "IDRC") return CrossoverKind::IDRC;
    throw ValidationError("unknown crossover '" + s + "'");
}
inline MutationKind mutation_from_string(const std::string& s) {
    if (s == "MutC") return MutationKind::MutC;
    if (s == "MutC2") return MutationKind::MutC2;
    throw ValidationError("unknown mutation '" + s + "'");
}
inline RepairKind repair_from_string(const std::string& s) {
    if (s == "RRM") return RepairKind::RRM;
    if (s == "BRM") return RepairKind::BRM;
    throw ValidationError("unknown repair '" + s + "'");
}
inline InitKind init_from_string(const std::string& s) {
    if (s == "SP-I") return InitKind::SP_I;
    if (s == "SQ-I") return InitKind::SQ_I;
    if (s == "TEL-I") return InitKind::TEL_I;
    if (s == "HYB-I") return InitKind::HYB_I;
    if (s == "HAL-I") return InitKind::HAL_I;
    throw ValidationError("unknown init '" + s + "'");
}

// Fixed sub-operator probabilities; exposed read-only in config dumps, never tuned.
constexpr double kRbmGate = 0.10;
constexpr double kRcmGate = 0.10;
constexpr double kBcpmGate = 0.10;
constexpr double kMaskTakeProb = 0.5;

struct OperatorConfig {
    CrossoverKind crossover = CrossoverKind::AC;
    MutationKind mutation = MutationKind::MutC;
    RepairKind repair = RepairKind::RRM;
    InitKind init = InitKind::SP_I;
    double p_cross = 0.5;
    double p_mut = 0.5;
    bool drc_bridge_fixed_urban = false;

    void validate() const {
        if (!(p_cross >= 0.0 && p_cross <= 1.0))
            throw ValidationError("operator config: p_cross must lie in [0, 1]");
        if (!(p_mut >= 0.0 && p_mut <= 1.0))
            throw ValidationError("operator config: p_mut must lie in [0, 1]");
    }
};

// Degenerate-path counters carried into the run record.
struct OperatorLog {
    std::int64_t rcm_noop = 0;
    std::int64_t bcpm_noop = 0;
    std::int64_t bcpm_fixed_regrow = 0;
    std::int64_t bcpm_next_region = 0;
    std::int64_t bcpm_uniform_fill = 0;
    std::int64_t rrm_deficiency_fallback = 0;
    std::int64_t init_forced_accepts = 0;

    void merge(const OperatorLog& o) {
        rcm_noop += o.rcm_noop;
        bcpm_noop += o.bcpm_noop;
        bcpm_fixed_regrow += o.bcpm_fixed_regrow;
        bcpm_next_region += o.bcpm_next_region;
        bcpm_uniform_fill += o.bcpm_uniform_fill;
        rrm_deficiency_fallback += o.rrm_deficiency_fallback;
        init_forced_accepts += o.init_forced_accepts;
    }
};

// RRM: uniformly drop ones until u(x) = T. Removal only; deficiency is a
// contract violation (BRM handles that side).
inline Genotype repair_rrm(Genotype g, const Instance& inst, RandomStream& rng) {
    check_genotype(g, inst, "repair_rrm");
    int u = unitation(g);
    const int target = inst.budget();
    if (u < target)
        throw std::invalid_argument("repair_rrm: unitation below budget (RRM only removes ones)");
    if (u == target) return g;
    std::vector<int> ones;
    ones.reserve(static_cast<std::size_t>(u));
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i]) ones.push_back(static_cast<int>(i));
    while (u > target) {
        const auto k = rng.uniform_index(ones.size());
        g[static_cast<std::size_t>(ones[k])] = 0;
        ones[k] = ones.back();
        ones.pop_back();
        --u;
    }
    return g;
}

// BRM: repair one cell per step, weighted by the count of von Neumann neighbors
// of the cell's post-repair category on the current decoded map. Weights are
// recomputed after every step; all-zero weights fall back to a uniform pick.
inline Genotype repair_brm(Genotype g, const Instance& inst, RandomStream& rng) {
    check_genotype(g, inst, "repair_brm");
    int u = unitation(g);
    const int target = inst.budget();
    if (u == target) return g;
    thread_local DecodedMap map;
    decode_into(g, inst, map);
    const auto& genes = inst.gene_cells();
    std::vector<double> weights(g.size());
    std::vector<int> candidates;
    while (u != target) {
        const bool deficiency = u < target;
        const std::uint8_t wanted_neighbor = deficiency ? kUrban : kAgricultural;
        double total = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const bool candidate = deficiency ? g[i] == 0 : g[i] != 0;
            if (!candidate) {
                weights[i] = 0.0;
                continue;
            }
            const int w = count_adjacent(map, genes[i], wanted_neighbor);
            weights[i] = static_cast<double>(w);
            total += w;
        }
        std::size_t pick;
        if (total > 0.0) {
            pick = rng.weighted_index(weights);
        } else {
            candidates.clear();
            for (std::size_t i = 0; i < g.size(); ++i)
                if (deficiency ? g[i] == 0 : g[i] != 0) candidates.push_back(static_cast<int>(i));
            pick = static_cast<std::size_t>(candidates[rng.uniform_index(candidates.size())]);
        }
        if (deficiency) {
            g[pick] = 1;
            map.cat[static_cast<std::size_t>(genes[pick])] = kUrban;
            ++u;
        } else {
            g[pick] = 0;
            map.cat[static_cast<std::size_t>(genes[pick])] = kAgricultural;
            --u;
        }
    }
    return g;
}

// RBM: converts every agricultural cell inside a random rectangular block.
// Block sides are uniform in [1, ceil(min(R,C)/4)]; output is typically infeasible.
inline Genotype mutate_rbm(Genotype g, const Instance& inst, RandomStream& rng) {
    check_genotype(g, inst, "mutate_rbm");
    const int max_block = (std::min(inst.rows(), inst.cols()) + 3) / 4;
    const int height = rng.uniform_int(1, max_block);
    const int width = rng.uniform_int(1, max_block);
    const int r0 = rng.uniform_int(0, inst.rows() - height);
    const int c0 = rng.uniform_int(0, inst.cols() - width);
    for (int r = r0; r < r0 + height; ++r) {
        for (int c = c0; c < c0 + width; ++c) {
            const int gene = inst.gene_at(inst.flat(r, c));
            if (gene >= 0) g[static_cast<std::size_t>(gene)] = 1;
        }
    }
    return g;
}

// RCM: swap one uniformly chosen 1-bit with one uniformly chosen 0-bit.
inline Genotype mutate_rcm(Genotype g, const Instance& inst, RandomStream& rng,
                           OperatorLog* log = nullptr) {
    check_genotype(g, inst, "mutate_rcm");
    std::vector<int> ones, zeros;
    for (std::size_t i = 0; i < g.size(); ++i)
        (g[i] ? ones : zeros).push_back(static_cast<int>(i));
    if (ones.empty() || zeros.empty()) {
        if (log) ++log->rcm_noop;
        return g;
    }
    g[static_cast<std::size_t>(ones[rng.uniform_index(ones.size())])] = 0;
    g[static_cast<std::size_t>(zeros[rng.uniform_index(zeros.size())])] = 1;
    return g;
}

namespace detail {

// Frontier growth used by BCPM: convert `count` agricultural cells adjacent to
// target_cells, each step weighted by the cell's urban-neighbor count. Falls
// back to the next-largest unused region, then to uniform untransformed cells.
inline void bcpm_grow(Genotype& g, const Instance& inst, RandomStream& rng, DecodedMap& map,
                      std::vector<char>& in_target, int count,
                      std::vector<std::vector<int>>& spare_regions, OperatorLog* log) {
    const auto& genes = inst.gene_cells();
    std::vector<double> weights(g.size());
    std::vector<int> frontier;
    for (int step = 0; step < count; ++step) {
        frontier.clear();
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i]) continue;
            const int cell = genes[i];
            const int r = cell / inst.cols(), c = cell % inst.cols();
            const bool adjacent =
                (r > 0 && in_target[static_cast<std::size_t>(cell - inst.cols())]) ||
                (c > 0 && in_target[static_cast<std::size_t>(cell - 1)]) ||
                (c + 1 < inst.cols() && in_target[static_cast<std::size_t>(cell + 1)]) ||
                (r + 1 < inst.rows() && in_target[static_cast<std::size_t>(cell + inst.cols())]);
            if (adjacent) frontier.push_back(static_cast<int>(i));
        }
        if (frontier.empty()) {
            if (!spare_regions.empty()) {
                // widen the target with the largest remaining region
                auto it = std::max_element(spare_regions.begin(), spare_regions.end(),
                                           [](const auto& x, const auto& y) {
                                               return x.size() < y.size();
                                           });
                for (int cell : *it) in_target[static_cast<std::size_t>(cell)] = 1;
                spare_regions.erase(it);
                if (log) ++log->bcpm_next_region;
                --step;
                continue;
            }
            // nowhere adjacent to grow; keep unitation by converting any 0-bit
            std::vector<int> zeros;
            for (std::size_t i = 0; i < g.size(); ++i)
                if (!g[i]) zeros.push_back(static_cast<int>(i));
            const int gi = zeros[rng.uniform_index(zeros.size())];
            g[static_cast<std::size_t>(gi)] = 1;
            map.cat[static_cast<std::size_t>(genes[static_cast<std::size_t>(gi)])] = kUrban;
            in_target[static_cast<std::size_t>(genes[static_cast<std::size_t>(gi)])] = 1;
            if (log) ++log->bcpm_uniform_fill;
            continue;
        }
        double total = 0.0;
        std::fill(weights.begin(), weights.end(), 0.0);
        for (int gi : frontier) {
            const int w = count_adjacent(map, genes[static_cast<std::size_t>(gi)], kUrban);
            weights[static_cast<std::size_t>(gi)] = static_cast<double>(w);
            total += w;
        }
        std::size_t pick;
        if (total > 0.0)
            pick = rng.weighted_index(weights);
        else
            pick = static_cast<std::size_t>(frontier[rng.uniform_index(frontier.size())]);
        g[pick] = 1;
        map.cat[static_cast<std::size_t>(genes[pick])] = kUrban;
        in_target[static_cast<std::size_t>(genes[pick])] = 1;
    }
}

}  // namespace detail

// BCPM: dissolve one urban patch (picked with probability inversely
// proportional to its size) and regrow the same number of cells around another
// patch (picked proportionally to size). Unitation is preserved; degenerate
// layouts make it a logged no-op.
inline Genotype mutate_bcpm(Genotype g, const Instance& inst, RandomStream& rng,
                            OperatorLog* log = nullptr) {
    check_genotype(g, inst, "mutate_bcpm");
    thread_local DecodedMap map;
    decode_into(g, inst, map);
    auto regions = urban_regions(map);

    std::vector<std::size_t> removable;
    std::vector<double> inv_size;
    for (std::size_t ri = 0; ri < regions.size(); ++ri) {
        bool has_converted = false;
        for (int cell : regions[ri])
            if (inst.gene_at(cell) >= 0) {
                has_converted = true;
                break;
            }
        if (has_converted) {
            removable.push_back(ri);
            inv_size.push_back(1.0 / static_cast<double>(regions[ri].size()));
        }
    }
    if (removable.empty()) {
        if (log) ++log->bcpm_noop;
        return g;
    }
    const std::size_t removed = removable[rng.weighted_index(inv_size)];

    std::vector<std::vector<int>> others;
    for (std::size_t ri = 0; ri < regions.size(); ++ri)
        if (ri != removed) others.push_back(regions[ri]);

    std::vector<int> removed_fixed;
    for (int cell : regions[removed])
        if (inst.gene_at(cell) < 0) removed_fixed.push_back(cell);

    if (others.empty() && removed_fixed.empty()) {
        if (log) ++log->bcpm_noop;  // single pure-converted region, nowhere to regrow
        return g;
    }

    // revert the removed patch's converted cells
    int reverted = 0;
    for (int cell : regions[removed]) {
        const int gene = inst.gene_at(cell);
        if (gene < 0) continue;
        g[static_cast<std::size_t>(gene)] = 0;
        map.cat[static_cast<std::size_t>(cell)] = kAgricultural;
        ++reverted;
    }

    std::vector<char> in_target(static_cast<std::size_t>(inst.size()), 0);
    if (!others.empty()) {
        std::vector<double> sizes;
        sizes.reserve(others.size());
        for (const auto& r : others) sizes.push_back(static_cast<double>(r.size()));
        const std::size_t ti = rng.weighted_index(sizes);
        for (int cell : others[ti]) in_target[static_cast<std::size_t>(cell)] = 1;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(ti));
    } else {
        for (int cell : removed_fixed) in_target[static_cast<std::size_t>(cell)] = 1;
        if (log) ++log->bcpm_fixed_regrow;
    }
    detail::bcpm_grow(g, inst, rng, map, in_target, reverted, others, log);
    return g;
}

// MutC / MutC2: RBM (10%), RRM after RBM (MutC only, and only on excess), RCM
// (10%), BRM (always), BCPM (10%). Output is always feasible: BRM restores
// u(x) = T and BCPM preserves it.
inline Genotype mutate_combined(Genotype g, const Instance& inst, RandomStream& rng,
                                MutationKind variant, OperatorLog* log = nullptr) {
    check_genotype(g, inst, "mutate_combined");
    if (rng.bernoulli(kRbmGate)) {
        g = mutate_rbm(std::move(g), inst, rng);
        if (variant == MutationKind::MutC && unitation(g) >= inst.budget())
            g = repair_rrm(std::move(g), inst, rng);
    }
    if (rng.bernoulli(kRcmGate)) g = mutate_rcm(std::move(g), inst, rng, log);
    g = repair_brm(std::move(g), inst, rng);
    if (rng.bernoulli(kBcpmGate)) g = mutate_bcpm(std::move(g), inst, rng, log);
    return g;
}

// AC: split the grid by a line through its center at a uniform angle; offspring
// one takes parent a's bits on the non-negative side of the line.
inline std::pair<Genotype, Genotype> crossover_ac(const Genotype& a, const Genotype& b,
                                                  const Instance& inst, RandomStream& rng) {
    check_genotype(a, inst, "crossover_ac");
    check_genotype(b, inst, "crossover_ac");
    const double theta = rng.uniform_real() * 3.14159265358979323846;
    const double dx = std::cos(theta), dy = std::sin(theta);
    const double cr = (inst.rows() - 1) / 2.0, cc = (inst.cols() - 1) / 2.0;
    Genotype o1(a), o2(b);
    const auto& genes = inst.gene_cells();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const CellIndex cell = inst.cell(genes[i]);
        const double cross = (cell.col - cc) * dy - (cell.row - cr) * dx;
        if (cross < 0.0) {
            o1[i] = b[i];
            o2[i] = a[i];
        }
    }
    return {std::move(o1), std::move(o2)};
}

// SRC/DRC/IDRC: cluster dependent positions, then exchange whole masks, never
// fragments. DRC/IDRC flip a fair coin per mask; SRC hands a uniformly chosen
// floor(k/2) of the masks to parent a and the rest to parent b.
inline std::pair<Genotype, Genotype> crossover_masked(const Genotype& a, const Genotype& b,
                                                      const Instance& inst, RandomStream& rng,
                                                      CrossoverKind kind,
                                                      bool drc_bridge_fixed_urban = false) {
    MaskSet masks;
    switch (kind) {
        case CrossoverKind::SRC: masks = cluster_src(a, b, inst); break;
        case CrossoverKind::DRC: masks = cluster_drc(a, b, inst, drc_bridge_fixed_urban); break;
        case CrossoverKind::IDRC: masks = cluster_idrc(a, b, inst, drc_bridge_fixed_urban); break;
        default: throw std::invalid_argument("crossover_masked: AC is not mask-based");
    }
    Genotype o1(a), o2(b);
    if (masks.empty()) return {std::move(o1), std::move(o2)};

    std::vector<std::size_t> order(masks.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    if (kind == CrossoverKind::SRC) {
        const std::size_t from_a = masks.size() / 2;
        for (std::size_t t = from_a; t < order.size(); ++t) {
            for (int p : masks[order[t]]) {
                o1[static_cast<std::size_t>(p)] = b[static_cast<std::size_t>(p)];
                o2[static_cast<std::size_t>(p)] = a[static_cast<std::size_t>(p)];
            }
        }
    } else {
        for (std::size_t t = 0; t < order.size(); ++t) {
            if (rng.bernoulli(kMaskTakeProb)) continue;  // offspring one keeps parent a here
            for (int p : masks[order[t]]) {
                o1[static_cast<std::size_t>(p)] = b[static_cast<std::size_t>(p)];
                o2[static_cast<std::size_t>(p)] = a[static_cast<std::size_t>(p)];
            }
        }
    }
    return {std::move(o1), std::move(o2)};
}

inline std::pair<Genotype, Genotype> crossover(const Genotype& a, const Genotype& b,
                                               const Instance& inst, RandomStream& rng,
                                               const OperatorConfig& cfg) {
    if (cfg.crossover == CrossoverKind::AC) return crossover_ac(a, b, inst, rng);
    return crossover_masked(a, b, inst, rng, cfg.crossover, cfg.drc_bridge_fixed_urban);
}

// Acceptance probabilities of the biased initializers.
inline double sq_acceptance(const Instance& inst, int cell) {
    return 1.0 - inst.soil(cell) / inst.max_soil();
}
inline double tel_acceptance(const DecodedMap& m, int cell) {
    return count_adjacent(m, cell, kUrban) / 4.0;
}
inline double hyb_acceptance(const Instance& inst, const DecodedMap& m, int cell) {
    return std::sqrt(sq_acceptance(inst, cell) * tel_acceptance(m, cell));
}

namespace detail {

// Sweep-based biased acceptance shared by SQ-I / TEL-I / HYB-I. Candidates are
// visited in a fresh random order per sweep; a sweep in which no candidate had
// a positive acceptance probability forces one uniform conversion so the
// procedure always terminates (structural stall only — a merely unlucky sweep
// keeps sweeping, which keeps TEL-I growth connected).
template <class ProbFn>
inline Genotype init_biased(const Instance& inst, RandomStream& rng, ProbFn&& prob,
                            OperatorLog* log) {
    Genotype g(static_cast<std::size_t>(inst.gene_count()), 0);
    thread_local DecodedMap map;
    decode_into(g, inst, map);
    const auto& genes = inst.gene_cells();
    std::vector<int> candidates(static_cast<std::size_t>(inst.gene_count()));
    std::iota(candidates.begin(), candidates.end(), 0);
    int accepted = 0;
    auto accept = [&](std::size_t k) {
        const int gi = candidates[k];
        g[static_cast<std::size_t>(gi)] = 1;
        map.cat[static_cast<std::size_t>(genes[static_cast<std::size_t>(gi)])] = kUrban;
        candidates[k] = candidates.back();
        candidates.pop_back();
        ++accepted;
    };
    while (accepted < inst.budget()) {
        rng.shuffle(candidates);
        bool any_accept = false, any_positive = false;
        for (std::size_t k = 0; k < candidates.size() && accepted < inst.budget();) {
            const double p = prob(genes[static_cast<std::size_t>(candidates[k])], map);
            if (p > 0.0) {
                any_positive = true;
                if (rng.uniform_real() < p) {
                    accept(k);
                    any_accept = true;
                    continue;  // swap-removed; same slot holds a new candidate
                }
            }
            ++k;
        }
        if (accepted < inst.budget() && !any_accept && !any_positive) {
            accept(rng.uniform_index(candidates.size()));
            if (log) ++log->init_forced_accepts;
        }
    }
    return g;
}

}  // namespace detail

inline Genotype init_sp(const Instance& inst, RandomStream& rng) {
    Genotype g(static_cast<std::size_t>(inst.gene_count()), 0);
    for (int idx : rng.sample_without_replacement(inst.gene_count(), inst.budget()))
        g[static_cast<std::size_t>(idx)] = 1;
    return g;
}

inline Genotype init_one(const Instance& inst, RandomStream& rng, InitKind kind,
                         OperatorLog* log = nullptr) {
    switch (kind) {
        case InitKind::SP_I:
            return init_sp(inst, rng);
        case InitKind::SQ_I:
            return detail::init_biased(
                inst, rng, [&](int cell, const DecodedMap&) { return sq_acceptance(inst, cell); },
                log);
        case InitKind::TEL_I:
            return detail::init_biased(
                inst, rng, [&](int cell, const DecodedMap& m) { return tel_acceptance(m, cell); },
                log);
        case InitKind::HYB_I:
            return detail::init_biased(
                inst, rng,
                [&](int cell, const DecodedMap& m) { return hyb_acceptance(inst, m, cell); }, log);
        default:
            throw std::invalid_argument("init_one: HAL-I is population-level, use initialize()");
    }
}

// Population initialization; every returned genotype is feasible.
inline std::vector<Genotype> initialize(const Instance& inst, RandomStream& rng, InitKind kind,
                                        int pop_size, OperatorLog* log = nullptr) {
    if (pop_size < 2) throw std::invalid_argument("initialize: pop_size must be at least 2");
    std::vector<Genotype> pop;
    pop.reserve(static_cast<std::size_t>(pop_size));
    const int half = (pop_size + 1) / 2;  // HAL-I: first half SQ-I, rest TEL-I
    for (int i = 0; i < pop_size; ++i) {
        InitKind k = kind;
        if (kind == InitKind::HAL_I) k = i < half ? InitKind::SQ_I : InitKind::TEL_I;
        pop.push_back(init_one(inst, rng, k, log));
    }
    return pop;
}

// Post-crossover pipeline: mutation gate, feasibility check, configured repair.
// RRM cannot add ones, so a deficiency under repair_kind=RRM falls back to
// BRM's deficiency path (logged).
inline Genotype mutate_and_repair(Genotype g, const Instance& inst, RandomStream& rng,
                                  const OperatorConfig& cfg, OperatorLog* log = nullptr) {
    if (rng.bernoulli(cfg.p_mut)) g = mutate_combined(std::move(g), inst, rng, cfg.mutation, log);
    const int u = unitation(g);
    if (u == inst.budget()) return g;
    if (cfg.repair == RepairKind::RRM) {
        if (u > inst.budget()) return repair_rrm(std::move(g), inst, rng);
        if (log) ++log->rrm_deficiency_fallback;
        return repair_brm(std::move(g), inst, rng);
    }
    return repair_brm(std::move(g), inst, rng);
}

}  // namespace luo
