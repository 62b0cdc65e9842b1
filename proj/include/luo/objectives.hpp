#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "genotype.hpp"
#include "instance.hpp"

namespace luo {

// Both objectives are minimized. lap is normalized by the instance soil total;
// tel is measured in cell-side units.
struct ObjectivePoint {
    double lap = 0.0;
    double tel = 0.0;
    friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

// Strict Pareto dominance under minimization.
inline bool dominates(const ObjectivePoint& p, const ObjectivePoint& q) {
    return p.lap <= q.lap && p.tel <= q.tel && (p.lap < q.lap || p.tel < q.tel);
}

enum class TelMode { boundary, literal };

inline std::string to_string(TelMode mode) {
    return mode == TelMode::boundary ? "boundary" : "literal";
}

inline TelMode tel_mode_from_string(const std::string& s) {
    if (s == "boundary") return TelMode::boundary;
    if (s == "literal") return TelMode::literal;
    throw ValidationError("unknown tel_mode '" + s + "' (expected boundary or literal)");
}

// Normalized loss of agricultural productivity: (1/A) * sum of soil values over
// cells converted from agricultural to urban.
inline double eval_lap(const DecodedMap& m, const Instance& inst) {
    double loss = 0.0;
    for (int i = 0; i < inst.size(); ++i)
        if (inst.category(i) == kAgricultural && m.at(i) == kUrban) loss += inst.soil(i);
    return loss / inst.soil_total();
}

// Total edge length.
//   boundary: different-category von Neumann adjacencies counted once each,
//             plus one per grid-boundary cell side (the outside never matches).
//   literal:  the printed same-category sum, i.e. every same-category adjacency
//             counted from both sides. Minimizing it rewards fragmentation, so
//             it is kept only as an auditing mode.
inline double eval_tel(const DecodedMap& m, const Instance& inst, TelMode mode = TelMode::boundary) {
    if (m.rows != inst.rows() || m.cols != inst.cols())
        throw std::invalid_argument("eval_tel: map dimensions do not match instance");
    std::int64_t same_pairs = 0;
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            const std::uint8_t k = m.at(r, c);
            if (c + 1 < m.cols && m.at(r, c + 1) == k) ++same_pairs;
            if (r + 1 < m.rows && m.at(r + 1, c) == k) ++same_pairs;
        }
    }
    if (mode == TelMode::literal) return static_cast<double>(2 * same_pairs);
    const std::int64_t total_pairs = static_cast<std::int64_t>(m.rows) * (m.cols - 1) +
                                     static_cast<std::int64_t>(m.cols) * (m.rows - 1);
    const std::int64_t perimeter = 2LL * (m.rows + m.cols);
    return static_cast<double>(total_pairs - same_pairs + perimeter);
}

// One FFE = one full bi-objective evaluation of one solution. The counter is
// the single mutable point of the evaluation path; increment-and-check is
// atomic so harness-level parallel runs can share one budget if they choose to.
class FfeCounter {
public:
    explicit FfeCounter(std::int64_t budget) : budget_(budget) {
        if (budget <= 0) throw ValidationError("ffe budget must be positive");
    }

    // Claims one evaluation; false once the budget is exhausted.
    bool try_consume() {
        auto cur = used_.load(std::memory_order_relaxed);
        while (cur < budget_) {
            if (used_.compare_exchange_weak(cur, cur + 1, std::memory_order_relaxed)) return true;
        }
        return false;
    }

    std::int64_t used() const { return used_.load(std::memory_order_relaxed); }
    std::int64_t budget() const { return budget_; }
    std::int64_t remaining() const { return budget_ - used(); }

private:
    std::atomic<std::int64_t> used_{0};
    std::int64_t budget_;
};

// Evaluates a feasible genotype; nullopt signals budget exhaustion (no
// evaluation happened). Infeasible input is a caller bug: engines repair first.
inline std::optional<ObjectivePoint> evaluate(const Genotype& g, const Instance& inst,
                                              FfeCounter& ffe,
                                              TelMode mode = TelMode::boundary) {
    check_genotype(g, inst, "evaluate");
    if (unitation(g) != inst.budget())
        throw std::invalid_argument("evaluate: infeasible genotype (u(x) != T)");
    if (!ffe.try_consume()) return std::nullopt;
    thread_local DecodedMap scratch;
    decode_into(g, inst, scratch);
    return ObjectivePoint{eval_lap(scratch, inst), eval_tel(scratch, inst, mode)};
}

}  // namespace luo
