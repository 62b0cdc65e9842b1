#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "instance.hpp"
#include "objectives.hpp"
#include "operators.hpp"
#include "random.hpp"

namespace luo {

struct Solution {
    Genotype genotype;
    ObjectivePoint objectives;
    bool feasible = true;
};

enum class EngineKind { nsga2, moead };

inline std::string to_string(EngineKind k) {
    return k == EngineKind::nsga2 ? "NSGA-II" : "MOEA/D";
}
inline EngineKind engine_from_string(const std::string& s) {
    if (s == "NSGA-II") return EngineKind::nsga2;
    if (s == "MOEA/D") return EngineKind::moead;
    throw ValidationError("unknown engine '" + s + "' (expected NSGA-II or MOEA/D)");
}

struct EngineConfig {
    EngineKind engine = EngineKind::nsga2;
    int pop_size = 100;
    std::int64_t ffe_budget = 100000;
    int moead_neighborhood = 0;  // 0 resolves to max(2, ceil(0.1 * pop_size))
    std::uint64_t seed = 1;
    TelMode tel_mode = TelMode::boundary;
    OperatorConfig ops;

    int resolved_neighborhood() const {
        return moead_neighborhood > 0 ? moead_neighborhood : std::max(2, (pop_size + 9) / 10);
    }

    void validate() const {
        if (pop_size < 2) throw ValidationError("engine config: pop_size must be at least 2");
        if (ffe_budget <= 0) throw ValidationError("engine config: ffe_budget must be positive");
        ops.validate();
        if (engine == EngineKind::moead) {
            const int t = resolved_neighborhood();
            if (t < 2 || t > pop_size)
                throw ValidationError(
                    "engine config: moead_neighborhood must lie in [2, pop_size]");
        }
    }

    std::string label() const {
        return to_string(engine) + "+" + to_string(ops.init) + "+" + to_string(ops.mutation) +
               "+" + to_string(ops.crossover) + "+" + to_string(ops.repair);
    }
};

inline nlohmann::ordered_json engine_config_to_json(const EngineConfig& cfg) {
    nlohmann::ordered_json j;
    j["engine"] = to_string(cfg.engine);
    j["pop_size"] = cfg.pop_size;
    j["ffe_budget"] = cfg.ffe_budget;
    j["moead_neighborhood"] = cfg.moead_neighborhood;
    j["seed"] = cfg.seed;
    j["tel_mode"] = to_string(cfg.tel_mode);
    nlohmann::ordered_json ops;
    ops["init"] = to_string(cfg.ops.init);
    ops["mutation"] = to_string(cfg.ops.mutation);
    ops["crossover"] = to_string(cfg.ops.crossover);
    ops["repair"] = to_string(cfg.ops.repair);
    ops["p_cross"] = cfg.ops.p_cross;
    ops["p_mut"] = cfg.ops.p_mut;
    ops["drc_bridge_fixed_urban"] = cfg.ops.drc_bridge_fixed_urban;
    j["operators"] = std::move(ops);
    // fixed sub-operator probabilities, echoed for the record; never tunable
    nlohmann::ordered_json constants;
    constants["rbm_gate"] = kRbmGate;
    constants["rcm_gate"] = kRcmGate;
    constants["bcpm_gate"] = kBcpmGate;
    constants["mask_take_prob"] = kMaskTakeProb;
    j["constants"] = std::move(constants);
    return j;
}

inline EngineConfig engine_config_from_json(const nlohmann::json& j) {
    EngineConfig cfg;
    try {
        cfg.engine = engine_from_string(j.at("engine").get<std::string>());
        cfg.pop_size = j.at("pop_size").get<int>();
        cfg.ffe_budget = j.at("ffe_budget").get<std::int64_t>();
        if (j.contains("moead_neighborhood"))
            cfg.moead_neighborhood = j.at("moead_neighborhood").get<int>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("tel_mode"))
            cfg.tel_mode = tel_mode_from_string(j.at("tel_mode").get<std::string>());
        const auto& ops = j.at("operators");
        cfg.ops.init = init_from_string(ops.at("init").get<std::string>());
        cfg.ops.mutation = mutation_from_string(ops.at("mutation").get<std::string>());
        cfg.ops.crossover = crossover_from_string(ops.at("crossover").get<std::string>());
        cfg.ops.repair = repair_from_string(ops.at("repair").get<std::string>());
        cfg.ops.p_cross = ops.at("p_cross").get<double>();
        cfg.ops.p_mut = ops.at("p_mut").get<double>();
        if (ops.contains("drc_bridge_fixed_urban"))
            cfg.ops.drc_bridge_fixed_urban = ops.at("drc_bridge_fixed_urban").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("engine config: ") + e.what());
    }
    return cfg;
}

// Fast non-dominated sort (Deb). Fronts hold population indices; within-front
// ordering is stable by input index.
inline std::vector<std::vector<int>> nondominated_sort(const std::vector<ObjectivePoint>& pop) {
    if (pop.empty()) throw std::invalid_argument("nondominated_sort: empty population");
    const int n = static_cast<int>(pop.size());
    std::vector<std::vector<int>> dominated_by(static_cast<std::size_t>(n));
    std::vector<int> domination_count(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> fronts(1);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(pop[static_cast<std::size_t>(p)], pop[static_cast<std::size_t>(q)]))
                dominated_by[static_cast<std::size_t>(p)].push_back(q);
            else if (dominates(pop[static_cast<std::size_t>(q)], pop[static_cast<std::size_t>(p)]))
                ++domination_count[static_cast<std::size_t>(p)];
        }
        if (domination_count[static_cast<std::size_t>(p)] == 0) fronts[0].push_back(p);
    }
    std::size_t i = 0;
    while (!fronts[i].empty()) {
        std::vector<int> next;
        for (int p : fronts[i]) {
            for (int q : dominated_by[static_cast<std::size_t>(p)]) {
                if (--domination_count[static_cast<std::size_t>(q)] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
        ++i;
    }
    fronts.pop_back();
    return fronts;
}

// NSGA-II crowding distance over one front. Boundary solutions per objective
// get infinity; interior ones accumulate normalized neighbor gaps.
inline std::vector<double> crowding_distance(const std::vector<ObjectivePoint>& front) {
    if (front.empty()) throw std::invalid_argument("crowding_distance: empty front");
    const std::size_t m = front.size();
    std::vector<double> dist(m, 0.0);
    const double inf = std::numeric_limits<double>::infinity();
    for (int obj = 0; obj < 2; ++obj) {
        auto value = [&](std::size_t i) { return obj == 0 ? front[i].lap : front[i].tel; };
        std::vector<std::size_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
        dist[idx.front()] = inf;
        dist[idx.back()] = inf;
        const double span = value(idx.back()) - value(idx.front());
        if (span <= 0.0) continue;
        for (std::size_t k = 1; k + 1 < m; ++k)
            dist[idx[k]] += (value(idx[k + 1]) - value(idx[k - 1])) / span;
    }
    return dist;
}

// Tchebycheff scalarization against the running ideal point.
inline double tchebycheff(const ObjectivePoint& f, const std::array<double, 2>& lambda,
                          const ObjectivePoint& ideal) {
    return std::max(lambda[0] * std::abs(f.lap - ideal.lap),
                    lambda[1] * std::abs(f.tel - ideal.tel));
}

// Scale-corrected variant: objective deviations divided by the current
// population's ideal-to-worst span. LAP lives in [0,1] while TEL grows with
// the grid, so raw units would leave almost every subproblem chasing TEL.
inline double tchebycheff(const ObjectivePoint& f, const std::array<double, 2>& lambda,
                          const ObjectivePoint& ideal, const ObjectivePoint& span) {
    return std::max(lambda[0] * std::abs(f.lap - ideal.lap) / span.lap,
                    lambda[1] * std::abs(f.tel - ideal.tel) / span.tel);
}

struct FrontEntry {
    ObjectivePoint objectives;
    Genotype genotype;
};

// Non-dominated 2D archive keyed by lap; tel is strictly decreasing over keys.
// Ties on both objectives keep the incumbent.
class ParetoArchive {
public:
    bool insert(const ObjectivePoint& p, const Genotype& g) {
        auto it = by_lap_.upper_bound(p.lap);
        if (it != by_lap_.begin()) {
            auto pred = std::prev(it);
            if (pred->second.objectives.tel <= p.tel) return false;  // dominated or duplicate
            if (pred->first == p.lap) {
                pred->second = FrontEntry{p, g};
                erase_dominated_after(std::next(pred), p.tel);
                return true;
            }
        }
        auto inserted = by_lap_.emplace_hint(it, p.lap, FrontEntry{p, g});
        erase_dominated_after(std::next(inserted), p.tel);
        return true;
    }

    std::size_t size() const { return by_lap_.size(); }

    std::vector<FrontEntry> entries() const {
        std::vector<FrontEntry> out;
        out.reserve(by_lap_.size());
        for (const auto& [lap, entry] : by_lap_) out.push_back(entry);
        return out;
    }

private:
    void erase_dominated_after(std::map<double, FrontEntry>::iterator it, double tel) {
        while (it != by_lap_.end() && it->second.objectives.tel >= tel) it = by_lap_.erase(it);
    }
    std::map<double, FrontEntry> by_lap_;
};

struct TracePoint {
    int generation = 0;
    std::int64_t ffe = 0;
    int front_size = 0;
    double best_lap = 0.0;
    double best_tel = 0.0;
};

// Full output of one engine run; the persistence unit.
struct RunRecord {
    EngineConfig config;
    std::string instance_id;
    std::uint64_t instance_hash = 0;
    std::int64_t ffe_used = 0;
    std::vector<FrontEntry> front;  // sorted by (lap, tel), objective pairs unique
    std::vector<TracePoint> trace;
    OperatorLog ops;
};

inline nlohmann::ordered_json run_record_to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["config"] = engine_config_to_json(r.config);
    j["instance"] = {{"id", r.instance_id}, {"hash", hash_hex(r.instance_hash)}};
    j["seed"] = r.config.seed;
    j["ffe_used"] = r.ffe_used;
    nlohmann::ordered_json front = nlohmann::ordered_json::array();
    for (const auto& e : r.front) {
        front.push_back({{"lap", e.objectives.lap},
                         {"tel", e.objectives.tel},
                         {"genotype", genotype_to_string(e.genotype)}});
    }
    j["front"] = std::move(front);
    nlohmann::ordered_json trace = nlohmann::ordered_json::array();
    for (const auto& t : r.trace) {
        trace.push_back({{"gen", t.generation},
                         {"ffe", t.ffe},
                         {"front_size", t.front_size},
                         {"best_lap", t.best_lap},
                         {"best_tel", t.best_tel}});
    }
    j["trace"] = std::move(trace);
    j["operator_log"] = {{"rcm_noop", r.ops.rcm_noop},
                         {"bcpm_noop", r.ops.bcpm_noop},
                         {"bcpm_fixed_regrow", r.ops.bcpm_fixed_regrow},
                         {"bcpm_next_region", r.ops.bcpm_next_region},
                         {"bcpm_uniform_fill", r.ops.bcpm_uniform_fill},
                         {"rrm_deficiency_fallback", r.ops.rrm_deficiency_fallback},
                         {"init_forced_accepts", r.ops.init_forced_accepts}};
    return j;
}

inline RunRecord run_record_from_json(const nlohmann::json& j) {
    RunRecord r;
    try {
        r.config = engine_config_from_json(j.at("config"));
        r.instance_id = j.at("instance").at("id").get<std::string>();
        r.instance_hash = std::stoull(j.at("instance").at("hash").get<std::string>(), nullptr, 16);
        r.ffe_used = j.at("ffe_used").get<std::int64_t>();
        for (const auto& e : j.at("front")) {
            FrontEntry entry;
            entry.objectives = {e.at("lap").get<double>(), e.at("tel").get<double>()};
            entry.genotype = genotype_from_string(e.at("genotype").get<std::string>());
            r.front.push_back(std::move(entry));
        }
        if (j.contains("trace")) {
            for (const auto& t : j.at("trace")) {
                r.trace.push_back({t.at("gen").get<int>(), t.at("ffe").get<std::int64_t>(),
                                   t.at("front_size").get<int>(), t.at("best_lap").get<double>(),
                                   t.at("best_tel").get<double>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("run record: ") + e.what());
    }
    return r;
}

inline void write_run_record(const RunRecord& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write run record: " + path);
    out << run_record_to_json(r).dump() << '\n';
}

inline RunRecord load_run_record(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open run record: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("run record " + path + ": " + e.what());
    }
    return run_record_from_json(j);
}

namespace detail {

inline std::vector<FrontEntry> sorted_front(std::vector<FrontEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const FrontEntry& a, const FrontEntry& b) {
        if (a.objectives.lap != b.objectives.lap) return a.objectives.lap < b.objectives.lap;
        return a.objectives.tel < b.objectives.tel;
    });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const FrontEntry& a, const FrontEntry& b) {
                                  return a.objectives == b.objectives;
                              }),
                  entries.end());
    return entries;
}

inline TracePoint make_trace_point(int gen, std::int64_t ffe, std::size_t front_size,
                                   const std::vector<Solution>& pop) {
    TracePoint t;
    t.generation = gen;
    t.ffe = ffe;
    t.front_size = static_cast<int>(front_size);
    double best_lap = std::numeric_limits<double>::infinity();
    double best_tel = std::numeric_limits<double>::infinity();
    for (const auto& s : pop) {
        best_lap = std::min(best_lap, s.objectives.lap);
        best_tel = std::min(best_tel, s.objectives.tel);
    }
    t.best_lap = best_lap;
    t.best_tel = best_tel;
    return t;
}

// Binary tournament on (front rank asc, crowding desc); remaining ties uniform.
inline int tournament(RandomStream& rng, const std::vector<int>& rank,
                      const std::vector<double>& crowding) {
    const auto i = static_cast<int>(rng.uniform_index(rank.size()));
    const auto j = static_cast<int>(rng.uniform_index(rank.size()));
    const auto iu = static_cast<std::size_t>(i), ju = static_cast<std::size_t>(j);
    if (rank[iu] != rank[ju]) return rank[iu] < rank[ju] ? i : j;
    if (crowding[iu] != crowding[ju]) return crowding[iu] > crowding[ju] ? i : j;
    return rng.bernoulli(0.5) ? i : j;
}

inline std::vector<ObjectivePoint> objective_points(const std::vector<Solution>& pop) {
    std::vector<ObjectivePoint> pts;
    pts.reserve(pop.size());
    for (const auto& s : pop) pts.push_back(s.objectives);
    return pts;
}

}  // namespace detail

inline RunRecord run_nsga2(const Instance& inst, const EngineConfig& cfg) {
    cfg.validate();
    RandomStream rng(cfg.seed);
    FfeCounter ffe(cfg.ffe_budget);
    RunRecord record;
    record.config = cfg;
    record.instance_id = inst.label();
    record.instance_hash = inst.content_hash();

    std::vector<Solution> pop;
    for (auto& g : initialize(inst, rng, cfg.ops.init, cfg.pop_size, &record.ops)) {
        auto obj = evaluate(g, inst, ffe, cfg.tel_mode);
        if (!obj) break;  // budget smaller than the initial population
        pop.push_back(Solution{std::move(g), *obj, true});
    }

    int generation = 0;
    if (!pop.empty()) {
        auto fronts = nondominated_sort(detail::objective_points(pop));
        record.trace.push_back(
            detail::make_trace_point(generation, ffe.used(), fronts[0].size(), pop));

        // a generation costs exactly pop_size evaluations; never start one that
        // would overshoot the budget (partial generations are discarded)
        while (ffe.remaining() >= cfg.pop_size) {
            std::vector<int> rank(pop.size(), 0);
            std::vector<double> crowd(pop.size(), 0.0);
            for (std::size_t fi = 0; fi < fronts.size(); ++fi) {
                std::vector<ObjectivePoint> front_pts;
                for (int idx : fronts[fi]) front_pts.push_back(pop[static_cast<std::size_t>(idx)].objectives);
                auto cd = crowding_distance(front_pts);
                for (std::size_t k = 0; k < fronts[fi].size(); ++k) {
                    rank[static_cast<std::size_t>(fronts[fi][k])] = static_cast<int>(fi);
                    crowd[static_cast<std::size_t>(fronts[fi][k])] = cd[k];
                }
            }

            std::vector<Solution> offspring;
            offspring.reserve(static_cast<std::size_t>(cfg.pop_size));
            while (static_cast<int>(offspring.size()) < cfg.pop_size) {
                const auto& pa = pop[static_cast<std::size_t>(detail::tournament(rng, rank, crowd))];
                const auto& pb = pop[static_cast<std::size_t>(detail::tournament(rng, rank, crowd))];
                std::pair<Genotype, Genotype> children{pa.genotype, pb.genotype};
                if (rng.bernoulli(cfg.ops.p_cross))
                    children = crossover(pa.genotype, pb.genotype, inst, rng, cfg.ops);
                for (Genotype* child : {&children.first, &children.second}) {
                    if (static_cast<int>(offspring.size()) >= cfg.pop_size) break;
                    Genotype g = mutate_and_repair(std::move(*child), inst, rng, cfg.ops,
                                                   &record.ops);
                    auto obj = evaluate(g, inst, ffe, cfg.tel_mode);
                    if (!obj) break;  // unreachable under the budget guard
                    offspring.push_back(Solution{std::move(g), *obj, true});
                }
            }

            std::vector<Solution> merged = std::move(pop);
            for (auto& s : offspring) merged.push_back(std::move(s));
            auto merged_fronts = nondominated_sort(detail::objective_points(merged));
            std::vector<Solution> next;
            next.reserve(static_cast<std::size_t>(cfg.pop_size));
            for (auto& front : merged_fronts) {
                if (static_cast<int>(next.size()) >= cfg.pop_size) break;
                if (static_cast<int>(next.size() + front.size()) <= cfg.pop_size) {
                    for (int idx : front) next.push_back(std::move(merged[static_cast<std::size_t>(idx)]));
                    continue;
                }
                std::vector<ObjectivePoint> front_pts;
                for (int idx : front) front_pts.push_back(merged[static_cast<std::size_t>(idx)].objectives);
                auto cd = crowding_distance(front_pts);
                std::vector<std::size_t> order(front.size());
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
                for (std::size_t k = 0; static_cast<int>(next.size()) < cfg.pop_size; ++k)
                    next.push_back(std::move(merged[static_cast<std::size_t>(front[order[k]])]));
            }
            pop = std::move(next);
            ++generation;
            fronts = nondominated_sort(detail::objective_points(pop));
            record.trace.push_back(
                detail::make_trace_point(generation, ffe.used(), fronts[0].size(), pop));
        }

        std::vector<FrontEntry> entries;
        for (int idx : fronts[0])
            entries.push_back(FrontEntry{pop[static_cast<std::size_t>(idx)].objectives,
                                         pop[static_cast<std::size_t>(idx)].genotype});
        record.front = detail::sorted_front(std::move(entries));
    }
    record.ffe_used = ffe.used();
    return record;
}

inline RunRecord run_moead(const Instance& inst, const EngineConfig& cfg) {
    cfg.validate();
    RandomStream rng(cfg.seed);
    FfeCounter ffe(cfg.ffe_budget);
    RunRecord record;
    record.config = cfg;
    record.instance_id = inst.label();
    record.instance_hash = inst.content_hash();

    const int n = cfg.pop_size;
    std::vector<std::array<double, 2>> lambda(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double w = n > 1 ? static_cast<double>(i) / (n - 1) : 0.5;
        lambda[static_cast<std::size_t>(i)] = {w, 1.0 - w};
    }
    const int t_size = cfg.resolved_neighborhood();
    std::vector<std::vector<int>> neighborhood(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const double da = std::abs(lambda[static_cast<std::size_t>(a)][0] -
                                       lambda[static_cast<std::size_t>(i)][0]);
            const double db = std::abs(lambda[static_cast<std::size_t>(b)][0] -
                                       lambda[static_cast<std::size_t>(i)][0]);
            return da < db;
        });
        order.resize(static_cast<std::size_t>(t_size));
        neighborhood[static_cast<std::size_t>(i)] = std::move(order);
    }

    ParetoArchive archive;
    ObjectivePoint ideal{std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()};
    std::vector<Solution> pop;
    for (auto& g : initialize(inst, rng, cfg.ops.init, n, &record.ops)) {
        auto obj = evaluate(g, inst, ffe, cfg.tel_mode);
        if (!obj) break;
        ideal.lap = std::min(ideal.lap, obj->lap);
        ideal.tel = std::min(ideal.tel, obj->tel);
        archive.insert(*obj, g);
        pop.push_back(Solution{std::move(g), *obj, true});
    }

    auto population_span = [&]() {
        ObjectivePoint worst{-std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity()};
        for (const auto& s : pop) {
            worst.lap = std::max(worst.lap, s.objectives.lap);
            worst.tel = std::max(worst.tel, s.objectives.tel);
        }
        return ObjectivePoint{std::max(worst.lap - ideal.lap, 1e-12),
                              std::max(worst.tel - ideal.tel, 1e-12)};
    };

    int generation = 0;
    if (static_cast<int>(pop.size()) == n) {
        record.trace.push_back(detail::make_trace_point(generation, ffe.used(), archive.size(), pop));
        bool exhausted = false;
        while (!exhausted) {
            std::int64_t evaluated_this_sweep = 0;
            for (int i = 0; i < n; ++i) {
                if (ffe.remaining() < 1) {  // partial sweeps are kept
                    exhausted = true;
                    break;
                }
                const auto& nb = neighborhood[static_cast<std::size_t>(i)];
                const auto k1 = rng.uniform_index(nb.size());
                auto k2 = rng.uniform_index(nb.size() - 1);
                if (k2 >= k1) ++k2;  // two distinct mates from the neighborhood
                const auto& pa = pop[static_cast<std::size_t>(nb[k1])];
                const auto& pb = pop[static_cast<std::size_t>(nb[k2])];
                std::pair<Genotype, Genotype> children{pa.genotype, pb.genotype};
                if (rng.bernoulli(cfg.ops.p_cross))
                    children = crossover(pa.genotype, pb.genotype, inst, rng, cfg.ops);
                Genotype child = rng.bernoulli(0.5) ? std::move(children.first)
                                                    : std::move(children.second);
                child = mutate_and_repair(std::move(child), inst, rng, cfg.ops, &record.ops);
                auto obj = evaluate(child, inst, ffe, cfg.tel_mode);
                if (!obj) {
                    exhausted = true;
                    break;
                }
                ++evaluated_this_sweep;
                ideal.lap = std::min(ideal.lap, obj->lap);
                ideal.tel = std::min(ideal.tel, obj->tel);
                const ObjectivePoint span = population_span();
                for (int j : nb) {
                    const auto ju = static_cast<std::size_t>(j);
                    if (tchebycheff(*obj, lambda[ju], ideal, span) <
                        tchebycheff(pop[ju].objectives, lambda[ju], ideal, span)) {
                        pop[ju] = Solution{child, *obj, true};
                    }
                }
                archive.insert(*obj, child);
            }
            if (evaluated_this_sweep > 0) {
                ++generation;
                record.trace.push_back(
                    detail::make_trace_point(generation, ffe.used(), archive.size(), pop));
            }
        }
    }

    record.front = detail::sorted_front(archive.entries());
    record.ffe_used = ffe.used();
    return record;
}

inline RunRecord run_engine(const Instance& inst, const EngineConfig& cfg) {
    return cfg.engine == EngineKind::nsga2 ? run_nsga2(inst, cfg) : run_moead(inst, cfg);
}

}  // namespace luo
