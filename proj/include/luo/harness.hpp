#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "engines.hpp"
#include "instance.hpp"
#include "metrics.hpp"

namespace luo {

// ---------------------------------------------------------------------------
// Parameter tuning (hill climb with direction flips and step halving)
// ---------------------------------------------------------------------------

struct TuneGuards {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool integral = false;
};

struct TuneEvaluation {
    double value = 0.0;   // evaluated (clamped) parameter value
    double score = 0.0;
    bool improved = false;
};

struct TuneTrace {
    std::vector<TuneEvaluation> evaluations;  // 1 + iterations entries
    double best_value = 0.0;
    double best_score = 0.0;
    double final_step = 0.0;   // step > 0 throughout; halved on minus-to-plus flips
    int final_direction = +1;
    int iterations = 0;
};

// Iterative climb: move the best-so-far value by `step` in the current
// direction (initially addition); a worse score flips the direction, and a
// flip from subtraction back to addition halves the step first. Scores
// improve only strictly; guard-violating proposals are clamped (and rounded
// for integral parameters) before evaluation.
template <class Objective>
inline TuneTrace tune_parameter(Objective&& objective, double start, double step, int iterations,
                                const TuneGuards& guards = {}) {
    if (iterations < 1) throw std::invalid_argument("tune_parameter: iterations must be >= 1");
    if (!(step > 0.0)) throw std::invalid_argument("tune_parameter: step must be positive");
    auto clamp_value = [&](double v) {
        if (guards.integral) v = std::round(v);
        return std::clamp(v, guards.lo, guards.hi);
    };
    TuneTrace trace;
    double best = clamp_value(start);
    double best_score = objective(best);
    trace.evaluations.push_back({best, best_score, true});
    int direction = +1;
    for (int it = 0; it < iterations; ++it) {
        const double proposal = clamp_value(best + direction * step);
        const double score = objective(proposal);
        const bool improved = score > best_score;
        if (improved) {
            best = proposal;
            best_score = score;
        } else {
            if (direction < 0) step /= 2.0;  // flip from subtraction to addition
            direction = -direction;
        }
        trace.evaluations.push_back({proposal, score, improved});
    }
    trace.best_value = best;
    trace.best_score = best_score;
    trace.final_step = step;
    trace.final_direction = direction;
    trace.iterations = iterations;
    return trace;
}

struct TuneSession {
    struct ParamRun {
        int start_index = 0;       // which of the two starting points
        std::string parameter;     // "pop_size" | "p_cross" | "p_mut"
        TuneTrace trace;
    };
    std::vector<ParamRun> params;
    EngineConfig tuned;
    double tuned_score = 0.0;
    int chosen_start = 0;
    ObjectivePoint reference;  // session-fixed HV reference point
    std::vector<std::uint64_t> seeds;
};

namespace detail {

struct TuneEvaluator {
    const std::vector<Instance>& instances;
    std::vector<std::uint64_t> seeds;
    std::optional<ObjectivePoint> reference;

    // Mean hypervolume over instances x seeds; the reference point is frozen
    // from the first evaluation's pooled fronts.
    double operator()(const EngineConfig& cfg) {
        std::vector<Front> fronts;
        for (const auto& inst : instances) {
            for (std::uint64_t seed : seeds) {
                EngineConfig run_cfg = cfg;
                run_cfg.seed = seed;
                RunRecord rec = run_engine(inst, run_cfg);
                Front f;
                for (const auto& e : rec.front) f.push_back(e.objectives);
                fronts.push_back(std::move(f));
            }
        }
        if (!reference) reference = reference_point(fronts);
        double total = 0.0;
        for (const auto& f : fronts) total += hypervolume_2d_clipped(f, *reference);
        return total / static_cast<double>(fronts.size());
    }
};

}  // namespace detail

// Two-start tuning session: population size, then crossover probability, then
// mutation probability, each climbed from the best-so-far configuration with
// the stated steps (40 and 5%) over 10 iterations and scored by mean HV over
// 5 seeds derived from the master seed. The better final configuration wins;
// ties keep the first start.
inline TuneSession tune_config(const std::vector<Instance>& instances, const EngineConfig& base,
                               std::uint64_t master_seed, int iterations = 10) {
    if (instances.empty()) throw ValidationError("tune_config: no instances");
    base.validate();

    TuneSession session;
    detail::TuneEvaluator evaluate{instances, {}, std::nullopt};
    for (std::uint64_t i = 0; i < 5; ++i) evaluate.seeds.push_back(derive_seed(master_seed, i));
    session.seeds = evaluate.seeds;

    const TuneGuards pop_guards{2.0, 1e6, true};
    const TuneGuards prob_guards{0.01, 1.0, false};

    struct Start {
        double p_cross, p_mut;
    };
    const Start starts[2] = {{0.5, 0.5}, {0.9, 0.1}};

    EngineConfig best_cfg = base;
    double best_score = -std::numeric_limits<double>::infinity();
    int chosen = 0;
    for (int si = 0; si < 2; ++si) {
        EngineConfig cfg = base;
        cfg.pop_size = 100;
        cfg.ops.p_cross = starts[si].p_cross;
        cfg.ops.p_mut = starts[si].p_mut;

        double final_score = 0.0;
        auto climb = [&](const std::string& name, double start_value, double step,
                         const TuneGuards& guards, auto&& setter) {
            auto objective = [&](double v) {
                EngineConfig candidate = cfg;
                setter(candidate, v);
                return evaluate(candidate);
            };
            TuneTrace trace = tune_parameter(objective, start_value, step, iterations, guards);
            setter(cfg, trace.best_value);
            final_score = trace.best_score;
            session.params.push_back({si, name, std::move(trace)});
        };
        climb("pop_size", cfg.pop_size, 40.0, pop_guards,
              [](EngineConfig& c, double v) { c.pop_size = static_cast<int>(std::lround(v)); });
        climb("p_cross", cfg.ops.p_cross, 0.05, prob_guards,
              [](EngineConfig& c, double v) { c.ops.p_cross = v; });
        climb("p_mut", cfg.ops.p_mut, 0.05, prob_guards,
              [](EngineConfig& c, double v) { c.ops.p_mut = v; });

        if (final_score > best_score) {
            best_score = final_score;
            best_cfg = cfg;
            chosen = si;
        }
    }
    session.tuned = best_cfg;
    session.tuned_score = best_score;
    session.chosen_start = chosen;
    session.reference = evaluate.reference.value();
    return session;
}

inline nlohmann::ordered_json tune_session_to_json(const TuneSession& s) {
    nlohmann::ordered_json j;
    j["tuned_config"] = engine_config_to_json(s.tuned);
    j["score"] = s.tuned_score;
    j["chosen_start"] = s.chosen_start;
    j["reference_point"] = {{"lap", s.reference.lap}, {"tel", s.reference.tel}};
    j["seeds"] = s.seeds;
    nlohmann::ordered_json params = nlohmann::ordered_json::array();
    for (const auto& p : s.params) {
        nlohmann::ordered_json entry;
        entry["start"] = p.start_index;
        entry["parameter"] = p.parameter;
        entry["best_value"] = p.trace.best_value;
        entry["best_score"] = p.trace.best_score;
        entry["final_step"] = p.trace.final_step;
        entry["final_direction"] = p.trace.final_direction;
        entry["iterations"] = p.trace.iterations;
        nlohmann::ordered_json evals = nlohmann::ordered_json::array();
        for (const auto& e : p.trace.evaluations)
            evals.push_back({{"value", e.value}, {"score", e.score}, {"improved", e.improved}});
        entry["evaluations"] = std::move(evals);
        params.push_back(std::move(entry));
    }
    j["parameters"] = std::move(params);
    return j;
}

// ---------------------------------------------------------------------------
// Experiment execution
// ---------------------------------------------------------------------------

struct PlannedConfig {
    std::string name;
    EngineConfig config;
};

struct ExperimentPlan {
    std::vector<std::string> instance_paths;
    std::vector<PlannedConfig> configs;
    std::vector<std::uint64_t> seeds;
    std::int64_t ffe_budget = 0;  // > 0 overrides every config's budget

    void validate() const {
        if (instance_paths.empty()) throw ValidationError("experiment plan: no instances");
        if (configs.empty()) throw ValidationError("experiment plan: no configs");
        if (seeds.empty()) throw ValidationError("experiment plan: no seeds");
        std::set<std::string> names;
        for (const auto& c : configs) {
            if (c.name.empty()) throw ValidationError("experiment plan: config without a name");
            if (!names.insert(c.name).second)
                throw ValidationError("experiment plan: duplicate config name '" + c.name + "'");
            c.config.validate();
        }
        std::set<std::uint64_t> unique_seeds(seeds.begin(), seeds.end());
        if (unique_seeds.size() != seeds.size())
            throw ValidationError("experiment plan: duplicate seeds");
    }
};

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
    ExperimentPlan plan;
    try {
        for (const auto& p : j.at("instances")) plan.instance_paths.push_back(p.get<std::string>());
        if (j.contains("budget")) plan.ffe_budget = j.at("budget").get<std::int64_t>();
        if (j.contains("seeds") && j.at("seeds").is_array()) {
            for (const auto& s : j.at("seeds")) plan.seeds.push_back(s.get<std::uint64_t>());
        } else if (j.contains("seeds")) {
            const auto& s = j.at("seeds");
            const auto master = s.at("master").get<std::uint64_t>();
            const auto count = s.at("count").get<std::uint64_t>();
            for (std::uint64_t i = 0; i < count; ++i) plan.seeds.push_back(derive_seed(master, i));
        }
        for (const auto& c : j.at("configs")) {
            PlannedConfig pc;
            pc.name = c.at("name").get<std::string>();
            pc.config = engine_config_from_json(c);
            plan.configs.push_back(std::move(pc));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("experiment plan: ") + e.what());
    }
    plan.validate();
    return plan;
}

inline ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open plan file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("plan file " + path + ": " + e.what());
    }
    return plan_from_json(j);
}

struct ManifestEntry {
    std::string instance;  // instance path from the plan
    std::string config;    // config name
    std::uint64_t seed = 0;
    std::string file;      // record filename relative to the archive dir
    std::string hash;      // fnv1a64 of the record file bytes
    std::string status;    // "ok" or "failed"
    std::string error;
};

struct ExperimentOutcome {
    std::vector<ManifestEntry> manifest;
    std::string out_dir;
};

namespace detail {

inline std::string sanitize_filename(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '-';
    return out;
}

inline std::string file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read back file: " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

}  // namespace detail

// Executes every (instance, config, seed) cell of the plan, persisting one
// record per run plus a manifest. Cell failures are recorded without aborting
// siblings; cells are independent and may run on several worker threads.
inline ExperimentOutcome run_experiment(const ExperimentPlan& plan, const std::string& out_dir,
                                        int workers = 1) {
    plan.validate();
    if (workers < 1) throw ValidationError("run_experiment: workers must be >= 1");
    std::filesystem::create_directories(out_dir);

    struct LoadedInstance {
        std::optional<Instance> instance;
        std::string error;
    };
    std::vector<LoadedInstance> instances;
    for (const auto& path : plan.instance_paths) {
        LoadedInstance li;
        try {
            li.instance = load_instance(path);
        } catch (const std::exception& e) {
            li.error = e.what();
        }
        instances.push_back(std::move(li));
    }

    struct Cell {
        std::size_t inst, cfg, seed;
    };
    std::vector<Cell> cells;
    for (std::size_t ii = 0; ii < plan.instance_paths.size(); ++ii)
        for (std::size_t ci = 0; ci < plan.configs.size(); ++ci)
            for (std::size_t si = 0; si < plan.seeds.size(); ++si) cells.push_back({ii, ci, si});

    std::vector<ManifestEntry> manifest(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cells.size()) return;
            const Cell& cell = cells[k];
            ManifestEntry& entry = manifest[k];
            entry.instance = plan.instance_paths[cell.inst];
            entry.config = plan.configs[cell.cfg].name;
            entry.seed = plan.seeds[cell.seed];
            try {
                const auto& li = instances[cell.inst];
                if (!li.instance) throw IoError(li.error);
                EngineConfig cfg = plan.configs[cell.cfg].config;
                cfg.seed = entry.seed;
                if (plan.ffe_budget > 0) cfg.ffe_budget = plan.ffe_budget;
                RunRecord record = run_engine(*li.instance, cfg);
                const std::string filename = "run_i" + std::to_string(cell.inst) + "_" +
                                             detail::sanitize_filename(entry.config) + "_s" +
                                             std::to_string(entry.seed) + ".json";
                write_run_record(record, (std::filesystem::path(out_dir) / filename).string());
                const std::string bytes =
                    detail::file_bytes((std::filesystem::path(out_dir) / filename).string());
                entry.file = filename;
                entry.hash = hash_hex(fnv1a64(bytes.data(), bytes.size()));
                entry.status = "ok";
            } catch (const std::exception& e) {
                entry.status = "failed";
                entry.error = e.what();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    nlohmann::ordered_json mj;
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& e : manifest) {
        nlohmann::ordered_json r;
        r["instance"] = e.instance;
        r["config"] = e.config;
        r["seed"] = e.seed;
        r["status"] = e.status;
        r["file"] = e.file;
        r["hash"] = e.hash;
        r["error"] = e.error;
        records.push_back(std::move(r));
    }
    mj["records"] = std::move(records);
    const auto manifest_path = (std::filesystem::path(out_dir) / "manifest.json").string();
    std::ofstream out(manifest_path, std::ios::binary);
    if (!out) throw IoError("cannot write manifest: " + manifest_path);
    out << mj.dump(2) << '\n';
    return {std::move(manifest), out_dir};
}

// ---------------------------------------------------------------------------
// Statistical comparison
// ---------------------------------------------------------------------------

struct LoadedRun {
    std::string optimizer;
    std::string instance;
    std::uint64_t seed = 0;
    Front front;
    std::int64_t ffe_used = 0;
};

inline std::vector<LoadedRun> load_archive(const std::string& dir) {
    const auto manifest_path = (std::filesystem::path(dir) / "manifest.json").string();
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw IoError("cannot open manifest: " + manifest_path);
    nlohmann::json mj;
    try {
        in >> mj;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest " + manifest_path + ": " + e.what());
    }
    std::vector<LoadedRun> runs;
    try {
        for (const auto& r : mj.at("records")) {
            if (r.at("status").get<std::string>() != "ok") continue;
            LoadedRun run;
            run.optimizer = r.at("config").get<std::string>();
            run.instance = r.at("instance").get<std::string>();
            run.seed = r.at("seed").get<std::uint64_t>();
            RunRecord rec = load_run_record(
                (std::filesystem::path(dir) / r.at("file").get<std::string>()).string());
            for (const auto& e : rec.front) run.front.push_back(e.objectives);
            run.ffe_used = rec.ffe_used;
            runs.push_back(std::move(run));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest " + manifest_path + ": " + e.what());
    }
    return runs;
}

struct OptimizerInstanceStats {
    std::vector<std::uint64_t> seeds;  // ascending
    std::vector<double> hv;            // aligned with seeds
    std::vector<double> igd;
    double mean_hv = 0.0;
    double mean_igd = 0.0;
    double norm_hv = 0.0;
    double norm_igd = 0.0;
};

struct RankBlock {
    std::vector<double> per_instance;
    RankStats stats;
};

struct PairwiseEntry {
    std::string a, b;
    int a_better_hv = 0;  // instances where mean HV of a strictly exceeds b's
    int a_worse_hv = 0;
    std::map<std::string, WilcoxonResult> wilcoxon_hv;   // per instance, when >= 5 shared seeds
    std::map<std::string, WilcoxonResult> wilcoxon_igd;
};

struct ComparisonReport {
    std::vector<std::string> optimizers;  // first-appearance order
    std::vector<std::string> instances;
    std::map<std::string, Front> pseudo_front;
    std::map<std::string, ObjectivePoint> ref_point;
    std::map<std::string, std::map<std::string, OptimizerInstanceStats>> stats;  // [inst][opt]
    std::map<std::string, RankBlock> hv_rank;
    std::map<std::string, RankBlock> igd_rank;
    std::map<std::string, double> joined_rank;
    std::vector<PairwiseEntry> pairs;
};

// Pooled-reference comparison over a run archive: per instance, a pooled
// pseudo-optimal front and a shared reference point; per run HV and IGD;
// per optimizer means, min-max normalization, rank tables, the joined rank,
// and pairwise better/worse counts with per-instance Wilcoxon tests.
inline ComparisonReport compare(const std::vector<LoadedRun>& runs, double alpha = 0.05) {
    if (runs.empty()) throw CoverageError("compare: empty archive");
    ComparisonReport report;
    for (const auto& r : runs) {
        if (std::find(report.optimizers.begin(), report.optimizers.end(), r.optimizer) ==
            report.optimizers.end())
            report.optimizers.push_back(r.optimizer);
        if (std::find(report.instances.begin(), report.instances.end(), r.instance) ==
            report.instances.end())
            report.instances.push_back(r.instance);
    }

    // coverage check + per-cell run collection (seed-sorted for determinism)
    std::map<std::string, std::map<std::string, std::vector<const LoadedRun*>>> cells;
    for (const auto& r : runs) cells[r.instance][r.optimizer].push_back(&r);
    std::string missing;
    for (const auto& inst : report.instances) {
        for (const auto& opt : report.optimizers) {
            auto iit = cells.find(inst);
            if (iit == cells.end() || iit->second.find(opt) == iit->second.end())
                missing += (missing.empty() ? "" : ", ") + opt + " on " + inst;
        }
    }
    if (!missing.empty()) throw CoverageError("compare: missing cells: " + missing);
    for (auto& [inst, by_opt] : cells) {
        for (auto& [opt, cell_runs] : by_opt) {
            std::sort(cell_runs.begin(), cell_runs.end(),
                      [](const LoadedRun* a, const LoadedRun* b) { return a->seed < b->seed; });
            for (std::size_t i = 1; i < cell_runs.size(); ++i)
                if (cell_runs[i]->seed == cell_runs[i - 1]->seed)
                    throw CoverageError("compare: duplicate run for " + opt + " on " + inst +
                                        " with seed " + std::to_string(cell_runs[i]->seed));
        }
    }

    for (const auto& inst : report.instances) {
        std::vector<Front> pooled;
        for (const auto& opt : report.optimizers)
            for (const LoadedRun* r : cells[inst][opt]) pooled.push_back(r->front);
        report.pseudo_front[inst] = pseudo_optimal_front(pooled);
        report.ref_point[inst] = reference_point(pooled);

        for (const auto& opt : report.optimizers) {
            OptimizerInstanceStats s;
            for (const LoadedRun* r : cells[inst][opt]) {
                s.seeds.push_back(r->seed);
                s.hv.push_back(hypervolume_2d(r->front, report.ref_point[inst]));
                s.igd.push_back(igd(report.pseudo_front[inst], r->front));
            }
            s.mean_hv = std::accumulate(s.hv.begin(), s.hv.end(), 0.0) /
                        static_cast<double>(s.hv.size());
            s.mean_igd = std::accumulate(s.igd.begin(), s.igd.end(), 0.0) /
                         static_cast<double>(s.igd.size());
            report.stats[inst][opt] = std::move(s);
        }
        double min_hv = std::numeric_limits<double>::infinity(), max_hv = -min_hv;
        double min_igd = min_hv, max_igd = -min_hv;
        for (const auto& opt : report.optimizers) {
            const auto& s = report.stats[inst][opt];
            min_hv = std::min(min_hv, s.mean_hv);
            max_hv = std::max(max_hv, s.mean_hv);
            min_igd = std::min(min_igd, s.mean_igd);
            max_igd = std::max(max_igd, s.mean_igd);
        }
        for (const auto& opt : report.optimizers) {
            auto& s = report.stats[inst][opt];
            s.norm_hv = normalize(s.mean_hv, min_hv, max_hv);
            s.norm_igd = normalize(s.mean_igd, min_igd, max_igd);
        }
    }

    // rank tables on per-instance means; HV maximized, IGD minimized
    std::vector<std::vector<double>> hv_scores, igd_scores;
    for (const auto& opt : report.optimizers) {
        std::vector<double> hv_row, igd_row;
        for (const auto& inst : report.instances) {
            hv_row.push_back(report.stats[inst][opt].mean_hv);
            igd_row.push_back(report.stats[inst][opt].mean_igd);
        }
        hv_scores.push_back(std::move(hv_row));
        igd_scores.push_back(std::move(igd_row));
    }
    const auto hv_ranks = rank_matrix(hv_scores, RankDirection::maximize);
    const auto igd_ranks = rank_matrix(igd_scores, RankDirection::minimize);
    for (std::size_t oi = 0; oi < report.optimizers.size(); ++oi) {
        const auto& opt = report.optimizers[oi];
        report.hv_rank[opt] = {hv_ranks[oi], rank_stats(hv_ranks[oi])};
        report.igd_rank[opt] = {igd_ranks[oi], rank_stats(igd_ranks[oi])};
        report.joined_rank[opt] =
            (report.hv_rank[opt].stats.average + report.igd_rank[opt].stats.average) / 2.0;
    }

    for (std::size_t a = 0; a < report.optimizers.size(); ++a) {
        for (std::size_t b = a + 1; b < report.optimizers.size(); ++b) {
            PairwiseEntry pair;
            pair.a = report.optimizers[a];
            pair.b = report.optimizers[b];
            for (const auto& inst : report.instances) {
                const auto& sa = report.stats[inst][pair.a];
                const auto& sb = report.stats[inst][pair.b];
                if (sa.mean_hv > sb.mean_hv) ++pair.a_better_hv;
                if (sa.mean_hv < sb.mean_hv) ++pair.a_worse_hv;
                // Wilcoxon over per-seed values paired by seed
                std::vector<double> xa, ya, xi, yi;
                for (std::size_t i = 0; i < sa.seeds.size(); ++i) {
                    for (std::size_t j = 0; j < sb.seeds.size(); ++j) {
                        if (sa.seeds[i] != sb.seeds[j]) continue;
                        xa.push_back(sa.hv[i]);
                        ya.push_back(sb.hv[j]);
                        xi.push_back(sa.igd[i]);
                        yi.push_back(sb.igd[j]);
                    }
                }
                if (xa.size() >= 5) {
                    pair.wilcoxon_hv[inst] = wilcoxon_signed_rank(xa, ya, alpha);
                    pair.wilcoxon_igd[inst] = wilcoxon_signed_rank(xi, yi, alpha);
                }
            }
            report.pairs.push_back(std::move(pair));
        }
    }
    return report;
}

inline nlohmann::ordered_json comparison_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json j;
    j["optimizers"] = report.optimizers;
    j["instances"] = report.instances;
    nlohmann::ordered_json per_instance;
    for (const auto& inst : report.instances) {
        nlohmann::ordered_json block;
        const auto& ref = report.ref_point.at(inst);
        block["reference_point"] = {{"lap", ref.lap}, {"tel", ref.tel}};
        nlohmann::ordered_json pf = nlohmann::ordered_json::array();
        for (const auto& p : report.pseudo_front.at(inst)) pf.push_back({p.lap, p.tel});
        block["pseudo_front"] = std::move(pf);
        nlohmann::ordered_json opts;
        for (const auto& opt : report.optimizers) {
            const auto& s = report.stats.at(inst).at(opt);
            nlohmann::ordered_json so;
            so["seeds"] = s.seeds;
            so["hv"] = s.hv;
            so["igd"] = s.igd;
            so["mean_hv"] = s.mean_hv;
            so["mean_igd"] = s.mean_igd;
            so["norm_hv"] = s.norm_hv;
            so["norm_igd"] = s.norm_igd;
            opts[opt] = std::move(so);
        }
        block["optimizers"] = std::move(opts);
        per_instance[inst] = std::move(block);
    }
    j["per_instance"] = std::move(per_instance);

    auto rank_block = [&](const std::map<std::string, RankBlock>& ranks) {
        nlohmann::ordered_json out;
        for (const auto& opt : report.optimizers) {
            const auto& r = ranks.at(opt);
            out[opt] = {{"per_instance", r.per_instance},
                        {"median", r.stats.median},
                        {"average", r.stats.average},
                        {"min", r.stats.min},
                        {"max", r.stats.max}};
        }
        return out;
    };
    nlohmann::ordered_json rankings;
    rankings["hv"] = rank_block(report.hv_rank);
    rankings["igd"] = rank_block(report.igd_rank);
    nlohmann::ordered_json joined;
    for (const auto& opt : report.optimizers) joined[opt] = report.joined_rank.at(opt);
    rankings["joined"] = std::move(joined);
    j["rankings"] = std::move(rankings);

    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& p : report.pairs) {
        nlohmann::ordered_json pj;
        pj["a"] = p.a;
        pj["b"] = p.b;
        pj["hv_better"] = p.a_better_hv;
        pj["hv_worse"] = p.a_worse_hv;
        auto wilcoxon_block = [&](const std::map<std::string, WilcoxonResult>& tests) {
            nlohmann::ordered_json out;
            for (const auto& [inst, w] : tests) {
                out[inst] = {{"n", w.n_used},
                             {"w_plus", w.w_plus},
                             {"w_minus", w.w_minus},
                             {"p_two_sided", w.p_two_sided},
                             {"significant", w.significant},
                             {"no_decision", w.no_decision}};
            }
            return out;
        };
        pj["wilcoxon_hv"] = wilcoxon_block(p.wilcoxon_hv);
        pj["wilcoxon_igd"] = wilcoxon_block(p.wilcoxon_igd);
        pairs.push_back(std::move(pj));
    }
    j["pairwise"] = std::move(pairs);
    return j;
}

}  // namespace luo
