// Command-line front end: instance synthesis, single runs, tuning, batch
// experiments, statistical comparison, and front export.
//
// Exit codes: 0 success, 1 validation error, 2 coverage or I/O error.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "luo/luo.hpp"

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

struct RunOptions {
    std::string instance_path;
    std::string out;
    std::string engine = "NSGA-II";
    std::string init = "SP-I";
    std::string crossover = "AC";
    std::string mutation = "MutC";
    std::string repair = "RRM";
    std::string tel_mode = "boundary";
    int pop = 100;
    double p_cross = 0.5;
    double p_mut = 0.5;
    std::int64_t budget = 100000;
    std::uint64_t seed = 1;
    int moead_neighborhood = 0;
    bool drc_bridge = false;
};

luo::EngineConfig to_engine_config(const RunOptions& o) {
    luo::EngineConfig cfg;
    cfg.engine = luo::engine_from_string(o.engine);
    cfg.pop_size = o.pop;
    cfg.ffe_budget = o.budget;
    cfg.seed = o.seed;
    cfg.moead_neighborhood = o.moead_neighborhood;
    cfg.tel_mode = luo::tel_mode_from_string(o.tel_mode);
    cfg.ops.init = luo::init_from_string(o.init);
    cfg.ops.crossover = luo::crossover_from_string(o.crossover);
    cfg.ops.mutation = luo::mutation_from_string(o.mutation);
    cfg.ops.repair = luo::repair_from_string(o.repair);
    cfg.ops.p_cross = o.p_cross;
    cfg.ops.p_mut = o.p_mut;
    cfg.ops.drc_bridge_fixed_urban = o.drc_bridge;
    cfg.validate();
    return cfg;
}

void add_config_flags(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--engine", o.engine, "NSGA-II or MOEA/D");
    cmd->add_option("--init", o.init, "SP-I, SQ-I, TEL-I, HYB-I or HAL-I");
    cmd->add_option("--crossover", o.crossover, "AC, SRC, DRC or IDRC");
    cmd->add_option("--mutation", o.mutation, "MutC or MutC2");
    cmd->add_option("--repair", o.repair, "RRM or BRM");
    cmd->add_option("--pop", o.pop, "population size");
    cmd->add_option("--p-cross", o.p_cross, "crossover probability");
    cmd->add_option("--p-mut", o.p_mut, "mutation probability");
    cmd->add_option("--budget", o.budget, "fitness function evaluation budget");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--tel-mode", o.tel_mode, "boundary or literal");
    cmd->add_option("--moead-neighborhood", o.moead_neighborhood,
                    "MOEA/D neighborhood size (0 = max(2, 10% of pop))");
    cmd->add_flag("--drc-bridge-fixed-urban", o.drc_bridge,
                  "let fixed urban cells bridge DRC components");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective land-use allocation toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "synthesize a seeded instance");
    std::uint64_t gen_seed = 1;
    int gen_rows = 30, gen_cols = 30;
    luo::GeneratorParams gen_params;
    std::string gen_out;
    bool gen_no_fixed = false;
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--rows", gen_rows, "grid rows")->required();
    gen->add_option("--cols", gen_cols, "grid cols")->required();
    gen->add_option("--budget-fraction", gen_params.budget_fraction,
                    "T as a fraction of agricultural cells, in (0,1)");
    gen->add_option("--urban-regions", gen_params.urban_regions, "urban seed blob count");
    gen->add_option("--urban-region-cells", gen_params.urban_region_cells, "cells per urban blob");
    gen->add_flag("--no-fixed", gen_no_fixed, "omit fixed non-urban categories");
    gen->add_option("--fixed-patches", gen_params.fixed_patches, "fixed patch count");
    gen->add_option("--out", gen_out, "output instance file")->required();

    // run
    auto* run = app.add_subcommand("run", "run one optimizer on one instance");
    RunOptions run_opts;
    run->add_option("--instance", run_opts.instance_path, "instance file")->required();
    add_config_flags(run, run_opts);
    run->add_option("--out", run_opts.out, "output run record")->required();

    // tune
    auto* tune = app.add_subcommand("tune", "run the two-start parameter tuning procedure");
    RunOptions tune_opts;
    std::vector<std::string> tune_instances;
    std::uint64_t tune_master = 1;
    std::string tune_out;
    tune->add_option("--instances", tune_instances, "instance files")->required()->expected(-1);
    add_config_flags(tune, tune_opts);
    tune->add_option("--master-seed", tune_master, "master seed for the 5 tuning seeds");
    tune->add_option("--out", tune_out, "tuned config + trace output")->required();

    // experiment
    auto* exp = app.add_subcommand("experiment", "execute an experiment plan");
    std::string exp_plan, exp_out;
    int exp_workers = 1;
    exp->add_option("--plan", exp_plan, "plan file")->required();
    exp->add_option("--workers", exp_workers, "worker threads");
    exp->add_option("--out", exp_out, "archive output directory")->required();

    // compare
    auto* cmp = app.add_subcommand("compare", "compare optimizers over a run archive");
    std::string cmp_archive, cmp_out;
    cmp->add_option("--archive", cmp_archive, "archive directory (with manifest.json)")->required();
    cmp->add_option("--out", cmp_out, "report output file")->required();

    // front-dump
    auto* dump = app.add_subcommand("front-dump", "export a run record's front as CSV");
    std::string dump_record, dump_out;
    dump->add_option("--record", dump_record, "run record file")->required();
    dump->add_option("--out", dump_out, "CSV output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) {
            gen_params.include_fixed = !gen_no_fixed;
            luo::Instance inst = luo::generate_instance(gen_seed, gen_rows, gen_cols, gen_params);
            luo::save_instance(inst, gen_out);
            std::cout << "wrote " << gen_out << " (" << inst.rows() << "x" << inst.cols()
                      << ", n=" << inst.gene_count() << ", T=" << inst.budget()
                      << ", U=" << inst.urban_target() << ")\n";
        } else if (run->parsed()) {
            luo::EngineConfig cfg = to_engine_config(run_opts);
            luo::Instance inst = luo::load_instance(run_opts.instance_path);
            luo::RunRecord record = luo::run_engine(inst, cfg);
            luo::write_run_record(record, run_opts.out);
            std::cout << "wrote " << run_opts.out << " (ffe_used=" << record.ffe_used
                      << ", front=" << record.front.size() << " points)\n";
        } else if (tune->parsed()) {
            luo::EngineConfig base = to_engine_config(tune_opts);
            std::vector<luo::Instance> instances;
            for (const auto& path : tune_instances) instances.push_back(luo::load_instance(path));
            luo::TuneSession session = luo::tune_config(instances, base, tune_master);
            std::ofstream out(tune_out, std::ios::binary);
            if (!out) throw luo::IoError("cannot write tuning report: " + tune_out);
            out << luo::tune_session_to_json(session).dump(2) << '\n';
            std::cout << "wrote " << tune_out << " (pop=" << session.tuned.pop_size
                      << ", p_cross=" << session.tuned.ops.p_cross
                      << ", p_mut=" << session.tuned.ops.p_mut << ")\n";
        } else if (exp->parsed()) {
            luo::ExperimentPlan plan = luo::load_plan(exp_plan);
            luo::ExperimentOutcome outcome = luo::run_experiment(plan, exp_out, exp_workers);
            int ok = 0, failed = 0;
            for (const auto& e : outcome.manifest) (e.status == "ok" ? ok : failed)++;
            std::cout << "archive " << exp_out << ": " << ok << " ok, " << failed << " failed\n";
        } else if (cmp->parsed()) {
            auto runs = luo::load_archive(cmp_archive);
            luo::ComparisonReport report = luo::compare(runs);
            std::ofstream out(cmp_out, std::ios::binary);
            if (!out) throw luo::IoError("cannot write report: " + cmp_out);
            out << luo::comparison_to_json(report).dump(2) << '\n';
            std::cout << "wrote " << cmp_out << " (" << report.optimizers.size()
                      << " optimizers, " << report.instances.size() << " instances)\n";
        } else if (dump->parsed()) {
            luo::RunRecord record = luo::load_run_record(dump_record);
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!dump_out.empty()) {
                file.open(dump_out, std::ios::binary);
                if (!file) throw luo::IoError("cannot write CSV: " + dump_out);
                out = &file;
            }
            *out << "lap,tel\n";
            for (const auto& e : record.front)
                *out << format_double(e.objectives.lap) << ','
                     << format_double(e.objectives.tel) << '\n';
        }
    } catch (const luo::CoverageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const luo::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
