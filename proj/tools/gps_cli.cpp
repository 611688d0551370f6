// gps_cli: generate instances, run the sorting algorithms with metering,
// and turn JSON-lines run reports into scaling tables.
//
//   gps_cli gen    --model er --n 100 --k 3 --p 0.2 --seed 1 --out inst.json
//   gps_cli run    --instance inst.json --algo er --trials 20 --run-seed 7 [--strict]
//   gps_cli run    --model er --n 100 --k 3 --p 0.2 --algo er --trials 20
//   gps_cli report runs.jsonl --out reports/
//
// Output directory defaults to $GPS_OUT_DIR, then the working directory.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gps/bench.hpp"
#include "gps/errors.hpp"
#include "gps/instance.hpp"

namespace fs = std::filesystem;

namespace {

struct GenParams {
    std::string model = "er";
    int n = 50;
    int n_b = 0;
    int k = 1;
    double p = -1.0;
    int levels = 1;
    std::string profile = "uniform-log";
    std::uint64_t seed = 1;
};

void add_gen_flags(CLI::App* cmd, GenParams& g) {
    cmd->add_option("--model", g.model, "er | bipartite | gpsc | weighted");
    cmd->add_option("--n", g.n, "vertices (bipartite: side A size)");
    cmd->add_option("--nb", g.n_b, "bipartite side B size (default: --n)");
    cmd->add_option("--k", g.k, "width of the hidden order");
    cmd->add_option("--p", g.p, "edge probability (bipartite: relation density)");
    cmd->add_option("--W", g.levels, "distinct weight levels");
    cmd->add_option("--profile", g.profile, "uniform-log | separated");
    cmd->add_option("--seed", g.seed, "instance seed");
}

gps::Instance generate(const GenParams& g) {
    switch (gps::parse_model(g.model)) {
        case gps::Model::Er: return gps::er_instance(g.n, g.k, g.p < 0 ? 0.2 : g.p, g.seed);
        case gps::Model::Bipartite:
            return gps::bipartite_instance(g.n, g.n_b > 0 ? g.n_b : g.n, g.p < 0 ? 0.3 : g.p, g.seed);
        case gps::Model::Gpsc: return gps::gpsc_instance(g.n, g.k, g.p < 0 ? 0.2 : g.p, g.seed);
        case gps::Model::Weighted:
            return gps::weighted_instance(g.n, g.levels, g.seed, gps::parse_gap_profile(g.profile),
                                          g.p < 0 ? 0.25 : g.p);
    }
    throw gps::InvalidParams("unknown model");
}

std::string default_out_dir() {
    const char* env = std::getenv("GPS_OUT_DIR");
    return env && *env ? env : ".";
}

void append_lines(const fs::path& path, const std::string& header, const std::vector<std::string>& lines) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw gps::Error("cannot open " + path.string());
    if (fresh && !header.empty()) out << header << '\n';
    for (const auto& line : lines) out << line << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partial order sorting under a restricted comparison graph"};
    app.require_subcommand(1);

    GenParams gen;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "write an instance as JSON");
    add_gen_flags(gen_cmd, gen);
    gen_cmd->add_option("--out", gen_out, "instance path (default: $GPS_OUT_DIR/instance.json)");

    GenParams run_gen;
    std::string instance_path, algo = "er", run_out;
    std::uint64_t master_seed = 1;
    int trials = 1;
    unsigned threads = 0;
    bool strict = false, audit = false, quiet = false;
    double er_mult = 18.0;
    auto* run_cmd = app.add_subcommand("run", "run an algorithm and append reports");
    add_gen_flags(run_cmd, run_gen);
    run_cmd->add_option("--instance", instance_path, "instance JSON (otherwise generated from the flags)");
    run_cmd->add_option("--algo", algo, "er | bipartite | gpsc | weighted | naive");
    run_cmd->add_option("--run-seed", master_seed, "master seed for per-trial randomness");
    run_cmd->add_option("--trials", trials, "number of trials");
    run_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
    run_cmd->add_option("--er-log-multiplier", er_mult, "Skip-BFS hit points R = k + ceil(m ln N)");
    run_cmd->add_flag("--strict", strict, "exit 1 if any trial is incorrect");
    run_cmd->add_flag("--audit", audit, "run ground-truth audits");
    run_cmd->add_flag("--quiet", quiet, "no per-trial lines on stdout");
    run_cmd->add_option("--out", run_out, "output directory for runs.csv and runs.jsonl");

    std::string reports_path, report_out;
    auto* report_cmd = app.add_subcommand("report", "medians, normalized ratios and log-log slopes");
    report_cmd->add_option("reports", reports_path, "JSON-lines run reports")->required();
    report_cmd->add_option("--out", report_out, "output directory for summary.csv and slopes.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen_cmd) {
            const gps::Instance inst = generate(gen);
            const fs::path path = gen_out.empty() ? fs::path(default_out_dir()) / "instance.json" : fs::path(gen_out);
            if (path.has_parent_path()) fs::create_directories(path.parent_path());
            gps::save_instance(inst, path.string());
            std::cout << path.string() << '\n';
            return 0;
        }

        if (*run_cmd) {
            const gps::Instance inst = instance_path.empty() ? generate(run_gen) : gps::load_instance(instance_path);
            gps::RunOptions options;
            options.audit = audit;
            options.er_log_multiplier = er_mult;
            const auto reports =
                gps::run_trials(inst, gps::parse_algo(algo), master_seed, trials, options, threads);

            const fs::path dir = run_out.empty() ? fs::path(default_out_dir()) : fs::path(run_out);
            fs::create_directories(dir);
            std::vector<std::string> csv, jsonl;
            int wrong = 0;
            for (const auto& r : reports) {
                csv.push_back(gps::csv_row(r));
                jsonl.push_back(gps::to_json(r).dump());
                if (!r.correct) ++wrong;
            }
            append_lines(dir / "runs.csv", gps::csv_header(), csv);
            append_lines(dir / "runs.jsonl", "", jsonl);
            if (!quiet)
                for (const auto& line : jsonl) std::cout << line << '\n';
            std::cerr << reports.size() - wrong << "/" << reports.size() << " correct\n";
            return strict && wrong > 0 ? 1 : 0;
        }

        if (*report_cmd) {
            std::ifstream in(reports_path);
            if (!in) throw gps::Error("cannot open " + reports_path);
            std::vector<gps::RunReport> reports;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                try {
                    reports.push_back(gps::report_from_json(nlohmann::json::parse(line)));
                } catch (const nlohmann::json::exception& e) {
                    throw gps::MalformedInput(e.what());
                }
            }
            const gps::ScalingReport summary = gps::summarize(reports);
            const std::string configs = gps::configs_csv(summary), slopes = gps::slopes_csv(summary);
            const fs::path dir = report_out.empty() ? fs::path(default_out_dir()) : fs::path(report_out);
            fs::create_directories(dir);
            std::ofstream(dir / "summary.csv") << configs;
            std::ofstream(dir / "slopes.csv") << slopes;
            std::cout << configs << '\n' << slopes;
            return 0;
        }
    } catch (const gps::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
