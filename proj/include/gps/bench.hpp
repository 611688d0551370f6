#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gps/gpsc.hpp"
#include "gps/instance.hpp"
#include "gps/weighted.hpp"

namespace gps {

enum class Algo { Er, Bipartite, Gpsc, Weighted, Naive };

const char* to_string(Algo a);
/// Throws InvalidParams on an unknown name.
Algo parse_algo(const std::string& name);

/// Throws ModelMismatch if `algo` cannot run on `instance`.
void check_compatible(const Instance& instance, Algo algo);

struct RunOptions {
    double er_log_multiplier = 18.0;
    GpscOptions gpsc;
    WeightedOptions weighted;
    /// Ground-truth audits (level fidelity, find_min minimality, predictor).
    bool audit = false;
};

struct RunReport {
    std::string model;
    int n = 0;
    int k = 0;
    double p = 0.0;
    int levels = 0;  // W
    std::string profile;
    std::uint64_t seed = 0;         // instance seed
    std::uint64_t master_seed = 0;  // run seed
    int trial = 0;
    std::string algo;
    std::int64_t query_count = 0;
    double cost = 0.0;
    double wall_ms = 0.0;
    bool correct = false;
    std::string error;
    // Auxiliary statistics; -1 when not applicable.
    long levels_skipped = -1;
    long level_mismatches = -1;
    long find_min_iterations = -1;
    long minimality_failures = -1;
    int predictor_wrong_max = -1;
    int tau = -1;
    int k_tau = -1;
    double opt = -1.0;
    double ratio = -1.0;
};

/// One trial with RNG seeded from (master_seed, trial).
RunReport run_trial(const Instance& instance, Algo algo, std::uint64_t master_seed, int trial,
                    const RunOptions& options = {});

/// Trials 0..trials-1, run on up to `threads` worker threads. The result
/// order and content do not depend on the thread count.
std::vector<RunReport> run_trials(const Instance& instance, Algo algo, std::uint64_t master_seed, int trials,
                                  const RunOptions& options = {}, unsigned threads = 0);

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

std::string csv_header();
std::string csv_row(const RunReport& r);

double median(std::vector<double> values);

/// Least-squares slope and intercept of log(y) against log(x).
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct ConfigSummary {
    std::string model, algo, profile;
    int n = 0, k = 0, levels = 0;
    double p = 0.0;
    int trials = 0;
    int correct = 0;
    double median_queries = 0.0;
    double median_cost = 0.0;
    double median_ratio = -1.0;
    /// queries / (n k^2 ln^3 n)
    double per_nk2log3 = 0.0;
    /// queries / (n k ln n)
    double per_nklog = 0.0;
    /// queries / (n k ln n + n^1.5 ln n)
    double per_gpsc_bound = 0.0;
    /// ratio / (n^(1 - 1/(2W)) ln^3 n), weighted runs only
    double per_weighted_bound = -1.0;
};

struct SlopeSummary {
    std::string model, algo, profile;
    int k = 0, levels = 0;
    double p = 0.0;
    LogLogFit fit;
};

struct ScalingReport {
    std::vector<ConfigSummary> configs;
    std::vector<SlopeSummary> slopes;
};

/// Throws InsufficientData with fewer than two configurations.
ScalingReport summarize(const std::vector<RunReport>& reports);

std::string configs_csv(const ScalingReport& report);
std::string slopes_csv(const ScalingReport& report);

}  // namespace gps
