#include "gps/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "gps/errors.hpp"
#include "gps/framework.hpp"
#include "gps/partition_bipartite.hpp"
#include "gps/partition_er.hpp"

namespace gps {

const char* to_string(Algo a) {
    switch (a) {
        case Algo::Er: return "er";
        case Algo::Bipartite: return "bipartite";
        case Algo::Gpsc: return "gpsc";
        case Algo::Weighted: return "weighted";
        case Algo::Naive: return "naive";
    }
    return "?";
}

Algo parse_algo(const std::string& name) {
    for (Algo a : {Algo::Er, Algo::Bipartite, Algo::Gpsc, Algo::Weighted, Algo::Naive})
        if (name == to_string(a)) return a;
    throw InvalidParams("unknown algorithm '" + name + "'");
}

namespace {

bool all_edges_comparable(const QueryGraph& g) {
    for (const auto& [u, v] : g.edges())
        if (!g.truth().comparable(u, v)) return false;
    return true;
}

std::string mismatch(Algo algo, const Instance& instance) {
    return std::string(to_string(algo)) + " cannot run on a " + to_string(instance.model) + " instance";
}

template <class T>
T param_or(const nlohmann::json& params, const char* key, T fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->get<T>();
}

}  // namespace

void check_compatible(const Instance& instance, Algo algo) {
    switch (algo) {
        case Algo::Er:
            if (instance.model != Model::Er) throw ModelMismatch(mismatch(algo, instance));
            break;
        case Algo::Bipartite:
            if (instance.model != Model::Bipartite) throw ModelMismatch(mismatch(algo, instance));
            break;
        case Algo::Gpsc:
            if (!all_edges_comparable(instance.graph))
                throw ModelMismatch(mismatch(algo, instance) + " with incomparable edges");
            break;
        case Algo::Weighted:
            if (instance.model != Model::Weighted) throw ModelMismatch(mismatch(algo, instance));
            break;
        case Algo::Naive:
            if (!instance.graph.is_complete()) throw ModelMismatch("naive needs a complete query graph");
            break;
    }
}

RunReport run_trial(const Instance& instance, Algo algo, std::uint64_t master_seed, int trial,
                    const RunOptions& options) {
    check_compatible(instance, algo);
    const QueryGraph& g = instance.graph;
    const Poset& truth = g.truth();

    RunReport r;
    r.model = to_string(instance.model);
    r.n = g.size();
    r.k = param_or<int>(instance.params, "k", 0);
    r.p = param_or<double>(instance.params, "p", param_or<double>(instance.params, "density", 0.0));
    if (instance.model == Model::Gpsc || instance.model == Model::Weighted)
        r.p = param_or<double>(instance.params, "extra_edge_prob", 0.0);
    r.levels = param_or<int>(instance.params, "W", 0);
    r.profile = param_or<std::string>(instance.params, "gap_profile", "");
    r.seed = instance.seed;
    r.master_seed = master_seed;
    r.trial = trial;
    r.algo = to_string(algo);

    OracleSession session(g);
    const OracleView view(session);
    Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(trial)));
    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (algo) {
            case Algo::Er: {
                ErOptions eo;
                eo.skip.log_multiplier = options.er_log_multiplier;
                if (options.audit) eo.audit = &g;
                ErStats stats;
                const Poset found = gps_er(view, instance.width(), rng, eo, &stats);
                r.correct = found == truth;
                r.levels_skipped = stats.skipped;
                if (options.audit) r.level_mismatches = stats.level_mismatches;
                break;
            }
            case Algo::Bipartite: {
                BipartiteStats stats;
                if (options.audit) stats.audit = &truth;
                const auto partition = bipartite_partition_oracle(side_marks(g.size(), instance.side_a()), &stats);
                const LinearExtension order = part_to_le(view, partition, rng);
                r.correct = gps_from_le(view, order) == truth;
                r.find_min_iterations = stats.find_min_steps;
                if (options.audit) r.minimality_failures = stats.minimality_failures;
                break;
            }
            case Algo::Gpsc: {
                GpscOptions go = options.gpsc;
                if (options.audit) go.audit = &truth;
                GpscStats stats;
                r.correct = gpsc_sort(view, rng, go, &stats) == truth;
                r.predictor_wrong_max = stats.predictor_wrong_max;
                break;
            }
            case Algo::Weighted: {
                WeightedOptions wo = options.weighted;
                if (options.audit) wo.gpsc.audit = &truth;
                const WeightedResult result = sort_weighted_doubling(view, rng, wo);
                r.correct = result.success && is_linear_extension(result.order, truth);
                r.tau = result.tau;
                r.k_tau = result.k_tau;
                break;
            }
            case Algo::Naive: {
                const PartitionOracle partition = [](const OracleView& v, Vertex p, Rng&) {
                    return naive_partition(v, p);
                };
                const LinearExtension order = part_to_le(view, partition, rng);
                r.correct = gps_from_le(view, order) == truth;
                break;
            }
        }
    } catch (const Error& e) {
        r.correct = false;
        r.error = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const QueryReport q = session.report();
    r.query_count = q.query_count;
    r.cost = q.cost;
    if (instance.model == Model::Weighted) {
        r.opt = optimal_cost(instance);
        r.ratio = r.opt > 0 ? r.cost / r.opt : 0.0;
    }
    return r;
}

std::vector<RunReport> run_trials(const Instance& instance, Algo algo, std::uint64_t master_seed, int trials,
                                  const RunOptions& options, unsigned threads) {
    check_compatible(instance, algo);
    if (trials < 0) throw InvalidParams("trials must be non-negative");
    std::vector<RunReport> out(static_cast<std::size_t>(trials));
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(trials, 1)));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int t = next++; t < trials; t = next++) out[t] = run_trial(instance, algo, master_seed, t, options);
    };
    if (threads <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

nlohmann::json to_json(const RunReport& r) {
    return {{"model", r.model},
            {"n", r.n},
            {"k", r.k},
            {"p", r.p},
            {"W", r.levels},
            {"gap_profile", r.profile},
            {"seed", r.seed},
            {"master_seed", r.master_seed},
            {"trial", r.trial},
            {"algo", r.algo},
            {"query_count", r.query_count},
            {"cost", r.cost},
            {"wall_ms", r.wall_ms},
            {"correct", r.correct},
            {"error", r.error},
            {"levels_skipped", r.levels_skipped},
            {"level_mismatches", r.level_mismatches},
            {"find_min_iterations", r.find_min_iterations},
            {"minimality_failures", r.minimality_failures},
            {"predictor_wrong_max", r.predictor_wrong_max},
            {"tau", r.tau},
            {"k_tau", r.k_tau},
            {"opt", r.opt},
            {"ratio", r.ratio}};
}

RunReport report_from_json(const nlohmann::json& j) {
    try {
        RunReport r;
        r.model = j.at("model").get<std::string>();
        r.n = j.at("n").get<int>();
        r.k = j.at("k").get<int>();
        r.p = j.at("p").get<double>();
        r.levels = j.at("W").get<int>();
        r.profile = j.value("gap_profile", std::string());
        r.seed = j.at("seed").get<std::uint64_t>();
        r.master_seed = j.value("master_seed", std::uint64_t{0});
        r.trial = j.value("trial", 0);
        r.algo = j.at("algo").get<std::string>();
        r.query_count = j.at("query_count").get<std::int64_t>();
        r.cost = j.at("cost").get<double>();
        r.wall_ms = j.value("wall_ms", 0.0);
        r.correct = j.at("correct").get<bool>();
        r.error = j.value("error", std::string());
        r.levels_skipped = j.value("levels_skipped", -1L);
        r.level_mismatches = j.value("level_mismatches", -1L);
        r.find_min_iterations = j.value("find_min_iterations", -1L);
        r.minimality_failures = j.value("minimality_failures", -1L);
        r.predictor_wrong_max = j.value("predictor_wrong_max", -1);
        r.tau = j.value("tau", -1);
        r.k_tau = j.value("k_tau", -1);
        r.opt = j.value("opt", -1.0);
        r.ratio = j.value("ratio", -1.0);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("run report: ") + e.what());
    }
}

std::string csv_header() {
    return "model,n,k,p,W,gap_profile,seed,master_seed,trial,algo,query_count,cost,wall_ms,correct,"
           "levels_skipped,level_mismatches,find_min_iterations,minimality_failures,predictor_wrong_max,"
           "tau,k_tau,opt,ratio,error";
}

std::string csv_row(const RunReport& r) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), '"', '\'');
    std::ostringstream os;
    os.precision(10);
    os << r.model << ',' << r.n << ',' << r.k << ',' << r.p << ',' << r.levels << ',' << r.profile << ','
       << r.seed << ',' << r.master_seed << ',' << r.trial << ',' << r.algo << ',' << r.query_count << ','
       << r.cost << ',' << r.wall_ms << ',' << (r.correct ? 1 : 0) << ',' << r.levels_skipped << ','
       << r.level_mismatches << ',' << r.find_min_iterations << ',' << r.minimality_failures << ','
       << r.predictor_wrong_max << ',' << r.tau << ',' << r.k_tau << ',' << r.opt << ',' << r.ratio << ",\""
       << err << '"';
    return os.str();
}

double median(std::vector<double> values) {
    if (values.empty()) throw InsufficientData("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw LengthMismatch("x and y differ in length");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) continue;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const std::size_t m = lx.size();
    if (m < 2) throw InsufficientData("a slope needs two positive points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0) throw InsufficientData("a slope needs two distinct x values");
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = static_cast<int>(m);
    return fit;
}

ScalingReport summarize(const std::vector<RunReport>& reports) {
    using Key = std::tuple<std::string, std::string, std::string, int, double, int, int>;
    std::map<Key, std::vector<const RunReport*>> groups;
    for (const RunReport& r : reports) groups[{r.model, r.algo, r.profile, r.k, r.p, r.levels, r.n}].push_back(&r);
    if (groups.size() < 2) throw InsufficientData("need at least two configurations");

    ScalingReport out;
    for (const auto& [key, runs] : groups) {
        ConfigSummary c;
        std::tie(c.model, c.algo, c.profile, c.k, c.p, c.levels, c.n) = key;
        c.trials = static_cast<int>(runs.size());
        std::vector<double> q, cost, ratio;
        for (const RunReport* r : runs) {
            c.correct += r->correct ? 1 : 0;
            q.push_back(static_cast<double>(r->query_count));
            cost.push_back(r->cost);
            if (r->ratio >= 0) ratio.push_back(r->ratio);
        }
        c.median_queries = median(q);
        c.median_cost = median(cost);
        if (!ratio.empty()) c.median_ratio = median(ratio);
        const double n = c.n, ln = std::log(n), k = std::max(c.k, 1);
        auto safe = [](double num, double den) { return den > 0 ? num / den : 0.0; };
        c.per_nk2log3 = safe(c.median_queries, n * k * k * ln * ln * ln);
        c.per_nklog = safe(c.median_queries, n * k * ln);
        c.per_gpsc_bound = safe(c.median_queries, n * k * ln + std::pow(n, 1.5) * ln);
        if (c.levels > 0 && c.median_ratio >= 0)
            c.per_weighted_bound = safe(c.median_ratio, std::pow(n, 1.0 - 1.0 / (2.0 * c.levels)) * ln * ln * ln);
        out.configs.push_back(c);
    }

    using SlopeKey = std::tuple<std::string, std::string, std::string, int, double, int>;
    std::map<SlopeKey, std::pair<std::vector<double>, std::vector<double>>> series;
    for (const ConfigSummary& c : out.configs) {
        auto& [xs, ys] = series[{c.model, c.algo, c.profile, c.k, c.p, c.levels}];
        xs.push_back(c.n);
        ys.push_back(c.median_queries);
    }
    for (const auto& [key, xy] : series) {
        SlopeSummary s;
        std::tie(s.model, s.algo, s.profile, s.k, s.p, s.levels) = key;
        try {
            s.fit = fit_loglog(xy.first, xy.second);
        } catch (const InsufficientData&) {
            continue;
        }
        out.slopes.push_back(s);
    }
    return out;
}

std::string configs_csv(const ScalingReport& report) {
    std::ostringstream os;
    os.precision(8);
    os << "model,algo,gap_profile,n,k,p,W,trials,correct,median_queries,median_cost,median_ratio,"
          "per_nk2log3,per_nklog,per_gpsc_bound,per_weighted_bound\n";
    for (const ConfigSummary& c : report.configs)
        os << c.model << ',' << c.algo << ',' << c.profile << ',' << c.n << ',' << c.k << ',' << c.p << ','
           << c.levels << ',' << c.trials << ',' << c.correct << ',' << c.median_queries << ',' << c.median_cost
           << ',' << c.median_ratio << ',' << c.per_nk2log3 << ',' << c.per_nklog << ',' << c.per_gpsc_bound
           << ',' << c.per_weighted_bound << '\n';
    return os.str();
}

std::string slopes_csv(const ScalingReport& report) {
    std::ostringstream os;
    os.precision(8);
    os << "model,algo,gap_profile,k,p,W,points,slope,intercept\n";
    for (const SlopeSummary& s : report.slopes)
        os << s.model << ',' << s.algo << ',' << s.profile << ',' << s.k << ',' << s.p << ',' << s.levels << ','
           << s.fit.points << ',' << s.fit.slope << ',' << s.fit.intercept << '\n';
    return os.str();
}

}  // namespace gps
