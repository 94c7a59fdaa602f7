#include "hopbound/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "hopbound/exact.hpp"
#include "hopbound/greedy.hpp"
#include "hopbound/rng.hpp"
#include "hopbound/spectral.hpp"

namespace hopbound {

namespace {

using ordered_json = nlohmann::ordered_json;

void validate(const ExperimentConfig& config) {
    if (config.m == 0 || config.n == 0) {
        throw std::invalid_argument("experiment: m and n must be positive");
    }
    if (config.trials == 0) {
        throw std::invalid_argument("experiment: trials must be positive");
    }
    if (config.ensemble == Ensemble::loaded) {
        throw std::invalid_argument("experiment: sampling needs gaussian or bernoulli");
    }
    if (config.algorithms.empty()) {
        throw std::invalid_argument("experiment: at least one algorithm is required");
    }
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
        for (std::size_t b = a + 1; b < config.algorithms.size(); ++b) {
            if (config.algorithms[a] == config.algorithms[b]) {
                throw std::invalid_argument("experiment: duplicate algorithm in config");
            }
        }
    }
    for (Algorithm algorithm : config.algorithms) {
        if (algorithm == Algorithm::exact && config.n > kDefaultExactLimit) {
            throw std::invalid_argument("experiment: exact requires n <= " +
                                        std::to_string(kDefaultExactLimit));
        }
        if (algorithm == Algorithm::eigen && config.form == Form::negative) {
            throw std::invalid_argument(
                "experiment: the eigen heuristic only applies to the positive form");
        }
    }
}

EnergyReport run_algorithm(const ProblemInstance& instance, Form form, Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::exact:
            return solve_exact(instance, form).report;
        case Algorithm::greedy:
            return greedy_solve(instance, form, GreedyOrdering::natural).report;
        case Algorithm::greedy_sorted:
            return greedy_solve(instance, form, GreedyOrdering::by_column_norm).report;
        case Algorithm::eigen:
            return eigen_solve(instance).report;
    }
    throw std::logic_error("experiment: unhandled algorithm");
}

std::size_t resolve_workers(std::size_t workers, std::size_t trials) {
    if (workers == 0) {
        if (const char* env = std::getenv("HOPBOUND_THREADS")) {
            char* end = nullptr;
            const unsigned long parsed = std::strtoul(env, &end, 10);
            if (end != env && *end == '\0' && parsed >= 1) {
                workers = static_cast<std::size_t>(parsed);
            }
        }
    }
    if (workers == 0) {
        workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    return std::min(workers, trials);
}

double mean_of(const std::vector<double>& values) {
    double total = 0.0;
    for (double v : values) total += v;
    return total / static_cast<double>(values.size());
}

double stddev_of(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double total = 0.0;
    for (double v : values) total += (v - mean) * (v - mean);
    return std::sqrt(total / static_cast<double>(values.size() - 1));
}

Aggregate aggregate_of(const std::vector<double>& xi, const std::vector<double>& quadratic) {
    Aggregate agg;
    agg.mean_xi = mean_of(xi);
    agg.stddev_xi = stddev_of(xi, agg.mean_xi);
    agg.min_xi = *std::min_element(xi.begin(), xi.end());
    agg.max_xi = *std::max_element(xi.begin(), xi.end());
    agg.mean_quadratic = mean_of(quadratic);
    agg.stddev_quadratic = stddev_of(quadratic, agg.mean_quadratic);
    agg.min_quadratic = *std::min_element(quadratic.begin(), quadratic.end());
    agg.max_quadratic = *std::max_element(quadratic.begin(), quadratic.end());
    agg.concentration_ratio = agg.mean_xi != 0.0 ? agg.stddev_xi / agg.mean_xi : 0.0;
    return agg;
}

ordered_json config_to_json_object(const ExperimentConfig& config) {
    ordered_json j;
    j["m"] = config.m;
    j["n"] = config.n;
    j["ensemble"] = std::string(to_string(config.ensemble));
    j["form"] = std::string(to_string(config.form));
    ordered_json algorithms = ordered_json::array();
    for (Algorithm algorithm : config.algorithms) {
        algorithms.push_back(std::string(to_string(algorithm)));
    }
    j["algorithms"] = std::move(algorithms);
    j["trials"] = config.trials;
    j["base_seed"] = config.base_seed;
    j["format"] = config.format == ExperimentConfig::OutputFormat::csv ? "csv" : "json";
    return j;
}

ordered_json result_to_json_object(const ExperimentResult& result) {
    ordered_json j;
    j["config"] = config_to_json_object(result.config);
    j["rng_procedure_version"] = rng::kProcedureVersion;

    ordered_json rows = ordered_json::array();
    for (const TrialRow& row : result.rows) {
        ordered_json r;
        r["trial"] = row.trial;
        r["seed"] = row.seed;
        r["algorithm"] = std::string(to_string(row.algorithm));
        r["raw_quadratic"] = row.report.raw_quadratic;
        r["normalized_xi"] = row.report.normalized_xi;
        r["normalized_quadratic"] = row.report.normalized_quadratic;
        rows.push_back(std::move(r));
    }
    j["trials"] = std::move(rows);

    ordered_json aggregates;
    for (const auto& [algorithm, agg] : result.aggregates) {
        ordered_json a;
        a["mean_normalized_xi"] = agg.mean_xi;
        a["stddev_normalized_xi"] = agg.stddev_xi;
        a["min_normalized_xi"] = agg.min_xi;
        a["max_normalized_xi"] = agg.max_xi;
        a["mean_normalized_quadratic"] = agg.mean_quadratic;
        a["stddev_normalized_quadratic"] = agg.stddev_quadratic;
        a["min_normalized_quadratic"] = agg.min_quadratic;
        a["max_normalized_quadratic"] = agg.max_quadratic;
        a["concentration_ratio"] = agg.concentration_ratio;
        aggregates[std::string(to_string(algorithm))] = std::move(a);
    }
    j["aggregates"] = std::move(aggregates);

    ordered_json bounds_json;
    const BoundSet& b = result.reference_bounds;
    bounds_json["alpha"] = b.alpha;
    bounds_json["xi_sk"] = b.xi_sk;
    bounds_json["positive_upper"] = b.positive_upper;
    bounds_json["positive_lower"] = b.positive_lower;
    bounds_json["negative_lower_asymptotic"] = b.negative_lower_asymptotic;
    if (b.negative_lower_finite.has_value()) {
        bounds_json["negative_lower_finite"] = *b.negative_lower_finite;
    }
    bounds_json["eigen_floor_asymptotic"] = b.eigen_floor_asymptotic;
    ordered_json references;
    references["bounds"] = std::move(bounds_json);
    references["recursion"] = {
        {"normalized_quadratic", result.reference_recursion_quadratic},
        {"normalized_xi", result.reference_recursion_xi},
    };
    j["references"] = std::move(references);
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed while writing " + path);
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("experiment config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("experiment config: expected a JSON object");

    ExperimentConfig config;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "m") config.m = value.get<std::size_t>();
            else if (key == "n") config.n = value.get<std::size_t>();
            else if (key == "ensemble") config.ensemble = parse_ensemble(value.get<std::string>());
            else if (key == "form") config.form = parse_form(value.get<std::string>());
            else if (key == "algorithms") {
                for (const auto& entry : value) {
                    config.algorithms.push_back(parse_algorithm(entry.get<std::string>()));
                }
            } else if (key == "trials") config.trials = value.get<std::size_t>();
            else if (key == "base_seed") config.base_seed = value.get<std::uint64_t>();
            else if (key == "format") {
                const std::string format = value.get<std::string>();
                if (format == "csv") config.format = ExperimentConfig::OutputFormat::csv;
                else if (format == "json") config.format = ExperimentConfig::OutputFormat::json;
                else throw std::invalid_argument("experiment config: format must be csv or json");
            } else {
                throw std::invalid_argument("experiment config: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("experiment config: ") + e.what());
    }
    return config;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers) {
    validate(config);

    const std::size_t per_trial = config.algorithms.size();
    ExperimentResult result;
    result.config = config;
    result.rows.resize(config.trials * per_trial);

    const std::size_t worker_count = resolve_workers(workers, config.trials);
    std::atomic<std::size_t> next_trial{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
        for (;;) {
            const std::size_t t = next_trial.fetch_add(1);
            if (t >= config.trials) return;
            try {
                const std::uint64_t seed = rng::mix_seed(config.base_seed, t);
                const ProblemInstance instance =
                    sample_instance(config.m, config.n, config.ensemble, seed);
                for (std::size_t a = 0; a < per_trial; ++a) {
                    TrialRow& row = result.rows[t * per_trial + a];
                    row.trial = t;
                    row.seed = seed;
                    row.algorithm = config.algorithms[a];
                    row.report = run_algorithm(instance, config.form, config.algorithms[a]);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next_trial.store(config.trials);
                return;
            }
        }
    };

    if (worker_count <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (std::size_t i = 0; i < worker_count; ++i) pool.emplace_back(work);
        for (std::thread& thread : pool) thread.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // aggregation stays in trial order regardless of execution schedule
    std::vector<double> xi(config.trials);
    std::vector<double> quadratic(config.trials);
    for (std::size_t a = 0; a < per_trial; ++a) {
        for (std::size_t t = 0; t < config.trials; ++t) {
            xi[t] = result.rows[t * per_trial + a].report.normalized_xi;
            quadratic[t] = result.rows[t * per_trial + a].report.normalized_quadratic;
        }
        result.aggregates.emplace_back(config.algorithms[a], aggregate_of(xi, quadratic));
    }

    const double alpha =
        static_cast<double>(config.m) / static_cast<double>(config.n);
    result.reference_bounds = bounds(alpha, 0.763, config.m, config.n);
    const RecursionTrace reference = recursion(config.m, config.n, config.form);
    result.reference_recursion_quadratic = reference.normalized_quadratic;
    result.reference_recursion_xi = reference.normalized_xi;
    return result;
}

std::string to_csv(const ExperimentResult& result) {
    std::string out = "trial,seed,algorithm,raw_quadratic,normalized_xi,normalized_quadratic\n";
    char buffer[256];
    for (const TrialRow& row : result.rows) {
        std::snprintf(buffer, sizeof buffer, "%llu,%llu,%s,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(row.trial),
                      static_cast<unsigned long long>(row.seed),
                      std::string(to_string(row.algorithm)).c_str(), row.report.raw_quadratic,
                      row.report.normalized_xi, row.report.normalized_quadratic);
        out += buffer;
    }
    return out;
}

std::string to_json(const ExperimentResult& result) {
    return result_to_json_object(result).dump(2) + "\n";
}

void serialize_result(const ExperimentResult& result, const std::string& path) {
    if (result.config.format == ExperimentConfig::OutputFormat::json) {
        write_text_file(path, to_json(result));
        return;
    }
    write_text_file(path, to_csv(result));
    ordered_json meta = result_to_json_object(result);
    meta.erase("trials");
    write_text_file(path + ".meta.json", meta.dump(2) + "\n");
}

ConcentrationReport concentration_report(double alpha, std::vector<std::size_t> sizes,
                                         Algorithm algorithm, Form form, std::size_t trials,
                                         std::uint64_t base_seed, Ensemble ensemble) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw std::invalid_argument("concentration_report: alpha must be positive and finite");
    }
    if (sizes.size() < 3) {
        throw std::invalid_argument("concentration_report: at least 3 sizes are required");
    }
    if (trials < 50) {
        throw std::invalid_argument("concentration_report: at least 50 trials are required");
    }
    if (ensemble == Ensemble::loaded) {
        throw std::invalid_argument("concentration_report: sampling needs gaussian or bernoulli");
    }
    if (algorithm == Algorithm::eigen && form == Form::negative) {
        throw std::invalid_argument(
            "concentration_report: the eigen heuristic only applies to the positive form");
    }

    ConcentrationReport report;
    report.alpha = alpha;
    report.form = form;
    report.algorithm = algorithm;
    report.ensemble = ensemble;
    report.trials = trials;
    report.sizes = std::move(sizes);

    std::vector<double> xi(trials);
    for (std::size_t s = 0; s < report.sizes.size(); ++s) {
        const std::size_t n = report.sizes[s];
        if (n == 0) throw std::invalid_argument("concentration_report: sizes must be positive");
        const auto m = std::llround(alpha * static_cast<double>(n));
        if (m < 1) {
            throw std::invalid_argument("concentration_report: alpha too small for size " +
                                        std::to_string(n));
        }
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t seed = rng::mix_seed(base_seed, s * trials + t);
            const ProblemInstance instance =
                sample_instance(static_cast<std::size_t>(m), n, ensemble, seed);
            xi[t] = run_algorithm(instance, form, algorithm).normalized_xi;
        }
        const double mean = mean_of(xi);
        const double stddev = stddev_of(xi, mean);
        report.mean_xi.push_back(mean);
        report.stddev_xi.push_back(stddev);
        report.ratio.push_back(mean != 0.0 ? stddev / mean : 0.0);
    }

    report.non_increasing = true;
    for (std::size_t s = 0; s + 1 < report.ratio.size(); ++s) {
        if (report.ratio[s + 1] > report.ratio[s]) {
            report.non_increasing = false;
            break;
        }
    }
    return report;
}

}  // namespace hopbound
