#pragma once
// experiment.hpp
//
// Monte Carlo harness over seeded instances. Trials are independent pure
// computations (per-trial seed = rng::mix_seed(base_seed, trial)), so they
// may run on any number of workers; results are stored and aggregated in
// trial order, which makes the serialized output byte-identical across
// runs and worker counts.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hopbound/analytic.hpp"
#include "hopbound/core.hpp"

namespace hopbound {

struct ExperimentConfig {
    std::size_t m = 0;
    std::size_t n = 0;
    Ensemble ensemble = Ensemble::gaussian;
    Form form = Form::positive;
    std::vector<Algorithm> algorithms;
    std::size_t trials = 0;
    std::uint64_t base_seed = 0;

    enum class OutputFormat { csv, json };
    OutputFormat format = OutputFormat::json;
};

// Parses the JSON object documented in the README (keys m, n, ensemble,
// form, algorithms, trials, base_seed, format).
ExperimentConfig config_from_json(const std::string& text);

struct TrialRow {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::exact;
    EnergyReport report;
};

struct Aggregate {
    double mean_xi = 0.0;
    double stddev_xi = 0.0;
    double min_xi = 0.0;
    double max_xi = 0.0;
    double mean_quadratic = 0.0;
    double stddev_quadratic = 0.0;
    double min_quadratic = 0.0;
    double max_quadratic = 0.0;
    // stddev_xi / mean_xi
    double concentration_ratio = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    // trial-major, algorithms in config order within a trial
    std::vector<TrialRow> rows;
    std::vector<std::pair<Algorithm, Aggregate>> aggregates;
    BoundSet reference_bounds;
    // recursion prediction at the config's m, n, form
    double reference_recursion_quadratic = 0.0;
    double reference_recursion_xi = 0.0;
};

// workers = 0 reads HOPBOUND_THREADS, falling back to the hardware count.
// The exact algorithm requires n <= 26; the eigen algorithm is only valid
// for the positive form.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers = 0);

// Per-trial rows; reals at 17 significant digits.
std::string to_csv(const ExperimentResult& result);
// Full result: config, rows, aggregates, references.
std::string to_json(const ExperimentResult& result);

// format = json writes to_json to path; format = csv writes to_csv to path
// and the row-free JSON (config, aggregates, references) to
// path + ".meta.json".
void serialize_result(const ExperimentResult& result, const std::string& path);

struct ConcentrationReport {
    double alpha = 0.0;
    Form form = Form::positive;
    Algorithm algorithm = Algorithm::exact;
    Ensemble ensemble = Ensemble::gaussian;
    std::size_t trials = 0;
    std::vector<std::size_t> sizes;
    std::vector<double> mean_xi;
    std::vector<double> stddev_xi;
    // stddev_xi / mean_xi per size
    std::vector<double> ratio;
    // diagnostic verdict: ratios non-increasing in n
    bool non_increasing = false;
};

// Runs `trials` seeded instances at each size n in `sizes` with
// m = round(alpha n). Requires at least 3 sizes and at least 50 trials.
ConcentrationReport concentration_report(double alpha, std::vector<std::size_t> sizes,
                                         Algorithm algorithm, Form form, std::size_t trials,
                                         std::uint64_t base_seed,
                                         Ensemble ensemble = Ensemble::gaussian);

}  // namespace hopbound
