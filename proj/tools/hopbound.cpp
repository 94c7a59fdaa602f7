// hopbound: command-line front end.
//
// Exit codes: 0 success, 1 usage or precondition error, 2 runtime failure
// (missing files, non-convergence, write errors). Text output rounds to 6
// significant digits; --json emits full precision.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hopbound/analytic.hpp"
#include "hopbound/core.hpp"
#include "hopbound/exact.hpp"
#include "hopbound/experiment.hpp"
#include "hopbound/greedy.hpp"
#include "hopbound/spectral.hpp"

namespace {

using hopbound::Algorithm;
using hopbound::Ensemble;
using hopbound::Form;
using ordered_json = nlohmann::ordered_json;

std::string fmt6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", value);
    return buffer;
}

std::vector<std::string> split(const std::string& text, char separator) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == separator) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    return parts;
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
    if (text.empty() || text[0] == '-') {
        throw std::invalid_argument(std::string(what) + ": expected an unsigned integer, got '" +
                                    text + "'");
    }
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
        throw std::invalid_argument(std::string(what) + ": expected an unsigned integer, got '" +
                                    text + "'");
    }
    return value;
}

struct SolveOptions {
    std::string matrix_path;
    std::string sample_spec;
    std::string form = "pos";
    std::string algorithm = "exact";
    std::size_t limit = hopbound::kDefaultExactLimit;
    bool as_json = false;
    bool emit_spins = false;
};

hopbound::ProblemInstance make_instance(const SolveOptions& options) {
    const bool have_matrix = !options.matrix_path.empty();
    const bool have_sample = !options.sample_spec.empty();
    if (have_matrix == have_sample) {
        throw std::invalid_argument("solve: exactly one of --matrix and --sample is required");
    }
    if (have_matrix) return hopbound::load_matrix(options.matrix_path);

    const std::vector<std::string> parts = split(options.sample_spec, ',');
    if (parts.size() != 4) {
        throw std::invalid_argument("--sample expects m,n,ensemble,seed");
    }
    const std::size_t m = static_cast<std::size_t>(parse_u64(parts[0], "--sample m"));
    const std::size_t n = static_cast<std::size_t>(parse_u64(parts[1], "--sample n"));
    const Ensemble ensemble = hopbound::parse_ensemble(parts[2]);
    const std::uint64_t seed = parse_u64(parts[3], "--sample seed");
    return hopbound::sample_instance(m, n, ensemble, seed);
}

void print_kv(const std::string& key, const std::string& value) {
    std::cout << key << ": " << value << "\n";
}

int cmd_solve(const SolveOptions& options) {
    const hopbound::ProblemInstance instance = make_instance(options);
    const Form form = hopbound::parse_form(options.form);
    const Algorithm algorithm = hopbound::parse_algorithm(options.algorithm);

    hopbound::EnergyReport report;
    std::optional<std::uint64_t> states_visited;
    std::optional<double> lambda1;
    std::optional<double> guaranteed_floor;
    std::optional<std::size_t> iterations;
    std::optional<hopbound::SpinAssignment> spins;

    switch (algorithm) {
        case Algorithm::exact: {
            const hopbound::ExactSolution solution =
                hopbound::solve_exact(instance, form, options.limit);
            report = solution.report;
            states_visited = solution.states_visited;
            spins = solution.spins;
            break;
        }
        case Algorithm::greedy:
        case Algorithm::greedy_sorted: {
            const hopbound::GreedyResult result = hopbound::greedy_solve(
                instance, form,
                algorithm == Algorithm::greedy ? hopbound::GreedyOrdering::natural
                                               : hopbound::GreedyOrdering::by_column_norm);
            report = result.report;
            spins = result.spins;
            break;
        }
        case Algorithm::eigen: {
            if (form == Form::negative) {
                throw std::invalid_argument(
                    "solve: the eigen heuristic only applies to the positive form");
            }
            const hopbound::SpectralSolution solution = hopbound::eigen_solve(instance);
            report = solution.report;
            lambda1 = solution.eigenpair.lambda1;
            guaranteed_floor = solution.guaranteed_floor;
            iterations = solution.eigenpair.iterations;
            spins = solution.spins;
            break;
        }
    }

    if (options.as_json) {
        ordered_json j;
        j["m"] = instance.m();
        j["n"] = instance.n();
        j["ensemble"] = std::string(to_string(instance.ensemble()));
        if (instance.seed().has_value()) j["seed"] = *instance.seed();
        j["form"] = std::string(to_string(report.form));
        j["algorithm"] = std::string(to_string(report.algorithm));
        j["raw_quadratic"] = report.raw_quadratic;
        j["normalized_xi"] = report.normalized_xi;
        j["normalized_quadratic"] = report.normalized_quadratic;
        if (states_visited) j["states_visited"] = *states_visited;
        if (lambda1) j["lambda1"] = *lambda1;
        if (guaranteed_floor) j["guaranteed_floor"] = *guaranteed_floor;
        if (iterations) j["iterations"] = *iterations;
        if (options.emit_spins && spins) {
            ordered_json array = ordered_json::array();
            for (std::size_t i = 0; i < spins->size(); ++i) array.push_back((*spins)[i]);
            j["spins"] = std::move(array);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    print_kv("m", std::to_string(instance.m()));
    print_kv("n", std::to_string(instance.n()));
    print_kv("ensemble", std::string(to_string(instance.ensemble())));
    if (instance.seed().has_value()) print_kv("seed", std::to_string(*instance.seed()));
    print_kv("form", std::string(to_string(report.form)));
    print_kv("algorithm", std::string(to_string(report.algorithm)));
    print_kv("raw_quadratic", fmt6(report.raw_quadratic));
    print_kv("normalized_xi", fmt6(report.normalized_xi));
    print_kv("normalized_quadratic", fmt6(report.normalized_quadratic));
    if (states_visited) print_kv("states_visited", std::to_string(*states_visited));
    if (lambda1) print_kv("lambda1", fmt6(*lambda1));
    if (guaranteed_floor) print_kv("guaranteed_floor", fmt6(*guaranteed_floor));
    if (iterations) print_kv("iterations", std::to_string(*iterations));
    if (options.emit_spins && spins) print_kv("spins", spins->to_string());
    return 0;
}

struct BoundsOptions {
    double alpha = 0.0;
    double xi_sk = 0.763;
    std::optional<std::size_t> m;
    std::optional<std::size_t> n;
    bool as_json = false;
};

int cmd_bounds(const BoundsOptions& options) {
    const hopbound::BoundSet set =
        hopbound::bounds(options.alpha, options.xi_sk, options.m, options.n);
    if (options.as_json) {
        ordered_json j;
        j["alpha"] = set.alpha;
        j["xi_sk"] = set.xi_sk;
        j["positive_upper"] = set.positive_upper;
        j["positive_lower"] = set.positive_lower;
        j["negative_lower_asymptotic"] = set.negative_lower_asymptotic;
        if (set.negative_lower_finite) j["negative_lower_finite"] = *set.negative_lower_finite;
        j["eigen_floor_asymptotic"] = set.eigen_floor_asymptotic;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    print_kv("alpha", fmt6(set.alpha));
    print_kv("xi_sk", fmt6(set.xi_sk));
    print_kv("positive_upper", fmt6(set.positive_upper));
    print_kv("positive_lower", fmt6(set.positive_lower));
    print_kv("negative_lower_asymptotic", fmt6(set.negative_lower_asymptotic));
    if (set.negative_lower_finite) {
        print_kv("negative_lower_finite", fmt6(*set.negative_lower_finite));
    }
    print_kv("eigen_floor_asymptotic", fmt6(set.eigen_floor_asymptotic));
    return 0;
}

struct RecursionOptions {
    double alpha = 0.0;
    std::size_t resolution = 1000000;
    std::string form = "pos";
    std::string trace_path;
    bool as_json = false;
};

int cmd_recursion(const RecursionOptions& options) {
    const Form form = hopbound::parse_form(options.form);
    const double xi = hopbound::recursion_limit(options.alpha, form, options.resolution);
    const double quadratic = xi * xi;

    if (!options.trace_path.empty()) {
        const auto m = std::llround(options.alpha * static_cast<double>(options.resolution));
        const hopbound::RecursionTrace trace =
            hopbound::recursion(static_cast<std::size_t>(m), options.resolution, form);
        std::ofstream out(options.trace_path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("recursion: cannot open " + options.trace_path +
                                     " for writing");
        }
        out << "k,phi\n";
        char buffer[128];
        for (std::size_t k = 0; k < trace.phi.size(); ++k) {
            std::snprintf(buffer, sizeof buffer, "%llu,%.17g\n",
                          static_cast<unsigned long long>(k + 1), trace.phi[k]);
            out << buffer;
        }
        out.flush();
        if (!out) throw std::runtime_error("recursion: failed while writing " + options.trace_path);
    }

    if (options.as_json) {
        ordered_json j;
        j["alpha"] = options.alpha;
        j["form"] = std::string(to_string(form));
        j["resolution"] = options.resolution;
        j["normalized_quadratic"] = quadratic;
        j["normalized_xi"] = xi;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    print_kv("alpha", fmt6(options.alpha));
    print_kv("form", std::string(to_string(form)));
    print_kv("resolution", std::to_string(options.resolution));
    print_kv("normalized_quadratic", fmt6(quadratic));
    print_kv("normalized_xi", fmt6(xi));
    return 0;
}

struct ExperimentOptions {
    std::string config_path;
    std::size_t m = 0;
    std::size_t n = 0;
    std::string ensemble = "gaussian";
    std::string form = "pos";
    std::string algorithms = "greedy";
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out_path;
    bool inline_used = false;
};

int cmd_experiment(const ExperimentOptions& options) {
    hopbound::ExperimentConfig config;
    if (!options.config_path.empty()) {
        if (options.inline_used) {
            throw std::invalid_argument(
                "experiment: use either --config or the inline flags, not both");
        }
        std::ifstream in(options.config_path);
        if (!in) {
            throw std::runtime_error("experiment: cannot open " + options.config_path);
        }
        std::ostringstream text;
        text << in.rdbuf();
        config = hopbound::config_from_json(text.str());
    } else {
        config.m = options.m;
        config.n = options.n;
        config.ensemble = hopbound::parse_ensemble(options.ensemble);
        config.form = hopbound::parse_form(options.form);
        for (const std::string& name : split(options.algorithms, ',')) {
            config.algorithms.push_back(hopbound::parse_algorithm(name));
        }
        config.trials = options.trials;
        config.base_seed = options.seed;
        if (options.format == "csv") {
            config.format = hopbound::ExperimentConfig::OutputFormat::csv;
        } else if (options.format == "json") {
            config.format = hopbound::ExperimentConfig::OutputFormat::json;
        } else {
            throw std::invalid_argument("experiment: --format must be csv or json");
        }
    }

    const hopbound::ExperimentResult result = hopbound::run_experiment(config);
    hopbound::serialize_result(result, options.out_path);

    std::cout << "wrote " << options.out_path << "\n";
    if (config.format == hopbound::ExperimentConfig::OutputFormat::csv) {
        std::cout << "wrote " << options.out_path << ".meta.json\n";
    }
    print_kv("trials", std::to_string(config.trials));
    for (const auto& [algorithm, aggregate] : result.aggregates) {
        std::cout << std::string(to_string(algorithm)) << ": mean_normalized_xi "
                  << fmt6(aggregate.mean_xi) << ", stddev " << fmt6(aggregate.stddev_xi)
                  << ", mean_normalized_quadratic " << fmt6(aggregate.mean_quadratic) << "\n";
    }
    return 0;
}

struct ConcentrationOptions {
    double alpha = 0.0;
    std::string sizes;
    std::size_t trials = 0;
    std::string algorithm = "greedy";
    std::string form = "pos";
    std::string ensemble = "gaussian";
    std::uint64_t seed = 0;
    bool as_json = false;
};

int cmd_concentration(const ConcentrationOptions& options) {
    std::vector<std::size_t> sizes;
    for (const std::string& part : split(options.sizes, ',')) {
        sizes.push_back(static_cast<std::size_t>(parse_u64(part, "--sizes")));
    }
    const hopbound::ConcentrationReport report = hopbound::concentration_report(
        options.alpha, std::move(sizes), hopbound::parse_algorithm(options.algorithm),
        hopbound::parse_form(options.form), options.trials, options.seed,
        hopbound::parse_ensemble(options.ensemble));

    if (options.as_json) {
        ordered_json j;
        j["alpha"] = report.alpha;
        j["form"] = std::string(to_string(report.form));
        j["algorithm"] = std::string(to_string(report.algorithm));
        j["ensemble"] = std::string(to_string(report.ensemble));
        j["trials"] = report.trials;
        ordered_json per_size = ordered_json::array();
        for (std::size_t s = 0; s < report.sizes.size(); ++s) {
            per_size.push_back({{"n", report.sizes[s]},
                                {"mean_normalized_xi", report.mean_xi[s]},
                                {"stddev_normalized_xi", report.stddev_xi[s]},
                                {"ratio", report.ratio[s]}});
        }
        j["sizes"] = std::move(per_size);
        j["non_increasing"] = report.non_increasing;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    print_kv("alpha", fmt6(report.alpha));
    print_kv("form", std::string(to_string(report.form)));
    print_kv("algorithm", std::string(to_string(report.algorithm)));
    print_kv("ensemble", std::string(to_string(report.ensemble)));
    print_kv("trials", std::to_string(report.trials));
    for (std::size_t s = 0; s < report.sizes.size(); ++s) {
        std::cout << "n " << report.sizes[s] << ": mean_normalized_xi "
                  << fmt6(report.mean_xi[s]) << ", stddev " << fmt6(report.stddev_xi[s])
                  << ", ratio " << fmt6(report.ratio[s]) << "\n";
    }
    print_kv("non_increasing", report.non_increasing ? "true" : "false");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground-state energies of random +-1 quadratic forms: exact solvers, "
                 "heuristics, analytic bounds and seeded experiments"};
    app.require_subcommand(1);

    SolveOptions solve_options;
    CLI::App* solve = app.add_subcommand("solve", "optimize a single instance");
    solve->add_option("--matrix", solve_options.matrix_path, "path to a matrix text file");
    solve->add_option("--sample", solve_options.sample_spec,
                      "draw an instance: m,n,ensemble,seed");
    solve->add_option("--form", solve_options.form, "pos or neg (default pos)");
    solve->add_option("--algo", solve_options.algorithm,
                      "exact, greedy, greedy-sorted or eigen (default exact)");
    solve->add_option("--limit", solve_options.limit,
                      "n limit for the exact solver (default 26)");
    solve->add_flag("--json", solve_options.as_json, "emit JSON at full precision");
    solve->add_flag("--emit-spins", solve_options.emit_spins, "include the spin vector");

    BoundsOptions bounds_options;
    CLI::App* bounds = app.add_subcommand("bounds", "closed-form bounds for a ratio alpha");
    bounds->add_option("--alpha", bounds_options.alpha, "aspect ratio m/n")->required();
    bounds->add_option("--xi-sk", bounds_options.xi_sk,
                       "ground-state constant in the positive lower bound (default 0.763)");
    bounds->add_option("--m", bounds_options.m, "row count for the finite-size bound");
    bounds->add_option("--n", bounds_options.n, "column count for the finite-size bound");
    bounds->add_flag("--json", bounds_options.as_json, "emit JSON at full precision");

    RecursionOptions recursion_options;
    CLI::App* recursion = app.add_subcommand("recursion", "mean recursion limit at a ratio alpha");
    recursion->add_option("--alpha", recursion_options.alpha, "aspect ratio m/n")->required();
    recursion->add_option("--resolution", recursion_options.resolution,
                          "evaluation size n (default 1000000, minimum 1000)");
    recursion->add_option("--form", recursion_options.form, "pos or neg (default pos)");
    recursion->add_option("--trace", recursion_options.trace_path,
                          "write the phi sequence as CSV to this path");
    recursion->add_flag("--json", recursion_options.as_json, "emit JSON at full precision");

    ExperimentOptions experiment_options;
    CLI::App* experiment = app.add_subcommand("experiment", "seeded Monte Carlo runs");
    experiment->add_option("--config", experiment_options.config_path,
                           "JSON config file (overrides the inline flags)");
    CLI::Option* opt_m = experiment->add_option("--m", experiment_options.m, "row count");
    experiment->add_option("--n", experiment_options.n, "column count");
    experiment->add_option("--ensemble", experiment_options.ensemble,
                           "gaussian or bernoulli (default gaussian)");
    experiment->add_option("--form", experiment_options.form, "pos or neg (default pos)");
    experiment->add_option("--algos", experiment_options.algorithms,
                           "comma-separated algorithms (default greedy)");
    experiment->add_option("--trials", experiment_options.trials, "number of trials");
    experiment->add_option("--seed", experiment_options.seed, "base seed (default 0)");
    experiment->add_option("--format", experiment_options.format, "csv or json (default json)");
    experiment->add_option("--out", experiment_options.out_path, "output path")->required();

    ConcentrationOptions concentration_options;
    CLI::App* concentration =
        app.add_subcommand("concentration", "normalized_xi spread across sizes");
    concentration->add_option("--alpha", concentration_options.alpha, "aspect ratio m/n")
        ->required();
    concentration->add_option("--sizes", concentration_options.sizes,
                              "comma-separated sizes n, at least 3")
        ->required();
    concentration->add_option("--trials", concentration_options.trials,
                              "trials per size, at least 50")
        ->required();
    concentration->add_option("--algo", concentration_options.algorithm,
                              "exact, greedy, greedy-sorted or eigen (default greedy)");
    concentration->add_option("--form", concentration_options.form, "pos or neg (default pos)");
    concentration->add_option("--ensemble", concentration_options.ensemble,
                              "gaussian or bernoulli (default gaussian)");
    concentration->add_option("--seed", concentration_options.seed, "base seed (default 0)");
    concentration->add_flag("--json", concentration_options.as_json,
                            "emit JSON at full precision");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    experiment_options.inline_used =
        opt_m->count() > 0 || experiment->count("--n") > 0 || experiment->count("--trials") > 0;

    try {
        if (solve->parsed()) return cmd_solve(solve_options);
        if (bounds->parsed()) return cmd_bounds(bounds_options);
        if (recursion->parsed()) return cmd_recursion(recursion_options);
        if (experiment->parsed()) return cmd_experiment(experiment_options);
        if (concentration->parsed()) return cmd_concentration(concentration_options);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
