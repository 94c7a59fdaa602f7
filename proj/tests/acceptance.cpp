// Acceptance checks. Each criterion prints one [PASS]/[FAIL] line with its
// runtime; the process exits nonzero if any criterion fails. Tolerances are
// pinned here on purpose: loosening them is a visible diff.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "hopbound/analytic.hpp"
#include "hopbound/core.hpp"
#include "hopbound/exact.hpp"
#include "hopbound/experiment.hpp"
#include "hopbound/greedy.hpp"
#include "hopbound/rng.hpp"
#include "hopbound/spectral.hpp"

using namespace hopbound;

namespace {

struct Check {
    bool ok = true;
    std::string note;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!note.empty()) note += "; ";
            note += what;
        }
    }
};

bool close_rel(double value, double target, double tol) {
    return std::abs(value - target) <= tol * std::abs(target);
}

std::string run_cli_json(const std::string& args, int& exit_code) {
    const std::string command = std::string(HOPBOUND_CLI_PATH) + " " + args + " 2>&1";
    std::FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        exit_code = -1;
        return {};
    }
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    exit_code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return output;
}

// idx -> the (m, n) grid used by the cross-validation criteria
void instance_shape(std::size_t idx, std::size_t& m, std::size_t& n) {
    n = 2 + idx % 11;
    const std::size_t choices[4] = {1, std::max<std::size_t>(1, n / 2), n, 2 * n};
    m = choices[(idx / 11) % 4];
}

// 1. The recursion limits at the square ratio reproduce the reference
//    values through the command-line tool.
void criterion_recursion_via_cli(Check& check) {
    int exit_code = 0;
    const std::string pos =
        run_cli_json("recursion --alpha 1 --resolution 1000000 --form pos --json", exit_code);
    check.require(exit_code == 0, "positive recursion exited " + std::to_string(exit_code));
    if (exit_code == 0) {
        const nlohmann::json j = nlohmann::json::parse(pos);
        check.require(close_rel(j.at("normalized_quadratic").get<double>(), 2.5262, 1e-2),
                      "positive normalized_quadratic off 2.5262");
        check.require(close_rel(j.at("normalized_xi").get<double>(), 1.5894, 1e-2),
                      "positive normalized_xi off 1.5894");
    }
    const std::string neg =
        run_cli_json("recursion --alpha 1 --resolution 1000000 --form neg --json", exit_code);
    check.require(exit_code == 0, "negative recursion exited " + std::to_string(exit_code));
    if (exit_code == 0) {
        const nlohmann::json j = nlohmann::json::parse(neg);
        check.require(close_rel(j.at("normalized_quadratic").get<double>(), 0.3072, 1e-2),
                      "negative normalized_quadratic off 0.3072");
        check.require(close_rel(j.at("normalized_xi").get<double>(), 0.5542, 1e-2),
                      "negative normalized_xi off 0.5542");
    }
}

// 2. Closed-form bounds at alpha = 1.
void criterion_bounds(Check& check) {
    const BoundSet set = bounds(1.0);
    check.require(std::abs(set.positive_lower - 1.763) <= 1e-3, "positive_lower off 1.763");
    check.require(std::abs(set.positive_upper - 1.7979) <= 1e-3, "positive_upper off 1.7979");
    check.require(std::abs(set.negative_lower_asymptotic - 0.2021) <= 1e-3,
                  "negative_lower_asymptotic off 0.2021");
    check.require(std::abs(set.eigen_floor_asymptotic - 1.5958) <= 1e-3,
                  "eigen_floor_asymptotic off 1.5958");
    const BoundSet finite = bounds(1.0, 0.763, 100, 100);
    check.require(finite.negative_lower_finite.has_value() &&
                      std::abs(*finite.negative_lower_finite - 0.19962) <= 1e-3,
                  "negative_lower_finite off 0.19962");
}

// 3. The incremental exact solver agrees with the naive enumeration,
//    value and assignment, on 200 assorted instances in both forms.
void criterion_exact_vs_naive(Check& check) {
    for (std::size_t idx = 0; idx < 200; ++idx) {
        std::size_t m = 0;
        std::size_t n = 0;
        instance_shape(idx, m, n);
        const ProblemInstance instance =
            sample_instance(m, n, Ensemble::gaussian, 1000 + idx);
        for (Form form : {Form::positive, Form::negative}) {
            const ExactSolution fast = solve_exact(instance, form);
            const ExactSolution slow = solve_exact_naive(instance, form);
            if (fast.report.raw_quadratic != slow.report.raw_quadratic ||
                !(fast.spins == slow.spins)) {
                check.require(false, "mismatch at idx " + std::to_string(idx));
                return;
            }
        }
    }
}

// 4. Heuristics stay inside the exact envelope on the same 200 instances
//    and never throw.
void criterion_heuristics_dominated(Check& check) {
    try {
        for (std::size_t idx = 0; idx < 200; ++idx) {
            std::size_t m = 0;
            std::size_t n = 0;
            instance_shape(idx, m, n);
            const ProblemInstance instance =
                sample_instance(m, n, Ensemble::gaussian, 1000 + idx);
            const double best_pos = solve_exact(instance, Form::positive).report.raw_quadratic;
            const double best_neg = solve_exact(instance, Form::negative).report.raw_quadratic;
            const double slack = 1e-9 * (1.0 + best_pos);
            for (GreedyOrdering ordering :
                 {GreedyOrdering::natural, GreedyOrdering::by_column_norm}) {
                const double pos_r =
                    greedy_solve(instance, Form::positive, ordering).report.raw_quadratic;
                const double neg_r =
                    greedy_solve(instance, Form::negative, ordering).report.raw_quadratic;
                if (pos_r > best_pos + slack || neg_r < best_neg - slack) {
                    check.require(false, "greedy outside envelope at idx " + std::to_string(idx));
                    return;
                }
            }
            const double eigen_r = eigen_solve(instance).report.raw_quadratic;
            if (eigen_r > best_pos + slack || eigen_r < best_neg - slack) {
                check.require(false, "eigen outside envelope at idx " + std::to_string(idx));
                return;
            }
        }
    } catch (const std::exception& e) {
        check.require(false, std::string("exception: ") + e.what());
    }
}

// 5. Greedy means at 200x200 track the recursion prediction in both forms.
void criterion_greedy_tracks_recursion(Check& check) {
    const RecursionTrace prediction_pos = recursion(200, 200, Form::positive);
    const RecursionTrace prediction_neg = recursion(200, 200, Form::negative);
    const GreedyEstimate positive = greedy_mean_estimate(200, 200, Form::positive,
                                                         GreedyOrdering::natural, 200, 515);
    const GreedyEstimate negative = greedy_mean_estimate(200, 200, Form::negative,
                                                         GreedyOrdering::natural, 200, 515);
    check.require(close_rel(positive.mean_quadratic, prediction_pos.normalized_quadratic, 0.05),
                  "positive mean_quadratic off the recursion value");
    check.require(close_rel(negative.mean_quadratic, prediction_neg.normalized_quadratic, 0.05),
                  "negative mean_quadratic off the recursion value");
}

// 6. Spectral statistics at 400x400 land on the known limits and the
//    certified floor holds on every draw.
void criterion_spectral_statistics(Check& check) {
    const std::size_t trials = 20;
    double lambda_sum = 0.0;
    double mass_sum = 0.0;
    double xi_sum = 0.0;
    double floor_sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const ProblemInstance instance =
            sample_instance(400, 400, Ensemble::gaussian, rng::mix_seed(616, t));
        const SpectralSolution solution = eigen_solve(instance);
        lambda_sum += solution.eigenpair.lambda1 / 400.0;
        double mass = 0.0;
        for (double q : solution.eigenpair.q1) mass += std::abs(q);
        mass_sum += mass * mass / 400.0;
        xi_sum += solution.report.normalized_xi;
        floor_sum += solution.guaranteed_floor / (400.0 * 400.0);
        if (solution.report.raw_quadratic < solution.guaranteed_floor * (1.0 - 1e-9)) {
            check.require(false, "floor violated at trial " + std::to_string(t));
            return;
        }
    }
    const double d = static_cast<double>(trials);
    const double two_over_pi = 2.0 / std::numbers::pi;
    check.require(close_rel(lambda_sum / d, 4.0, 0.05), "mean lambda1/n off 4");
    check.require(close_rel(mass_sum / d, two_over_pi, 0.10), "mean mass^2/n off 2/pi");
    check.require(xi_sum / d > 1.55 && xi_sum / d < 1.85, "mean normalized_xi outside [1.55,1.85]");
    check.require(close_rel(floor_sum / d, 4.0 * two_over_pi, 0.10),
                  "mean floor/n^2 off 8/pi");
}

// 7. Free energies bracket the ground state and move toward it as beta
//    grows, on 50 instances and both forms.
void criterion_free_energy_brackets(Check& check) {
    const double ln2 = std::log(2.0);
    for (std::size_t idx = 0; idx < 50; ++idx) {
        const std::size_t n = 3 + idx % 10;
        const std::size_t m = 1 + idx % 13;
        const ProblemInstance instance =
            sample_instance(m, n, Ensemble::gaussian, 3000 + idx);
        const double n2 = static_cast<double>(n) * static_cast<double>(n);
        const double r_max = solve_exact(instance, Form::positive).report.raw_quadratic;
        const double r_min = solve_exact(instance, Form::negative).report.raw_quadratic;
        double previous_pos = std::numeric_limits<double>::infinity();
        double previous_neg = -std::numeric_limits<double>::infinity();
        for (double beta : {1.0, 10.0, 100.0, 1e4}) {
            const double f_pos = free_energy(instance, Form::positive, beta).value;
            const double f_neg = free_energy(instance, Form::negative, beta).value;
            const double slack = 1e-9 * (1.0 + std::abs(f_pos) + std::abs(f_neg));
            const bool bracketed = f_pos >= r_max / n2 - slack &&
                                   f_pos <= r_max / n2 + ln2 / beta + slack &&
                                   f_neg <= r_min / n2 + slack &&
                                   f_neg >= r_min / n2 - ln2 / beta - slack;
            const bool monotone = f_pos <= previous_pos + slack && f_neg >= previous_neg - slack;
            if (!bracketed || !monotone) {
                check.require(false, "bracket or monotonicity failed at idx " +
                                         std::to_string(idx));
                return;
            }
            previous_pos = f_pos;
            previous_neg = f_neg;
        }
    }
}

// 8. Serialized experiment output is byte-identical across repeated runs
//    and worker counts.
void criterion_deterministic_experiments(Check& check) {
    ExperimentConfig config;
    config.m = 50;
    config.n = 40;
    config.algorithms = {Algorithm::greedy, Algorithm::greedy_sorted, Algorithm::eigen};
    config.trials = 8;
    config.base_seed = 717;

    const ExperimentResult first = run_experiment(config, 1);
    const ExperimentResult second = run_experiment(config, 1);
    const ExperimentResult pooled = run_experiment(config, 4);
    check.require(to_csv(first) == to_csv(second), "csv differs between identical runs");
    check.require(to_json(first) == to_json(second), "json differs between identical runs");
    check.require(to_csv(first) == to_csv(pooled), "csv depends on the worker count");
    check.require(to_json(first) == to_json(pooled), "json depends on the worker count");
}

// 9. Ensemble universality of the greedy mean at 200x200, plus the sampled
//    values respecting the closed-form ceiling.
void criterion_universality(Check& check) {
    const GreedyEstimate gaussian = greedy_mean_estimate(200, 200, Form::positive,
                                                         GreedyOrdering::natural, 100, 818);
    const GreedyEstimate bernoulli = greedy_mean_estimate(200, 200, Form::positive,
                                                          GreedyOrdering::natural, 100, 818,
                                                          Ensemble::bernoulli);
    check.require(close_rel(gaussian.mean_xi, bernoulli.mean_xi, 0.03),
                  "gaussian and bernoulli greedy means differ by more than 3%");

    const double ceiling = bounds(1.0).positive_upper;
    std::size_t below = 0;
    const std::size_t trials = 100;
    for (std::size_t t = 0; t < trials; ++t) {
        const ProblemInstance instance =
            sample_instance(200, 200, Ensemble::gaussian, rng::mix_seed(919, t));
        const double greedy_xi =
            greedy_solve(instance, Form::positive).report.normalized_xi;
        const double eigen_xi = eigen_solve(instance).report.normalized_xi;
        if (greedy_xi < ceiling && eigen_xi < ceiling) ++below;
    }
    check.require(below >= 99, "heuristic values exceeded the ceiling on " +
                                   std::to_string(trials - below) + " trials");
}

struct Criterion {
    const char* label;
    double budget_seconds;
    std::function<void(Check&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"recursion limits at alpha=1 via the CLI", 5.0, criterion_recursion_via_cli},
        {"closed-form bounds at alpha=1", 5.0, criterion_bounds},
        {"exact solver matches naive enumeration on 200 instances", 30.0,
         criterion_exact_vs_naive},
        {"heuristics stay inside the exact envelope", 30.0, criterion_heuristics_dominated},
        {"greedy means track the recursion at 200x200", 60.0,
         criterion_greedy_tracks_recursion},
        {"spectral statistics at 400x400", 60.0, criterion_spectral_statistics},
        {"free energies bracket the ground state", 30.0, criterion_free_energy_brackets},
        {"experiments are deterministic across workers", 60.0,
         criterion_deterministic_experiments},
        {"greedy means are ensemble universal", 60.0, criterion_universality},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.require(seconds <= criteria[i].budget_seconds,
                      "exceeded " + std::to_string(criteria[i].budget_seconds) + "s budget");

        std::printf("[%s] criterion %zu: %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].label, seconds, check.note.empty() ? "" : ": ",
                    check.note.c_str());
        if (!check.ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
