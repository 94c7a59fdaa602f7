#include "hopbound/exact.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hopbound {

ExactSolution solve_exact(const ProblemInstance& instance, Form form, std::size_t n_limit) {
    if (instance.n() > n_limit) {
        throw std::invalid_argument("solve_exact: n=" + std::to_string(instance.n()) +
                                    " exceeds the enumeration limit " + std::to_string(n_limit));
    }
    const bool maximize = form == Form::positive;
    SpinAssignment best(instance.n());
    double best_r = 0.0;
    bool first = true;
    std::uint64_t visited = 0;
    for_each_assignment(instance, [&](const SpinAssignment& spins, double r) {
        ++visited;
        if (first || (maximize ? r > best_r : r < best_r)) {
            best = spins;
            best_r = r;
            first = false;
        }
    });
    ExactSolution solution{best, energy(instance, best, form, Algorithm::exact), visited};
    // The scan tracked incrementally updated values; the reported optimum is
    // a fresh evaluation of the winner. Disagreement means the column
    // updates drifted.
    if (std::abs(solution.report.raw_quadratic - best_r) >
        1e-9 * (1.0 + std::abs(solution.report.raw_quadratic))) {
        throw std::runtime_error("solve_exact: incremental energy drifted from fresh evaluation");
    }
    return solution;
}

ExactSolution solve_exact_naive(const ProblemInstance& instance, Form form) {
    const std::size_t n = instance.n();
    if (n > 16) {
        throw std::invalid_argument("solve_exact_naive: n=" + std::to_string(n) +
                                    " exceeds the oracle limit 16");
    }
    const bool maximize = form == Form::positive;
    SpinAssignment current(n);
    SpinAssignment best(n);
    double best_r = 0.0;
    bool first = true;
    const std::uint64_t states = std::uint64_t{1} << (n - 1);
    for (std::uint64_t s = 0; s < states; ++s) {
        const std::uint64_t gray = s ^ (s >> 1);
        for (std::size_t b = 0; b + 1 < n; ++b) {
            current.set(b + 1, ((gray >> b) & 1) != 0 ? -1 : 1);
        }
        const double r = energy(instance, current, form).raw_quadratic;
        if (first || (maximize ? r > best_r : r < best_r)) {
            best = current;
            best_r = r;
            first = false;
        }
    }
    return {best, energy(instance, best, form, Algorithm::exact), states};
}

FreeEnergyPoint free_energy(const ProblemInstance& instance, Form form, double beta) {
    if (!std::isfinite(beta) || beta <= 0.0) {
        throw std::invalid_argument("free_energy: beta must be positive and finite");
    }
    if (instance.n() > kDefaultExactLimit) {
        throw std::invalid_argument("free_energy: n=" + std::to_string(instance.n()) +
                                    " exceeds the enumeration limit " +
                                    std::to_string(kDefaultExactLimit));
    }
    const double sign = form == Form::positive ? 1.0 : -1.0;
    const double n = static_cast<double>(instance.n());
    // log of sum exp(a) with a running max shift
    double shift = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for_each_assignment(instance, [&](const SpinAssignment&, double r) {
        const double a = sign * beta * r / n;
        if (a <= shift) {
            sum += std::exp(a - shift);
        } else {
            sum = sum * std::exp(shift - a) + 1.0;
            shift = a;
        }
    });
    // sigma and -sigma carry the same energy, hence the ln 2
    const double log_z = std::numbers::ln2 + shift + std::log(sum);
    return {beta, sign * log_z / (beta * n)};
}

}  // namespace hopbound
