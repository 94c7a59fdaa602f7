#pragma once
// spectral.hpp
//
// Top eigenpair of H^T H by power iteration (applied as v -> H^T (H v),
// never forming H^T H) and the sign-rounding heuristic built on it. For
// sigma = sign(q1) the objective satisfies
//   |H sigma|^2 >= lambda1 (sum_i |q1_i|)^2,
// which is the certified floor reported alongside the heuristic value.

#include <cstddef>
#include <vector>

#include "hopbound/core.hpp"

namespace hopbound {

struct PowerIterationOptions {
    // converged when successive Rayleigh quotients differ by less than
    // tol relatively
    double tol = 1e-10;
    std::size_t max_iters = 10000;
};

struct EigenPair {
    double lambda1 = 0.0;       // top eigenvalue of H^T H
    std::vector<double> q1;     // unit eigenvector, first nonzero entry positive
    std::size_t iterations = 0;
};

// Starts from the normalized all-ones vector; if that start fails (it can
// be degenerate, e.g. lie in the null space), retries once from the
// alternating +-1 vector before giving up with an error that reports the
// last residual. An all-zero matrix short-circuits to lambda1 = 0.
EigenPair top_eigenpair(const ProblemInstance& instance, PowerIterationOptions options = {});

struct SpectralSolution {
    EigenPair eigenpair;
    SpinAssignment spins;
    EnergyReport report;
    double guaranteed_floor = 0.0;  // lambda1 (sum_i |q1_i|)^2
};

// Rounds q1 to spins (zero entries round to +1) and evaluates the positive
// form; the heuristic targets maximization only.
SpectralSolution eigen_solve(const ProblemInstance& instance, PowerIterationOptions options = {});

}  // namespace hopbound
