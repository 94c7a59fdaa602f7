#pragma once
// greedy.hpp
//
// One-pass bit fixing: columns are processed in a fixed order and each spin
// is set to the sign that locally improves |w|^2, where w accumulates the
// signed columns fixed so far. O(m n) total.

#include <cstdint>
#include <vector>

#include "hopbound/core.hpp"

namespace hopbound {

enum class GreedyOrdering {
    natural,         // columns 1..n as stored
    by_column_norm,  // decreasing |H_col|^2, ties keep the lower index
};

struct GreedyTrace {
    // column index processed at each step
    std::vector<std::size_t> order;
    // realized objective |w_k|^2 after each step; satisfies
    // partial_r[k] = partial_r[k-1] +- 2 inner_products[k] + |H_col|^2
    std::vector<double> partial_r;
    // |<H_col, w_{k-1}>| at each step; 0 at the first step
    std::vector<double> inner_products;
};

struct GreedyResult {
    SpinAssignment spins;
    EnergyReport report;
    GreedyTrace trace;
};

// The first processed column is fixed to +1 (a zero inner product resolves
// to +1, and w starts at zero). Positive form picks sigma_k = sign(c),
// negative form sigma_k = -sign(c), with c the inner product against the
// running w. The final report is a fresh energy() evaluation.
GreedyResult greedy_solve(const ProblemInstance& instance, Form form,
                          GreedyOrdering ordering = GreedyOrdering::natural);

struct GreedyEstimate {
    std::size_t trials = 0;
    double mean_xi = 0.0;
    double stddev_xi = 0.0;
    double mean_quadratic = 0.0;
    double stddev_quadratic = 0.0;
};

// Runs greedy_solve over `trials` independently seeded instances
// (per-trial seed = rng::mix_seed(seed, trial)) and aggregates the two
// normalized scales. Sample standard deviation, reported as 0 for a single
// trial. Deterministic in all arguments.
GreedyEstimate greedy_mean_estimate(std::size_t m, std::size_t n, Form form,
                                    GreedyOrdering ordering, std::size_t trials,
                                    std::uint64_t seed,
                                    Ensemble ensemble = Ensemble::gaussian);

}  // namespace hopbound
