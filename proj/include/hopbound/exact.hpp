#pragma once
// exact.hpp
//
// Exhaustive optimization of |H sigma|^2 and the finite-size partition sum.
// Both objectives are invariant under sigma -> -sigma, so sigma_1 is pinned
// to +1 and the walk covers the 2^(n-1) remaining assignments.

#include <bit>
#include <cstdint>
#include <vector>

#include "hopbound/core.hpp"
#include "hopbound/kernels.hpp"

namespace hopbound {

inline constexpr std::size_t kDefaultExactLimit = 26;

struct ExactSolution {
    SpinAssignment spins;
    EnergyReport report;
    std::uint64_t states_visited = 0;
};

// Gray-code walk with incremental column updates; the reported optimum is
// re-evaluated from scratch on the winning assignment. Ties keep the first
// optimum along the walk. n above n_limit is rejected.
ExactSolution solve_exact(const ProblemInstance& instance, Form form,
                          std::size_t n_limit = kDefaultExactLimit);

// Oracle twin of solve_exact: visits the same assignment sequence but
// recomputes every energy from scratch and shares none of the incremental
// update code. Restricted to n <= 16.
ExactSolution solve_exact_naive(const ProblemInstance& instance, Form form);

struct FreeEnergyPoint {
    double beta = 0.0;
    double value = 0.0;
};

// Finite-size free energy at inverse temperature beta > 0, over
// x = sigma / sqrt(n):
//   positive  f =  log( sum_sigma exp(+beta |H x|^2) ) / (beta n)
//   negative  f = -log( sum_sigma exp(-beta |H x|^2) ) / (beta n)
// so in both forms f tends to the ground-state value of |H x|^2 / n as
// beta grows. The sum runs over all 2^n assignments (the pinned half is
// doubled) and is accumulated with a running max shift, which keeps the
// evaluation finite for beta up to 1e6 and beyond. Requires n <= 26.
FreeEnergyPoint free_energy(const ProblemInstance& instance, Form form, double beta);

// Visits every assignment with sigma_1 = +1 in binary-reflected Gray order,
// maintaining v = H sigma and r = |v|^2 incrementally: flipping spin k
// updates v by -2 sigma_k H_col_k and r by -4 sigma_k <H_col_k, v> +
// 4 |H_col_k|^2. visit(spins, r) is called for each of the 2^(n-1) states.
template <typename Visit>
void for_each_assignment(const ProblemInstance& instance, Visit&& visit) {
    const std::size_t m = instance.m();
    const std::size_t n = instance.n();
    std::vector<double> v(m, 0.0);
    std::vector<double> column_norms(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        kernels::axpy(v.data(), 1.0, instance.h().col(j), m);
        column_norms[j] = kernels::sum_squares(instance.h().col(j), m);
    }
    SpinAssignment spins(n);
    double r = kernels::sum_squares(v.data(), m);
    visit(spins, r);
    if (n < 2) return;
    const std::uint64_t states = std::uint64_t{1} << (n - 1);
    for (std::uint64_t i = 1; i < states; ++i) {
        const std::size_t k = static_cast<std::size_t>(std::countr_zero(i)) + 1;
        const double a = -2.0 * static_cast<double>(spins[k]);
        const double t = kernels::dot_axpy(v.data(), a, instance.h().col(k), m);
        r += 2.0 * a * t + 4.0 * column_norms[k];
        spins.flip(k);
        visit(spins, r);
    }
}

}  // namespace hopbound
