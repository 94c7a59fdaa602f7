#include "hopbound/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hopbound/kernels.hpp"
#include "hopbound/rng.hpp"

namespace hopbound {

GreedyResult greedy_solve(const ProblemInstance& instance, Form form, GreedyOrdering ordering) {
    const std::size_t m = instance.m();
    const std::size_t n = instance.n();

    std::vector<double> column_norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        column_norms[j] = kernels::sum_squares(instance.h().col(j), m);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (ordering == GreedyOrdering::by_column_norm) {
        // stable sort keeps the lower index first on equal norms
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return column_norms[a] > column_norms[b];
        });
    }

    std::vector<double> w(m, 0.0);
    SpinAssignment spins(n);
    GreedyTrace trace;
    trace.order = order;
    trace.partial_r.reserve(n);
    trace.inner_products.reserve(n);

    const double direction = form == Form::positive ? 1.0 : -1.0;
    double r = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        const double c = kernels::dot(instance.h().col(j), w.data(), m);
        const int s = direction * c >= 0.0 ? 1 : -1;
        spins.set(j, s);
        r += 2.0 * s * c + column_norms[j];
        kernels::axpy(w.data(), static_cast<double>(s), instance.h().col(j), m);
        trace.inner_products.push_back(std::abs(c));
        trace.partial_r.push_back(r);
    }

    const Algorithm tag =
        ordering == GreedyOrdering::natural ? Algorithm::greedy : Algorithm::greedy_sorted;
    return {spins, energy(instance, spins, form, tag), std::move(trace)};
}

GreedyEstimate greedy_mean_estimate(std::size_t m, std::size_t n, Form form,
                                    GreedyOrdering ordering, std::size_t trials,
                                    std::uint64_t seed, Ensemble ensemble) {
    if (trials == 0) throw std::invalid_argument("greedy_mean_estimate: trials must be positive");
    std::vector<double> xi(trials);
    std::vector<double> quadratic(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const ProblemInstance instance =
            sample_instance(m, n, ensemble, rng::mix_seed(seed, t));
        const GreedyResult result = greedy_solve(instance, form, ordering);
        xi[t] = result.report.normalized_xi;
        quadratic[t] = result.report.normalized_quadratic;
    }
    auto mean_of = [&](const std::vector<double>& values) {
        double total = 0.0;
        for (double v : values) total += v;
        return total / static_cast<double>(values.size());
    };
    auto stddev_of = [&](const std::vector<double>& values, double mean) {
        if (values.size() < 2) return 0.0;
        double total = 0.0;
        for (double v : values) total += (v - mean) * (v - mean);
        return std::sqrt(total / static_cast<double>(values.size() - 1));
    };
    GreedyEstimate estimate;
    estimate.trials = trials;
    estimate.mean_xi = mean_of(xi);
    estimate.stddev_xi = stddev_of(xi, estimate.mean_xi);
    estimate.mean_quadratic = mean_of(quadratic);
    estimate.stddev_quadratic = stddev_of(quadratic, estimate.mean_quadratic);
    return estimate;
}

}  // namespace hopbound
