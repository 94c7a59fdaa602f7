#include "hopbound/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hopbound {

namespace {

double sqrt_2_over_pi() { return std::sqrt(2.0 / std::numbers::pi); }

double phi_final(std::size_t m, std::size_t n, Form form) {
    const double step = 2.0 * sqrt_2_over_pi();
    const double sign = form == Form::positive ? 1.0 : -1.0;
    const double md = static_cast<double>(m);
    double phi = md;
    for (std::size_t k = 2; k <= n; ++k) {
        phi = phi + sign * step * std::sqrt(phi) + md;
    }
    return phi;
}

}  // namespace

BoundSet bounds(double alpha, double xi_sk, std::optional<std::size_t> m,
                std::optional<std::size_t> n) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw std::invalid_argument("bounds: alpha must be positive and finite");
    }
    if (!std::isfinite(xi_sk) || xi_sk <= 0.0) {
        throw std::invalid_argument("bounds: xi_sk must be positive and finite");
    }
    if (m.has_value() != n.has_value()) {
        throw std::invalid_argument("bounds: m and n must be given together");
    }
    if (m.has_value()) {
        if (*m == 0 || *n == 0) {
            throw std::invalid_argument("bounds: m and n must be positive");
        }
        const double ratio = static_cast<double>(*m) / static_cast<double>(*n);
        if (std::abs(ratio - alpha) > 1e-9 * alpha) {
            throw std::invalid_argument("bounds: alpha does not match m / n");
        }
    }
    const double c = sqrt_2_over_pi();
    const double root_alpha = std::sqrt(alpha);
    BoundSet set;
    set.alpha = alpha;
    set.xi_sk = xi_sk;
    set.positive_upper = root_alpha + c;
    set.positive_lower = root_alpha + xi_sk;
    set.negative_lower_asymptotic = root_alpha - c;
    if (m.has_value()) {
        const double mn = static_cast<double>(*m) * static_cast<double>(*n);
        set.negative_lower_finite = root_alpha - 1.0 / (4.0 * std::sqrt(mn)) - c;
    }
    set.eigen_floor_asymptotic = (root_alpha + 1.0) * c;
    return set;
}

RecursionTrace recursion(std::size_t m, std::size_t n, Form form) {
    if (m == 0 || n == 0) {
        throw std::invalid_argument("recursion: m and n must be positive");
    }
    const double step = 2.0 * sqrt_2_over_pi();
    const double sign = form == Form::positive ? 1.0 : -1.0;
    const double md = static_cast<double>(m);
    RecursionTrace trace;
    trace.m = m;
    trace.n = n;
    trace.form = form;
    trace.phi.resize(n);
    trace.phi[0] = md;
    for (std::size_t k = 1; k < n; ++k) {
        trace.phi[k] = trace.phi[k - 1] + sign * step * std::sqrt(trace.phi[k - 1]) + md;
    }
    const double nd = static_cast<double>(n);
    trace.normalized_quadratic = trace.phi.back() / (nd * nd);
    trace.normalized_xi = std::sqrt(trace.phi.back()) / nd;
    return trace;
}

double recursion_limit(double alpha, Form form, std::size_t resolution) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw std::invalid_argument("recursion_limit: alpha must be positive and finite");
    }
    if (resolution < 1000) {
        throw std::invalid_argument("recursion_limit: resolution must be at least 1000");
    }
    auto evaluate = [&](std::size_t n) {
        const auto m = std::llround(alpha * static_cast<double>(n));
        if (m < 1) {
            throw std::invalid_argument(
                "recursion_limit: alpha too small for the requested resolution");
        }
        return std::sqrt(phi_final(static_cast<std::size_t>(m), n, form)) /
               static_cast<double>(n);
    };
    const double value = evaluate(resolution);
    const double refined = evaluate(2 * resolution);
    if (std::abs(refined - value) > 1e-3 * std::abs(refined)) {
        throw std::runtime_error(
            "recursion_limit: value did not stabilize between resolution " +
            std::to_string(resolution) + " and its double");
    }
    return value;
}

}  // namespace hopbound
