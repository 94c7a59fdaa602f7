#pragma once
// analytic.hpp
//
// Closed-form bounds on the normalized_xi scale and the step-wise mean
// recursion that predicts the greedy objective. Everything here is a pure
// function of alpha = m/n (plus m, n where a finite-size correction
// exists); no sampling.

#include <cstddef>
#include <optional>
#include <vector>

#include "hopbound/core.hpp"

namespace hopbound {

struct BoundSet {
    double alpha = 0.0;
    double xi_sk = 0.0;
    // sqrt(alpha) + sqrt(2/pi)
    double positive_upper = 0.0;
    // sqrt(alpha) + xi_sk
    double positive_lower = 0.0;
    // sqrt(alpha) - sqrt(2/pi)
    double negative_lower_asymptotic = 0.0;
    // sqrt(alpha) - 1/(4 sqrt(m n)) - sqrt(2/pi); present only when m, n given
    std::optional<double> negative_lower_finite;
    // (sqrt(alpha) + 1) sqrt(2/pi), the large-n limit of the certified
    // spectral floor on the normalized_xi scale
    double eigen_floor_asymptotic = 0.0;
};

// xi_sk is the ground-state constant of the fully random +-1 quadratic
// form entering the positive lower bound; 0.763 by default, with 0.7632 as
// the commonly used refinement. m and n must be given together and must be
// consistent with alpha.
BoundSet bounds(double alpha, double xi_sk = 0.763,
                std::optional<std::size_t> m = std::nullopt,
                std::optional<std::size_t> n = std::nullopt);

struct RecursionTrace {
    std::size_t m = 0;
    std::size_t n = 0;
    Form form = Form::positive;
    // phi[k-1] holds phi_k for k = 1..n
    std::vector<double> phi;
    // phi_n / n^2
    double normalized_quadratic = 0.0;
    // sqrt(phi_n) / n
    double normalized_xi = 0.0;
};

// Mean recursion for the greedy objective:
//   phi_1 = m,  phi_k = phi_{k-1} +- 2 sqrt(2/pi) sqrt(phi_{k-1}) + m
// (+ for the positive form, - for the negative). The negative iteration
// stays positive and, once below it, never exceeds its fixed point
// phi* = m^2 pi / 8.
RecursionTrace recursion(std::size_t m, std::size_t n, Form form);

// Evaluates the recursion at n = resolution, m = round(alpha n) and returns
// sqrt(phi_n)/n. A doubled-resolution evaluation must agree within 1e-3
// relative or the call fails; resolution must be at least 1000.
double recursion_limit(double alpha, Form form, std::size_t resolution = 1000000);

}  // namespace hopbound
