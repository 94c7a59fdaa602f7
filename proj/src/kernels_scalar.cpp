// Reference kernels. Plain left-to-right loops with no reassociation: this
// path defines the numeric baseline the SIMD variants are compared against,
// and it is the path pinned by golden outputs.

#include <cmath>

#include "hopbound/kernels.hpp"

namespace hopbound::kernels::scalar {

double dot(const double* x, const double* y, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy(double* y, double a, const double* x, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) y[i] += a * x[i];
}

double dot_axpy(double* y, double a, const double* x, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        acc += x[i] * y[i];
        y[i] += a * x[i];
    }
    return acc;
}

double sum_squares(const double* x, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += x[i] * x[i];
    return acc;
}

double sum_abs(const double* x, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += std::fabs(x[i]);
    return acc;
}

}  // namespace hopbound::kernels::scalar
