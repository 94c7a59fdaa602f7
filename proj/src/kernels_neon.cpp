// NEON kernel variants for aarch64, where 128-bit SIMD is part of the
// baseline ISA, so runtime_supported() is unconditional.

#include "hopbound/kernels.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>

namespace hopbound::kernels::simd {

double dot(const double* x, const double* y, std::size_t len) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    for (; i + 2 <= len; i += 2) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < len; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy(double* y, double a, const double* x, std::size_t len) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), vld1q_f64(x + i), av));
    }
    for (; i < len; ++i) y[i] += a * x[i];
}

double dot_axpy(double* y, double a, const double* x, std::size_t len) {
    const float64x2_t av = vdupq_n_f64(a);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        const float64x2_t xv = vld1q_f64(x + i);
        const float64x2_t yv = vld1q_f64(y + i);
        acc = vfmaq_f64(acc, xv, yv);
        vst1q_f64(y + i, vfmaq_f64(yv, xv, av));
    }
    double total = vaddvq_f64(acc);
    for (; i < len; ++i) {
        total += x[i] * y[i];
        y[i] += a * x[i];
    }
    return total;
}

double sum_squares(const double* x, std::size_t len) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const float64x2_t a = vld1q_f64(x + i);
        const float64x2_t b = vld1q_f64(x + i + 2);
        acc0 = vfmaq_f64(acc0, a, a);
        acc1 = vfmaq_f64(acc1, b, b);
    }
    for (; i + 2 <= len; i += 2) {
        const float64x2_t a = vld1q_f64(x + i);
        acc0 = vfmaq_f64(acc0, a, a);
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < len; ++i) acc += x[i] * x[i];
    return acc;
}

double sum_abs(const double* x, std::size_t len) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        acc0 = vaddq_f64(acc0, vabsq_f64(vld1q_f64(x + i)));
        acc1 = vaddq_f64(acc1, vabsq_f64(vld1q_f64(x + i + 2)));
    }
    for (; i + 2 <= len; i += 2) {
        acc0 = vaddq_f64(acc0, vabsq_f64(vld1q_f64(x + i)));
    }
    double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < len; ++i) acc += x[i] < 0.0 ? -x[i] : x[i];
    return acc;
}

bool runtime_supported() { return true; }

const char* name() { return "neon"; }

}  // namespace hopbound::kernels::simd

#endif  // aarch64
