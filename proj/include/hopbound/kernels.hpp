#pragma once
// kernels.hpp
//
// Dense double-precision inner loops shared by every solver: dot products,
// scaled column updates, and reductions. The scalar implementation is the
// reference; AVX2 (x86-64) and NEON (aarch64) variants are compiled in when
// the toolchain allows and selected at runtime after a CPU capability check.
// All variants are equivalence-tested against the scalar path.
//
// Callers guarantee that input and output ranges do not alias.

#include <cstddef>
#include <string_view>

namespace hopbound::kernels {

enum class Backend {
    automatic,  // re-run CPU detection
    scalar,
    avx2,
    neon,
};

// <x, y>
double dot(const double* x, const double* y, std::size_t len);

// y += a * x
void axpy(double* y, double a, const double* x, std::size_t len);

// Fused flip update: returns <x, y> evaluated on the pre-update y, then
// performs y += a * x in the same pass.
double dot_axpy(double* y, double a, const double* x, std::size_t len);

// sum of x[i]^2
double sum_squares(const double* x, std::size_t len);

// sum of |x[i]|
double sum_abs(const double* x, std::size_t len);

// Overrides the dispatched backend. Selecting a backend that is not
// compiled in or not supported by this CPU falls back to scalar;
// Backend::automatic restores detection.
void select(Backend backend);

// Name of the backend currently in use: "scalar", "avx2" or "neon".
std::string_view active_name();

// Reference implementations, exposed so tests and pinned-output paths can
// bypass dispatch.
namespace scalar {
double dot(const double* x, const double* y, std::size_t len);
void axpy(double* y, double a, const double* x, std::size_t len);
double dot_axpy(double* y, double a, const double* x, std::size_t len);
double sum_squares(const double* x, std::size_t len);
double sum_abs(const double* x, std::size_t len);
}  // namespace scalar

}  // namespace hopbound::kernels
