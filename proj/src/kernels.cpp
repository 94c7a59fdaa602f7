// Runtime backend dispatch. The SIMD translation unit for the target
// architecture (if any) implements hopbound::kernels::simd; which one is
// linked in is decided at configure time, whether it is used is decided
// here at run time.

#include <atomic>

#include "hopbound/kernels.hpp"

#if defined(HOPBOUND_HAVE_AVX2_KERNELS) || defined(HOPBOUND_HAVE_NEON_KERNELS)
#define HOPBOUND_HAVE_SIMD_KERNELS 1
namespace hopbound::kernels::simd {
double dot(const double* x, const double* y, std::size_t len);
void axpy(double* y, double a, const double* x, std::size_t len);
double dot_axpy(double* y, double a, const double* x, std::size_t len);
double sum_squares(const double* x, std::size_t len);
double sum_abs(const double* x, std::size_t len);
bool runtime_supported();
const char* name();
}  // namespace hopbound::kernels::simd
#endif

namespace hopbound::kernels {

namespace {

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double*, double, const double*, std::size_t);
    double (*dot_axpy)(double*, double, const double*, std::size_t);
    double (*sum_squares)(const double*, std::size_t);
    double (*sum_abs)(const double*, std::size_t);
    const char* name;
};

constexpr Table kScalarTable{
    &scalar::dot, &scalar::axpy, &scalar::dot_axpy,
    &scalar::sum_squares, &scalar::sum_abs, "scalar"};

#ifdef HOPBOUND_HAVE_SIMD_KERNELS
const Table& simd_table() {
    static const Table table{
        &simd::dot, &simd::axpy, &simd::dot_axpy,
        &simd::sum_squares, &simd::sum_abs, simd::name()};
    return table;
}
#endif

const Table* detect() {
#ifdef HOPBOUND_HAVE_SIMD_KERNELS
    if (simd::runtime_supported()) return &simd_table();
#endif
    return &kScalarTable;
}

std::atomic<const Table*> g_table{nullptr};

const Table& active() {
    const Table* table = g_table.load(std::memory_order_acquire);
    if (table == nullptr) {
        table = detect();
        g_table.store(table, std::memory_order_release);
    }
    return *table;
}

}  // namespace

double dot(const double* x, const double* y, std::size_t len) {
    return active().dot(x, y, len);
}

void axpy(double* y, double a, const double* x, std::size_t len) {
    active().axpy(y, a, x, len);
}

double dot_axpy(double* y, double a, const double* x, std::size_t len) {
    return active().dot_axpy(y, a, x, len);
}

double sum_squares(const double* x, std::size_t len) {
    return active().sum_squares(x, len);
}

double sum_abs(const double* x, std::size_t len) {
    return active().sum_abs(x, len);
}

void select(Backend backend) {
    switch (backend) {
        case Backend::automatic:
            g_table.store(detect(), std::memory_order_release);
            return;
        case Backend::scalar:
            g_table.store(&kScalarTable, std::memory_order_release);
            return;
        case Backend::avx2:
        case Backend::neon: {
            const Table* table = &kScalarTable;
#ifdef HOPBOUND_HAVE_SIMD_KERNELS
            const bool wants_built =
                (backend == Backend::avx2 && std::string_view(simd_table().name) == "avx2") ||
                (backend == Backend::neon && std::string_view(simd_table().name) == "neon");
            if (wants_built && simd::runtime_supported()) table = &simd_table();
#endif
            g_table.store(table, std::memory_order_release);
            return;
        }
    }
}

std::string_view active_name() { return active().name; }

}  // namespace hopbound::kernels
