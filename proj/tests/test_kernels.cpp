#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstddef>
#include <string>
#include <vector>

#include "hopbound/kernels.hpp"
#include "hopbound/rng.hpp"

namespace k = hopbound::kernels;

namespace {

std::vector<double> random_vector(std::size_t len, std::uint64_t seed) {
    hopbound::rng::SplitMix64 g(seed);
    std::vector<double> out(len);
    for (double& value : out) value = hopbound::rng::next_normal(g);
    return out;
}

long double reference_dot(const std::vector<double>& x, const std::vector<double>& y) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) acc += static_cast<long double>(x[i]) * y[i];
    return acc;
}

long double reference_sum_squares(const std::vector<double>& x) {
    long double acc = 0.0L;
    for (double value : x) acc += static_cast<long double>(value) * value;
    return acc;
}

long double reference_sum_abs(const std::vector<double>& x) {
    long double acc = 0.0L;
    for (double value : x) acc += value < 0.0 ? -static_cast<long double>(value) : value;
    return acc;
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 32, 33, 64, 100, 255, 1000};

// Restores automatic dispatch when a test section returns or throws.
struct DispatchGuard {
    ~DispatchGuard() { k::select(k::Backend::automatic); }
};

}  // namespace

TEST_CASE("scalar reductions match a long-double reference") {
    for (std::size_t len : kLengths) {
        const std::vector<double> x = random_vector(len, 100 + len);
        const std::vector<double> y = random_vector(len, 200 + len);
        const double tol = 1e-13 * (1.0 + static_cast<double>(len));
        CHECK(k::scalar::dot(x.data(), y.data(), len) ==
              doctest::Approx(static_cast<double>(reference_dot(x, y))).epsilon(tol));
        CHECK(k::scalar::sum_squares(x.data(), len) ==
              doctest::Approx(static_cast<double>(reference_sum_squares(x))).epsilon(tol));
        CHECK(k::scalar::sum_abs(x.data(), len) ==
              doctest::Approx(static_cast<double>(reference_sum_abs(x))).epsilon(tol));
    }
}

TEST_CASE("dispatched kernels agree with the scalar reference") {
    for (std::size_t len : kLengths) {
        const std::vector<double> x = random_vector(len, 300 + len);
        const std::vector<double> y = random_vector(len, 400 + len);
        const double tol = 1e-13 * (1.0 + static_cast<double>(len));

        CHECK(k::dot(x.data(), y.data(), len) ==
              doctest::Approx(k::scalar::dot(x.data(), y.data(), len)).epsilon(tol));
        CHECK(k::sum_squares(x.data(), len) ==
              doctest::Approx(k::scalar::sum_squares(x.data(), len)).epsilon(tol));
        CHECK(k::sum_abs(x.data(), len) ==
              doctest::Approx(k::scalar::sum_abs(x.data(), len)).epsilon(tol));

        std::vector<double> ya = y;
        std::vector<double> yb = y;
        k::axpy(ya.data(), 1.75, x.data(), len);
        k::scalar::axpy(yb.data(), 1.75, x.data(), len);
        for (std::size_t i = 0; i < len; ++i) {
            CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-14));
        }
    }
}

TEST_CASE("dot_axpy returns the pre-update dot product and applies the update") {
    for (std::size_t len : kLengths) {
        const std::vector<double> x = random_vector(len, 500 + len);
        const std::vector<double> y = random_vector(len, 600 + len);
        const double a = -2.0;
        const double tol = 1e-13 * (1.0 + static_cast<double>(len));

        std::vector<double> y_fused = y;
        const double before = k::dot(x.data(), y.data(), len);
        const double fused = k::dot_axpy(y_fused.data(), a, x.data(), len);
        CHECK(fused == doctest::Approx(before).epsilon(tol));

        std::vector<double> y_split = y;
        k::axpy(y_split.data(), a, x.data(), len);
        for (std::size_t i = 0; i < len; ++i) {
            CHECK(y_fused[i] == doctest::Approx(y_split[i]).epsilon(1e-14));
        }

        std::vector<double> y_scalar = y;
        const double fused_scalar = k::scalar::dot_axpy(y_scalar.data(), a, x.data(), len);
        CHECK(fused_scalar == doctest::Approx(before).epsilon(tol));
    }
}

TEST_CASE("backend selection switches and falls back safely") {
    DispatchGuard guard;

    k::select(k::Backend::scalar);
    CHECK(k::active_name() == "scalar");

    const std::vector<double> x = random_vector(65, 7);
    const std::vector<double> y = random_vector(65, 8);
    // With the scalar backend forced, dispatch is the reference bit for bit.
    CHECK(k::dot(x.data(), y.data(), x.size()) == k::scalar::dot(x.data(), y.data(), x.size()));
    CHECK(k::sum_abs(x.data(), x.size()) == k::scalar::sum_abs(x.data(), x.size()));

    // Asking for a backend that is unavailable on this machine must fall
    // back to scalar rather than crash; asking for an available one must
    // engage it.
    for (k::Backend backend : {k::Backend::avx2, k::Backend::neon}) {
        k::select(backend);
        const std::string name(k::active_name());
        CHECK((name == "scalar" || name == "avx2" || name == "neon"));
        const double dispatched = k::dot(x.data(), y.data(), x.size());
        const double reference = k::scalar::dot(x.data(), y.data(), x.size());
        CHECK(dispatched == doctest::Approx(reference).epsilon(1e-13));
    }

    k::select(k::Backend::automatic);
    const std::string automatic_name(k::active_name());
    CHECK((automatic_name == "scalar" || automatic_name == "avx2" || automatic_name == "neon"));
}

TEST_CASE("kernels accept length zero") {
    std::vector<double> y{1.0};
    CHECK(k::dot(y.data(), y.data(), 0) == 0.0);
    CHECK(k::sum_squares(y.data(), 0) == 0.0);
    CHECK(k::sum_abs(y.data(), 0) == 0.0);
    CHECK(k::dot_axpy(y.data(), 3.0, y.data(), 0) == 0.0);
    k::axpy(y.data(), 3.0, y.data(), 0);
    CHECK(y[0] == 1.0);
}
