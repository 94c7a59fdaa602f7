#include "hopbound/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hopbound/kernels.hpp"

namespace hopbound {

namespace {

// u = H v
void apply(const Matrix& h, const std::vector<double>& v, std::vector<double>& u) {
    std::fill(u.begin(), u.end(), 0.0);
    for (std::size_t j = 0; j < h.cols(); ++j) {
        kernels::axpy(u.data(), v[j], h.col(j), h.rows());
    }
}

// w = H^T u
void apply_transposed(const Matrix& h, const std::vector<double>& u, std::vector<double>& w) {
    for (std::size_t j = 0; j < h.cols(); ++j) {
        w[j] = kernels::dot(h.col(j), u.data(), h.rows());
    }
}

bool run_power(const Matrix& h, std::vector<double> v, const PowerIterationOptions& options,
               EigenPair& out, double& last_residual) {
    const std::size_t m = h.rows();
    const std::size_t n = h.cols();
    std::vector<double> u(m);
    std::vector<double> w(n);

    apply(h, v, u);
    double lambda = kernels::sum_squares(u.data(), m);  // Rayleigh quotient for unit v
    last_residual = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= options.max_iters; ++it) {
        apply_transposed(h, u, w);
        const double norm = std::sqrt(kernels::sum_squares(w.data(), n));
        if (norm == 0.0) {
            // v sits in the null space of H; nothing to iterate on
            return false;
        }
        for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / norm;
        apply(h, v, u);
        const double next = kernels::sum_squares(u.data(), m);
        const double scale = std::max(std::abs(next), std::numeric_limits<double>::min());
        last_residual = std::abs(next - lambda) / scale;
        lambda = next;
        if (last_residual < options.tol) {
            out.lambda1 = lambda;
            out.q1 = std::move(v);
            out.iterations = it;
            return true;
        }
    }
    return false;
}

void canonicalize_sign(std::vector<double>& q) {
    for (double entry : q) {
        if (entry == 0.0) continue;
        if (entry < 0.0) {
            for (double& e : q) e = -e;
        }
        return;
    }
}

}  // namespace

EigenPair top_eigenpair(const ProblemInstance& instance, PowerIterationOptions options) {
    if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
        throw std::invalid_argument("top_eigenpair: tol must be positive and finite");
    }
    if (options.max_iters == 0) {
        throw std::invalid_argument("top_eigenpair: max_iters must be positive");
    }
    const std::size_t n = instance.n();

    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        total += kernels::sum_squares(instance.h().col(j), instance.m());
    }
    if (total == 0.0) {
        // every vector is an eigenvector of the zero matrix
        EigenPair pair;
        pair.q1.assign(n, 0.0);
        pair.q1[0] = 1.0;
        return pair;
    }

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    EigenPair pair;
    double residual = std::numeric_limits<double>::infinity();

    std::vector<double> start(n, inv_sqrt_n);
    if (run_power(instance.h(), std::move(start), options, pair, residual)) {
        canonicalize_sign(pair.q1);
        return pair;
    }

    // deterministic re-seed for degenerate starts
    std::vector<double> alternating(n);
    for (std::size_t j = 0; j < n; ++j) {
        alternating[j] = (j % 2 == 0 ? 1.0 : -1.0) * inv_sqrt_n;
    }
    if (run_power(instance.h(), std::move(alternating), options, pair, residual)) {
        canonicalize_sign(pair.q1);
        return pair;
    }

    std::ostringstream msg;
    msg << "top_eigenpair: power iteration failed to converge within " << options.max_iters
        << " iterations (last relative residual " << residual << ")";
    throw std::runtime_error(msg.str());
}

SpectralSolution eigen_solve(const ProblemInstance& instance, PowerIterationOptions options) {
    EigenPair pair = top_eigenpair(instance, options);
    SpinAssignment spins(instance.n());
    for (std::size_t j = 0; j < instance.n(); ++j) {
        spins.set(j, pair.q1[j] >= 0.0 ? 1 : -1);
    }
    const double l1 = kernels::sum_abs(pair.q1.data(), instance.n());
    const double floor = pair.lambda1 * l1 * l1;
    EnergyReport report = energy(instance, spins, Form::positive, Algorithm::eigen);
    return {std::move(pair), std::move(spins), report, floor};
}

}  // namespace hopbound
