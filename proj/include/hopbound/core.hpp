#pragma once
// core.hpp
//
// Problem instances and energy evaluation. An instance is an m x n real
// matrix H; the optimization variable is a spin vector sigma in {-1,+1}^n
// and the objective is r = |H sigma|^2, maximized (positive form) or
// minimized (negative form). Reports carry r together with two
// convention-free scales: normalized_xi = sqrt(r)/n, which matches the
// value of the form over unit-scaled vectors sigma/sqrt(n) after taking a
// square root, and normalized_quadratic = r/n^2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hopbound {

enum class Form { positive, negative };
enum class Ensemble { gaussian, bernoulli, loaded };
enum class Algorithm { exact, greedy, greedy_sorted, eigen };

std::string_view to_string(Form form);
std::string_view to_string(Ensemble ensemble);
std::string_view to_string(Algorithm algorithm);
Form parse_form(std::string_view text);
Ensemble parse_ensemble(std::string_view text);
Algorithm parse_algorithm(std::string_view text);

// Dense matrix of doubles, column-major so the per-column inner loops in
// the solvers run over contiguous memory. Dimensions must be positive.
class Matrix {
  public:
    Matrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double at(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    double* col(std::size_t j) { return data_.data() + j * rows_; }
    const double* col(std::size_t j) const { return data_.data() + j * rows_; }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

class SpinAssignment {
  public:
    // all spins +1
    explicit SpinAssignment(std::size_t n);
    // validates that every entry is -1 or +1
    explicit SpinAssignment(std::vector<std::int8_t> spins);

    std::size_t size() const { return spins_.size(); }
    int operator[](std::size_t i) const { return spins_[i]; }
    void set(std::size_t i, int value);
    void flip(std::size_t i) { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }

    bool operator==(const SpinAssignment& other) const = default;

    // e.g. "+-++"
    std::string to_string() const;

  private:
    std::vector<std::int8_t> spins_;
};

struct EnergyReport {
    double raw_quadratic = 0.0;       // |H sigma|^2
    double normalized_xi = 0.0;       // sqrt(raw_quadratic) / n
    double normalized_quadratic = 0.0;  // raw_quadratic / n^2
    Form form = Form::positive;
    Algorithm algorithm = Algorithm::exact;
};

class ProblemInstance {
  public:
    static ProblemInstance from_matrix(Matrix h);

    const Matrix& h() const { return h_; }
    std::size_t m() const { return h_.rows(); }
    std::size_t n() const { return h_.cols(); }
    double alpha() const { return static_cast<double>(m()) / static_cast<double>(n()); }
    Ensemble ensemble() const { return ensemble_; }
    std::optional<std::uint64_t> seed() const { return seed_; }

  private:
    ProblemInstance(Matrix h, Ensemble ensemble, std::optional<std::uint64_t> seed);

    friend ProblemInstance sample_instance(std::size_t, std::size_t, Ensemble, std::uint64_t);
    friend ProblemInstance load_matrix(const std::string&);

    Matrix h_;
    Ensemble ensemble_;
    std::optional<std::uint64_t> seed_;
};

// Draws an m x n instance from the gaussian (iid standard normal) or
// bernoulli (iid +-1, unit variance) ensemble. Deterministic in all
// arguments; entries are generated in row-major order by the versioned
// procedure in rng.hpp.
ProblemInstance sample_instance(std::size_t m, std::size_t n, Ensemble ensemble,
                                std::uint64_t seed);

// Evaluates r = |H sigma|^2 from scratch: accumulates v = H sigma one
// column at a time (per row this is the plain left-to-right inner product
// with sigma) and sums the squares of v.
EnergyReport energy(const ProblemInstance& instance, const SpinAssignment& spins, Form form,
                    Algorithm algorithm = Algorithm::exact);

// Text format: optional leading '#' comment lines, a "m n" header line,
// then m rows of n whitespace-separated reals. save_matrix writes 17
// significant digits so a round trip is exact; load_matrix reports parse
// errors as "path:line: message".
ProblemInstance load_matrix(const std::string& path);
void save_matrix(const ProblemInstance& instance, const std::string& path);

}  // namespace hopbound
