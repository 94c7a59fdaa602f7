#include "hopbound/core.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hopbound/kernels.hpp"
#include "hopbound/rng.hpp"

namespace hopbound {

std::string_view to_string(Form form) {
    return form == Form::positive ? "positive" : "negative";
}

std::string_view to_string(Ensemble ensemble) {
    switch (ensemble) {
        case Ensemble::gaussian: return "gaussian";
        case Ensemble::bernoulli: return "bernoulli";
        case Ensemble::loaded: return "loaded";
    }
    return "?";
}

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::exact: return "exact";
        case Algorithm::greedy: return "greedy";
        case Algorithm::greedy_sorted: return "greedy_sorted";
        case Algorithm::eigen: return "eigen";
    }
    return "?";
}

Form parse_form(std::string_view text) {
    if (text == "pos" || text == "positive") return Form::positive;
    if (text == "neg" || text == "negative") return Form::negative;
    throw std::invalid_argument("unknown form '" + std::string(text) +
                                "', expected pos or neg");
}

Ensemble parse_ensemble(std::string_view text) {
    if (text == "gaussian") return Ensemble::gaussian;
    if (text == "bernoulli") return Ensemble::bernoulli;
    if (text == "loaded") return Ensemble::loaded;
    throw std::invalid_argument("unknown ensemble '" + std::string(text) +
                                "', expected gaussian, bernoulli or loaded");
}

Algorithm parse_algorithm(std::string_view text) {
    if (text == "exact") return Algorithm::exact;
    if (text == "greedy") return Algorithm::greedy;
    if (text == "greedy-sorted" || text == "greedy_sorted") return Algorithm::greedy_sorted;
    if (text == "eigen") return Algorithm::eigen;
    throw std::invalid_argument("unknown algorithm '" + std::string(text) +
                                "', expected exact, greedy, greedy-sorted or eigen");
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
}

SpinAssignment::SpinAssignment(std::size_t n) : spins_(n, 1) {
    if (n == 0) throw std::invalid_argument("spin assignment must not be empty");
}

SpinAssignment::SpinAssignment(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
    if (spins_.empty()) throw std::invalid_argument("spin assignment must not be empty");
    for (std::int8_t s : spins_) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("spin entries must be -1 or +1");
        }
    }
}

void SpinAssignment::set(std::size_t i, int value) {
    if (value != 1 && value != -1) {
        throw std::invalid_argument("spin entries must be -1 or +1");
    }
    spins_[i] = static_cast<std::int8_t>(value);
}

std::string SpinAssignment::to_string() const {
    std::string out(spins_.size(), '+');
    for (std::size_t i = 0; i < spins_.size(); ++i) {
        if (spins_[i] < 0) out[i] = '-';
    }
    return out;
}

ProblemInstance::ProblemInstance(Matrix h, Ensemble ensemble, std::optional<std::uint64_t> seed)
    : h_(std::move(h)), ensemble_(ensemble), seed_(seed) {}

ProblemInstance ProblemInstance::from_matrix(Matrix h) {
    return ProblemInstance(std::move(h), Ensemble::loaded, std::nullopt);
}

ProblemInstance sample_instance(std::size_t m, std::size_t n, Ensemble ensemble,
                                std::uint64_t seed) {
    if (ensemble == Ensemble::loaded) {
        throw std::invalid_argument(
            "sample_instance: loaded instances come from files, pick gaussian or bernoulli");
    }
    Matrix h(m, n);
    rng::SplitMix64 g(seed);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h.at(i, j) = ensemble == Ensemble::gaussian ? rng::next_normal(g)
                                                        : rng::next_sign(g);
        }
    }
    return ProblemInstance(std::move(h), ensemble, seed);
}

EnergyReport energy(const ProblemInstance& instance, const SpinAssignment& spins, Form form,
                    Algorithm algorithm) {
    if (spins.size() != instance.n()) {
        throw std::invalid_argument("energy: spin count does not match the column count");
    }
    const std::size_t m = instance.m();
    const std::size_t n = instance.n();
    std::vector<double> v(m, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        kernels::axpy(v.data(), static_cast<double>(spins[j]), instance.h().col(j), m);
    }
    const double r = kernels::sum_squares(v.data(), m);
    EnergyReport report;
    report.raw_quadratic = r;
    report.normalized_xi = std::sqrt(r) / static_cast<double>(n);
    report.normalized_quadratic = r / (static_cast<double>(n) * static_cast<double>(n));
    report.form = form;
    report.algorithm = algorithm;
    return report;
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

}  // namespace

ProblemInstance load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_matrix: cannot open " + path);

    std::string line;
    std::size_t lineno = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        std::istringstream header(line);
        long long mm = 0;
        long long nn = 0;
        if (!(header >> mm >> nn)) parse_fail(path, lineno, "malformed header, expected 'm n'");
        std::string extra;
        if (header >> extra) parse_fail(path, lineno, "unexpected token '" + extra + "' after header");
        if (mm < 1 || nn < 1) parse_fail(path, lineno, "matrix dimensions must be positive");
        m = static_cast<std::size_t>(mm);
        n = static_cast<std::size_t>(nn);
        have_header = true;
        break;
    }
    if (!have_header) {
        throw std::runtime_error("load_matrix: " + path + " has no 'm n' header line");
    }

    Matrix h(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::getline(in, line)) {
            parse_fail(path, lineno + 1,
                       "unexpected end of file, expected row " + std::to_string(i + 1) + " of " +
                           std::to_string(m));
        }
        ++lineno;
        const char* cursor = line.c_str();
        for (std::size_t j = 0; j < n; ++j) {
            char* end = nullptr;
            const double value = std::strtod(cursor, &end);
            if (end == cursor) {
                parse_fail(path, lineno,
                           "expected a number for entry " + std::to_string(j + 1) + " of row " +
                               std::to_string(i + 1));
            }
            if (!std::isfinite(value)) {
                parse_fail(path, lineno,
                           "entry " + std::to_string(j + 1) + " of row " + std::to_string(i + 1) +
                               " is not finite");
            }
            h.at(i, j) = value;
            cursor = end;
        }
        while (*cursor == ' ' || *cursor == '\t' || *cursor == '\r') ++cursor;
        if (*cursor != '\0') {
            parse_fail(path, lineno,
                       "row " + std::to_string(i + 1) + " has more than " + std::to_string(n) +
                           " entries");
        }
    }
    return ProblemInstance(std::move(h), Ensemble::loaded, std::nullopt);
}

void save_matrix(const ProblemInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_matrix: cannot open " + path + " for writing");
    out << std::setprecision(17);
    out << instance.m() << ' ' << instance.n() << '\n';
    for (std::size_t i = 0; i < instance.m(); ++i) {
        for (std::size_t j = 0; j < instance.n(); ++j) {
            if (j != 0) out << ' ';
            out << instance.h().at(i, j);
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("save_matrix: failed while writing " + path);
}

}  // namespace hopbound
