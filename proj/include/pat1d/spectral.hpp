#pragma once

// Dirichlet sine basis on the padded interval (-R, R), R = 1 + T, and the
// quadrature used to project onto it.
//
//   X_k(x)   = sin((x + R) k pi / (2R)),   k >= 1
//   lambda_k = (k pi / (2R))^2
//   ||X_k||^2 = R
//
// All coefficients use the squared-norm convention c_k = (f, X_k) / R, so that
// synthesize(analyze(f)) reproduces f.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pat1d {

/// Integer padding T >= 1; the artificial Dirichlet wall sits at |x| = R = 1 + T.
class PaddingConfig {
public:
    explicit PaddingConfig(int T);

    [[nodiscard]] int T() const noexcept { return T_; }
    [[nodiscard]] double R() const noexcept { return static_cast<double>(T_ + 1); }
    [[nodiscard]] bool T_even() const noexcept { return T_ % 2 == 0; }

private:
    int T_;
};

/// Sine-basis coefficients c_1..c_K. Index k is 1-based throughout.
class CoefficientVector {
public:
    CoefficientVector() = default;
    explicit CoefficientVector(std::size_t K) : c_(K, 0.0) {}
    explicit CoefficientVector(std::vector<double> values);

    [[nodiscard]] std::size_t K() const noexcept { return c_.size(); }
    [[nodiscard]] double operator[](std::size_t k) const { return c_.at(k - 1); }
    void set(std::size_t k, double value);

    [[nodiscard]] std::span<const double> values() const noexcept { return c_; }

private:
    std::vector<double> c_;
};

/// Samples of a function on a closed uniform grid lo = x_0 < ... < x_n = hi.
class GridFunction {
public:
    GridFunction(double lo, double hi, std::vector<double> values);

    /// Checks that `points` are uniform (1e-12 relative) before accepting them.
    static GridFunction from_points(std::span<const double> points, std::vector<double> values);
    static GridFunction sample(double lo, double hi, std::size_t count,
                               const std::function<double(double)>& f);

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double step() const noexcept { return (hi_ - lo_) / static_cast<double>(size() - 1); }
    [[nodiscard]] double x(std::size_t i) const noexcept;
    [[nodiscard]] std::vector<double> points() const;

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    /// Piecewise-linear interpolation; x outside [lo, hi] is a domain error.
    [[nodiscard]] double interpolate(double x) const;

private:
    double lo_;
    double hi_;
    std::vector<double> values_;
};

/// Composite Simpson on a uniform grid. An odd number of intervals is closed
/// with Simpson's 3/8 rule on the last three; two intervals or fewer fall back
/// to Simpson / trapezoid.
double simpson(std::span<const double> y, double h);

double eigenvalue(int k, const PaddingConfig& cfg);
double basis_eval(int k, const PaddingConfig& cfg, double x);

/// Largest K the grid resolves with >= 8 samples per shortest mode wavelength
/// (wavelength 4R/K for both X_K and cos(K pi t / (2R))).
std::size_t max_resolved_modes(double step, const PaddingConfig& cfg);

/// c_k = (f, X_k)_{L2(-R,R)} / R for k = 1..K. f must cover exactly [-R, R].
CoefficientVector analyze(const GridFunction& f, std::size_t K, const PaddingConfig& cfg);

double synthesize(const CoefficientVector& c, const PaddingConfig& cfg, double x);
std::vector<double> synthesize(const CoefficientVector& c, const PaddingConfig& cfg,
                               std::span<const double> xs);

/// (1/R) * integral over [0, 2R] of g(t) cos(k pi t / (2R)) dt.
double cosine_coefficient(const GridFunction& g, int k, const PaddingConfig& cfg);

}  // namespace pat1d
