#include "pat1d/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pat1d/error.hpp"

namespace pat1d {

namespace {

constexpr double kPi = std::numbers::pi;

bool covers(double lo, double hi, double want_lo, double want_hi) {
    const double tol = 1e-12 * std::max(1.0, std::abs(want_hi - want_lo));
    return std::abs(lo - want_lo) <= tol && std::abs(hi - want_hi) <= tol;
}

void require_resolution(const GridFunction& g, std::size_t K, const PaddingConfig& cfg) {
    const auto limit = max_resolved_modes(g.step(), cfg);
    if (K > limit) {
        throw Error(ErrorKind::Resolution,
                    "grid step " + std::to_string(g.step()) + " resolves at most K=" +
                        std::to_string(limit) + " modes, requested K=" + std::to_string(K));
    }
}

}  // namespace

PaddingConfig::PaddingConfig(int T) : T_(T) {
    if (T < 1) {
        throw Error(ErrorKind::Domain, "padding T must be a positive integer, got " + std::to_string(T));
    }
}

CoefficientVector::CoefficientVector(std::vector<double> values) : c_(std::move(values)) {
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!std::isfinite(c_[i])) {
            throw Error(ErrorKind::Domain, "non-finite coefficient at k=" + std::to_string(i + 1));
        }
    }
}

void CoefficientVector::set(std::size_t k, double value) {
    if (k < 1 || k > c_.size()) {
        throw Error(ErrorKind::Domain, "coefficient index out of range: " + std::to_string(k));
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::Domain, "non-finite coefficient at k=" + std::to_string(k));
    }
    c_[k - 1] = value;
}

GridFunction::GridFunction(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
    if (values_.size() < 2) {
        throw Error(ErrorKind::Domain, "grid function needs at least two samples");
    }
    if (!(hi_ > lo_)) {
        throw Error(ErrorKind::Domain, "grid interval must satisfy lo < hi");
    }
}

GridFunction GridFunction::from_points(std::span<const double> points, std::vector<double> values) {
    if (points.size() != values.size()) {
        throw Error(ErrorKind::Domain, "grid points and values differ in length");
    }
    if (points.size() < 2) {
        throw Error(ErrorKind::Domain, "grid function needs at least two samples");
    }
    const double lo = points.front();
    const double hi = points.back();
    const double h = (hi - lo) / static_cast<double>(points.size() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double expect = lo + h * static_cast<double>(i);
        if (std::abs(points[i] - expect) > 1e-12 * std::max(1.0, std::abs(hi - lo))) {
            throw Error(ErrorKind::Domain, "grid is not uniform at index " + std::to_string(i));
        }
    }
    return GridFunction(lo, hi, std::move(values));
}

GridFunction GridFunction::sample(double lo, double hi, std::size_t count,
                                  const std::function<double(double)>& f) {
    if (count < 2) {
        throw Error(ErrorKind::Domain, "grid function needs at least two samples");
    }
    std::vector<double> v(count);
    const double h = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = (i + 1 == count) ? hi : lo + h * static_cast<double>(i);
        v[i] = f(x);
    }
    return GridFunction(lo, hi, std::move(v));
}

double GridFunction::x(std::size_t i) const noexcept {
    if (i + 1 == size()) return hi_;
    return lo_ + step() * static_cast<double>(i);
}

std::vector<double> GridFunction::points() const {
    std::vector<double> p(size());
    for (std::size_t i = 0; i < size(); ++i) p[i] = x(i);
    return p;
}

double GridFunction::interpolate(double xq) const {
    const double h = step();
    const double tol = 1e-12 * std::max(1.0, hi_ - lo_);
    if (xq < lo_ - tol || xq > hi_ + tol) {
        throw Error(ErrorKind::Domain, "interpolation point outside grid: " + std::to_string(xq));
    }
    const double s = std::clamp((xq - lo_) / h, 0.0, static_cast<double>(size() - 1));
    const auto i = std::min(static_cast<std::size_t>(s), size() - 2);
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * values_[i] + w * values_[i + 1];
}

double simpson(std::span<const double> y, double h) {
    const std::size_t n = y.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * h * (y[0] + y[1]);
    if (n == 3) return h / 3.0 * (y[0] + 4.0 * y[1] + y[2]);

    const std::size_t intervals = n - 1;
    // Even part handled by composite Simpson; an odd remainder of three
    // intervals is closed with the 3/8 rule.
    const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < simpson_end; i += 2) odd += y[i];
    for (std::size_t i = 2; i < simpson_end; i += 2) even += y[i];
    double sum = simpson_end == 0 ? 0.0 : h / 3.0 * (y[0] + 4.0 * odd + 2.0 * even + y[simpson_end]);
    if (simpson_end != intervals) {
        const std::size_t j = simpson_end;
        sum += 3.0 * h / 8.0 * (y[j] + 3.0 * y[j + 1] + 3.0 * y[j + 2] + y[j + 3]);
    }
    return sum;
}

double eigenvalue(int k, const PaddingConfig& cfg) {
    if (k < 1) {
        throw Error(ErrorKind::Domain, "mode index must be >= 1, got " + std::to_string(k));
    }
    const double w = k * kPi / (2.0 * cfg.R());
    return w * w;
}

double basis_eval(int k, const PaddingConfig& cfg, double x) {
    if (k < 1) {
        throw Error(ErrorKind::Domain, "mode index must be >= 1, got " + std::to_string(k));
    }
    const double R = cfg.R();
    if (std::abs(x) > R * (1.0 + 1e-14)) {
        throw Error(ErrorKind::Domain, "position outside [-R, R]: " + std::to_string(x));
    }
    return std::sin((x + R) * k * kPi / (2.0 * R));
}

std::size_t max_resolved_modes(double step, const PaddingConfig& cfg) {
    return static_cast<std::size_t>(std::floor(cfg.R() / (2.0 * step) * (1.0 + 1e-12)));
}

CoefficientVector analyze(const GridFunction& f, std::size_t K, const PaddingConfig& cfg) {
    if (K < 1) throw Error(ErrorKind::Domain, "analyze needs K >= 1");
    const double R = cfg.R();
    if (!covers(f.lo(), f.hi(), -R, R)) {
        throw Error(ErrorKind::Domain, "analyze needs samples on the full interval [-R, R]");
    }
    require_resolution(f, K, cfg);

    const auto xs = f.points();
    const auto fv = f.values();
    std::vector<double> integrand(xs.size());
    std::vector<double> c(K);
    for (std::size_t k = 1; k <= K; ++k) {
        const double w = static_cast<double>(k) * kPi / (2.0 * R);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            integrand[i] = fv[i] * std::sin((xs[i] + R) * w);
        }
        c[k - 1] = simpson(integrand, f.step()) / R;
    }
    return CoefficientVector(std::move(c));
}

double synthesize(const CoefficientVector& c, const PaddingConfig& cfg, double x) {
    const double R = cfg.R();
    if (std::abs(x) > R * (1.0 + 1e-14)) {
        throw Error(ErrorKind::Domain, "position outside [-R, R]: " + std::to_string(x));
    }
    const auto cv = c.values();
    double s = 0.0;
    for (std::size_t k = 1; k <= cv.size(); ++k) {
        if (cv[k - 1] == 0.0) continue;
        s += cv[k - 1] * std::sin((x + R) * static_cast<double>(k) * kPi / (2.0 * R));
    }
    return s;
}

std::vector<double> synthesize(const CoefficientVector& c, const PaddingConfig& cfg,
                               std::span<const double> xs) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = synthesize(c, cfg, xs[i]);
    return out;
}

double cosine_coefficient(const GridFunction& g, int k, const PaddingConfig& cfg) {
    if (k < 1) throw Error(ErrorKind::Domain, "cosine index must be >= 1");
    const double R = cfg.R();
    if (!covers(g.lo(), g.hi(), 0.0, 2.0 * R)) {
        throw Error(ErrorKind::Domain, "cosine_coefficient needs samples covering [0, 2R]");
    }
    require_resolution(g, static_cast<std::size_t>(k), cfg);

    const double w = k * kPi / (2.0 * R);
    const auto gv = g.values();
    std::vector<double> integrand(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        integrand[j] = gv[j] * std::cos(w * g.x(j));
    }
    return simpson(integrand, g.step()) / R;
}

}  // namespace pat1d
