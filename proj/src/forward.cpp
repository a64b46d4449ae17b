#include "pat1d/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pat1d/error.hpp"

namespace pat1d {

namespace {

constexpr double kPi = std::numbers::pi;

// Pieces of [-R, R] on which the zero-extended profile is smooth.
std::vector<double> piece_edges(const Profile& profile, double R) {
    std::vector<double> edges{-R};
    for (double b : profile.breakpoints()) {
        if (b > -R && b < R) edges.push_back(b);
    }
    edges.push_back(R);
    return edges;
}

// Simpson nodes and weights for every smooth piece, with endpoint samples
// taken as one-sided limits.
struct PiecewiseRule {
    std::vector<double> x;       // nodes at which the integrand trig factor is evaluated
    std::vector<double> sample;  // where the profile is sampled (nudged at piece ends)
    std::vector<double> weight;
};

PiecewiseRule piecewise_rule(const std::vector<double>& edges, double points_per_unit) {
    PiecewiseRule rule;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p];
        const double hi = edges[p + 1];
        auto n = static_cast<std::size_t>(std::ceil((hi - lo) * points_per_unit));
        n = std::max<std::size_t>(2, n + (n % 2));
        const double h = (hi - lo) / static_cast<double>(n);
        for (std::size_t i = 0; i <= n; ++i) {
            const double x = (i == n) ? hi : lo + h * static_cast<double>(i);
            double s = x;
            if (i == 0) s = std::nextafter(lo, hi);
            if (i == n) s = std::nextafter(hi, lo);
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            rule.x.push_back(x);
            rule.sample.push_back(s);
            rule.weight.push_back(w * h / 3.0);
        }
    }
    return rule;
}

CoefficientVector project(const PiecewiseRule& rule, const std::vector<double>& f, std::size_t M,
                          double R) {
    std::vector<double> c(M);
    for (std::size_t k = 1; k <= M; ++k) {
        const double w = static_cast<double>(k) * kPi / (2.0 * R);
        double s = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            if (f[i] == 0.0) continue;
            s += rule.weight[i] * f[i] * std::sin((rule.x[i] + R) * w);
        }
        c[k - 1] = s / R;
    }
    return CoefficientVector(std::move(c));
}

// Reduce s into one period [-R, 3R) of the odd 4R-periodic extension and fold
// the second half back onto [-R, R]. Returns the folded point and the sign.
std::pair<double, double> fold(double s, double R) {
    const double period = 4.0 * R;
    double r = s - period * std::floor((s + R) / period);
    if (r <= R) return {r, 1.0};
    return {2.0 * R - r, -1.0};
}

// Integral of b over [-1, y], piecewise Simpson between breakpoints.
double velocity_primitive(const Profile& profile, double y) {
    if (y <= -1.0) return 0.0;
    y = std::min(y, 1.0);
    std::vector<double> edges{-1.0};
    for (double b : profile.breakpoints()) {
        if (b > -1.0 && b < y) edges.push_back(b);
    }
    edges.push_back(y);
    const auto rule = piecewise_rule(edges, 4000.0);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.weight[i] * profile.b(rule.sample[i]);
    return s;
}

}  // namespace

ModalData modal_coefficients(const Profile& profile, const PaddingConfig& cfg, std::size_t M,
                             double points_per_unit) {
    if (M < 1) throw Error(ErrorKind::Domain, "forward mode count M must be >= 1");
    const double R = cfg.R();
    const double required = 2.0 * static_cast<double>(M) / R;  // 8 samples per wavelength 4R/M
    if (points_per_unit == 0.0) points_per_unit = std::max(256.0, 8.0 * required);
    if (points_per_unit < required) {
        throw Error(ErrorKind::Resolution, "analysis resolution " + std::to_string(points_per_unit) +
                                               " points per unit cannot resolve M=" + std::to_string(M));
    }
    const auto rule = piecewise_rule(piece_edges(profile, R), points_per_unit);
    std::vector<double> av(rule.x.size());
    std::vector<double> bv(rule.x.size(), 0.0);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        av[i] = profile.a(rule.sample[i]);
        if (profile.has_velocity()) bv[i] = profile.b(rule.sample[i]);
    }
    CoefficientVector a = project(rule, av, M, R);
    CoefficientVector b = profile.has_velocity() ? project(rule, bv, M, R) : CoefficientVector(M);
    return ModalData{cfg, std::move(a), std::move(b)};
}

SpectralSolution::SpectralSolution(ModalData modes) : modes_(std::move(modes)) {
    if (modes_.a.K() != modes_.b.K()) {
        throw Error(ErrorKind::Domain, "displacement and velocity mode counts differ");
    }
    omega_.resize(modes_.a.K());
    for (std::size_t k = 1; k <= omega_.size(); ++k) {
        omega_[k - 1] = static_cast<double>(k) * kPi / (2.0 * modes_.cfg.R());
    }
}

double SpectralSolution::operator()(double x, double t) const {
    const double R = modes_.cfg.R();
    if (std::abs(x) > R * (1.0 + 1e-14)) {
        throw Error(ErrorKind::Domain, "position outside [-R, R]: " + std::to_string(x));
    }
    if (t < 0.0 || t > 2.0 * R * (1.0 + 1e-14)) {
        throw Error(ErrorKind::Domain, "time outside [0, 2R]: " + std::to_string(t));
    }
    const auto a = modes_.a.values();
    const auto b = modes_.b.values();
    double u = 0.0;
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        const double w = omega_[i];
        const double q = a[i] * std::cos(w * t) + (b[i] != 0.0 ? b[i] * std::sin(w * t) / w : 0.0);
        if (q != 0.0) u += q * std::sin((x + R) * w);
    }
    return u;
}

double SpectralSolution::modal_energy(double t) const {
    const auto a = modes_.a.values();
    const auto b = modes_.b.values();
    double e = 0.0;
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        const double w = omega_[i];
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        const double q = a[i] * c + b[i] * s / w;
        const double dq = -a[i] * w * s + b[i] * c;
        e += w * w * q * q + dq * dq;
    }
    return e;
}

Field solve_forward(const Profile& profile, const PaddingConfig& cfg, std::size_t M,
                    std::span<const double> xs, std::span<const double> ts) {
    const SpectralSolution u(modal_coefficients(profile, cfg, M));
    Field f{std::vector<double>(xs.begin(), xs.end()), std::vector<double>(ts.begin(), ts.end()), {}};
    f.u.resize(xs.size() * ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) f.u[j * xs.size() + i] = u(xs[i], ts[j]);
    }
    return f;
}

double dalembert_eval(const Profile& profile, double x, double t, const PaddingConfig& cfg) {
    const double R = cfg.R();
    if (std::abs(x) > R * (1.0 + 1e-14)) {
        throw Error(ErrorKind::Domain, "position outside [-R, R]: " + std::to_string(x));
    }
    if (t < 0.0) throw Error(ErrorKind::Domain, "time must be >= 0");
    if (t == 0.0) return profile.a(x);

    const auto extended = [&](double s) {
        const auto [y, sign] = fold(s, R);
        return sign * profile.a(y);
    };
    double u = 0.5 * (extended(x + t) + extended(x - t));
    if (profile.has_velocity()) {
        // The primitive of the odd periodic extension is even about +-R and
        // 4R-periodic, so it is the primitive of b at the folded point.
        const auto primitive = [&](double s) { return velocity_primitive(profile, fold(s, R).first); };
        u += 0.5 * (primitive(x + t) - primitive(x - t));
    }
    return u;
}

BoundaryTrace boundary_traces(const FieldFunction& u, int N, const PaddingConfig& cfg) {
    return boundary_traces(u, N, cfg, cfg.R());
}

BoundaryTrace boundary_traces(const FieldFunction& u, int N, const PaddingConfig& cfg,
                              double horizon) {
    if (N < 1) throw Error(ErrorKind::Domain, "samples per unit time N must be >= 1");
    if (horizon < cfg.R() * (1.0 - 1e-12)) {
        throw Error(ErrorKind::InsufficientData, "trace horizon " + std::to_string(horizon) +
                                                     " is shorter than R = T + 1 = " +
                                                     std::to_string(cfg.R()));
    }
    const auto steps = static_cast<std::size_t>(std::llround(horizon * N));
    std::vector<double> plus(steps + 1);
    std::vector<double> minus(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) {
        const double t = static_cast<double>(j) / N;
        plus[j] = u(1.0, t);
        minus[j] = u(-1.0, t);
    }
    TraceMetadata meta;
    meta.set("T", std::to_string(cfg.T()));
    meta.set("N", std::to_string(N));
    return BoundaryTrace(N, std::move(plus), std::move(minus), std::move(meta));
}

BoundaryTrace boundary_traces(const Field& field, int N, const PaddingConfig& cfg) {
    const auto find_x = [&](double target) {
        for (std::size_t i = 0; i < field.x.size(); ++i) {
            if (std::abs(field.x[i] - target) <= 1e-12) return i;
        }
        throw Error(ErrorKind::InsufficientData, "field grid does not contain x = " +
                                                     std::to_string(target));
    };
    const std::size_t ip = find_x(1.0);
    const std::size_t im = find_x(-1.0);
    const auto steps = static_cast<std::size_t>(std::llround(cfg.R() * N));
    if (field.t.size() < steps + 1) {
        throw Error(ErrorKind::InsufficientData, "field time grid is shorter than R = T + 1");
    }
    std::vector<double> plus(steps + 1);
    std::vector<double> minus(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) {
        const double expect = static_cast<double>(j) / N;
        if (std::abs(field.t[j] - expect) > 1e-12 * std::max(1.0, expect)) {
            throw Error(ErrorKind::Domain, "field time grid is not j/N at index " + std::to_string(j));
        }
        plus[j] = field.at(ip, j);
        minus[j] = field.at(im, j);
    }
    TraceMetadata meta;
    meta.set("T", std::to_string(cfg.T()));
    meta.set("N", std::to_string(N));
    return BoundaryTrace(N, std::move(plus), std::move(minus), std::move(meta));
}

}  // namespace pat1d
