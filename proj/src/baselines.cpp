#include "pat1d/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pat1d/error.hpp"

namespace pat1d {

namespace {

bool near_integer(double v) { return std::abs(v - std::round(v)) <= 1e-9 * std::max(1.0, std::abs(v)); }

// Linear interpolation of a trace channel at time t.
double sample_at(std::span<const double> values, int N, double t) {
    const double s = std::clamp(t * N, 0.0, static_cast<double>(values.size() - 1));
    const auto j = std::min(static_cast<std::size_t>(s), values.size() - 2);
    const double w = s - static_cast<double>(j);
    return (1.0 - w) * values[j] + w * values[j + 1];
}

double discrete_energy(const std::vector<double>& prev, const std::vector<double>& cur, double h,
                       double tau) {
    double kinetic = 0.0;
    double potential = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
        const double v = (cur[i] - prev[i]) / tau;
        kinetic += v * v;
    }
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
        potential += (cur[i + 1] - cur[i]) * (prev[i + 1] - prev[i]) / (h * h);
    }
    return 0.5 * h * (kinetic + potential);
}

// One leapfrog step on interior points: next = 2 cur - prev + r2 D2 cur.
void leapfrog_step(const std::vector<double>& prev, const std::vector<double>& cur,
                   std::vector<double>& next, double r2) {
    const std::size_t n = cur.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        next[i] = 2.0 * cur[i] - prev[i] + r2 * (cur[i + 1] - 2.0 * cur[i] + cur[i - 1]);
    }
}

}  // namespace

LsqReport lsq_fit(const BoundaryTrace& trace, std::size_t K, const PaddingConfig& cfg) {
    if (K < 1) throw Error(ErrorKind::Domain, "mode count K must be >= 1");
    const std::size_t n = trace.size();
    const double R = cfg.R();
    Eigen::MatrixXd A(2 * n, static_cast<Eigen::Index>(K));
    Eigen::VectorXd y(2 * n);
    for (std::size_t k = 1; k <= K; ++k) {
        const double w = static_cast<double>(k) * std::numbers::pi / (2.0 * R);
        const double xp = basis_eval(static_cast<int>(k), cfg, 1.0);
        const double xm = basis_eval(static_cast<int>(k), cfg, -1.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double c = std::cos(w * trace.t(j));
            A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k - 1)) = xp * c;
            A(static_cast<Eigen::Index>(n + j), static_cast<Eigen::Index>(k - 1)) = xm * c;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        y(static_cast<Eigen::Index>(j)) = trace.plus()[j];
        y(static_cast<Eigen::Index>(n + j)) = trace.minus()[j];
    }

    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    const Eigen::VectorXd c = cod.solve(y);

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);

    LsqReport report;
    report.coefficients = CoefficientVector(std::vector<double>(c.data(), c.data() + c.size()));
    report.residual_norm = (A * c - y).norm();
    report.condition_estimate =
        smin > 0.0 ? (smax / smin) * (smax / smin) : std::numeric_limits<double>::infinity();
    report.rank = static_cast<std::size_t>(cod.rank());
    report.rank_deficient = report.rank < K;
    return report;
}

FdConfig FdConfig::defaults_for(const PaddingConfig& cfg) {
    FdConfig fd;
    fd.terminal_time = std::min(cfg.R(), 2.0 * cfg.T());
    return fd;
}

void validate(const FdConfig& fd, const PaddingConfig& cfg, double horizon) {
    if (!(fd.h > 0.0) || !(fd.tau > 0.0)) {
        throw Error(ErrorKind::Configuration, "FD steps h and tau must be positive");
    }
    if (fd.tau > fd.h * (1.0 + 1e-12)) {
        throw Error(ErrorKind::Configuration, "CFL violated: tau/h = " + std::to_string(fd.tau / fd.h) + " > 1");
    }
    if (fd.terminal_time < 2.0 || fd.terminal_time > 2.0 * cfg.T()) {
        throw Error(ErrorKind::Configuration, "terminal time must lie in [2, 2T], got " +
                                                  std::to_string(fd.terminal_time));
    }
    if (fd.terminal_time > horizon * (1.0 + 1e-12)) {
        throw Error(ErrorKind::Configuration, "terminal time exceeds the trace horizon");
    }
    if (!near_integer(2.0 / fd.h)) {
        throw Error(ErrorKind::Configuration, "2/h must be an integer");
    }
    if (!near_integer(fd.terminal_time / fd.tau)) {
        throw Error(ErrorKind::Configuration, "terminal_time/tau must be an integer");
    }
}

GridFunction backward_fd(const BoundaryTrace& trace, const FdConfig& fd, const PaddingConfig& cfg) {
    validate(fd, cfg, trace.horizon());
    const auto intervals = static_cast<std::size_t>(std::llround(2.0 / fd.h));
    const auto steps = static_cast<std::size_t>(std::llround(fd.terminal_time / fd.tau));
    const double h = 2.0 / static_cast<double>(intervals);
    const double tau = fd.terminal_time / static_cast<double>(steps);
    const double r2 = (tau / h) * (tau / h);

    const auto plus = trace.plus();
    const auto minus = trace.minus();
    const int N = trace.N();

    // Zero terminal state: u(., T_f) = 0 and u_t(., T_f) = 0.
    std::vector<double> prev(intervals + 1, 0.0);
    std::vector<double> cur(intervals + 1, 0.0);
    std::vector<double> next(intervals + 1, 0.0);
    cur.front() = sample_at(minus, N, fd.terminal_time);
    cur.back() = sample_at(plus, N, fd.terminal_time);
    prev.front() = cur.front();
    prev.back() = cur.back();

    for (std::size_t s = 1; s <= steps; ++s) {
        const double t = (s == steps) ? 0.0 : fd.terminal_time - static_cast<double>(s) * tau;
        leapfrog_step(prev, cur, next, r2);
        next.front() = sample_at(minus, N, t);
        next.back() = sample_at(plus, N, t);
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    return GridFunction(-1.0, 1.0, std::move(cur));
}

std::vector<double> leapfrog_energy_history(std::vector<double> previous, std::vector<double> current,
                                            double h, double tau, std::size_t steps) {
    if (previous.size() != current.size() || current.size() < 3) {
        throw Error(ErrorKind::Domain, "leapfrog states must have equal length >= 3");
    }
    if (tau > h * (1.0 + 1e-12)) throw Error(ErrorKind::Configuration, "CFL violated");
    const double r2 = (tau / h) * (tau / h);
    std::vector<double> next(current.size(), 0.0);
    std::vector<double> energy;
    energy.reserve(steps + 1);
    energy.push_back(discrete_energy(previous, current, h, tau));
    for (std::size_t s = 0; s < steps; ++s) {
        leapfrog_step(previous, current, next, r2);
        next.front() = 0.0;
        next.back() = 0.0;
        std::swap(previous, current);
        std::swap(current, next);
        energy.push_back(discrete_energy(previous, current, h, tau));
    }
    return energy;
}

}  // namespace pat1d
