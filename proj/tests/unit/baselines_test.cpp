#include "pat1d/baselines.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pat1d/error.hpp"
#include "pat1d/forward.hpp"
#include "pat1d/inverse.hpp"

namespace pat1d {
namespace {

constexpr double kPi = std::numbers::pi;

BoundaryTrace oracle_trace(const Profile& p, const PaddingConfig& cfg, int N = 100) {
    return boundary_traces([&](double x, double t) { return dalembert_eval(p, x, t, cfg); }, N, cfg);
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected pat1d::Error";
    return ErrorKind::Io;
}

double rel_l2_on_grid(const GridFunction& u, const std::function<double(double)>& truth) {
    std::vector<double> t(u.size());
    std::vector<double> est(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        t[i] = truth(u.x(i));
        est[i] = u[i];
    }
    return oracle::trapezoid_rel_l2(est, t);
}

TEST(Lsq, ExactForBandLimitedTrace) {
    // Trace of a single non-degenerate mode: the residual vanishes even though
    // the design matrix is rank deficient.
    const PaddingConfig cfg(2);
    CoefficientVector a(10);
    a.set(2, 1.0);
    a.set(5, -0.5);
    const SpectralSolution u(ModalData{cfg, a, CoefficientVector(10)});
    const auto tr = boundary_traces([&](double x, double t) { return u(x, t); }, 50, cfg);
    const auto rep = lsq_fit(tr, 10, cfg);
    EXPECT_LT(rep.residual_norm, 1e-10);
}

TEST(Lsq, RankDeficientForEvenPadding) {
    const PaddingConfig cfg(2);
    const auto rep = lsq_fit(oracle_trace(Profile::smooth_bump(), cfg), 50, cfg);
    EXPECT_TRUE(rep.rank_deficient);
    EXPECT_LT(rep.rank, 50u);
    EXPECT_GE(rep.condition_estimate, 1e8);
}

TEST(Lsq, ModesVanishingAtBothEndsAreUnobservable) {
    // X_k(+-1) = 0 exactly when k is a multiple of R (T = 2: k = 3, 6, ...),
    // so the minimum-norm solution leaves those coefficients at zero.
    const PaddingConfig cfg(2);
    const auto rep = lsq_fit(oracle_trace(Profile::smooth_bump(), cfg), 12, cfg);
    for (std::size_t k : {3u, 6u, 9u, 12u}) EXPECT_NEAR(rep.coefficients[k], 0.0, 1e-10) << k;
}

TEST(Lsq, InvalidK) {
    const PaddingConfig cfg(2);
    EXPECT_EQ(kind_of([&] { lsq_fit(oracle_trace(Profile::smooth_bump(), cfg, 10), 0, cfg); }), ErrorKind::Domain);
}

TEST(FdConfig, Defaults) {
    const auto d2 = FdConfig::defaults_for(PaddingConfig(2));
    EXPECT_EQ(d2.terminal_time, 3.0);
    EXPECT_EQ(d2.h, 2.5e-3);
    EXPECT_EQ(FdConfig::defaults_for(PaddingConfig(1)).terminal_time, 2.0);
    EXPECT_EQ(FdConfig::defaults_for(PaddingConfig(5)).terminal_time, 6.0);
}

TEST(FdConfig, Validation) {
    const PaddingConfig cfg(2);
    EXPECT_NO_THROW(validate(FdConfig{}, cfg, 3.0));
    EXPECT_EQ(kind_of([&] { validate(FdConfig{2.5e-3, 5e-3, 3.0}, cfg, 3.0); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([&] { validate(FdConfig{2.5e-3, 2.5e-3, 1.5}, cfg, 3.0); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([&] { validate(FdConfig{2.5e-3, 2.5e-3, 3.0}, cfg, 2.5); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([&] { validate(FdConfig{0.3, 0.3, 3.0}, cfg, 3.0); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([&] { validate(FdConfig{-1.0, 0.1, 3.0}, cfg, 3.0); }), ErrorKind::Configuration);
}

TEST(BackwardFd, ZeroTraceGivesZero) {
    const PaddingConfig cfg(2);
    const BoundaryTrace zero(100, std::vector<double>(301, 0.0), std::vector<double>(301, 0.0));
    const auto u = backward_fd(zero, FdConfig{1e-2, 1e-2, 3.0}, cfg);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(u[i], 0.0);
    EXPECT_EQ(u.lo(), -1.0);
    EXPECT_EQ(u.hi(), 1.0);
}

TEST(BackwardFd, SmoothBumpAccuracy) {
    const PaddingConfig cfg(2);
    const auto u = backward_fd(oracle_trace(Profile::smooth_bump(), cfg), FdConfig::defaults_for(cfg), cfg);
    EXPECT_LE(rel_l2_on_grid(u, oracle::smooth_bump), 1e-2);
}

TEST(BackwardFd, StepHasNoGibbsOvershoot) {
    const PaddingConfig cfg(2);
    const auto u = backward_fd(oracle_trace(Profile::step(), cfg), FdConfig::defaults_for(cfg), cfg);
    double peak = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) peak = std::max(peak, u[i]);
    EXPECT_LE(std::abs(peak - 1.0), 0.02);
}

// Reversal from an exact terminal state: a field with nothing entering through
// x = +-1 after T_f is recovered from the traces alone.
TEST(BackwardFd, OddPaddingTerminalTime) {
    const PaddingConfig cfg(1);
    const auto u = backward_fd(oracle_trace(Profile::smooth_bump(), cfg), FdConfig::defaults_for(cfg), cfg);
    EXPECT_LE(rel_l2_on_grid(u, oracle::smooth_bump), 1e-2);
}

TEST(Leapfrog, DiscreteEnergyConserved) {
    const double h = 0.01;
    const double tau = 0.008;
    const std::size_t n = 201;
    std::vector<double> prev(n), cur(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -1.0 + h * static_cast<double>(i);
        prev[i] = std::sin(kPi * (x + 1.0)) + 0.3 * std::sin(3 * kPi * (x + 1.0));
        cur[i] = std::sin(kPi * (x + 1.0)) * std::cos(kPi * tau) + 0.3 * std::sin(3 * kPi * (x + 1.0));
    }
    prev.front() = prev.back() = cur.front() = cur.back() = 0.0;
    const auto e = leapfrog_energy_history(prev, cur, h, tau, 2000);
    for (double v : e) EXPECT_NEAR(v, e.front(), 1e-12 * e.front());
    EXPECT_EQ(kind_of([&] { leapfrog_energy_history(prev, cur, h, 2 * h, 1); }), ErrorKind::Configuration);
}

}  // namespace
}  // namespace pat1d
