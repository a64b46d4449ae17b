// Acceptance checks: one PASS/FAIL line per primary criterion, with the
// measured value next to the pinned threshold. Exit status is nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "oracles.hpp"
#include "pat1d/baselines.hpp"
#include "pat1d/forward.hpp"
#include "pat1d/harness.hpp"
#include "pat1d/inverse.hpp"

namespace {

using namespace pat1d;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("%s %-28s %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

BoundaryTrace oracle_trace(const Profile& p, const PaddingConfig& cfg, int N = 100) {
    return boundary_traces([&](double x, double t) { return dalembert_eval(p, x, t, cfg); }, N, cfg);
}

std::vector<double> truth_on(const Profile& p, const std::vector<double>& xs) {
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = p.a(xs[i]);
    return v;
}

double grid_step(const std::vector<double>& xs) { return (xs.back() - xs.front()) / (xs.size() - 1.0); }

double fd_rel_l2(const GridFunction& u, const Profile& p) {
    std::vector<double> est(u.size()), t(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        est[i] = u[i];
        t[i] = p.a(u.x(i));
    }
    return relative_l2(est, t, u.step());
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void forward_oracle_equivalence() {
    const auto t0 = Clock::now();
    const PaddingConfig cfg(2);
    const auto bump = Profile::smooth_bump();
    const SpectralSolution u(modal_coefficients(bump, cfg, 400));
    std::mt19937_64 gen(20240601);
    std::uniform_real_distribution<double> X(-3.0, 3.0), T(0.0, 6.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = X(gen), t = T(gen);
        worst = std::max(worst, std::abs(u(x, t) - dalembert_eval(bump, x, t, cfg)));
    }
    const double s = seconds_since(t0);
    report("forward-oracle", worst <= 1e-4 && s <= 5.0,
           fmt("max|spectral - dalembert| = %.3e (<= 1e-4)", worst) + fmt(", runtime %.2f s (<= 5 s)", s));
}

void round_trip_and_sign() {
    const PaddingConfig cfg(2);
    const auto bump = Profile::smooth_bump();
    const auto xs = output_grid();
    const auto truth = truth_on(bump, xs);

    const auto t0 = Clock::now();
    const auto trace = oracle_trace(bump, cfg);
    const auto minus = reconstruct(trace, 50, cfg, xs, ExtensionSign::Minus);
    const double s = seconds_since(t0);
    const double err_minus = relative_l2(minus.a, truth, grid_step(xs));
    report("round-trip", err_minus <= 1e-3 && s <= 2.0,
           fmt("rel L2 = %.4e (<= 1e-3)", err_minus) + fmt(", runtime %.3f s (<= 2 s)", s));

    const auto plus = reconstruct(trace, 50, cfg, xs, ExtensionSign::Plus);
    const double err_plus = relative_l2(plus.a, truth, grid_step(xs));
    report("extended-trace-sign", err_minus <= 1e-3 && err_plus >= 0.1,
           fmt("minus: rel L2 = %.4e (<= 1e-3); ", err_minus) + fmt("plus: rel L2 = %.4f (>= 0.1)", err_plus));

    const auto skipped = minus.modes.skipped();
    std::vector<int> expected;
    for (int k = 3; k <= 50; k += 3) expected.push_back(k);
    const double err_no_factor = relative_l2(minus.A, truth, grid_step(xs));
    report("degenerate-modes", skipped == expected && minus.factor == 1.5 && err_no_factor >= 0.2,
           std::string("skip set ") + (skipped == expected ? "= {3,6,...,48}" : "MISMATCH") +
               fmt(", factor = %.4g (3/2)", minus.factor) +
               fmt(", rel L2 without factor = %.4f (>= 0.2)", err_no_factor));
}

void degenerate_index_identities() {
    const double R = 3.0;
    double worst = 0.0;
    for (int n0 : {1, 2, 3}) {
        const double padded = oracle::padded_coefficient(oracle::smooth_bump, 3 * n0, R);
        const double an = oracle::unpadded_coefficient(oracle::smooth_bump, n0);
        worst = std::max(worst, std::abs(padded - std::cos(n0 * kPi) * an / 3.0));
    }

    // Non-degenerate k = 1, sum over n with n + k even, n <= 200. The series
    // constant is 4R/pi; the literal 2/pi is smaller by exactly 2R.
    const int k = 1;
    double series = 0.0;
    for (int n = 1; n <= 200; ++n) {
        if ((n + k) % 2 != 0) continue;
        series += n * oracle::unpadded_coefficient(oracle::smooth_bump, n) / (R * R * n * n - k * k);
    }
    series *= std::sin(k * kPi * 2.0 / (2 * R));
    const double quad = oracle::padded_coefficient(oracle::smooth_bump, k, R);
    const double series_err = std::abs(4 * R / kPi * series - quad);
    report("degenerate-identities", worst <= 1e-8 && series_err <= 1e-5,
           fmt("max |a~_{3n} - (-1)^n a_n/3| = %.2e (<= 1e-8)", worst) +
               fmt(", series vs quadrature (4R/pi) = %.2e (<= 1e-5)", series_err) +
               fmt(", ratio to 2/pi form = %.6f", quad / (2 / kPi * series)));
}

void noise_stability() {
    ExperimentConfig cfg;
    cfg.source = DataSource::Oracle;
    cfg.noise.model = NoiseModel::Uniform;
    const auto mean_error = [&](double eps) {
        double sum = 0.0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            ExperimentConfig c = cfg;
            c.noise.epsilon = eps;
            c.noise.seed = seed;
            sum += run_pipeline(c).methods.front().report->rel_l2;
        }
        return sum / 20.0;
    };
    const double e05 = mean_error(0.005), e1 = mean_error(0.01), e2 = mean_error(0.02);
    report("noise-stability", e1 <= 0.05 && e2 >= e05,
           fmt("mean rel L2 at eps=1%%: %.4e (<= 5e-2)", e1) + fmt("; eps=0.5%%: %.4e, eps=2%%: %.4e (monotone)", e05, e2));
}

void convergence_sweep() {
    ExperimentConfig cfg;
    cfg.source = DataSource::Oracle;
    const auto rows = run_sweep(cfg, SweepParam::K, {10, 20, 40, 80});
    bool ok = true;
    std::string detail = "rel L2:";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ok = ok && rows[i].status == "ok" && (i == 0 || rows[i].rel_l2 < rows[i - 1].rel_l2);
        detail += fmt(" K=%.0f", rows[i].value) + fmt(" %.3e", rows[i].rel_l2);
    }
    report("convergence-sweep", ok, detail + " (strictly decreasing)");
}

void lsq_baseline() {
    const PaddingConfig cfg(2);
    const auto bump = Profile::smooth_bump();
    const auto xs = output_grid();
    const auto truth = truth_on(bump, xs);
    const auto trace = oracle_trace(bump, cfg);
    const auto rep = lsq_fit(trace, 50, cfg);
    const double lsq_err = relative_l2(synthesize(rep.coefficients, cfg, xs), truth, grid_step(xs));
    const double spec_err = relative_l2(reconstruct(trace, 50, cfg, xs).a, truth, grid_step(xs));
    report("lsq-ill-conditioning", rep.condition_estimate >= 1e8 && lsq_err >= 10 * spec_err,
           fmt("condition estimate = %.3e (>= 1e8)", rep.condition_estimate) +
               fmt(", rel L2 lsq/spectral = %.4f / %.4e", lsq_err, spec_err) +
               fmt(" = %.1fx (>= 10x)", lsq_err / spec_err));
}

void fd_baseline() {
    const PaddingConfig cfg(2);
    const auto bump = Profile::smooth_bump();
    const auto trace = oracle_trace(bump, cfg);
    const double e_coarse = fd_rel_l2(backward_fd(trace, FdConfig{5e-3, 5e-3, 3.0}, cfg), bump);
    const double e_fine = fd_rel_l2(backward_fd(trace, FdConfig{2.5e-3, 2.5e-3, 3.0}, cfg), bump);
    const double ratio = e_coarse / e_fine;
    report("backward-fd-accuracy", e_fine <= 1e-2 && ratio >= 3.0 && ratio <= 5.0,
           fmt("rel L2 at h=2.5e-3: %.3e (<= 1e-2)", e_fine) +
               fmt("; halving h: %.3e -> %.3e", e_coarse, e_fine) + fmt(", ratio %.2f (in [3, 5])", ratio));

    const auto step = Profile::step();
    const auto step_trace = oracle_trace(step, cfg);
    const auto xs = output_grid();
    const auto spec = reconstruct(step_trace, 50, cfg, xs);
    const double spec_over = *std::max_element(spec.a.begin(), spec.a.end()) - 1.0;
    const auto fd = backward_fd(step_trace, FdConfig::defaults_for(cfg), cfg);
    double fd_peak = -1e300;
    for (std::size_t i = 0; i < fd.size(); ++i) fd_peak = std::max(fd_peak, fd[i]);
    const double fd_over = fd_peak - 1.0;
    report("step-gibbs-vs-fd", spec_over >= 0.05 && spec_over <= 0.15 && std::abs(fd_over) <= 0.02,
           fmt("spectral overshoot %.2f%% (in [5, 15]%%)", 100 * spec_over) +
               fmt(", FD overshoot %.2f%% (in [-2, 2]%%)", 100 * fd_over));
}

void reproducibility() {
    const auto dir = std::filesystem::temp_directory_path() / ("pat1d_acceptance_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    ExperimentConfig cfg;
    cfg.methods = {Method::Spectral, Method::Lsq, Method::BackwardFd};
    cfg.noise = {NoiseModel::Gaussian, 0.01, 42};
    bool same = true;
    for (const char* sub : {"a", "b"}) {
        cfg.output_dir = dir / sub;
        run_pipeline(cfg);
    }
    ExperimentConfig sweep_cfg;
    sweep_cfg.noise = {NoiseModel::Uniform, 0.0, 9};
    std::string sweeps[2];
    for (unsigned w : {1u, 4u}) {
        sweep_cfg.workers = w;
        std::ostringstream out;
        write_sweep_csv(out, run_sweep(sweep_cfg, SweepParam::Noise, {0.0, 0.005, 0.01, 0.02}));
        sweeps[w == 1 ? 0 : 1] = out.str();
    }
    for (const char* f : {"trace.csv", "recon.csv", "report.json"}) {
        same = same && slurp(dir / "a" / f) == slurp(dir / "b" / f) && !slurp(dir / "a" / f).empty();
    }
    same = same && sweeps[0] == sweeps[1];
    std::filesystem::remove_all(dir);
    report("byte-reproducible", same, "pipeline outputs and sweep CSV identical across repeated and concurrent runs");
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    const std::pair<const char*, std::function<void()>> checks[] = {
        {"forward-oracle", forward_oracle_equivalence},
        {"round-trip", round_trip_and_sign},
        {"degenerate-identities", degenerate_index_identities},
        {"noise-stability", noise_stability},
        {"convergence-sweep", convergence_sweep},
        {"lsq-ill-conditioning", lsq_baseline},
        {"backward-fd", fd_baseline},
        {"byte-reproducible", reproducibility},
    };
    for (const auto& [name, check] : checks) {
        try {
            check();
        } catch (const std::exception& e) {
            report(name, false, std::string("threw: ") + e.what());
        }
    }
    const double s = seconds_since(t0);
    report("suite-runtime", s <= 60.0, fmt("acceptance run %.2f s (<= 60 s)", s));
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
