#pragma once

// Comparison reconstructions: a brute-force least-squares fit of the modal
// model to the traces, and time reversal by a backward leapfrog solve.

#include <cstddef>
#include <vector>

#include "pat1d/observation.hpp"
#include "pat1d/spectral.hpp"

namespace pat1d {

struct LsqReport {
    CoefficientVector coefficients;  // c_k, k = 1..K
    double residual_norm = 0.0;      // Euclidean norm over both stacked traces
    /// (sigma_max / sigma_min)^2 of the design matrix, +inf when sigma_min == 0.
    double condition_estimate = 1.0;
    std::size_t rank = 0;
    bool rank_deficient = false;
};

/// Minimises sum_j (sum_k c_k X_k(+1) cos(w_k t_j) - F_plus_j)^2
///            + (sum_k c_k X_k(-1) cos(w_k t_j) - F_minus_j)^2
/// with a rank-revealing orthogonal factorisation (minimum-norm solution).
LsqReport lsq_fit(const BoundaryTrace& trace, std::size_t K, const PaddingConfig& cfg);

/// Backward time-reversal scheme on [-1, 1].
struct FdConfig {
    double h = 2.5e-3;
    double tau = 2.5e-3;
    double terminal_time = 3.0;

    /// h = tau = 2.5e-3, terminal time min(T + 1, 2T).
    static FdConfig defaults_for(const PaddingConfig& cfg);
};

/// Validates CFL (tau <= h), 2 <= T_f <= 2T, T_f within the trace horizon, and
/// that 2/h and T_f/tau are integers.
void validate(const FdConfig& fd, const PaddingConfig& cfg, double horizon);

/// Leapfrog u^{n-1} = 2u^n - u^{n+1} + (tau/h)^2 D2 u^n stepping from t = T_f
/// down to 0 from a zero terminal state, with Dirichlet values at x = +-1
/// linearly interpolated from the traces. Returns u(., 0).
GridFunction backward_fd(const BoundaryTrace& trace, const FdConfig& fd, const PaddingConfig& cfg);

/// Homogeneous leapfrog stepper used by the backward solve, exposed for the
/// energy check: advances (previous, current) by `steps` with zero Dirichlet
/// data and returns the discrete energy after each step.
std::vector<double> leapfrog_energy_history(std::vector<double> previous, std::vector<double> current,
                                            double h, double tau, std::size_t steps);

}  // namespace pat1d
