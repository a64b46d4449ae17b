#pragma once

// Forward problem u_tt = u_xx on (-R, R), u(+-R, t) = 0, u(x, 0) = a, u_t(x, 0) = b.
//
// Two independent solvers:
//   * SpectralSolution: the truncated eigenfunction series
//       u(x, t) = sum_k X_k(x) (a_k cos(w_k t) + b_k sin(w_k t) / w_k),  w_k = k pi / (2R)
//   * dalembert_eval: method of images, using the odd-about-(+-R), 4R-periodic
//     extension of the zero-extended profile. No series involved.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pat1d/observation.hpp"
#include "pat1d/profile.hpp"
#include "pat1d/spectral.hpp"

namespace pat1d {

/// Modal coefficients of the zero-extended profile on (-R, R): analysis
/// integrates each smooth piece between profile breakpoints separately with
/// composite Simpson. `points_per_unit` = 0 picks a resolution from M.
struct ModalData {
    PaddingConfig cfg;
    CoefficientVector a;
    CoefficientVector b;
};

ModalData modal_coefficients(const Profile& profile, const PaddingConfig& cfg, std::size_t M,
                             double points_per_unit = 0.0);

class SpectralSolution {
public:
    explicit SpectralSolution(ModalData modes);

    [[nodiscard]] const ModalData& modes() const noexcept { return modes_; }
    [[nodiscard]] const PaddingConfig& cfg() const noexcept { return modes_.cfg; }

    /// Requires |x| <= R and 0 <= t <= 2R.
    [[nodiscard]] double operator()(double x, double t) const;

    /// sum_k lambda_k q_k(t)^2 + q_k'(t)^2 for the modal amplitudes q_k(t).
    [[nodiscard]] double modal_energy(double t) const;

private:
    ModalData modes_;
    std::vector<double> omega_;
};

/// Values u(x_i, t_j), time-major.
struct Field {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<double> u;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return u[j * x.size() + i]; }
};

Field solve_forward(const Profile& profile, const PaddingConfig& cfg, std::size_t M,
                    std::span<const double> xs, std::span<const double> ts);

double dalembert_eval(const Profile& profile, double x, double t, const PaddingConfig& cfg);

using FieldFunction = std::function<double(double x, double t)>;

/// F_plus[j] = u(1, j/N), F_minus[j] = u(-1, j/N) for j = 0..N*horizon.
/// The inverse step consumes a horizon of R = T + 1; shorter horizons are
/// rejected.
BoundaryTrace boundary_traces(const FieldFunction& u, int N, const PaddingConfig& cfg);
BoundaryTrace boundary_traces(const FieldFunction& u, int N, const PaddingConfig& cfg,
                              double horizon);

/// Extracts the traces from a precomputed field whose x grid contains +-1 and
/// whose time grid is j/N.
BoundaryTrace boundary_traces(const Field& field, int N, const PaddingConfig& cfg);

}  // namespace pat1d
