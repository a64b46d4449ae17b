#pragma once

// Recovery of the initial displacement a(x) (zero initial velocity) from the
// boundary traces F(+-1, t), 0 <= t <= R.
//
// With b = 0 the two traces fold into one function on (0, 2R),
//
//   F^(t) = F(1, t)             0 <= t <= R
//   F^(t) = -F(-1, 2R - t)      R <  t <= 2R
//
// whose cosine series is sum_k a~_k sin((2+T) k pi / (2R)) cos(k pi t / (2R)),
// a~_k being the sine coefficients of the zero-extended profile on (-R, R).
// Dividing by the sine factor fails exactly at k in (T+1)N; those modes are
// dropped and compensated by the parity factor (T+1)/T (even T) or 1 (odd T):
//
//   a(x) = factor * sum_{k <= K, k not in (T+1)N} a~_k X_k(x),   |x| < 1.

#include <cstddef>
#include <span>
#include <vector>

#include "pat1d/observation.hpp"
#include "pat1d/spectral.hpp"

namespace pat1d {

/// Sign used for the second branch of the folded trace. `Minus` is the
/// correct one; `Plus` exists for regression tests only.
enum class ExtensionSign { Minus, Plus };

ExtensionSign parse_extension_sign(std::string_view name);

class ExtendedTrace {
public:
    ExtendedTrace(int N, std::vector<double> values);

    [[nodiscard]] int N() const noexcept { return N_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double t(std::size_t j) const noexcept { return static_cast<double>(j) / N_; }
    [[nodiscard]] GridFunction as_grid_function() const;

private:
    int N_;
    std::vector<double> values_;
};

ExtendedTrace assemble_extended_trace(const BoundaryTrace& trace, const PaddingConfig& cfg,
                                      ExtensionSign sign = ExtensionSign::Minus);

/// sin((2 + T) k pi / (2 (1 + T))).
double denominator(int k, const PaddingConfig& cfg);

/// True for k = (T+1) n.
bool is_degenerate(int k, const PaddingConfig& cfg);

/// |denominator| below this at a retained index is a conditioning error.
inline constexpr double kDenominatorGuard = 1e-9;

/// numerator / denominator, or a conditioning error naming k when
/// |denominator| < kDenominatorGuard.
double checked_quotient(int k, double numerator, double denominator);

class ModeSet {
public:
    ModeSet(std::size_t K, const PaddingConfig& cfg);

    [[nodiscard]] std::size_t K() const noexcept { return coefficients_.K(); }
    [[nodiscard]] const std::vector<int>& skipped() const noexcept { return skipped_; }
    [[nodiscard]] bool is_skipped(int k) const;

    /// Retained coefficients; skipped indices read as zero.
    [[nodiscard]] const CoefficientVector& coefficients() const noexcept { return coefficients_; }
    void set(int k, double value);

private:
    CoefficientVector coefficients_;
    std::vector<int> skipped_;
};

ModeSet recover_coefficients(const ExtendedTrace& ext, std::size_t K, const PaddingConfig& cfg);

/// (T+1)/T for even T, 1 for odd T.
double correction_factor(const PaddingConfig& cfg);

struct Reconstruction {
    ModeSet modes;
    std::vector<double> x;  // output grid on [-1, 1]
    std::vector<double> A;  // truncated series without correction
    std::vector<double> a;  // factor * A
    double factor;
    int T;
    std::size_t K;
};

/// Uniform grid on [-1, 1] with `count` points.
std::vector<double> output_grid(std::size_t count = 401);

Reconstruction reconstruct(const BoundaryTrace& trace, std::size_t K, const PaddingConfig& cfg,
                           std::span<const double> xs,
                           ExtensionSign sign = ExtensionSign::Minus);

}  // namespace pat1d
