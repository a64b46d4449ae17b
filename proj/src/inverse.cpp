#include "pat1d/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pat1d/error.hpp"

namespace pat1d {

ExtensionSign parse_extension_sign(std::string_view name) {
    if (name == "minus") return ExtensionSign::Minus;
    if (name == "plus") return ExtensionSign::Plus;
    throw Error(ErrorKind::Configuration, "unknown extended-trace sign '" + std::string(name) + "'");
}

ExtendedTrace::ExtendedTrace(int N, std::vector<double> values) : N_(N), values_(std::move(values)) {
    if (N_ < 1) throw Error(ErrorKind::Domain, "samples per unit time N must be >= 1");
    if (values_.size() < 3) throw Error(ErrorKind::Domain, "extended trace needs at least three samples");
}

GridFunction ExtendedTrace::as_grid_function() const {
    return GridFunction(0.0, t(values_.size() - 1), values_);
}

ExtendedTrace assemble_extended_trace(const BoundaryTrace& trace, const PaddingConfig& cfg,
                                      ExtensionSign sign) {
    const auto half = static_cast<std::size_t>(trace.N()) * static_cast<std::size_t>(cfg.T() + 1);
    if (trace.horizon_steps() != half) {
        throw Error(ErrorKind::InsufficientData,
                    "trace horizon " + format_double(trace.horizon()) + " must equal R = T + 1 = " +
                        std::to_string(cfg.T() + 1));
    }
    const double s = (sign == ExtensionSign::Minus) ? -1.0 : 1.0;
    const auto plus = trace.plus();
    const auto minus = trace.minus();
    std::vector<double> v(2 * half + 1);
    for (std::size_t j = 0; j <= half; ++j) v[j] = plus[j];
    for (std::size_t j = half + 1; j <= 2 * half; ++j) v[j] = s * minus[2 * half - j];
    return ExtendedTrace(trace.N(), std::move(v));
}

double denominator(int k, const PaddingConfig& cfg) {
    if (k < 1) throw Error(ErrorKind::Domain, "mode index must be >= 1");
    return std::sin((2.0 + cfg.T()) * k * std::numbers::pi / (2.0 * cfg.R()));
}

bool is_degenerate(int k, const PaddingConfig& cfg) { return k % (cfg.T() + 1) == 0; }

double checked_quotient(int k, double numerator, double denominator) {
    if (std::abs(denominator) < kDenominatorGuard) {
        throw Error(ErrorKind::Conditioning, "denominator vanishes at retained mode k=" + std::to_string(k));
    }
    return numerator / denominator;
}

ModeSet::ModeSet(std::size_t K, const PaddingConfig& cfg) : coefficients_(K) {
    if (K < 1) throw Error(ErrorKind::Domain, "mode count K must be >= 1");
    for (int k = cfg.T() + 1; k <= static_cast<int>(K); k += cfg.T() + 1) skipped_.push_back(k);
}

bool ModeSet::is_skipped(int k) const {
    return std::find(skipped_.begin(), skipped_.end(), k) != skipped_.end();
}

void ModeSet::set(int k, double value) {
    if (is_skipped(k)) {
        throw Error(ErrorKind::Domain, "mode k=" + std::to_string(k) + " is degenerate and not stored");
    }
    coefficients_.set(static_cast<std::size_t>(k), value);
}

ModeSet recover_coefficients(const ExtendedTrace& ext, std::size_t K, const PaddingConfig& cfg) {
    ModeSet modes(K, cfg);
    const GridFunction g = ext.as_grid_function();
    for (int k = 1; k <= static_cast<int>(K); ++k) {
        if (modes.is_skipped(k)) continue;
        modes.set(k, checked_quotient(k, cosine_coefficient(g, k, cfg), denominator(k, cfg)));
    }
    return modes;
}

double correction_factor(const PaddingConfig& cfg) {
    if (cfg.T_even()) return static_cast<double>(cfg.T() + 1) / cfg.T();
    return 1.0;
}

std::vector<double> output_grid(std::size_t count) {
    if (count < 2) throw Error(ErrorKind::Domain, "output grid needs at least two points");
    std::vector<double> x(count);
    for (std::size_t i = 0; i < count; ++i) {
        x[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return x;
}

Reconstruction reconstruct(const BoundaryTrace& trace, std::size_t K, const PaddingConfig& cfg,
                           std::span<const double> xs, ExtensionSign sign) {
    for (double x : xs) {
        if (std::abs(x) > 1.0 + 1e-14) {
            throw Error(ErrorKind::Domain, "output grid must lie in [-1, 1]");
        }
    }
    ModeSet modes = recover_coefficients(assemble_extended_trace(trace, cfg, sign), K, cfg);
    std::vector<double> A = synthesize(modes.coefficients(), cfg, xs);
    const double factor = correction_factor(cfg);
    std::vector<double> a(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) a[i] = factor * A[i];
    return Reconstruction{std::move(modes), std::vector<double>(xs.begin(), xs.end()), std::move(A),
                          std::move(a),     factor,
                          cfg.T(),          K};
}

}  // namespace pat1d
