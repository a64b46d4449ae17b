#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pat1d {

/// Ordered key/value comments carried in the `#` header of a trace file.
class TraceMetadata {
public:
    void set(std::string key, std::string value);
    [[nodiscard]] std::optional<std::string> get(std::string_view key) const;
    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
        return entries_;
    }

    bool operator==(const TraceMetadata&) const = default;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Boundary observations F(+1, t_j), F(-1, t_j) on t_j = j / N, j = 0..n-1.
class BoundaryTrace {
public:
    BoundaryTrace(int N, std::vector<double> plus, std::vector<double> minus,
                  TraceMetadata metadata = {});

    [[nodiscard]] int N() const noexcept { return N_; }
    [[nodiscard]] std::size_t size() const noexcept { return plus_.size(); }
    [[nodiscard]] double t(std::size_t j) const noexcept { return static_cast<double>(j) / N_; }
    [[nodiscard]] double horizon() const noexcept { return t(size() - 1); }
    /// Number of steps 1/N covered, i.e. size() - 1.
    [[nodiscard]] std::size_t horizon_steps() const noexcept { return size() - 1; }

    [[nodiscard]] std::span<const double> plus() const noexcept { return plus_; }
    [[nodiscard]] std::span<const double> minus() const noexcept { return minus_; }
    [[nodiscard]] double sup_norm() const noexcept;

    [[nodiscard]] const TraceMetadata& metadata() const noexcept { return metadata_; }
    TraceMetadata& metadata() noexcept { return metadata_; }

    /// Same samples scaled by alpha.
    [[nodiscard]] BoundaryTrace scaled(double alpha) const;

private:
    int N_;
    std::vector<double> plus_;
    std::vector<double> minus_;
    TraceMetadata metadata_;
};

enum class NoiseModel { None, Uniform, Gaussian };

std::string_view to_string(NoiseModel model) noexcept;
NoiseModel parse_noise_model(std::string_view name);

/// Additive noise with amplitude epsilon * max(|F_plus|_inf, |F_minus|_inf).
struct NoiseSpec {
    NoiseModel model = NoiseModel::None;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
};

/// Unit draws of the noise stream: uniform on [-1, 1) or standard normal.
///
/// Generator: std::mt19937_64 seeded with `seed`. Uniform draws take the top
/// 53 bits u = (x >> 11) * 2^-53 and map d = 2u - 1. Gaussian draws use
/// Box-Muller on consecutive pairs, u1 = ((x >> 11) + 1) * 2^-53 in (0, 1],
/// emitting r cos(theta) then r sin(theta).
std::vector<double> unit_noise_draws(NoiseModel model, std::uint64_t seed, std::size_t count);

/// Perturbs F_plus (first n draws) then F_minus (next n draws). epsilon = 0 or
/// model None returns the input unchanged.
BoundaryTrace add_noise(const BoundaryTrace& trace, const NoiseSpec& spec);

/// CSV: `#`-prefixed `key=value` lines, header `t,F_plus,F_minus`, one row per
/// sample, shortest round-trip decimal formatting, LF endings.
void write_trace(std::ostream& out, const BoundaryTrace& trace);
BoundaryTrace read_trace(std::istream& in);

void write_trace_file(const std::filesystem::path& path, const BoundaryTrace& trace);
BoundaryTrace read_trace_file(const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace pat1d
