#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pat1d/spectral.hpp"

namespace pat1d {

enum class ProfileKind { SmoothBump, Step, Tabulated };

/// Initial data (a, b) of the wave equation, supported in (-1, 1).
///
/// smooth: a(x) = 1/2 + 1/2 cos(2 pi x) on |x| <= 1/2, zero elsewhere (C^1).
/// step:   a(x) = 1 on |x| <= 1/2, zero elsewhere.
/// tabulated: piecewise-linear through samples on [-1, 1] with zero endpoints.
class Profile {
public:
    static Profile smooth_bump();
    static Profile step();
    static Profile tabulated(const GridFunction& samples);

    /// Parses "smooth" | "step".
    static Profile from_name(std::string_view name);

    /// Same displacement with an initial velocity b. `breakpoints` lists the
    /// points in (-1, 1) where b is not smooth.
    [[nodiscard]] Profile with_velocity(std::function<double(double)> b,
                                        std::vector<double> breakpoints = {}) const;

    [[nodiscard]] ProfileKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

    [[nodiscard]] double a(double x) const;
    [[nodiscard]] double b(double x) const;
    [[nodiscard]] bool has_velocity() const noexcept { return static_cast<bool>(b_); }

    /// Sorted points in [-1, 1] (always including +-1) between which a and b
    /// are smooth.
    [[nodiscard]] std::span<const double> breakpoints() const noexcept { return breakpoints_; }

private:
    Profile(ProfileKind kind, std::string name, std::function<double(double)> a,
            std::vector<double> breakpoints);

    ProfileKind kind_;
    std::string name_;
    std::function<double(double)> a_;
    std::function<double(double)> b_;
    std::vector<double> breakpoints_;
};

}  // namespace pat1d
