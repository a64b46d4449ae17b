#include "pat1d/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pat1d/error.hpp"

namespace pat1d {

Profile::Profile(ProfileKind kind, std::string name, std::function<double(double)> a,
                 std::vector<double> breakpoints)
    : kind_(kind), name_(std::move(name)), a_(std::move(a)), breakpoints_(std::move(breakpoints)) {
    breakpoints_.push_back(-1.0);
    breakpoints_.push_back(1.0);
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

Profile Profile::smooth_bump() {
    return Profile(ProfileKind::SmoothBump, "smooth",
                   [](double x) {
                       return std::abs(x) <= 0.5 ? 0.5 + 0.5 * std::cos(2.0 * std::numbers::pi * x) : 0.0;
                   },
                   {-0.5, 0.5});
}

Profile Profile::step() {
    return Profile(ProfileKind::Step, "step", [](double x) { return std::abs(x) <= 0.5 ? 1.0 : 0.0; },
                   {-0.5, 0.5});
}

Profile Profile::tabulated(const GridFunction& samples) {
    if (std::abs(samples.lo() + 1.0) > 1e-12 || std::abs(samples.hi() - 1.0) > 1e-12) {
        throw Error(ErrorKind::Domain, "tabulated profile must be sampled on [-1, 1]");
    }
    const auto v = samples.values();
    if (std::abs(v.front()) > 1e-12 || std::abs(v.back()) > 1e-12) {
        throw Error(ErrorKind::Domain, "tabulated profile must vanish at x = +-1");
    }
    return Profile(ProfileKind::Tabulated, "tabulated",
                   [samples](double x) { return std::abs(x) >= 1.0 ? 0.0 : samples.interpolate(x); }, {});
}

Profile Profile::from_name(std::string_view name) {
    if (name == "smooth") return smooth_bump();
    if (name == "step") return step();
    throw Error(ErrorKind::Configuration, "unknown profile '" + std::string(name) + "' (smooth|step)");
}

Profile Profile::with_velocity(std::function<double(double)> b, std::vector<double> breakpoints) const {
    Profile p = *this;
    p.b_ = std::move(b);
    p.breakpoints_.insert(p.breakpoints_.end(), breakpoints.begin(), breakpoints.end());
    std::sort(p.breakpoints_.begin(), p.breakpoints_.end());
    p.breakpoints_.erase(std::unique(p.breakpoints_.begin(), p.breakpoints_.end()), p.breakpoints_.end());
    return p;
}

double Profile::a(double x) const {
    if (std::abs(x) >= 1.0) return 0.0;
    return a_(x);
}

double Profile::b(double x) const {
    if (!b_ || std::abs(x) >= 1.0) return 0.0;
    return b_(x);
}

}  // namespace pat1d
