#include "pat1d/observation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "pat1d/error.hpp"

namespace pat1d {

namespace {

constexpr std::string_view kHeader = "t,F_plus,F_minus";

Error parse_error(std::size_t line, const std::string& what) {
    return Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

std::optional<double> parse_double(std::string_view field) {
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
}

double unit_interval(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

}  // namespace

void TraceMetadata::set(std::string key, std::string value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> TraceMetadata::get(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return v;
    }
    return std::nullopt;
}

BoundaryTrace::BoundaryTrace(int N, std::vector<double> plus, std::vector<double> minus,
                             TraceMetadata metadata)
    : N_(N), plus_(std::move(plus)), minus_(std::move(minus)), metadata_(std::move(metadata)) {
    if (N_ < 1) throw Error(ErrorKind::Domain, "samples per unit time N must be >= 1");
    if (plus_.size() != minus_.size()) {
        throw Error(ErrorKind::Domain, "F_plus and F_minus differ in length");
    }
    if (plus_.size() < 2) throw Error(ErrorKind::Domain, "trace needs at least two samples");
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(plus_.begin(), plus_.end(), finite) || !std::all_of(minus_.begin(), minus_.end(), finite)) {
        throw Error(ErrorKind::Domain, "trace contains non-finite samples");
    }
}

double BoundaryTrace::sup_norm() const noexcept {
    double m = 0.0;
    for (double v : plus_) m = std::max(m, std::abs(v));
    for (double v : minus_) m = std::max(m, std::abs(v));
    return m;
}

BoundaryTrace BoundaryTrace::scaled(double alpha) const {
    auto p = plus_;
    auto m = minus_;
    for (auto& v : p) v *= alpha;
    for (auto& v : m) v *= alpha;
    return BoundaryTrace(N_, std::move(p), std::move(m), metadata_);
}

std::string_view to_string(NoiseModel model) noexcept {
    switch (model) {
        case NoiseModel::None: return "none";
        case NoiseModel::Uniform: return "uniform";
        case NoiseModel::Gaussian: return "gaussian";
    }
    return "none";
}

NoiseModel parse_noise_model(std::string_view name) {
    if (name == "none") return NoiseModel::None;
    if (name == "uniform") return NoiseModel::Uniform;
    if (name == "gaussian") return NoiseModel::Gaussian;
    throw Error(ErrorKind::Configuration, "unknown noise model '" + std::string(name) + "'");
}

std::vector<double> unit_noise_draws(NoiseModel model, std::uint64_t seed, std::size_t count) {
    std::vector<double> d(count, 0.0);
    if (model == NoiseModel::None) return d;
    std::mt19937_64 gen(seed);
    if (model == NoiseModel::Uniform) {
        for (auto& v : d) v = 2.0 * unit_interval(gen()) - 1.0;
        return d;
    }
    for (std::size_t i = 0; i < count; i += 2) {
        const double u1 = static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
        const double u2 = unit_interval(gen());
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        d[i] = r * std::cos(theta);
        if (i + 1 < count) d[i + 1] = r * std::sin(theta);
    }
    return d;
}

BoundaryTrace add_noise(const BoundaryTrace& trace, const NoiseSpec& spec) {
    if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) {
        throw Error(ErrorKind::Domain, "noise amplitude must be finite and >= 0");
    }
    BoundaryTrace out = trace;
    if (spec.model == NoiseModel::None || spec.epsilon == 0.0) return out;

    const std::size_t n = trace.size();
    const auto d = unit_noise_draws(spec.model, spec.seed, 2 * n);
    const double scale = spec.epsilon * trace.sup_norm();
    std::vector<double> plus(trace.plus().begin(), trace.plus().end());
    std::vector<double> minus(trace.minus().begin(), trace.minus().end());
    for (std::size_t j = 0; j < n; ++j) {
        plus[j] += scale * d[j];
        minus[j] += scale * d[n + j];
    }
    TraceMetadata meta = trace.metadata();
    meta.set("noise", std::string(to_string(spec.model)));
    meta.set("noise_eps", format_double(spec.epsilon));
    meta.set("seed", std::to_string(spec.seed));
    return BoundaryTrace(trace.N(), std::move(plus), std::move(minus), std::move(meta));
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw Error(ErrorKind::Io, "failed to format value");
    return std::string(buf, ptr);
}

void write_trace(std::ostream& out, const BoundaryTrace& trace) {
    TraceMetadata meta = trace.metadata();
    meta.set("N", std::to_string(trace.N()));
    for (const auto& [k, v] : meta.entries()) out << "# " << k << '=' << v << '\n';
    out << kHeader << '\n';
    const auto p = trace.plus();
    const auto m = trace.minus();
    for (std::size_t j = 0; j < trace.size(); ++j) {
        out << format_double(trace.t(j)) << ',' << format_double(p[j]) << ',' << format_double(m[j])
            << '\n';
    }
}

BoundaryTrace read_trace(std::istream& in) {
    TraceMetadata meta;
    std::vector<double> t;
    std::vector<double> plus;
    std::vector<double> minus;
    std::vector<std::size_t> row_lines;
    bool header_seen = false;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            if (line.empty()) continue;
            if (line.front() == '#') {
                std::string_view body(line);
                body.remove_prefix(1);
                while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
                const auto eq = body.find('=');
                if (eq == std::string_view::npos) {
                    throw parse_error(lineno, "metadata line without '='");
                }
                meta.set(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
                continue;
            }
            if (line != kHeader) {
                throw parse_error(lineno, "expected header '" + std::string(kHeader) + "', got '" +
                                              line + "'");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;

        std::string_view rest(line);
        double vals[3];
        for (int c = 0; c < 3; ++c) {
            const auto comma = rest.find(',');
            const bool last = (c == 2);
            if (last != (comma == std::string_view::npos)) {
                throw parse_error(lineno, "expected 3 columns t,F_plus,F_minus");
            }
            const auto field = last ? rest : rest.substr(0, comma);
            const auto v = parse_double(field);
            if (!v || !std::isfinite(*v)) {
                throw parse_error(lineno, "malformed number '" + std::string(field) + "'");
            }
            vals[c] = *v;
            if (!last) rest.remove_prefix(comma + 1);
        }
        t.push_back(vals[0]);
        plus.push_back(vals[1]);
        minus.push_back(vals[2]);
        row_lines.push_back(lineno);
    }

    if (!header_seen) throw parse_error(lineno, "missing header '" + std::string(kHeader) + "'");
    if (t.size() < 2) throw parse_error(lineno, "trace needs at least two samples");
    if (t[0] != 0.0) throw parse_error(row_lines[0], "time grid must start at t = 0");

    const double n_est = 1.0 / (t[1] - t[0]);
    const double n_round = std::round(n_est);
    if (!(t[1] > t[0]) || n_round < 1.0 || std::abs(n_est - n_round) > 1e-6 * n_round) {
        throw parse_error(row_lines[1], "time step is not 1/N for an integer N");
    }
    const int N = static_cast<int>(n_round);
    if (auto declared = meta.get("N")) {
        if (*declared != std::to_string(N)) {
            throw parse_error(row_lines[1], "time step disagrees with declared N=" + *declared);
        }
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double expect = static_cast<double>(j) / N;
        if (std::abs(t[j] - expect) > 1e-12 * std::max(1.0, expect)) {
            throw parse_error(row_lines[j], "non-uniform time grid (t=" + format_double(t[j]) +
                                                ", expected " + format_double(expect) + ")");
        }
    }
    return BoundaryTrace(N, std::move(plus), std::move(minus), std::move(meta));
}

void write_trace_file(const std::filesystem::path& path, const BoundaryTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    write_trace(out, trace);
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

BoundaryTrace read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    return read_trace(in);
}

}  // namespace pat1d
