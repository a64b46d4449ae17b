#include "pat1d/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "pat1d/forward.hpp"

namespace pat1d {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
auto run_stage(std::string_view name, const ExperimentConfig& cfg, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        throw Error(e.kind(), "stage '" + std::string(name) + "': " + e.what() +
                                  " [config: " + config_to_json(cfg).dump() + "]");
    }
}

Error config_error(const std::string& what) { return Error(ErrorKind::Configuration, what); }

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw config_error("unknown key '" + key + "' in " + std::string(where));
    }
}

template <typename T>
T get_as(const nlohmann::json& j, std::string_view key) {
    try {
        return j.at(std::string(key)).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error("invalid value for '" + std::string(key) + "': " + e.what());
    }
}

std::size_t positive_size(const nlohmann::json& j, std::string_view key) {
    const auto v = get_as<long long>(j, key);
    if (v < 1) throw config_error("'" + std::string(key) + "' must be >= 1");
    return static_cast<std::size_t>(v);
}

nlohmann::json runtime_json(const std::vector<std::pair<std::string, double>>& entries) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : entries) j[k] = v;
    return j;
}

std::string csv_safe(std::string s) {
    for (auto& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return s;
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::Spectral: return "spectral";
        case Method::Lsq: return "lsq";
        case Method::BackwardFd: return "backward-fd";
    }
    return "spectral";
}

std::string_view to_string(DataSource s) noexcept {
    return s == DataSource::Oracle ? "oracle" : "spectral";
}

std::string_view to_string(SweepParam p) noexcept {
    switch (p) {
        case SweepParam::K: return "K";
        case SweepParam::Noise: return "noise";
        case SweepParam::N: return "N";
    }
    return "K";
}

Method parse_method(std::string_view name) {
    if (name == "spectral") return Method::Spectral;
    if (name == "lsq") return Method::Lsq;
    if (name == "backward-fd") return Method::BackwardFd;
    throw config_error("unknown method '" + std::string(name) + "' (spectral|lsq|backward-fd)");
}

DataSource parse_data_source(std::string_view name) {
    if (name == "spectral") return DataSource::Spectral;
    if (name == "oracle") return DataSource::Oracle;
    throw config_error("unknown data source '" + std::string(name) + "' (spectral|oracle)");
}

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "K") return SweepParam::K;
    if (name == "noise") return SweepParam::Noise;
    if (name == "N") return SweepParam::N;
    throw config_error("unknown sweep parameter '" + std::string(name) + "' (K|noise|N)");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("config must be a JSON object");
    reject_unknown_keys(j,
                        {"profile", "T", "M", "K", "N", "noise", "methods", "output_dir", "source",
                         "extended_trace_sign", "fd", "output_points", "workers", "timings"},
                        "config");
    ExperimentConfig cfg;
    if (j.contains("profile")) cfg.profile = get_as<std::string>(j, "profile");
    if (j.contains("T")) cfg.T = get_as<int>(j, "T");
    if (j.contains("M")) cfg.M = positive_size(j, "M");
    if (j.contains("K")) cfg.K = positive_size(j, "K");
    if (j.contains("N")) cfg.N = static_cast<int>(positive_size(j, "N"));
    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        if (!n.is_object()) throw config_error("'noise' must be an object");
        reject_unknown_keys(n, {"model", "epsilon", "seed"}, "noise");
        if (n.contains("model")) cfg.noise.model = parse_noise_model(get_as<std::string>(n, "model"));
        if (n.contains("epsilon")) cfg.noise.epsilon = get_as<double>(n, "epsilon");
        if (n.contains("seed")) cfg.noise.seed = get_as<std::uint64_t>(n, "seed");
    }
    if (j.contains("methods")) {
        cfg.methods.clear();
        for (const auto& m : get_as<std::vector<std::string>>(j, "methods")) {
            cfg.methods.push_back(parse_method(m));
        }
    }
    if (j.contains("output_dir")) cfg.output_dir = get_as<std::string>(j, "output_dir");
    if (j.contains("source")) cfg.source = parse_data_source(get_as<std::string>(j, "source"));
    if (j.contains("extended_trace_sign")) {
        cfg.extended_trace_sign = parse_extension_sign(get_as<std::string>(j, "extended_trace_sign"));
    }
    if (j.contains("fd")) {
        const auto& f = j.at("fd");
        if (!f.is_object()) throw config_error("'fd' must be an object");
        reject_unknown_keys(f, {"h", "tau", "terminal_time"}, "fd");
        FdConfig fd = FdConfig::defaults_for(PaddingConfig(std::max(cfg.T, 1)));
        if (f.contains("h")) fd.h = get_as<double>(f, "h");
        if (f.contains("tau")) fd.tau = get_as<double>(f, "tau");
        if (f.contains("terminal_time")) fd.terminal_time = get_as<double>(f, "terminal_time");
        cfg.fd = fd;
    }
    if (j.contains("output_points")) cfg.output_points = positive_size(j, "output_points");
    if (j.contains("workers")) cfg.workers = static_cast<unsigned>(positive_size(j, "workers"));
    if (j.contains("timings")) cfg.timings = get_as<bool>(j, "timings");
    validate(cfg);
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["profile"] = cfg.profile;
    j["T"] = cfg.T;
    j["M"] = cfg.M;
    j["K"] = cfg.K;
    j["N"] = cfg.N;
    j["noise"] = {{"model", std::string(to_string(cfg.noise.model))},
                  {"epsilon", cfg.noise.epsilon},
                  {"seed", cfg.noise.seed}};
    auto methods = nlohmann::json::array();
    for (auto m : cfg.methods) methods.push_back(std::string(to_string(m)));
    j["methods"] = methods;
    j["output_dir"] = cfg.output_dir.string();
    j["source"] = std::string(to_string(cfg.source));
    j["extended_trace_sign"] = cfg.extended_trace_sign == ExtensionSign::Minus ? "minus" : "plus";
    if (cfg.fd) {
        j["fd"] = {{"h", cfg.fd->h}, {"tau", cfg.fd->tau}, {"terminal_time", cfg.fd->terminal_time}};
    }
    j["output_points"] = cfg.output_points;
    j["workers"] = cfg.workers;
    j["timings"] = cfg.timings;
    return j;
}

ExperimentConfig read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("malformed config " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.T < 1) throw config_error("T must be a positive integer");
    if (cfg.K < 1) throw config_error("K must be >= 1");
    if (cfg.M < 1) throw config_error("M must be >= 1");
    if (cfg.N < 1) throw config_error("N must be >= 1");
    if (cfg.methods.empty()) throw config_error("method list is empty");
    if (!(cfg.noise.epsilon >= 0.0) || !std::isfinite(cfg.noise.epsilon)) {
        throw config_error("noise epsilon must be finite and >= 0");
    }
    if (cfg.output_points < 3) throw config_error("output_points must be >= 3");
    if (cfg.workers < 1) throw config_error("workers must be >= 1");
    (void)Profile::from_name(cfg.profile);
}

double relative_l2(std::span<const double> estimate, std::span<const double> truth, double h) {
    if (estimate.size() != truth.size()) {
        throw Error(ErrorKind::Domain, "estimate and truth differ in length");
    }
    std::vector<double> diff(truth.size());
    std::vector<double> ref(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = estimate[i] - truth[i];
        diff[i] = d * d;
        ref[i] = truth[i] * truth[i];
    }
    const double denom = simpson(ref, h);
    if (!(denom > 0.0)) throw Error(ErrorKind::Domain, "true profile has zero norm");
    return std::sqrt(simpson(diff, h) / denom);
}

double max_abs_error(std::span<const double> estimate, std::span<const double> truth) {
    double m = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) m = std::max(m, std::abs(estimate[i] - truth[i]));
    return m;
}

BoundaryTrace generate_trace(const ExperimentConfig& cfg) {
    const Profile profile = Profile::from_name(cfg.profile);
    const PaddingConfig pc(cfg.T);
    BoundaryTrace trace = [&] {
        if (cfg.source == DataSource::Oracle) {
            return boundary_traces([&](double x, double t) { return dalembert_eval(profile, x, t, pc); },
                                   cfg.N, pc);
        }
        const SpectralSolution u(modal_coefficients(profile, pc, cfg.M));
        return boundary_traces([&](double x, double t) { return u(x, t); }, cfg.N, pc);
    }();
    trace.metadata().set("profile", profile.name());
    trace.metadata().set("source", std::string(to_string(cfg.source)));
    if (cfg.source == DataSource::Spectral) trace.metadata().set("modes", std::to_string(cfg.M));
    return add_noise(trace, cfg.noise);
}

MethodResult apply_method(const BoundaryTrace& trace, Method method, const ExperimentConfig& cfg,
                          std::span<const double> xs, const Profile* truth_profile) {
    const PaddingConfig pc(cfg.T);
    MethodResult result{method, {}, std::nullopt, nlohmann::json::object()};
    const auto start = Clock::now();
    std::vector<std::pair<int, double>> coefficient_errors;

    // Reference coefficients of the zero-extended truth, for non-skipped k.
    const auto compare_coefficients = [&](const CoefficientVector& recovered) {
        if (!truth_profile) return;
        const auto ref = modal_coefficients(*truth_profile, pc, cfg.K).a;
        for (int k = 1; k <= static_cast<int>(cfg.K); ++k) {
            if (is_degenerate(k, pc)) continue;
            coefficient_errors.emplace_back(k, std::abs(recovered[k] - ref[k]));
        }
    };

    switch (method) {
        case Method::Spectral: {
            Reconstruction rec = reconstruct(trace, cfg.K, pc, xs, cfg.extended_trace_sign);
            result.estimate = rec.a;
            result.details["factor"] = rec.factor;
            result.details["skipped"] = rec.modes.skipped();
            result.details["extended_trace_sign"] =
                cfg.extended_trace_sign == ExtensionSign::Minus ? "minus" : "plus";
            compare_coefficients(rec.modes.coefficients());
            break;
        }
        case Method::Lsq: {
            const LsqReport rep = lsq_fit(trace, cfg.K, pc);
            result.estimate = synthesize(rep.coefficients, pc, xs);
            result.details["residual_norm"] = rep.residual_norm;
            // JSON has no infinity; an exactly singular design matrix reports null.
            result.details["condition_estimate"] =
                std::isfinite(rep.condition_estimate) ? nlohmann::json(rep.condition_estimate) : nlohmann::json();
            result.details["rank"] = rep.rank;
            result.details["rank_deficient"] = rep.rank_deficient;
            compare_coefficients(rep.coefficients);
            break;
        }
        case Method::BackwardFd: {
            const FdConfig fd = cfg.fd.value_or(FdConfig::defaults_for(pc));
            const GridFunction u0 = backward_fd(trace, fd, pc);
            result.estimate.resize(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) result.estimate[i] = u0.interpolate(xs[i]);
            result.details["h"] = fd.h;
            result.details["tau"] = fd.tau;
            result.details["terminal_time"] = fd.terminal_time;
            break;
        }
    }
    const double ms = elapsed_ms(start);

    if (truth_profile) {
        std::vector<double> truth(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) truth[i] = truth_profile->a(xs[i]);
        const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
        ErrorReport report;
        report.rel_l2 = relative_l2(result.estimate, truth, h);
        report.l_inf = max_abs_error(result.estimate, truth);
        report.coefficient_errors = std::move(coefficient_errors);
        report.runtime_ms.emplace_back(std::string(to_string(method)), ms);
        result.report = std::move(report);
    }
    return result;
}

PipelineResult run_pipeline(const ExperimentConfig& cfg) {
    run_stage("config", cfg, [&] {
        validate(cfg);
        return 0;
    });
    const Profile profile = Profile::from_name(cfg.profile);

    auto start = Clock::now();
    BoundaryTrace trace = run_stage("forward", cfg, [&] { return generate_trace(cfg); });
    PipelineResult result{std::move(trace), output_grid(cfg.output_points), {}, {}, {}};
    result.runtime_ms.emplace_back("forward", elapsed_ms(start));

    result.truth.resize(result.x.size());
    for (std::size_t i = 0; i < result.x.size(); ++i) result.truth[i] = profile.a(result.x[i]);

    for (Method m : cfg.methods) {
        result.methods.push_back(run_stage(std::string("reconstruct/") + std::string(to_string(m)), cfg,
                                           [&] { return apply_method(result.trace, m, cfg, result.x, &profile); }));
    }

    if (!cfg.output_dir.empty()) {
        run_stage("write", cfg, [&] {
            std::error_code ec;
            std::filesystem::create_directories(cfg.output_dir, ec);
            if (ec) throw Error(ErrorKind::Io, "cannot create " + cfg.output_dir.string());
            write_trace_file(cfg.output_dir / "trace.csv", result.trace);
            std::ofstream recon(cfg.output_dir / "recon.csv", std::ios::binary);
            if (!recon) throw Error(ErrorKind::Io, "cannot write recon.csv");
            write_reconstruction_csv(recon, result);
            std::ofstream rep(cfg.output_dir / "report.json", std::ios::binary);
            if (!rep) throw Error(ErrorKind::Io, "cannot write report.json");
            rep << report_json(cfg, result).dump(2) << '\n';
            return 0;
        });
    }
    return result;
}

void write_reconstruction_csv(std::ostream& out, const PipelineResult& result) {
    const bool has_truth = !result.truth.empty();
    out << 'x';
    if (has_truth) out << ",a_true";
    for (const auto& m : result.methods) out << ",a_rec_" << to_string(m.method);
    out << '\n';
    for (std::size_t i = 0; i < result.x.size(); ++i) {
        out << format_double(result.x[i]);
        if (has_truth) out << ',' << format_double(result.truth[i]);
        for (const auto& m : result.methods) out << ',' << format_double(m.estimate[i]);
        out << '\n';
    }
}

nlohmann::json report_json(const ExperimentConfig& cfg, const PipelineResult& result) {
    nlohmann::json j;
    j["config"] = config_to_json(cfg);
    // Where the report is written is not part of the experiment.
    j["config"].erase("output_dir");
    j["metrics_schema"] = {
        {"rel_l2", "relative L2 error on [-1,1], composite Simpson on the output grid, "
                   "normalised by the true profile"},
        {"l_inf", "max absolute error on the output grid"},
        {"coefficient_errors", "[k, |recovered_k - sine coefficient of the zero-extended truth|] "
                               "for k not a multiple of T+1"}};
    j["output_points"] = result.x.size();
    auto methods = nlohmann::json::array();
    for (const auto& m : result.methods) {
        nlohmann::json mj;
        mj["method"] = std::string(to_string(m.method));
        mj["details"] = m.details;
        if (m.report) {
            mj["rel_l2"] = m.report->rel_l2;
            mj["l_inf"] = m.report->l_inf;
            auto ce = nlohmann::json::array();
            for (const auto& [k, e] : m.report->coefficient_errors) ce.push_back({k, e});
            mj["coefficient_errors"] = ce;
            if (cfg.timings) mj["runtime_ms"] = runtime_json(m.report->runtime_ms);
        }
        methods.push_back(mj);
    }
    j["methods"] = methods;
    if (cfg.timings) j["runtime_ms"] = runtime_json(result.runtime_ms);
    return j;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, SweepParam param,
                                const std::vector<double>& values) {
    if (values.empty()) throw config_error("sweep needs at least one value");
    validate(cfg);

    const auto run_one = [&cfg, param](double value) {
        SweepRow row;
        row.value = value;
        try {
            ExperimentConfig c = cfg;
            c.output_dir.clear();
            const auto as_count = [&](double v) {
                if (!(v >= 1.0) || v != std::floor(v)) {
                    throw config_error(std::string(to_string(param)) + " value must be a positive integer");
                }
                return v;
            };
            switch (param) {
                case SweepParam::K: c.K = static_cast<std::size_t>(as_count(value)); break;
                case SweepParam::N: c.N = static_cast<int>(as_count(value)); break;
                case SweepParam::Noise:
                    c.noise.epsilon = value;
                    if (c.noise.model == NoiseModel::None) c.noise.model = NoiseModel::Uniform;
                    break;
            }
            const auto start = Clock::now();
            const PipelineResult r = run_pipeline(c);
            const double ms = elapsed_ms(start);
            const auto& rep = r.methods.front().report;
            row.rel_l2 = rep->rel_l2;
            row.l_inf = rep->l_inf;
            row.runtime_ms = cfg.timings ? ms : 0.0;
        } catch (const Error& e) {
            row.status = "error: " + std::string(to_string(e.kind())) + ": " + csv_safe(e.what());
        } catch (const std::exception& e) {
            row.status = "error: " + csv_safe(e.what());
        }
        return row;
    };

    std::vector<SweepRow> rows(values.size());
    const std::size_t workers = std::max(1u, cfg.workers);
    for (std::size_t begin = 0; begin < values.size(); begin += workers) {
        const std::size_t end = std::min(values.size(), begin + workers);
        if (workers == 1) {
            rows[begin] = run_one(values[begin]);
            continue;
        }
        std::vector<std::future<SweepRow>> batch;
        for (std::size_t i = begin; i < end; ++i) {
            batch.push_back(std::async(std::launch::async, run_one, values[i]));
        }
        for (std::size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "param_value,rel_l2,l_inf,runtime_ms,status\n";
    for (const auto& r : rows) {
        out << format_double(r.value) << ',' << format_double(r.rel_l2) << ',' << format_double(r.l_inf)
            << ',' << format_double(r.runtime_ms) << ',' << r.status << '\n';
    }
}

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Configuration:
        case ErrorKind::Domain: return 2;
        case ErrorKind::Parse:
        case ErrorKind::Io:
        case ErrorKind::InsufficientData: return 3;
        case ErrorKind::Resolution:
        case ErrorKind::Conditioning: return 4;
    }
    return 1;
}

}  // namespace pat1d
