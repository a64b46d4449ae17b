// pat1d: command-line front end for the 1D photoacoustic inversion pipeline.
//
//   pat1d forward     --profile smooth|step --T <int> --modes <int> --N <int>
//                     --source spectral|oracle --out <trace.csv>
//   pat1d observe     --in <trace.csv> --noise <eps> --model uniform|gaussian
//                     --seed <u64> --out <trace.csv>
//   pat1d reconstruct --in <trace.csv> --T <int> --K <int>
//                     --method spectral|lsq|backward-fd
//                     [--extended-trace-sign plus|minus] --out <recon.csv>
//                     --report <report.json>
//   pat1d sweep       --config <cfg.json> --param K|noise|N --values <list>
//                     --out <sweep.csv>
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical error.

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>

#include "pat1d/error.hpp"
#include "pat1d/forward.hpp"
#include "pat1d/harness.hpp"
#include "pat1d/inverse.hpp"
#include "pat1d/observation.hpp"

namespace {

using namespace pat1d;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    return out;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::string_view rest(list);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        auto field = rest.substr(0, comma);
        while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
            throw Error(ErrorKind::Configuration, "malformed value '" + std::string(field) + "' in --values");
        }
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (values.empty()) throw Error(ErrorKind::Configuration, "--values is empty");
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D photoacoustic inverse problem: forward data, noise, reconstruction, sweeps"};
    app.require_subcommand(1);

    // forward
    auto* fwd = app.add_subcommand("forward", "Generate boundary traces F(+-1, j/N) on [0, T+1]");
    std::string profile = "smooth";
    int T = 2;
    std::size_t modes = 400;
    int N = 100;
    std::string source = "spectral";
    std::string out_path;
    fwd->add_option("--profile", profile, "smooth|step")->check(CLI::IsMember({"smooth", "step"}));
    fwd->add_option("--T", T, "integer padding T >= 1")->required();
    fwd->add_option("--modes", modes, "forward series modes M");
    fwd->add_option("--N", N, "samples per unit time");
    fwd->add_option("--source", source, "spectral|oracle")->check(CLI::IsMember({"spectral", "oracle"}));
    fwd->add_option("--out", out_path, "output trace CSV")->required();

    // observe
    auto* obs = app.add_subcommand("observe", "Add seeded noise to a trace");
    std::string in_path;
    double eps = 0.0;
    std::string model = "uniform";
    std::uint64_t seed = 0;
    obs->add_option("--in", in_path, "input trace CSV")->required();
    obs->add_option("--noise", eps, "relative amplitude epsilon >= 0")->required();
    obs->add_option("--model", model, "uniform|gaussian")->check(CLI::IsMember({"uniform", "gaussian"}));
    obs->add_option("--seed", seed, "64-bit seed");
    obs->add_option("--out", out_path, "output trace CSV")->required();

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Recover a(x) on [-1, 1] from a trace");
    std::size_t K = 50;
    std::string method = "spectral";
    std::string sign = "minus";
    std::string report_path;
    rec->add_option("--in", in_path, "input trace CSV")->required();
    rec->add_option("--T", T, "integer padding T >= 1")->required();
    rec->add_option("--K", K, "inverse modes");
    rec->add_option("--method", method, "spectral|lsq|backward-fd")
        ->check(CLI::IsMember({"spectral", "lsq", "backward-fd"}));
    rec->add_option("--extended-trace-sign", sign, "plus|minus")->check(CLI::IsMember({"plus", "minus"}));
    rec->add_option("--out", out_path, "reconstruction CSV")->required();
    rec->add_option("--report", report_path, "JSON report")->required();

    // sweep
    auto* swp = app.add_subcommand("sweep", "Run one pipeline per parameter value");
    std::string config_path;
    std::string param;
    std::string values;
    swp->add_option("--config", config_path, "experiment config JSON")->required();
    swp->add_option("--param", param, "K|noise|N")->required()->check(CLI::IsMember({"K", "noise", "N"}));
    swp->add_option("--values", values, "comma-separated values")->required();
    swp->add_option("--out", out_path, "sweep CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (fwd->parsed()) {
            ExperimentConfig cfg;
            cfg.profile = profile;
            cfg.T = T;
            cfg.M = modes;
            cfg.N = N;
            cfg.source = parse_data_source(source);
            validate(cfg);
            auto out = open_out(out_path);
            write_trace(out, generate_trace(cfg));
        } else if (obs->parsed()) {
            const BoundaryTrace trace = read_trace_file(in_path);
            const BoundaryTrace noisy = add_noise(trace, NoiseSpec{parse_noise_model(model), eps, seed});
            auto out = open_out(out_path);
            write_trace(out, noisy);
        } else if (rec->parsed()) {
            const BoundaryTrace trace = read_trace_file(in_path);
            if (auto declared = trace.metadata().get("T"); declared && *declared != std::to_string(T)) {
                throw Error(ErrorKind::Configuration,
                            "--T " + std::to_string(T) + " disagrees with trace metadata T=" + *declared);
            }
            ExperimentConfig cfg;
            cfg.T = T;
            cfg.K = K;
            cfg.N = trace.N();
            cfg.methods = {parse_method(method)};
            cfg.extended_trace_sign = parse_extension_sign(sign);
            std::optional<Profile> truth;
            if (auto p = trace.metadata().get("profile"); p && (*p == "smooth" || *p == "step")) {
                truth = Profile::from_name(*p);
                cfg.profile = *p;
            }
            validate(cfg);

            PipelineResult result{trace, output_grid(cfg.output_points), {}, {}, {}};
            if (truth) {
                result.truth.resize(result.x.size());
                for (std::size_t i = 0; i < result.x.size(); ++i) result.truth[i] = truth->a(result.x[i]);
            }
            result.methods.push_back(
                apply_method(trace, cfg.methods.front(), cfg, result.x, truth ? &*truth : nullptr));
            auto out = open_out(out_path);
            write_reconstruction_csv(out, result);
            auto rep = open_out(report_path);
            rep << report_json(cfg, result).dump(2) << '\n';
        } else if (swp->parsed()) {
            const ExperimentConfig cfg = read_config_file(config_path);
            const auto rows = run_sweep(cfg, parse_sweep_param(param), parse_values(values));
            auto out = open_out(out_path);
            write_sweep_csv(out, rows);
        }
    } catch (const Error& e) {
        std::cerr << "pat1d: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "pat1d: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
