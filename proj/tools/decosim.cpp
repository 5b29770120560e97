// decosim: short-time qubit dephasing scans, low-decoherence times, eta
// calibration and the oracle verification suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "decosim/runner.hpp"
#include "decosim/scenario.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string preset_name;
    std::string out_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    auto* config = cmd->add_option("--config", opts.config_path, "JSON scenario file");
    auto* preset = cmd->add_option("--preset", opts.preset_name, "built-in scenario (fig1|fig2)")
                       ->check(CLI::IsMember({"fig1", "fig2"}));
    config->excludes(preset);
    preset->excludes(config);
    cmd->add_option("--out", opts.out_path, "write CSV here instead of stdout");
    cmd->add_option("--override", opts.overrides, "override a config key, e.g. bath.eta=1e-8")
        ->take_all();
}

decosim::scenario::ScenarioConfig resolve_config(const CommonOptions& opts) {
    using decosim::scenario::ScenarioConfig;
    ScenarioConfig config;
    if (!opts.config_path.empty())
        config = decosim::scenario::from_json_file(opts.config_path);
    else if (!opts.preset_name.empty())
        config = decosim::scenario::preset(opts.preset_name);
    else
        throw decosim::scenario::ConfigError("one of --config or --preset is required");
    for (const auto& item : opts.overrides) decosim::scenario::apply_override(config, item);
    config.validate();
    return config;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"short-time decoherence of a charge qubit dephased by a finite bosonic bath"};
    app.require_subcommand(1);

    CommonOptions scan_opts;
    auto* scan = app.add_subcommand("scan", "deviation norms and D(t) over the time grid (CSV)");
    add_common(scan, scan_opts);

    CommonOptions tld_opts;
    auto* tld = app.add_subcommand("tld", "low-decoherence time and gate-time comparison");
    add_common(tld, tld_opts);

    CommonOptions dmax_opts;
    auto* dmax = app.add_subcommand("dmax", "D(t) with the achieving state over the time grid (CSV)");
    add_common(dmax, dmax_opts);

    CommonOptions cal_opts;
    double cal_target = 0.0;
    auto* cal = app.add_subcommand("calibrate-eta", "bisect eta to a target low-decoherence time");
    add_common(cal, cal_opts);
    cal->add_option("--target", cal_target, "target t_ld in internal time units")->required();

    CommonOptions verify_opts;
    std::string fault_name;
    auto* verify = app.add_subcommand("verify", "run the oracle verification suite");
    add_common(verify, verify_opts);
    verify->add_option("--inject-fault", fault_name, "test hook: corrupt a check on purpose")
        ->check(CLI::IsMember({"negate_im_w1"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (scan->parsed()) {
            const auto output = decosim::runner::run_scan(resolve_config(scan_opts));
            emit(decosim::runner::scan_to_csv(output), scan_opts.out_path);
            return 0;
        }
        if (tld->parsed()) {
            const auto report = decosim::runner::run_tld(resolve_config(tld_opts));
            std::cout << decosim::runner::tld_to_text(report);
            if (!tld_opts.out_path.empty())
                emit(decosim::runner::tld_to_csv(report), tld_opts.out_path);
            return 0;
        }
        if (dmax->parsed()) {
            const auto output = decosim::runner::run_dmax(resolve_config(dmax_opts));
            emit(decosim::runner::dmax_to_csv(output), dmax_opts.out_path);
            return 0;
        }
        if (cal->parsed()) {
            const auto config = resolve_config(cal_opts);
            const double eta = decosim::runner::calibrate_eta(config, cal_target);
            auto check = config;
            check.bath.eta = eta;
            const auto report = decosim::runner::run_tld(check);
            char line[160];
            std::snprintf(line, sizeof line, "calibrated eta = %.17g\n", eta);
            std::cout << line;
            if (report.t_ld) {
                std::snprintf(line, sizeof line,
                              "t_ld at calibrated eta = %.17g internal (target %.17g)\n",
                              *report.t_ld, cal_target);
                std::cout << line;
            }
            std::cout << "reuse with: --override bath.eta=" << eta << "\n";
            return 0;
        }
        if (verify->parsed()) {
            const auto fault = fault_name == "negate_im_w1"
                                   ? decosim::runner::Fault::negate_im_w1
                                   : decosim::runner::Fault::none;
            const auto report =
                decosim::runner::run_verification(resolve_config(verify_opts), fault);
            std::cout << decosim::runner::verify_to_text(report);
            return report.all_pass() ? 0 : 2;
        }
    } catch (const decosim::scenario::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const decosim::runner::CalibrationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
