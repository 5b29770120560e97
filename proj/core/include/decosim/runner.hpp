// runner.hpp: scenario-level operations behind the CLI subcommands.
//
// Each operation consumes a ScenarioConfig and produces a report plus, where
// applicable, CSV text. CSV output is deterministic: full-precision numbers,
// fixed column order, and a comment block echoing the effective
// configuration and unit conventions.

#pragma once

#include <optional>
#include <string>

#include "decosim/measure.hpp"
#include "decosim/scenario.hpp"

namespace decosim::runner {

class CalibrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ScanOutput {
    scenario::ScenarioConfig config;
    measure::ScanResult result;
};

ScanOutput run_scan(const scenario::ScenarioConfig& config);
std::string scan_to_csv(const ScanOutput& output);

struct TldReport {
    scenario::ScenarioConfig config;
    std::optional<double> t_ld;
    double t_g = 0.0;
    double threshold = 0.0;
    double horizon = 0.0;

    bool crossed() const { return t_ld.has_value(); }
    // DiVincenzo comparison: true when the low-decoherence window covers the gate.
    bool criterion_satisfied() const { return !t_ld || *t_ld >= t_g; }
};

// Low-decoherence time over a horizon of four gate times.
TldReport run_tld(const scenario::ScenarioConfig& config);
std::string tld_to_text(const TldReport& report);
std::string tld_to_csv(const TldReport& report);

struct DmaxOutput {
    scenario::ScenarioConfig config;
    std::vector<measure::DeviationReport> reports;  // one per scan grid point
};

// D(t) with the achieving state across the scan grid.
DmaxOutput run_dmax(const scenario::ScenarioConfig& config);
std::string dmax_to_csv(const DmaxOutput& output);

// Bisection on eta until the low-decoherence time matches target_t_ld to
// 1e-3 relative; throws CalibrationError when no bracket exists in
// [1e-16, 1e2] or the target cannot be met.
double calibrate_eta(const scenario::ScenarioConfig& config, double target_t_ld);

enum class Fault { none, negate_im_w1 };

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

// Oracle suite: series vs closed-form bath factors, sector-exact vs split
// dynamics, Trotter-order fit, and the norm vs eigensolver check. The fault
// hook corrupts the closed-form W factor to prove the suite can fail.
VerifyReport run_verification(const scenario::ScenarioConfig& config, Fault fault = Fault::none);
std::string verify_to_text(const VerifyReport& report);

} // namespace decosim::runner
