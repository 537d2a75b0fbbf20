#pragma once

#include "mqc/config.hpp"

namespace mqc {

/// Everything computed for one parameter point.
struct PointResult {
    Backend backend = Backend::dicke_pure;
    SpinAxis axis;
    double t = 0.0;
    double gamma_total = 0.0;
    std::vector<EchoSample> samples;
    MqcSpectrum protocol_spectrum;
    MqcSpectrum direct_spectrum;
    WitnessReport report;  // built from the direct spectrum
    double f_i_protocol = 0.0;
    double qfi = 0.0;
    double purity = 1.0;
    ValidityCheck validity;
    std::optional<EntropyReport> state_entropy;
    std::optional<EntropyReport> half_chain_entropy;
    std::optional<double> squeezing_xi2;
};

/// Run one point. forced_axis overrides the config axis policy (used by
/// gamma sweeps, which fix the axis optimal at gamma = 0).
PointResult compute_point(const RunConfig& cfg,
                          const std::optional<SpinAxis>& forced_axis = std::nullopt);

/// Single run: compute and persist echo.csv / spectrum.csv / report.json
/// under cfg.out_dir. Returns the result.
PointResult run(const RunConfig& cfg);

struct SweepOutcome {
    std::vector<double> values;
    std::vector<std::optional<PointResult>> points;  // nullopt on failure
    std::vector<std::string> errors;                 // aligned with points
    bool all_ok() const;
};

/// Parallel map over sweep values with deterministic output ordering; per-
/// point failures are recorded and do not abort the remaining points.
/// Persists per-point directories plus combined sweep.csv / sweep_spectra.csv.
SweepOutcome run_sweep(const RunConfig& cfg);

/// Formatting used for every numeric output (17 significant digits).
std::string format_number(double v);

}  // namespace mqc
