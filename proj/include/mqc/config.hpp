#pragma once

#include "mqc/protocol.hpp"

#include <cstdint>
#include <string>

namespace mqc {

enum class BackendChoice { automatic, dicke, sym, exact };

/// One run or sweep, parsed from a flat JSON document. Unknown keys are
/// rejected; every invariant violation names the offending field.
struct RunConfig {
    ModelParams model;
    DecoherenceRates rates;
    double t = 0.0;

    SpinAxis axis = SpinAxis::z();
    bool optimize_axis = true;  // axis = "optimize" (the default)

    int phi_samples = 0;  // 0 -> 4(N+1)
    BackendChoice backend = BackendChoice::automatic;
    TwistFrame frame = TwistFrame::z_frame;

    std::string sweep_parameter;  // empty -> single run
    std::vector<double> sweep_values;

    std::string out_dir = "out";
    bool format_csv = true;
    bool format_json = true;
    bool want_entropies = false;

    std::uint64_t seed = 0;
    int workers = 0;

    bool has_sweep() const { return !sweep_parameter.empty(); }
};

RunConfig parse_config(const std::string& text);

/// Canonical serialized form (sorted keys); parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const RunConfig& config);

/// Pick the engine for a config: dicke when no rates, sym for decohered
/// Omega=0, exact for small decohered transverse-field systems.
Backend resolve_backend(const RunConfig& config);

/// Apply one sweep value, returning the modified point config.
RunConfig apply_sweep_value(const RunConfig& base, double value);

}  // namespace mqc
