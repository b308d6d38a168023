#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bohmflow/scenario.hpp"
#include "bohmflow/sampling.hpp"

namespace bohmflow {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Fully validated run configuration.  Parsed from a flat key = value
/// file; unknown keys abort with the offending key named.  serialize()
/// emits every resolved key, and re-running from that text reproduces
/// the run.
struct RunConfig {
    ScenarioKind kind = ScenarioKind::NoDevice;

    // geometry
    double theta = 0.15;
    double separation = 20.0;
    double speed = 750.0;
    bool d1_upper = true;

    // which-way device (cavity / overlap device)
    double alpha_re = 0.5;
    double alpha_im = 0.0;
    int n0 = 1;
    int n1 = 2;
    double box_length = kPi;
    double device_sigma = 1.0;
    bool dynamic_phase = false;
    double rb0 = kPi / 4.0; // fan-mode device coordinate / field slice

    // pointer detector D3 and bubble-chamber ionization
    double pointer_d = 16.0;
    double pointer_sigma = 1.0;
    double bubble_d = 16.0;
    double bubble_sigma = 1.0;

    // ensemble
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    SamplerKind sampler = SamplerKind::Auto;
    bool fan = false;
    double fan_half_width = 1.5;

    // integrator
    double dt = 0.0;               // 0: sigma0 m / (50 max|v|)
    double exclusion_budget = 1e-3;

    // time
    double t_end = 0.0; // 0: geometry default (2 t_meet)

    // output
    std::string out_dir = "out";
    bool figures = true;
    int grid_nx = 160;
    int grid_nz = 240;
    double slice_x = -1.0;    // <0: x_meet
    double field_time = -1.0; // <0: t_meet
    int record_stride = 16;
    int traj_dump_max = 64;

    /// Apply one key = value assignment; throws ConfigError on unknown
    /// keys or malformed values.
    void set(const std::string& key, const std::string& value);

    /// True for keys accepting a numeric value (sweepable).
    static bool is_sweepable(const std::string& key);

    std::string serialize() const;

    Geometry geometry() const;
    Scenario build_scenario() const;
    double resolved_dt() const;
    double resolved_t_end() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

} // namespace bohmflow
