#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bohmflow/entangled.hpp"

namespace bohmflow {

/// Two-arm interferometer geometry, mirror-symmetric about z = 0.
/// Arm 1 launches from below (z = -separation/2) climbing at +theta,
/// arm 2 (the device arm) from above descending at -theta; the packets
/// converge on region I around t_meet and pass through each other.
struct Geometry {
    double theta = 0.15;       // crossing half-angle (rad)
    double separation = 20.0;  // launch separation, units of sigma0
    double speed = 750.0;      // launch speed
    double sigma0 = 1.0;
    double atom_mass = 1.0;
    double t_start = 0.0;
    bool d1_upper = true;      // upper outgoing lobe reads out as D1

    double vx() const { return speed * std::cos(theta); }
    double vz() const { return speed * std::sin(theta); }
    double t_meet() const { return 0.5 * separation / vz() + t_start; }
    double default_t_end() const { return t_start + 2.0 * (t_meet() - t_start); }
    double x_meet() const { return vx() * (t_meet() - t_start); }
    /// Transverse fringe period pi/(m v_z) in region I.
    double fringe_period() const { return kPi / (atom_mass * vz()); }

    GaussianPacket arm1_packet() const;
    GaussianPacket arm2_packet() const;
};

enum class ScenarioKind {
    NoDevice,
    Cavity,
    OverlapDevice,
    DetectorD3,
    Bubble,
    DensityOperator,
};

const char* scenario_kind_name(ScenarioKind k);

struct BoxParams {
    int n0 = 1;
    int n1 = 2;
    double length = kPi;
    double mass = 1.0;
    bool dynamic_phase = false;
};

struct OverlapDeviceParams {
    Complex alpha{0.5, 0.0};
    double sigma = 1.0;
    double mass = 1.0;
};

struct PointerParams {
    double d = 16.0;     // fired/unfired centre separation
    double sigma = 1.0;  // pointer packet width
    double mass = 1.0;
};

struct IonizationParams {
    double d = 16.0;     // ejection distance of the electron packet
    double sigma = 1.0;
    double mass = 1.0;
};

/// One of the paper's experimental configurations: a pure entangled
/// state, or a classical mixture of pure components in density-operator
/// mode.  Immutable and shareable once built.
struct Scenario {
    ScenarioKind kind = ScenarioKind::NoDevice;
    Geometry geometry{};
    std::vector<EntangledState> components;
    std::vector<double> weights;
    Complex device_alpha{1.0, 0.0}; // product of device-factor overlaps
    double window_lo = 0.0;         // region I as a time window
    double window_hi = 0.0;
    std::string id;
    std::string warning; // set when a device spec is degraded, empty if fine

    const EntangledState& state() const { return components.front(); }
    bool is_mixture() const { return components.size() > 1; }
};

Scenario build_no_device(const Geometry& g);
Scenario build_cavity(const Geometry& g, const BoxParams& box = {});
Scenario build_overlap_device(const Geometry& g, const OverlapDeviceParams& d);
Scenario build_detector_d3(const Geometry& g, const PointerParams& p = {});
Scenario build_bubble(const Geometry& g, const IonizationParams& p = {});
Scenario build_density_operator_mode(const Geometry& g);

struct DetectorProbabilities {
    double p_d1 = 0.0;
    double p_d2 = 0.0;
};

/// Mach-Zehnder closure read-out (algebraic 50/50 mixing at the crossing
/// plane): P(D1) = (1/2)(1 - Re(kappa * alpha)) with kappa the matched
/// envelope overlap at closure time and alpha the device overlap; the
/// closure phase is fixed so the symmetric no-device case drains into D2.
DetectorProbabilities detector_probabilities(const Scenario& s);

/// Monte-Carlo draw of n closure read-outs; returns the D1 count.
/// Deterministic in the seed.
std::size_t sample_detector_counts(const Scenario& s, std::size_t n,
                                   std::uint64_t seed);

} // namespace bohmflow
