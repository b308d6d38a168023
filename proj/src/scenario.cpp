#include "bohmflow/scenario.hpp"

#include "bohmflow/rng.hpp"

#include <cmath>

namespace bohmflow {

GaussianPacket Geometry::arm1_packet() const {
    return {{0.0, -0.5 * separation}, {vx(), vz()}, sigma0, t_start, atom_mass};
}

GaussianPacket Geometry::arm2_packet() const {
    return {{0.0, 0.5 * separation}, {vx(), -vz()}, sigma0, t_start, atom_mass};
}

const char* scenario_kind_name(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::NoDevice: return "no_device";
    case ScenarioKind::Cavity: return "cavity";
    case ScenarioKind::OverlapDevice: return "overlap_device";
    case ScenarioKind::DetectorD3: return "detector_d3";
    case ScenarioKind::Bubble: return "bubble";
    case ScenarioKind::DensityOperator: return "density_operator";
    }
    return "unknown";
}

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

/// Region I as the time interval where the arm envelope overlap
/// integral exceeds 1e-6.
void interference_window(const Geometry& g, double& lo, double& hi) {
    const GaussianPacket p1 = g.arm1_packet();
    const GaussianPacket p2 = g.arm2_packet();
    const double tm = g.t_meet();
    auto above = [&](double t) {
        return GaussianPacket::envelope_overlap(p1, p2, t) > 1e-6;
    };
    double a = g.t_start, b = tm;
    for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        (above(m) ? b : a) = m;
    }
    lo = 0.5 * (a + b);
    a = tm;
    b = tm + 4.0 * (tm - g.t_start);
    for (int it = 0; it < 80; ++it) {
        const double m = 0.5 * (a + b);
        (above(m) ? a : b) = m;
    }
    hi = 0.5 * (a + b);
}

Scenario make_two_branch(ScenarioKind kind, const Geometry& g,
                         std::vector<DeviceState> dev1,
                         std::vector<DeviceState> dev2) {
    Scenario s;
    s.kind = kind;
    s.geometry = g;
    std::vector<Branch> branches;
    branches.push_back(
        {Complex{kInvSqrt2, 0.0}, {{g.arm1_packet()}}, std::move(dev1)});
    branches.push_back(
        {Complex{kInvSqrt2, 0.0}, {{g.arm2_packet()}}, std::move(dev2)});
    // exact normalization: the launch packets carry a tiny residual
    // overlap at finite separation
    const double raw_norm =
        EntangledState(branches, g.t_start, EntangledState::NormCheck::Skip)
            .norm();
    const double rescale = 1.0 / std::sqrt(raw_norm);
    for (auto& b : branches) b.coefficient *= rescale;
    s.components.emplace_back(std::move(branches), g.t_start);
    s.weights = {1.0};
    s.device_alpha = s.components.front().device_overlap(0, 1);
    interference_window(g, s.window_lo, s.window_hi);
    s.id = scenario_kind_name(kind);
    return s;
}

} // namespace

Scenario build_no_device(const Geometry& g) {
    return make_two_branch(ScenarioKind::NoDevice, g, {}, {});
}

Scenario build_cavity(const Geometry& g, const BoxParams& box) {
    if (box.n0 == box.n1)
        throw InvalidParameterError(
            "build_cavity: box levels must differ (identical levels are not a "
            "which-way device; use overlap_device instead)");
    auto phi0 = DeviceState::well_eigenstate(box.n0, box.length, box.mass,
                                             box.dynamic_phase);
    auto phiE = DeviceState::well_eigenstate(box.n1, box.length, box.mass,
                                             box.dynamic_phase);
    return make_two_branch(ScenarioKind::Cavity, g, {phi0}, {phiE});
}

Scenario build_overlap_device(const Geometry& g,
                              const OverlapDeviceParams& d) {
    if (std::abs(d.alpha) > 1.0 + 1e-12)
        throw InvalidParameterError("build_overlap_device: |alpha| must be <= 1");
    auto eta0 = DeviceState::alpha_mix({1.0, 0.0}, d.sigma, d.mass);
    auto eta1 = DeviceState::alpha_mix(d.alpha, d.sigma, d.mass);
    Scenario s = make_two_branch(ScenarioKind::OverlapDevice, g, {eta0}, {eta1});
    return s;
}

Scenario build_detector_d3(const Geometry& g, const PointerParams& p) {
    auto unfired = DeviceState::gaussian(0.0, p.sigma, p.mass);
    auto fired = DeviceState::gaussian(p.d, p.sigma, p.mass);
    Scenario s = make_two_branch(ScenarioKind::DetectorD3, g, {unfired}, {fired});
    if (p.d / p.sigma < 12.0)
        s.warning = "pointer separation d/sigma below 12: fired/unfired "
                    "supports overlap, device is not a valid irreversible "
                    "detector";
    return s;
}

Scenario build_bubble(const Geometry& g, const IonizationParams& p) {
    auto bound = DeviceState::gaussian(0.0, p.sigma, p.mass);
    auto ejected = DeviceState::gaussian(p.d, p.sigma, p.mass);
    Scenario s = make_two_branch(ScenarioKind::Bubble, g, {bound}, {ejected});
    if (p.d / p.sigma < 12.0)
        s.warning = "ionization incomplete: ejected-electron packet overlaps "
                    "the bound support, interference persists";
    return s;
}

Scenario build_density_operator_mode(const Geometry& g) {
    Scenario s;
    s.kind = ScenarioKind::DensityOperator;
    s.geometry = g;
    Branch b1{Complex{1.0, 0.0}, {{g.arm1_packet()}}, {}};
    Branch b2{Complex{1.0, 0.0}, {{g.arm2_packet()}}, {}};
    s.components.emplace_back(std::vector<Branch>{std::move(b1)}, g.t_start);
    s.components.emplace_back(std::vector<Branch>{std::move(b2)}, g.t_start);
    s.weights = {0.5, 0.5};
    s.device_alpha = {0.0, 0.0}; // decohered: no cross terms by construction
    interference_window(g, s.window_lo, s.window_hi);
    s.id = scenario_kind_name(s.kind);
    return s;
}

DetectorProbabilities detector_probabilities(const Scenario& s) {
    if (s.is_mixture()) {
        // each pure component splits evenly at the closure
        return {0.5, 0.5};
    }
    const auto& st = s.state();
    const auto& br = st.branches();
    if (br.size() != 2)
        throw UnsupportedLayoutError(
            "detector_probabilities: closure needs a two-arm state");
    // matched envelope overlap at closure time (mode-matched by the
    // recombining optics; transverse-momentum mismatch is compensated)
    const double kappa = GaussianPacket::envelope_overlap(
        br[0].atom.packets.front(), br[1].atom.packets.front(),
        s.geometry.t_meet());
    const Complex cross = std::conj(br[0].coefficient) * br[1].coefficient *
                          kappa * st.device_overlap(0, 1);
    const double w = std::norm(br[0].coefficient) + std::norm(br[1].coefficient);
    double p1 = 0.5 * w - cross.real();
    double p2 = 0.5 * w + cross.real();
    // clamp roundoff
    p1 = std::max(0.0, std::min(1.0, p1));
    p2 = 1.0 - p1;
    return {p1, p2};
}

std::size_t sample_detector_counts(const Scenario& s, std::size_t n,
                                   std::uint64_t seed) {
    const DetectorProbabilities p = detector_probabilities(s);
    Xoshiro256pp rng(seed);
    std::size_t d1 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (rng.uniform() < p.p_d1) ++d1;
    return d1;
}

} // namespace bohmflow
