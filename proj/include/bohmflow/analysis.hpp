#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bohmflow/dynamics.hpp"
#include "bohmflow/scenario.hpp"

namespace bohmflow {

class GridRefinementError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InsufficientStatisticsError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Atom-plane probability density with any auxiliary coordinates
/// integrated out: sum_ij conj(c_i) c_j psi_i* psi_j O_ij.
double marginal_atom_density(const EntangledState& state, Vec2 r_a, double t);

/// Weighted marginal over mixture components.
double marginal_atom_density(const Scenario& s, Vec2 r_a, double t);

/// Net probability flux across the z = 0 plane at time t: the integral
/// of j_z(x, 0, t) dx with the device coordinate marginalized.  Composite
/// Simpson over the packet support; throws GridRefinementError when the
/// estimated quadrature error exceeds 1e-6.
double plane_flux(const EntangledState& state, double t);
double plane_flux(const Scenario& s, double t);
/// Per-component fluxes for density-operator mode.
std::vector<double> component_plane_flux(const Scenario& s, double t);

struct CrossingStats {
    int total_sign_changes = 0;
    std::size_t trajectories_crossing = 0;
    std::size_t completed = 0;
    std::size_t excluded = 0;
};
CrossingStats crossing_stats(const std::vector<TrajectorySummary>& runs);

enum class Detector { D1, D2 };
/// Detector label from final-lobe membership (open geometry).
Detector classify_detector(const TrajectorySummary& t, const Geometry& g);

/// (max-min)/(max+min) of the density along z at fixed x and t over the
/// central three fringe periods.
double fringe_visibility_analytic(const Scenario& s, double x_slice, double t);

/// Binned counterpart from ensemble snapshots near the slice.
double fringe_visibility_binned(const std::vector<TrajectorySummary>& runs,
                                const Geometry& g, double x_slice,
                                double slab_half_width, int bins_per_period);

/// Matched-filter fringe statistic: mean of cos(2 m v_z z) over the
/// mid-time snapshots.  Full-contrast fringes give 1/2, a fringe-free
/// ensemble gives 0 with sampling noise ~ 1/sqrt(2n); far better
/// discrimination at finite n than binned max/min visibility.
double fringe_amplitude_empirical(const std::vector<TrajectorySummary>& runs,
                                  const Geometry& g);

/// Oscillation count of the transverse velocity inside the interference
/// window: sign alternations of dv_z between recorded points, ignoring
/// changes below tol.
int wobble_signature(const Trajectory& traj, double window_lo,
                     double window_hi, double tol = 1e-6);

/// Total-variation distance between the binned trajectory endpoints and
/// the analytic |Psi|^2 atom marginal at t.
double equivariance_distance(const std::vector<TrajectorySummary>& runs,
                             const Scenario& s, double t, int bins);

struct EnergyClassRow {
    std::string label;       // detector class + starting branch
    std::size_t count = 0;
    double pre_ekin_atom = 0.0;
    double pre_q_atom = 0.0;
    double pre_q_box = 0.0;
    double pre_e_total = 0.0;
    double post_ekin_atom = 0.0;
    double post_q_atom = 0.0;
    double post_q_box = 0.0;
    double post_e_total = 0.0;
    double mean_rel_drift = 0.0;
    double max_rel_drift = 0.0;
};
std::vector<EnergyClassRow> energy_audit_summary(
    const std::vector<TrajectorySummary>& runs, const Geometry& g);

struct RunReport {
    std::string scenario_id;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double p_d1_analytic = 0.0;
    double p_d2_analytic = 0.0;
    double p_d1_closure = 0.0; // closure Monte-Carlo estimate
    double closure_ci_halfwidth = 0.0;
    double lobe_d1 = 0.0;      // trajectory final-lobe fractions
    double lobe_d2 = 0.0;
    double excluded_fraction = 0.0;
    std::vector<std::pair<double, double>> flux_series; // (t, flux)
    CrossingStats crossings{};
    double visibility_analytic = 0.0;
    std::optional<double> visibility_binned;
    std::optional<double> fringe_amplitude;
    std::optional<double> tv_distance;
    double reflected_fraction = 0.0; // start arm != end lobe side
    double wobble_median = 0.0;
    std::vector<EnergyClassRow> energy;
    std::string warning;

    std::string to_text() const;
};

} // namespace bohmflow
