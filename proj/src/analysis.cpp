#include "bohmflow/analysis.hpp"

#include "bohmflow/fields.hpp"
#include "bohmflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bohmflow {

double marginal_atom_density(const EntangledState& state, Vec2 r_a, double t) {
    const auto& br = state.branches();
    Complex total{0.0, 0.0};
    std::vector<Complex> vals(br.size());
    for (std::size_t i = 0; i < br.size(); ++i)
        vals[i] = br[i].coefficient * br[i].atom.value(r_a, t);
    for (std::size_t i = 0; i < br.size(); ++i)
        for (std::size_t j = 0; j < br.size(); ++j)
            total += std::conj(vals[i]) * vals[j] * state.device_overlap(i, j);
    return total.real();
}

double marginal_atom_density(const Scenario& s, Vec2 r_a, double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.components.size(); ++k)
        acc += s.weights[k] * marginal_atom_density(s.components[k], r_a, t);
    return acc;
}

namespace {

void flux_grid(const EntangledState& state, double t, double& lo, double& hi) {
    lo = 1e300;
    hi = -1e300;
    for (const auto& b : state.branches())
        for (const auto& p : b.atom.packets) {
            const Vec2 c = p.center_at(t);
            const double s = p.sigma_at(t);
            lo = std::min(lo, c.x - 10.0 * s);
            hi = std::max(hi, c.x + 10.0 * s);
        }
}

double plane_flux_n(const EntangledState& state, double t, std::size_t n) {
    double lo, hi;
    flux_grid(state, t, lo, hi);
    const FieldEvaluator fields(state);
    if (state.n_aux() > 0) {
        return simpson(
            [&](double x) { return fields.reduced_current_atom({x, 0.0}, t).z; },
            lo, hi, n);
    }
    return simpson(
        [&](double x) {
            return fields.current({{x, 0.0}, {}}, t).atom.z;
        },
        lo, hi, n);
}

} // namespace

double plane_flux(const EntangledState& state, double t) {
    const double coarse = plane_flux_n(state, t, 1024);
    const double fine = plane_flux_n(state, t, 2048);
    if (std::abs(fine - coarse) > 1e-6 * std::max(1.0, std::abs(fine)))
        throw GridRefinementError(
            "plane_flux: quadrature not converged at 2048 panels");
    return fine;
}

double plane_flux(const Scenario& s, double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.components.size(); ++k)
        acc += s.weights[k] * plane_flux(s.components[k], t);
    return acc;
}

std::vector<double> component_plane_flux(const Scenario& s, double t) {
    std::vector<double> out;
    out.reserve(s.components.size());
    for (const auto& c : s.components) out.push_back(plane_flux(c, t));
    return out;
}

CrossingStats crossing_stats(const std::vector<TrajectorySummary>& runs) {
    CrossingStats c;
    for (const auto& r : runs) {
        if (r.termination != Termination::Completed) {
            ++c.excluded;
            continue;
        }
        ++c.completed;
        c.total_sign_changes += r.z_sign_changes;
        if (r.z_sign_changes > 0) ++c.trajectories_crossing;
    }
    return c;
}

Detector classify_detector(const TrajectorySummary& t, const Geometry& g) {
    const bool upper = t.q_end.atom.z > 0.0;
    return (upper == g.d1_upper) ? Detector::D1 : Detector::D2;
}

double fringe_visibility_analytic(const Scenario& s, double x_slice, double t) {
    const double period = s.geometry.fringe_period();
    const double half = 1.5 * period;
    double mx = -1e300, mn = 1e300;
    const int n = 3000;
    for (int i = 0; i <= n; ++i) {
        const double z = -half + 2.0 * half * i / n;
        const double p = marginal_atom_density(s, {x_slice, z}, t);
        mx = std::max(mx, p);
        mn = std::min(mn, p);
    }
    if (mx + mn <= 0.0) throw InsufficientStatisticsError("empty density slice");
    return (mx - mn) / (mx + mn);
}

double fringe_visibility_binned(const std::vector<TrajectorySummary>& runs,
                                const Geometry& g, double x_slice,
                                double slab_half_width, int bins_per_period) {
    const double period = g.fringe_period();
    const double half = 1.5 * period;
    const int nbins = 3 * bins_per_period;
    std::vector<double> counts(static_cast<std::size_t>(nbins), 0.0);
    for (const auto& r : runs) {
        if (!r.has_mid) continue;
        if (std::abs(r.q_mid.atom.x - x_slice) > slab_half_width) continue;
        const double z = r.q_mid.atom.z;
        if (z < -half || z >= half) continue;
        const int b = static_cast<int>((z + half) / (2.0 * half) * nbins);
        counts[static_cast<std::size_t>(std::clamp(b, 0, nbins - 1))] += 1.0;
    }
    double mx = -1e300, mn = 1e300;
    for (double c : counts) {
        mx = std::max(mx, c);
        mn = std::min(mn, c);
    }
    if (mx <= 0.0)
        throw InsufficientStatisticsError(
            "fringe_visibility_binned: empty slice bins");
    return (mx - mn) / (mx + mn);
}

double fringe_amplitude_empirical(const std::vector<TrajectorySummary>& runs,
                                  const Geometry& g) {
    const double k2 = 2.0 * g.atom_mass * g.vz();
    double acc = 0.0;
    std::size_t n = 0;
    for (const auto& r : runs) {
        if (!r.has_mid) continue;
        acc += std::cos(k2 * r.q_mid.atom.z);
        ++n;
    }
    if (n == 0)
        throw InsufficientStatisticsError("fringe_amplitude: no snapshots");
    return acc / static_cast<double>(n);
}

int wobble_signature(const Trajectory& traj, double window_lo,
                     double window_hi, double tol) {
    int count = 0, sign = 0;
    bool have_prev = false;
    double prev_vz = 0.0;
    for (const auto& p : traj.points) {
        if (p.t < window_lo || p.t > window_hi) continue;
        if (have_prev) {
            const double dv = p.v.atom.z - prev_vz;
            if (std::abs(dv) > tol) {
                const int s = dv > 0.0 ? 1 : -1;
                if (sign != 0 && s != sign) ++count;
                sign = s;
            }
        }
        prev_vz = p.v.atom.z;
        have_prev = true;
    }
    return count;
}

double equivariance_distance(const std::vector<TrajectorySummary>& runs,
                             const Scenario& s, double t, int bins) {
    std::size_t completed = 0;
    double xlo = 1e300, xhi = -1e300, zlo = 1e300, zhi = -1e300;
    for (const auto& c : s.components)
        for (const auto& b : c.branches())
            for (const auto& p : b.atom.packets) {
                const Vec2 ctr = p.center_at(t);
                const double w = 6.0 * p.sigma_at(t);
                xlo = std::min(xlo, ctr.x - w);
                xhi = std::max(xhi, ctr.x + w);
                zlo = std::min(zlo, ctr.z - w);
                zhi = std::max(zhi, ctr.z + w);
            }
    const auto nb = static_cast<std::size_t>(bins);
    std::vector<double> emp(nb * nb, 0.0);
    double outside = 0.0;
    for (const auto& r : runs) {
        if (r.termination != Termination::Completed) continue;
        ++completed;
        const double fx = (r.q_end.atom.x - xlo) / (xhi - xlo);
        const double fz = (r.q_end.atom.z - zlo) / (zhi - zlo);
        if (fx < 0.0 || fx >= 1.0 || fz < 0.0 || fz >= 1.0) {
            outside += 1.0;
            continue;
        }
        const auto ix = static_cast<std::size_t>(fx * bins);
        const auto iz = static_cast<std::size_t>(fz * bins);
        emp[ix * nb + iz] += 1.0;
    }
    if (completed < 1000)
        throw InsufficientStatisticsError("equivariance needs n >= 1e3");

    // analytic bin masses by 3x3 Gauss-Legendre
    static const double gl_x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double gl_w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double hx = (xhi - xlo) / bins;
    const double hz = (zhi - zlo) / bins;
    double tv = 0.0, analytic_mass = 0.0;
    const double inv_n = 1.0 / static_cast<double>(completed);
    for (std::size_t ix = 0; ix < nb; ++ix) {
        for (std::size_t iz = 0; iz < nb; ++iz) {
            const double cx = xlo + (static_cast<double>(ix) + 0.5) * hx;
            const double cz = zlo + (static_cast<double>(iz) + 0.5) * hz;
            double mass = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    mass += gl_w[a] * gl_w[b] *
                            marginal_atom_density(
                                s,
                                {cx + 0.5 * hx * gl_x[a], cz + 0.5 * hz * gl_x[b]},
                                t);
            mass *= 0.25 * hx * hz;
            analytic_mass += mass;
            tv += std::abs(emp[ix * nb + iz] * inv_n - mass);
        }
    }
    tv += std::abs(outside * inv_n - (1.0 - analytic_mass));
    return 0.5 * tv;
}

std::vector<EnergyClassRow> energy_audit_summary(
    const std::vector<TrajectorySummary>& runs, const Geometry& g) {
    struct Acc {
        std::size_t n = 0;
        double pre[4] = {0, 0, 0, 0};
        double post[4] = {0, 0, 0, 0};
        double drift_sum = 0.0;
        double drift_max = 0.0;
    };
    std::map<std::string, Acc> acc;
    for (const auto& r : runs) {
        if (r.termination != Termination::Completed) continue;
        if (!r.audit_pre.valid || !r.audit_post.valid) continue;
        const Detector d = classify_detector(r, g);
        std::ostringstream key;
        key << (d == Detector::D1 ? "D1" : "D2") << ",arm"
            << (r.start_branch + 1);
        Acc& a = acc[key.str()];
        ++a.n;
        a.pre[0] += r.audit_pre.ekin_atom;
        a.pre[1] += r.audit_pre.q_atom;
        a.pre[2] += r.audit_pre.q_aux[0];
        a.pre[3] += r.audit_pre.e_total;
        a.post[0] += r.audit_post.ekin_atom;
        a.post[1] += r.audit_post.q_atom;
        a.post[2] += r.audit_post.q_aux[0];
        a.post[3] += r.audit_post.e_total;
        const double rel = std::abs(r.audit_post.e_total - r.audit_pre.e_total) /
                           std::max(1e-300, std::abs(r.audit_pre.e_total));
        a.drift_sum += rel;
        a.drift_max = std::max(a.drift_max, rel);
    }
    std::vector<EnergyClassRow> rows;
    for (auto& [label, a] : acc) {
        EnergyClassRow row;
        row.label = label;
        row.count = a.n;
        const double inv = 1.0 / static_cast<double>(a.n);
        row.pre_ekin_atom = a.pre[0] * inv;
        row.pre_q_atom = a.pre[1] * inv;
        row.pre_q_box = a.pre[2] * inv;
        row.pre_e_total = a.pre[3] * inv;
        row.post_ekin_atom = a.post[0] * inv;
        row.post_q_atom = a.post[1] * inv;
        row.post_q_box = a.post[2] * inv;
        row.post_e_total = a.post[3] * inv;
        row.mean_rel_drift = a.drift_sum * inv;
        row.max_rel_drift = a.drift_max;
        rows.push_back(row);
    }
    return rows;
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os.precision(9);
    os << "scenario = " << scenario_id << "\n";
    os << "seed = " << seed << "\n";
    os << "ensemble.n = " << n << "\n";
    os << "detector.analytic.p_d1 = " << p_d1_analytic << "\n";
    os << "detector.analytic.p_d2 = " << p_d2_analytic << "\n";
    os << "detector.closure.p_d1 = " << p_d1_closure << " +- "
       << closure_ci_halfwidth << "\n";
    os << "detector.lobe.d1 = " << lobe_d1 << "\n";
    os << "detector.lobe.d2 = " << lobe_d2 << "\n";
    os << "detector.excluded_fraction = " << excluded_fraction << "\n";
    os << "crossings.total_sign_changes = " << crossings.total_sign_changes
       << "\n";
    os << "crossings.trajectories = " << crossings.trajectories_crossing
       << " of " << crossings.completed << "\n";
    os << "fringe.visibility.analytic = " << visibility_analytic << "\n";
    if (visibility_binned)
        os << "fringe.visibility.binned = " << *visibility_binned << "\n";
    if (fringe_amplitude)
        os << "fringe.amplitude.empirical = " << *fringe_amplitude << "\n";
    if (tv_distance)
        os << "equivariance.tv_distance = " << *tv_distance << "\n";
    os << "reflected_fraction = " << reflected_fraction << "\n";
    os << "wobble.median = " << wobble_median << "\n";
    for (const auto& [t, f] : flux_series)
        os << "plane_flux. t = " << t << " flux = " << f << "\n";
    for (const auto& row : energy) {
        os << "energy." << row.label << ".count = " << row.count << "\n";
        os << "energy." << row.label << ".pre = " << row.pre_ekin_atom << " "
           << row.pre_q_atom << " " << row.pre_q_box << " " << row.pre_e_total
           << "\n";
        os << "energy." << row.label << ".post = " << row.post_ekin_atom << " "
           << row.post_q_atom << " " << row.post_q_box << " "
           << row.post_e_total << "\n";
        os << "energy." << row.label << ".drift = " << row.mean_rel_drift
           << " max " << row.max_rel_drift << "\n";
    }
    if (!warning.empty()) os << "warning = " << warning << "\n";
    return os.str();
}

} // namespace bohmflow
