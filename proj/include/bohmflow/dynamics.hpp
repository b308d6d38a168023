#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bohmflow/fields.hpp"
#include "bohmflow/sampling.hpp"

namespace bohmflow {

enum class Termination { Completed, NodeDegenerate, LeftDomain };

const char* termination_name(Termination t);

/// Axis-aligned bounding box on the atom plane plus optional aux bounds.
struct Domain {
    Vec2 lo{-1e9, -1e9};
    Vec2 hi{1e9, 1e9};
    std::array<double, kMaxAux> aux_lo{-1e9, -1e9};
    std::array<double, kMaxAux> aux_hi{1e9, 1e9};

    bool contains(const ConfigPoint& q, int n_aux) const {
        if (q.atom.x < lo.x || q.atom.x > hi.x || q.atom.z < lo.z ||
            q.atom.z > hi.z)
            return false;
        for (int l = 0; l < n_aux; ++l)
            if (q.aux[static_cast<size_t>(l)] < aux_lo[static_cast<size_t>(l)] ||
                q.aux[static_cast<size_t>(l)] > aux_hi[static_cast<size_t>(l)])
                return false;
        return true;
    }
};

struct IntegratorParams {
    double dt = 0.0; // required > 0
    Domain domain{};
    FieldParams fields{};
};

struct TrajectoryPoint {
    double t = 0.0;
    ConfigPoint q{};
    BlockVelocity v{};
};

/// Energy ledger at one recorded instant.
struct AuditPoint {
    double t = 0.0;
    double ekin_atom = 0.0;
    double q_atom = 0.0;
    std::array<double, kMaxAux> q_aux{};
    std::array<double, kMaxAux> ekin_aux{};
    double e_total = 0.0;
    bool valid = false;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    Termination termination = Termination::Completed;
};

/// Fixed-step RK4 over dq/dt = v(q,t) for all blocks simultaneously.
/// The observer is called once at t_start and after every accepted step
/// with (t, q, v_at_step_start).  Halts with NodeDegenerate if any RK
/// stage lands on P < eps_p, with LeftDomain outside the bounding box.
template <typename Observer>
Termination integrate_core(const FieldEvaluator& fields, ConfigPoint q,
                           double t_start, double t_end,
                           const IntegratorParams& params, Observer&& observe) {
    const double dt = params.dt;
    if (!(dt > 0.0)) throw InvalidParameterError("integrate: dt must be > 0");
    const int n_aux = fields.state().n_aux();

    auto stage = [&](const ConfigPoint& p, double t, BlockVelocity& v) {
        double dens;
        return fields.try_velocity(p, t, v, dens);
    };
    auto advance = [&](const ConfigPoint& base, const BlockVelocity& v,
                       double h) {
        ConfigPoint p = base;
        p.atom.x += h * v.atom.x;
        p.atom.z += h * v.atom.z;
        for (int l = 0; l < n_aux; ++l)
            p.aux[static_cast<size_t>(l)] += h * v.aux[static_cast<size_t>(l)];
        return p;
    };

    double t = t_start;
    BlockVelocity k1;
    if (!stage(q, t, k1)) return Termination::NodeDegenerate;
    observe(t, q, k1);

    const auto n_steps = static_cast<long long>(
        std::ceil((t_end - t_start) / dt - 1e-12));
    for (long long i = 0; i < n_steps; ++i) {
        const bool last = (i + 1 == n_steps);
        const double h = last ? t_end - t : dt;
        BlockVelocity k2, k3, k4;
        if (!stage(advance(q, k1, 0.5 * h), t + 0.5 * h, k2))
            return Termination::NodeDegenerate;
        if (!stage(advance(q, k2, 0.5 * h), t + 0.5 * h, k3))
            return Termination::NodeDegenerate;
        if (!stage(advance(q, k3, h), t + h, k4))
            return Termination::NodeDegenerate;

        ConfigPoint next = q;
        next.atom.x +=
            h / 6.0 * (k1.atom.x + 2.0 * k2.atom.x + 2.0 * k3.atom.x + k4.atom.x);
        next.atom.z +=
            h / 6.0 * (k1.atom.z + 2.0 * k2.atom.z + 2.0 * k3.atom.z + k4.atom.z);
        for (int l = 0; l < n_aux; ++l) {
            const auto li = static_cast<size_t>(l);
            next.aux[li] += h / 6.0 *
                            (k1.aux[li] + 2.0 * k2.aux[li] + 2.0 * k3.aux[li] +
                             k4.aux[li]);
        }
        t = last ? t_end : t + h;
        q = next;
        if (!params.domain.contains(q, n_aux)) return Termination::LeftDomain;
        if (!stage(q, t, k1)) return Termination::NodeDegenerate;
        observe(t, q, k1);
    }
    return Termination::Completed;
}

/// Recorded variant; record_stride thins the stored points (velocities
/// are the guidance values at each recorded instant).
Trajectory integrate_trajectory(const FieldEvaluator& fields, ConfigPoint q0,
                                double t_start, double t_end,
                                const IntegratorParams& params,
                                int record_stride = 1);

/// Per-trajectory reduction used by ensemble runs: crossing counts,
/// wobble signature inside the interference window, device-velocity
/// extrema, branch occupancy and the energy audit.
struct TrajectorySummary {
    ConfigPoint q_start{};
    ConfigPoint q_end{};
    double t_end = 0.0;
    Termination termination = Termination::Completed;
    int z_sign_changes = 0;
    int wobble_count = 0;
    double max_abs_vb_pre = 0.0; // aux 0 speed before the window
    double max_abs_vb_win = 0.0; // aux 0 speed inside the window
    int start_branch = 0;
    int end_branch = 0;
    AuditPoint audit_pre{};
    AuditPoint audit_post{};
    ConfigPoint q_mid{};
    bool has_mid = false;
};

struct EnsembleRunParams {
    IntegratorParams integrator{};
    double window_lo = 0.0;   // interference window in t
    double window_hi = 0.0;
    double t_mid = -1.0;      // snapshot time (<t_start disables)
    double wobble_tol = 1e-6; // significance threshold on dv_z
    bool audit = false;       // energy ledger at window entry and t_end
    int threads = 1;
};

/// Integrate one trajectory per starting point; results are ordered by
/// sample index and identical for any thread count.
std::vector<TrajectorySummary> run_ensemble(const EntangledState& state,
                                            const std::vector<ConfigPoint>& q0,
                                            double t_start, double t_end,
                                            const EnsembleRunParams& params);

/// Index of the branch dominating |c_i psi_i(q)|^2 at (q, t).
int dominant_branch(const EntangledState& state, const ConfigPoint& q,
                    double t);

} // namespace bohmflow
