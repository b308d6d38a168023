#include "bohmflow/dynamics.hpp"

#include <atomic>
#include <thread>

namespace bohmflow {

const char* termination_name(Termination t) {
    switch (t) {
    case Termination::Completed: return "completed";
    case Termination::NodeDegenerate: return "node-degenerate";
    case Termination::LeftDomain: return "left-domain";
    }
    return "unknown";
}

Trajectory integrate_trajectory(const FieldEvaluator& fields, ConfigPoint q0,
                                double t_start, double t_end,
                                const IntegratorParams& params,
                                int record_stride) {
    Trajectory traj;
    long long step = 0;
    traj.termination = integrate_core(
        fields, q0, t_start, t_end, params,
        [&](double t, const ConfigPoint& q, const BlockVelocity& v) {
            if (step % record_stride == 0 || t >= t_end)
                traj.points.push_back({t, q, v});
            ++step;
        });
    return traj;
}

int dominant_branch(const EntangledState& state, const ConfigPoint& q,
                    double t) {
    const auto& branches = state.branches();
    int best = 0;
    double best_w = -1.0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        Complex term = branches[i].coefficient *
                       branches[i].atom.value(q.atom, t);
        for (std::size_t l = 0; l < branches[i].devices.size(); ++l)
            term *= branches[i].devices[l].value(q.aux[l], t);
        const double w = std::norm(term);
        if (w > best_w) {
            best_w = w;
            best = static_cast<int>(i);
        }
    }
    return best;
}

namespace {

AuditPoint make_audit(const FieldEvaluator& fields, const ConfigPoint& q,
                      double t) {
    AuditPoint a;
    a.t = t;
    try {
        const FieldSample s = fields.energy_split(q, t);
        a.ekin_atom = s.ekin_atom;
        a.q_atom = s.q_atom;
        a.q_aux = s.q_aux;
        a.ekin_aux = s.ekin_aux;
        a.e_total = s.e_total;
        a.valid = true;
    } catch (const NodeDegeneracyError&) {
        a.valid = false;
    }
    return a;
}

TrajectorySummary run_one(const EntangledState& state,
                          const FieldEvaluator& fields, const ConfigPoint& q0,
                          double t_start, double t_end,
                          const EnsembleRunParams& params) {
    TrajectorySummary s;
    s.q_start = q0;
    s.start_branch = dominant_branch(state, q0, t_start);

    bool have_prev = false;
    double prev_z = 0.0;
    double prev_vz = 0.0;
    bool have_prev_v = false;
    int wobble_sign = 0;
    bool pre_audit_done = false;
    ConfigPoint last_q = q0;
    double last_t = t_start;
    double best_mid = 1e300;

    s.termination = integrate_core(
        fields, q0, t_start, t_end, params.integrator,
        [&](double t, const ConfigPoint& q, const BlockVelocity& v) {
            const bool in_window = t >= params.window_lo && t <= params.window_hi;
            if (have_prev && ((prev_z > 0.0 && q.atom.z < 0.0) ||
                              (prev_z < 0.0 && q.atom.z > 0.0)))
                ++s.z_sign_changes;
            prev_z = q.atom.z;
            have_prev = true;

            if (in_window) {
                if (have_prev_v) {
                    const double dv = v.atom.z - prev_vz;
                    if (std::abs(dv) > params.wobble_tol) {
                        const int sign = dv > 0.0 ? 1 : -1;
                        if (wobble_sign != 0 && sign != wobble_sign)
                            ++s.wobble_count;
                        wobble_sign = sign;
                    }
                }
                prev_vz = v.atom.z;
                have_prev_v = true;
                if (state.n_aux() > 0)
                    s.max_abs_vb_win =
                        std::max(s.max_abs_vb_win, std::abs(v.aux[0]));
            } else if (t < params.window_lo) {
                if (state.n_aux() > 0)
                    s.max_abs_vb_pre =
                        std::max(s.max_abs_vb_pre, std::abs(v.aux[0]));
            }

            if (params.t_mid >= t_start) {
                const double d = std::abs(t - params.t_mid);
                if (d < best_mid) {
                    best_mid = d;
                    s.q_mid = q;
                    s.has_mid = true;
                }
            }

            if (params.audit && !pre_audit_done && t >= params.window_lo) {
                // first step at/after window entry: audit the preceding point
                s.audit_pre = make_audit(fields, last_q, last_t);
                pre_audit_done = true;
            }
            last_q = q;
            last_t = t;
        });

    s.q_end = last_q;
    s.t_end = last_t;
    s.end_branch = dominant_branch(state, last_q, last_t);
    if (params.audit) {
        if (!pre_audit_done) s.audit_pre = make_audit(fields, s.q_start, t_start);
        s.audit_post = make_audit(fields, last_q, last_t);
    }
    return s;
}

} // namespace

std::vector<TrajectorySummary> run_ensemble(const EntangledState& state,
                                            const std::vector<ConfigPoint>& q0,
                                            double t_start, double t_end,
                                            const EnsembleRunParams& params) {
    std::vector<TrajectorySummary> out(q0.size());
    const FieldEvaluator fields(state, params.integrator.fields);

    const int threads = std::max(1, params.threads);
    if (threads == 1 || q0.size() < 2) {
        for (std::size_t i = 0; i < q0.size(); ++i)
            out[i] = run_one(state, fields, q0[i], t_start, t_end, params);
        return out;
    }

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= q0.size()) return;
            out[i] = run_one(state, fields, q0[i], t_start, t_end, params);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

} // namespace bohmflow
