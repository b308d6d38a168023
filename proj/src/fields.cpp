#include "bohmflow/fields.hpp"

namespace bohmflow {

double FieldEvaluator::density(const ConfigPoint& q, double t) const {
    return std::norm(state_->evaluate(q, t));
}

BlockCurrent FieldEvaluator::current(const ConfigPoint& q, double t) const {
    const EvalResult e = state_->evaluate_all(q, t);
    const Complex cpsi = std::conj(e.psi);
    BlockCurrent j;
    j.atom.x = std::imag(cpsi * e.grad_atom.x) / state_->atom_mass();
    j.atom.z = std::imag(cpsi * e.grad_atom.z) / state_->atom_mass();
    for (int l = 0; l < state_->n_aux(); ++l)
        j.aux[static_cast<size_t>(l)] =
            std::imag(cpsi * e.grad_aux[static_cast<size_t>(l)]) /
            state_->aux_mass(l);
    return j;
}

bool FieldEvaluator::try_velocity(const ConfigPoint& q, double t,
                                  BlockVelocity& v, double& p) const {
    const EvalResult e = state_->evaluate_all(q, t);
    p = std::norm(e.psi);
    if (!(p >= params_.eps_p)) return false;
    const Complex cpsi = std::conj(e.psi);
    const double ma = state_->atom_mass() * p;
    v.atom.x = std::imag(cpsi * e.grad_atom.x) / ma;
    v.atom.z = std::imag(cpsi * e.grad_atom.z) / ma;
    for (int l = 0; l < state_->n_aux(); ++l)
        v.aux[static_cast<size_t>(l)] =
            std::imag(cpsi * e.grad_aux[static_cast<size_t>(l)]) /
            (state_->aux_mass(l) * p);
    return true;
}

BlockVelocity FieldEvaluator::velocity(const ConfigPoint& q, double t) const {
    BlockVelocity v;
    double p;
    if (!try_velocity(q, t, v, p))
        throw NodeDegeneracyError("velocity: P below eps_p (node)");
    return v;
}

double FieldEvaluator::quantum_potential(const ConfigPoint& q, double t,
                                         int block) const {
    const double h = params_.fd_step;
    const double r0 = std::abs(state_->evaluate(q, t));
    if (!(r0 >= params_.eps_r))
        throw NodeDegeneracyError("quantum_potential: R below eps_r (node)");

    double lap = 0.0;
    auto second_diff = [&](auto shift) {
        ConfigPoint qp = q, qm = q;
        shift(qp, +h);
        shift(qm, -h);
        const double rp = std::abs(state_->evaluate(qp, t));
        const double rm = std::abs(state_->evaluate(qm, t));
        return (rp - 2.0 * r0 + rm) / (h * h);
    };

    if (block == 0) {
        lap += second_diff([](ConfigPoint& p, double d) { p.atom.x += d; });
        lap += second_diff([](ConfigPoint& p, double d) { p.atom.z += d; });
    } else {
        const auto l = static_cast<size_t>(block - 1);
        lap += second_diff([l](ConfigPoint& p, double d) { p.aux[l] += d; });
    }
    return -lap / (2.0 * state_->block_mass(block) * r0);
}

FieldSample FieldEvaluator::sample(const ConfigPoint& q, double t,
                                   bool with_q) const {
    FieldSample s;
    const EvalResult e = state_->evaluate_all(q, t);
    s.p = std::norm(e.psi);
    s.r = std::sqrt(s.p);
    const Complex cpsi = std::conj(e.psi);
    const double ma = state_->atom_mass();
    s.j.atom.x = std::imag(cpsi * e.grad_atom.x) / ma;
    s.j.atom.z = std::imag(cpsi * e.grad_atom.z) / ma;
    for (int l = 0; l < state_->n_aux(); ++l)
        s.j.aux[static_cast<size_t>(l)] =
            std::imag(cpsi * e.grad_aux[static_cast<size_t>(l)]) /
            state_->aux_mass(l);

    if (!(s.p >= params_.eps_p)) {
        s.degenerate = true;
        return s;
    }
    s.v.atom = s.j.atom * (1.0 / s.p);
    s.ekin_atom = 0.5 * ma * s.v.atom.norm2();
    s.e_total = s.ekin_atom;
    for (int l = 0; l < state_->n_aux(); ++l) {
        const auto li = static_cast<size_t>(l);
        s.v.aux[li] = s.j.aux[li] / s.p;
        s.ekin_aux[li] = 0.5 * state_->aux_mass(l) * s.v.aux[li] * s.v.aux[li];
        s.e_total += s.ekin_aux[li];
    }
    if (with_q) {
        if (s.r >= params_.eps_r) {
            s.q_atom = quantum_potential(q, t, 0);
            s.q_total = s.q_atom;
            for (int l = 0; l < state_->n_aux(); ++l) {
                s.q_aux[static_cast<size_t>(l)] =
                    quantum_potential(q, t, l + 1);
                s.q_total += s.q_aux[static_cast<size_t>(l)];
            }
            s.e_total += s.q_total;
        } else {
            s.degenerate = true;
        }
    }
    return s;
}

FieldSample FieldEvaluator::energy_split(const ConfigPoint& q, double t) const {
    FieldSample s = sample(q, t, true);
    if (s.degenerate)
        throw NodeDegeneracyError("energy_split: node degeneracy");
    return s;
}

double FieldEvaluator::continuity_residual(const ConfigPoint& q, double t,
                                           double h) const {
    if (!(h > 0.0))
        throw InvalidParameterError("continuity_residual: h must be > 0");
    const double pt_plus = density(q, t + h);
    const double pt_minus = density(q, t - h);
    double resid = (pt_plus - pt_minus) / (2.0 * h);

    auto jdiff = [&](auto shift, auto pick) {
        ConfigPoint qp = q, qm = q;
        shift(qp, +h);
        shift(qm, -h);
        return (pick(current(qp, t)) - pick(current(qm, t))) / (2.0 * h);
    };
    resid += jdiff([](ConfigPoint& p, double d) { p.atom.x += d; },
                   [](const BlockCurrent& c) { return c.atom.x; });
    resid += jdiff([](ConfigPoint& p, double d) { p.atom.z += d; },
                   [](const BlockCurrent& c) { return c.atom.z; });
    for (int l = 0; l < state_->n_aux(); ++l) {
        const auto li = static_cast<size_t>(l);
        resid += jdiff([li](ConfigPoint& p, double d) { p.aux[li] += d; },
                       [li](const BlockCurrent& c) { return c.aux[li]; });
    }
    return std::abs(resid);
}

Vec2 FieldEvaluator::reduced_current_atom(Vec2 r_a, double t) const {
    if (state_->n_aux() != 1)
        throw UnsupportedLayoutError(
            "reduced_current_atom: state must have exactly one auxiliary "
            "coordinate");
    const auto& branches = state_->branches();
    const std::size_t nb = branches.size();

    std::vector<Complex> vals(nb);
    std::vector<CVec2> grads(nb);
    for (std::size_t i = 0; i < nb; ++i)
        branches[i].atom.value_with_gradient(r_a, t, vals[i], grads[i]);

    Complex jx{0.0, 0.0}, jz{0.0, 0.0};
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const Complex w = std::conj(branches[i].coefficient) *
                              branches[j].coefficient *
                              state_->device_overlap(i, j);
            const Complex cv = std::conj(vals[i]);
            jx += w * cv * grads[j].x;
            jz += w * cv * grads[j].z;
        }
    const double m = state_->atom_mass();
    return {std::imag(jx) / m, std::imag(jz) / m};
}

} // namespace bohmflow
