#include "bohmflow/entangled.hpp"

#include <cmath>

namespace bohmflow {

Complex AtomFactor::value(Vec2 r, double t) const {
    Complex v{0.0, 0.0};
    for (const auto& p : packets) v += p.evaluate(r, t);
    return v;
}

void AtomFactor::value_with_gradient(Vec2 r, double t, Complex& v,
                                     CVec2& g) const {
    v = {0.0, 0.0};
    g = {};
    for (const auto& p : packets) {
        Complex pv;
        CVec2 pg;
        p.evaluate_with_gradient(r, t, pv, pg);
        v += pv;
        g.x += pg.x;
        g.z += pg.z;
    }
}

EntangledState::EntangledState(std::vector<Branch> branches,
                               double reference_time, NormCheck check)
    : branches_(std::move(branches)), reference_time_(reference_time) {
    if (branches_.empty())
        throw InvalidParameterError("EntangledState: no branches");
    n_aux_ = static_cast<int>(branches_.front().devices.size());
    if (n_aux_ > kMaxAux)
        throw UnsupportedLayoutError("EntangledState: too many aux coordinates");
    for (const auto& b : branches_) {
        if (static_cast<int>(b.devices.size()) != n_aux_)
            throw InvalidParameterError(
                "EntangledState: branches disagree on auxiliary layout");
        if (b.atom.packets.empty())
            throw InvalidParameterError("EntangledState: empty atom factor");
    }
    atom_mass_ = branches_.front().atom.packets.front().mass();
    for (int j = 0; j < n_aux_; ++j) {
        aux_masses_[static_cast<size_t>(j)] =
            branches_.front().devices[static_cast<size_t>(j)].mass();
        for (const auto& b : branches_)
            if (b.devices[static_cast<size_t>(j)].mass() !=
                aux_masses_[static_cast<size_t>(j)])
                throw InvalidParameterError(
                    "EntangledState: aux masses disagree between branches");
    }

    uniform_packets_ = true;
    const GaussianPacket& first = branches_.front().atom.packets.front();
    for (const auto& b : branches_)
        for (const auto& p : b.atom.packets)
            uniform_packets_ = uniform_packets_ && p.shares_frame(first);

    const std::size_t nb = branches_.size();
    device_overlap_.assign(nb * nb, Complex{1.0, 0.0});
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            Complex o{1.0, 0.0};
            for (int l = 0; l < n_aux_; ++l)
                o *= DeviceState::overlap(
                    branches_[i].devices[static_cast<size_t>(l)],
                    branches_[j].devices[static_cast<size_t>(l)]);
            device_overlap_[i * nb + j] = o;
        }

    if (check == NormCheck::Enforce) {
        const double n = norm();
        if (std::abs(n - 1.0) > 1e-9)
            throw InvalidParameterError(
                "EntangledState: norm deviates from 1 beyond 1e-9");
    }
}

Complex EntangledState::evaluate(const ConfigPoint& q, double t) const {
    Complex total{0.0, 0.0};
    for (const auto& b : branches_) {
        Complex term = b.coefficient * b.atom.value(q.atom, t);
        for (std::size_t l = 0; l < b.devices.size(); ++l)
            term *= b.devices[l].value(q.aux[l], t);
        total += term;
    }
    return total;
}

EvalResult EntangledState::evaluate_all(const ConfigPoint& q, double t) const {
    EvalResult out;
    GaussianPacket::TimeFactors tf;
    if (uniform_packets_)
        tf = branches_.front().atom.packets.front().time_factors(t);

    for (const auto& b : branches_) {
        Complex av{0.0, 0.0};
        CVec2 ag{};
        if (uniform_packets_) {
            for (const auto& p : b.atom.packets) {
                Complex pv;
                CVec2 pg;
                p.evaluate_with_gradient_pre(tf, q.atom, pv, pg);
                av += pv;
                ag.x += pg.x;
                ag.z += pg.z;
            }
        } else {
            b.atom.value_with_gradient(q.atom, t, av, ag);
        }

        Complex dv[kMaxAux], dd[kMaxAux];
        Complex dev_prod{1.0, 0.0};
        const std::size_t k = b.devices.size();
        for (std::size_t l = 0; l < k; ++l) {
            b.devices[l].value_and_derivative(q.aux[l], t, dv[l], dd[l]);
            dev_prod *= dv[l];
        }
        const Complex c = b.coefficient;
        out.psi += c * av * dev_prod;
        out.grad_atom.x += c * ag.x * dev_prod;
        out.grad_atom.z += c * ag.z * dev_prod;
        for (std::size_t l = 0; l < k; ++l) {
            Complex rest{1.0, 0.0};
            for (std::size_t m = 0; m < k; ++m)
                if (m != l) rest *= dv[m];
            out.grad_aux[l] += c * av * dd[l] * rest;
        }
    }
    return out;
}

void EntangledState::grad_block(const ConfigPoint& q, double t, int block,
                                Complex out[2]) const {
    if (block < 0 || block > n_aux_)
        throw InvalidParameterError("grad_block: block out of range");
    const EvalResult r = evaluate_all(q, t);
    if (block == 0) {
        out[0] = r.grad_atom.x;
        out[1] = r.grad_atom.z;
    } else {
        out[0] = r.grad_aux[static_cast<size_t>(block - 1)];
        out[1] = {0.0, 0.0};
    }
}

double EntangledState::norm() const {
    const std::size_t nb = branches_.size();
    Complex total{0.0, 0.0};
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            Complex atom_ov{0.0, 0.0};
            for (const auto& pa : branches_[i].atom.packets)
                for (const auto& pb : branches_[j].atom.packets)
                    atom_ov += GaussianPacket::overlap(pa, pb);
            total += std::conj(branches_[i].coefficient) *
                     branches_[j].coefficient * atom_ov *
                     device_overlap_[i * nb + j];
        }
    }
    return total.real();
}

double EntangledState::max_branch_envelope_overlap(double t) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < branches_.size(); ++i)
        for (std::size_t j = i + 1; j < branches_.size(); ++j)
            for (const auto& pa : branches_[i].atom.packets)
                for (const auto& pb : branches_[j].atom.packets)
                    worst = std::max(
                        worst, GaussianPacket::envelope_overlap(pa, pb, t));
    return worst;
}

} // namespace bohmflow
