#include "bohmflow/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace bohmflow {

namespace {

double sample_well(const DeviceState& dev, Xoshiro256pp& rng) {
    // CDF(x) = x/L - sin(2 n pi x / L)/(2 n pi); Newton with bisection
    // safeguard (density vanishes at the interior nodes).
    const double length = dev.well_length();
    const double n = static_cast<double>(dev.level());
    const double u = rng.uniform_pos();
    auto cdf = [&](double x) {
        return x / length - std::sin(2.0 * n * kPi * x / length) / (2.0 * n * kPi);
    };
    auto pdf = [&](double x) {
        const double s = std::sin(n * kPi * x / length);
        return 2.0 / length * s * s;
    };
    double lo = 0.0, hi = length, x = u * length;
    for (int it = 0; it < 80; ++it) {
        const double f = cdf(x) - u;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        const double d = pdf(x);
        double step = (d > 1e-14) ? f / d : 0.0;
        double next = x - step;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-14 * length) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

double sample_alpha_mix(const DeviceState& dev, Xoshiro256pp& rng) {
    // |eta|^2 = N(0, sigma^2)(x) * pi(x), pi(x) = (Re a + s x/sig)^2 + (Im a)^2.
    // Rejection against N(0, (2 sigma)^2); the envelope constant bounds
    // pi(x) exp(-3 x^2 / (8 sigma^2)) * 2.
    const double sig = dev.sigma();
    const Complex a = dev.alpha();
    const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
    auto shape = [&](double x) {
        const double u = a.real() + s * x / sig;
        return u * u + a.imag() * a.imag();
    };
    // max of pi(x) exp(-3x^2/8sig^2): crude but safe bound
    double bound = 0.0;
    for (double x = -14.0 * sig; x <= 14.0 * sig; x += 0.05 * sig)
        bound = std::max(bound, shape(x) * std::exp(-3.0 * x * x /
                                                    (8.0 * sig * sig)));
    bound *= 2.0 * 1.05;
    for (int it = 0; it < 100000; ++it) {
        const double x = 2.0 * sig * rng.normal();
        const double ratio = 2.0 * shape(x) *
                             std::exp(-3.0 * x * x / (8.0 * sig * sig)) / bound;
        if (rng.uniform() < ratio) return x;
    }
    throw SamplerFailure("alpha_mix rejection sampler stalled");
}

} // namespace

double sample_device_coordinate(const DeviceState& dev, Xoshiro256pp& rng) {
    switch (dev.kind()) {
    case DeviceState::Kind::WellEigenstate:
        return sample_well(dev, rng);
    case DeviceState::Kind::Gaussian1D:
        return dev.center() + dev.sigma() * rng.normal();
    case DeviceState::Kind::AlphaMix:
        return sample_alpha_mix(dev, rng);
    }
    throw SamplerFailure("unknown device kind");
}

namespace {

Vec2 sample_atom_factor(const AtomFactor& atom, double t, Xoshiro256pp& rng) {
    const std::size_t np = atom.packets.size();
    if (np == 1) {
        const auto& p = atom.packets.front();
        const Vec2 c = p.center_at(t);
        const double s = p.sigma_at(t);
        return {c.x + s * rng.normal(), c.z + s * rng.normal()};
    }
    // |sum psi_p|^2 <= np * sum |psi_p|^2: rejection against the
    // equal-weight packet mixture.  Requires equal |amplitude| so the
    // mixture really is the proposal density.
    const double a0 = std::abs(atom.packets.front().amplitude());
    for (const auto& p : atom.packets)
        if (std::abs(std::abs(p.amplitude()) - a0) > 1e-12 * a0)
            throw SamplerFailure(
                "atom-factor sampler requires equal packet amplitudes");
    for (int it = 0; it < 100000; ++it) {
        const auto& p = atom.packets[rng.next() % np];
        const Vec2 c = p.center_at(t);
        const double s = p.sigma_at(t);
        const Vec2 r{c.x + s * rng.normal(), c.z + s * rng.normal()};
        double mix = 0.0;
        for (const auto& pk : atom.packets)
            mix += std::norm(pk.evaluate(r, t));
        const double target = std::norm(atom.value(r, t));
        if (mix <= 0.0) continue;
        if (rng.uniform() * static_cast<double>(np) * mix < target) return r;
    }
    throw SamplerFailure("atom-factor rejection sampler stalled");
}

std::size_t pick_branch(const std::vector<Branch>& branches,
                        Xoshiro256pp& rng) {
    double total = 0.0;
    for (const auto& b : branches) total += std::norm(b.coefficient);
    double u = rng.uniform() * total;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        u -= std::norm(branches[i].coefficient);
        if (u <= 0.0) return i;
    }
    return branches.size() - 1;
}

ConfigPoint product_draw(const EntangledState& state, double t,
                         Xoshiro256pp& rng) {
    const auto& branches = state.branches();
    const auto bi = pick_branch(branches, rng);
    const auto& b = branches[bi];
    ConfigPoint q;
    q.atom = sample_atom_factor(b.atom, t, rng);
    for (std::size_t l = 0; l < b.devices.size(); ++l)
        q.aux[l] = sample_device_coordinate(b.devices[l], rng);
    return q;
}

/// Proposal density of product_draw (branch-weighted product of factor
/// densities), needed for the rejection corrector.
double product_density(const EntangledState& state, const ConfigPoint& q,
                       double t) {
    double total_w = 0.0, dens = 0.0;
    for (const auto& b : state.branches()) {
        const double w = std::norm(b.coefficient);
        total_w += w;
        double rho = 0.0;
        const std::size_t np = b.atom.packets.size();
        if (np == 1) {
            rho = std::norm(b.atom.packets.front().evaluate(q.atom, t));
        } else {
            for (const auto& p : b.atom.packets)
                rho += std::norm(p.evaluate(q.atom, t));
            rho /= static_cast<double>(np); // mixture, then the np bound below
        }
        for (std::size_t l = 0; l < b.devices.size(); ++l)
            rho *= b.devices[l].density(q.aux[l]);
        dens += w * rho;
    }
    return dens / total_w;
}

} // namespace

std::vector<ConfigPoint> sample_ensemble(const EntangledState& state,
                                         const EnsembleSpec& spec,
                                         double t_start) {
    Xoshiro256pp rng(spec.seed);
    SamplerKind kind = spec.sampler;
    if (kind == SamplerKind::Auto)
        kind = state.max_branch_envelope_overlap(t_start) < 1e-8
                   ? SamplerKind::BranchProduct
                   : SamplerKind::Rejection;

    std::vector<ConfigPoint> out;
    out.reserve(spec.n);

    if (kind == SamplerKind::BranchProduct) {
        for (std::size_t i = 0; i < spec.n; ++i)
            out.push_back(product_draw(state, t_start, rng));
        return out;
    }

    // Rejection with the branch-product proposal.  Cauchy-Schwarz twice:
    // |Psi|^2 <= (#branches) * (max packets)^2 * sum_i w_i rho_i, so the
    // acceptance ratio below never exceeds 1.
    std::size_t max_packets = 1;
    double total_w = 0.0;
    for (const auto& b : state.branches()) {
        max_packets = std::max(max_packets, b.atom.packets.size());
        total_w += std::norm(b.coefficient);
    }
    const double bound = static_cast<double>(state.branches().size()) *
                         static_cast<double>(max_packets * max_packets) *
                         total_w * 1.0000001;

    std::size_t proposals = 0;
    while (out.size() < spec.n) {
        const ConfigPoint q = product_draw(state, t_start, rng);
        ++proposals;
        const double prop = product_density(state, q, t_start);
        if (prop <= 0.0) continue;
        const double target = std::norm(state.evaluate(q, t_start));
        const double ratio = target / (bound * prop);
        if (rng.uniform() < ratio) out.push_back(q);
        if (proposals > 10000 && static_cast<double>(out.size()) <
                                     1e-4 * static_cast<double>(proposals))
            throw SamplerFailure(
                "rejection sampler efficiency fell below 1e-4 (accepted " +
                std::to_string(out.size()) + " of " +
                std::to_string(proposals) + " proposals)");
    }
    return out;
}

std::vector<ConfigPoint> fan_ensemble(const EntangledState& state,
                                      double t_start, std::size_t n_per_branch,
                                      double half_width,
                                      const std::array<double, kMaxAux>& aux) {
    std::vector<ConfigPoint> out;
    for (const auto& b : state.branches()) {
        for (const auto& p : b.atom.packets) {
            const Vec2 c = p.center_at(t_start);
            const Vec2 v = p.velocity();
            const double vn = v.norm();
            const Vec2 perp = vn > 0.0 ? Vec2{-v.z / vn, v.x / vn}
                                       : Vec2{0.0, 1.0};
            for (std::size_t i = 0; i < n_per_branch; ++i) {
                const double f =
                    n_per_branch == 1
                        ? 0.0
                        : -1.0 + 2.0 * static_cast<double>(i) /
                                     static_cast<double>(n_per_branch - 1);
                ConfigPoint q;
                q.atom = c + perp * (f * half_width);
                q.aux = aux;
                out.push_back(q);
            }
        }
    }
    return out;
}

} // namespace bohmflow
