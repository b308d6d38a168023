#include "bohmflow/devicestate.hpp"

#include "bohmflow/quadrature.hpp"

#include <algorithm>

namespace bohmflow {

DeviceState DeviceState::well_eigenstate(int n, double length, double mass,
                                         bool dynamic_phase) {
    if (n < 1)
        throw InvalidParameterError("well_eigenstate: n must be >= 1");
    if (!(length > 0.0) || !(mass > 0.0))
        throw InvalidParameterError("well_eigenstate: L and mass must be > 0");
    DeviceState s;
    s.kind_ = Kind::WellEigenstate;
    s.n_ = n;
    s.length_ = length;
    s.mass_ = mass;
    s.dynamic_phase_ = dynamic_phase;
    return s;
}

DeviceState DeviceState::gaussian(double center, double sigma, double mass,
                                  double momentum) {
    if (!(sigma > 0.0) || !(mass > 0.0))
        throw InvalidParameterError("gaussian device: sigma and mass must be > 0");
    DeviceState s;
    s.kind_ = Kind::Gaussian1D;
    s.center_ = center;
    s.sigma_ = sigma;
    s.mass_ = mass;
    s.momentum_ = momentum;
    s.g_norm_ = std::pow(2.0 * kPi * sigma * sigma, -0.25);
    return s;
}

DeviceState DeviceState::displaced_by(Complex beta, double sigma, double mass) {
    return gaussian(2.0 * sigma * beta.real(), sigma, mass,
                    beta.imag() / sigma);
}

DeviceState DeviceState::alpha_mix(Complex alpha, double sigma, double mass) {
    if (std::abs(alpha) > 1.0 + 1e-12)
        throw InvalidParameterError("alpha_mix: |alpha| must be <= 1");
    if (!(sigma > 0.0) || !(mass > 0.0))
        throw InvalidParameterError("alpha_mix: sigma and mass must be > 0");
    DeviceState s;
    s.kind_ = Kind::AlphaMix;
    s.alpha_ = alpha;
    s.sigma_ = sigma;
    s.mass_ = mass;
    s.g_norm_ = std::pow(2.0 * kPi * sigma * sigma, -0.25);
    return s;
}

double DeviceState::well_energy() const {
    if (kind_ != Kind::WellEigenstate)
        throw UnsupportedLayoutError("well_energy on non-well state");
    const double kn = static_cast<double>(n_) * kPi / length_;
    return kn * kn / (2.0 * mass_);
}

Complex DeviceState::value(double x, double t) const {
    switch (kind_) {
    case Kind::WellEigenstate: {
        if (x <= 0.0 || x >= length_) return {0.0, 0.0};
        const double v = std::sqrt(2.0 / length_) *
                         std::sin(static_cast<double>(n_) * kPi * x / length_);
        if (!dynamic_phase_) return {v, 0.0};
        const double ph = -well_energy() * t;
        return v * Complex{std::cos(ph), std::sin(ph)};
    }
    case Kind::Gaussian1D: {
        const double d = x - center_;
        const double mag = g_norm_ * std::exp(-d * d / (4.0 * sigma_ * sigma_));
        if (momentum_ == 0.0) return {mag, 0.0};
        const double ph = momentum_ * d;
        return mag * Complex{std::cos(ph), std::sin(ph)};
    }
    case Kind::AlphaMix: {
        const double g0 = g_norm_ * std::exp(-x * x / (4.0 * sigma_ * sigma_));
        const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(alpha_)));
        return alpha_ * g0 + Complex{s * (x / sigma_) * g0, 0.0};
    }
    }
    return {0.0, 0.0};
}

Complex DeviceState::derivative(double x, double t) const {
    switch (kind_) {
    case Kind::WellEigenstate: {
        if (x <= 0.0 || x >= length_) return {0.0, 0.0};
        const double kn = static_cast<double>(n_) * kPi / length_;
        const double v = std::sqrt(2.0 / length_) * kn * std::cos(kn * x);
        if (!dynamic_phase_) return {v, 0.0};
        const double ph = -well_energy() * t;
        return v * Complex{std::cos(ph), std::sin(ph)};
    }
    case Kind::Gaussian1D: {
        const double d = x - center_;
        const Complex g = Complex{-d / (2.0 * sigma_ * sigma_), momentum_};
        return value(x, t) * g;
    }
    case Kind::AlphaMix: {
        const double g0 = g_norm_ * std::exp(-x * x / (4.0 * sigma_ * sigma_));
        const double g0p = -x / (2.0 * sigma_ * sigma_) * g0;
        const double g1p = g0 / sigma_ + (x / sigma_) * g0p;
        const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(alpha_)));
        return alpha_ * g0p + Complex{s * g1p, 0.0};
    }
    }
    return {0.0, 0.0};
}

void DeviceState::value_and_derivative(double x, double t, Complex& v,
                                       Complex& d) const {
    switch (kind_) {
    case Kind::WellEigenstate: {
        if (x <= 0.0 || x >= length_) {
            v = d = {0.0, 0.0};
            return;
        }
        const double kn = static_cast<double>(n_) * kPi / length_;
        const double amp = std::sqrt(2.0 / length_);
        const double s = std::sin(kn * x);
        const double c = std::cos(kn * x);
        if (!dynamic_phase_) {
            v = {amp * s, 0.0};
            d = {amp * kn * c, 0.0};
            return;
        }
        const double ph = -well_energy() * t;
        const Complex rot{std::cos(ph), std::sin(ph)};
        v = amp * s * rot;
        d = amp * kn * c * rot;
        return;
    }
    case Kind::Gaussian1D: {
        const double dd = x - center_;
        const double s2 = sigma_ * sigma_;
        const double mag = g_norm_ * std::exp(-dd * dd / (4.0 * s2));
        if (momentum_ == 0.0) {
            v = {mag, 0.0};
            d = {mag * (-dd / (2.0 * s2)), 0.0};
            return;
        }
        const double ph = momentum_ * dd;
        v = mag * Complex{std::cos(ph), std::sin(ph)};
        d = v * Complex{-dd / (2.0 * s2), momentum_};
        return;
    }
    case Kind::AlphaMix: {
        const double s2 = sigma_ * sigma_;
        const double g0 = g_norm_ * std::exp(-x * x / (4.0 * s2));
        const double g0p = -x / (2.0 * s2) * g0;
        const double g1p = g0 / sigma_ + (x / sigma_) * g0p;
        const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(alpha_)));
        v = alpha_ * g0 + Complex{s * (x / sigma_) * g0, 0.0};
        d = alpha_ * g0p + Complex{s * g1p, 0.0};
        return;
    }
    }
    v = d = {0.0, 0.0};
}

double DeviceState::density(double x) const { return std::norm(value(x, 0.0)); }

void DeviceState::support(double& lo, double& hi) const {
    switch (kind_) {
    case Kind::WellEigenstate:
        lo = 0.0;
        hi = length_;
        return;
    case Kind::Gaussian1D:
        lo = center_ - 12.0 * sigma_;
        hi = center_ + 12.0 * sigma_;
        return;
    case Kind::AlphaMix:
        lo = -14.0 * sigma_;
        hi = 14.0 * sigma_;
        return;
    }
}

Complex DeviceState::overlap(const DeviceState& a, const DeviceState& b) {
    double alo, ahi, blo, bhi;
    a.support(alo, ahi);
    b.support(blo, bhi);
    const double lo = std::max(alo, blo);
    const double hi = std::min(ahi, bhi);
    if (lo >= hi) return {0.0, 0.0};
    return simpson(
        [&](double x) { return std::conj(a.value(x, 0.0)) * b.value(x, 0.0); },
        lo, hi, 4000);
}

Complex DeviceState::coherent_overlap(Complex beta) {
    const double re = -0.5 * std::norm(beta);
    const double im = -beta.real() * beta.imag();
    return cexp_fast({re, im});
}

} // namespace bohmflow
