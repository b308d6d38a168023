#pragma once

#include "bohmflow/types.hpp"

namespace bohmflow {

/// One-dimensional wavefunction of an auxiliary degree of freedom: a
/// which-way cavity level, a detector pointer, or an ionisation-product
/// mode.  All kinds are normalized on construction.
class DeviceState {
  public:
    enum class Kind {
        WellEigenstate,  // sqrt(2/L) sin(n pi x / L) on [0, L]
        Gaussian1D,      // displaced Gaussian, optional momentum
        AlphaMix,        // alpha * g0 + sqrt(1-|alpha|^2) * g1 (Hermite mode)
    };

    static DeviceState well_eigenstate(int n, double length, double mass,
                                       bool dynamic_phase = false);
    static DeviceState gaussian(double center, double sigma, double mass,
                                double momentum = 0.0);
    /// Coherent-state-style displacement by complex beta of a ground
    /// Gaussian of width sigma: centre shift 2 sigma Re(beta), momentum
    /// Im(beta)/sigma.  Overlap with the undisplaced state is
    /// exp(-|beta|^2/2) exp(-i Re(beta) Im(beta)).
    static DeviceState displaced_by(Complex beta, double sigma, double mass);
    /// State with exact prescribed overlap alpha against the ground
    /// Gaussian of the same width (|alpha| <= 1).
    static DeviceState alpha_mix(Complex alpha, double sigma, double mass);

    Complex value(double x, double t) const;
    Complex derivative(double x, double t) const;
    /// Both at once; the hot path for field evaluation.
    void value_and_derivative(double x, double t, Complex& v, Complex& d) const;
    double density(double x) const; // |value|^2, time independent

    /// Coordinate interval outside of which the state is (numerically)
    /// zero; used by samplers and quadratures.
    void support(double& lo, double& hi) const;

    /// <a|b> by composite Simpson over the joint support.
    static Complex overlap(const DeviceState& a, const DeviceState& b);
    static Complex coherent_overlap(Complex beta);

    Kind kind() const { return kind_; }
    double mass() const { return mass_; }
    double well_length() const { return length_; }
    int level() const { return n_; }
    /// Eigen-energy n^2 pi^2 / (2 m L^2) for well states.
    double well_energy() const;
    bool dynamic_phase() const { return dynamic_phase_; }
    Complex alpha() const { return alpha_; }
    double sigma() const { return sigma_; }
    double center() const { return center_; }
    double momentum() const { return momentum_; }

  private:
    DeviceState() = default;

    Kind kind_ = Kind::Gaussian1D;
    double mass_ = 1.0;
    // well parameters
    int n_ = 1;
    double length_ = kPi;
    bool dynamic_phase_ = false;
    // gaussian / mix parameters
    double center_ = 0.0;
    double sigma_ = 1.0;
    double momentum_ = 0.0;
    Complex alpha_{1.0, 0.0};
    double g_norm_ = 0.0; // (2 pi sigma^2)^{-1/4}, cached
};

} // namespace bohmflow
