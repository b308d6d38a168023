#pragma once

#include "bohmflow/types.hpp"

namespace bohmflow {

/// Free 2D Gaussian wave packet, propagated in closed form (hbar = 1).
///
/// At t = t0 the packet is an isotropic normalized Gaussian of width
/// sigma0 centred at center0 carrying plane-wave phase exp(i m v.(r-c)).
/// Free evolution keeps it Gaussian with the complex width
/// sigma0^2 (1 + i tau), tau = (t-t0)/(2 m sigma0^2), so the density
/// width obeys sigma(t)^2 = sigma0^2 (1 + tau^2).
class GaussianPacket {
  public:
    GaussianPacket(Vec2 center0, Vec2 velocity, double sigma0, double t0,
                   double mass, Complex amplitude = {1.0, 0.0});

    /// psi(r,t).  Throws OutOfDomainError for t < t0.
    Complex evaluate(Vec2 r, double t) const;

    /// psi and grad psi in one pass (shared exponential).
    void evaluate_with_gradient(Vec2 r, double t, Complex& value,
                                CVec2& grad) const;

    /// Precomputed time-dependent factors, shared by every packet with
    /// the same (sigma0, mass, t0); lets multi-branch states pay the
    /// complex-width arithmetic once per evaluation point.
    struct TimeFactors {
        double big_t = 0.0;
        Complex inv_var{};   // 1/(2 sigma0^2 (1 + i tau))
        Complex pref_base{}; // (2 pi sigma0^2)^{-1/2} / (1 + i tau)
    };
    TimeFactors time_factors(double t) const;
    bool shares_frame(const GaussianPacket& o) const {
        return sigma0_ == o.sigma0_ && mass_ == o.mass_ && t0_ == o.t0_;
    }
    void evaluate_with_gradient_pre(const TimeFactors& tf, Vec2 r,
                                    Complex& value, CVec2& grad) const;

    /// Analytic Laplacian of psi.
    Complex laplacian(Vec2 r, double t) const;

    Vec2 center_at(double t) const;
    double sigma_at(double t) const;

    /// <psi_a|psi_b> for packets sharing sigma0, mass and t0; this is
    /// time independent under free evolution.
    static Complex overlap(const GaussianPacket& a, const GaussianPacket& b);

    /// Integral of |psi_a||psi_b| at time t (equal-width envelopes).
    static double envelope_overlap(const GaussianPacket& a,
                                   const GaussianPacket& b, double t);

    Vec2 center0() const { return center0_; }
    Vec2 velocity() const { return velocity_; }
    double sigma0() const { return sigma0_; }
    double t0() const { return t0_; }
    double mass() const { return mass_; }
    Complex amplitude() const { return amplitude_; }

  private:
    void check_time(double t) const;

    Vec2 center0_;
    Vec2 velocity_;
    double sigma0_;
    double t0_;
    double mass_;
    Complex amplitude_;
    Vec2 wavevector_;   // m v
    double norm0_;      // (2 pi sigma0^2)^{-1/2}
    double spread_rate_; // 1/(2 m sigma0^2)
};

} // namespace bohmflow
