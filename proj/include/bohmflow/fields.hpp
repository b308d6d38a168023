#pragma once

#include <array>
#include <optional>

#include "bohmflow/entangled.hpp"

namespace bohmflow {

struct FieldParams {
    double eps_p = 1e-12;  // node threshold on P
    double eps_r = 1e-9;   // node threshold on R
    double fd_step = 1e-3; // finite-difference step, units of sigma0
};

/// Current vector split by coordinate block.
struct BlockCurrent {
    Vec2 atom{};
    std::array<double, kMaxAux> aux{};
};

struct BlockVelocity {
    Vec2 atom{};
    std::array<double, kMaxAux> aux{};
};

/// Local field sample at one configuration point and time.
struct FieldSample {
    double p = 0.0;
    double r = 0.0;
    BlockCurrent j{};
    BlockVelocity v{};
    double q_atom = 0.0;
    std::array<double, kMaxAux> q_aux{};
    double q_total = 0.0;
    double ekin_atom = 0.0;
    std::array<double, kMaxAux> ekin_aux{};
    double e_total = 0.0;
    bool degenerate = false;
};

/// Derived-field evaluation over an immutable EntangledState.  All
/// methods are pure and thread-safe.
class FieldEvaluator {
  public:
    explicit FieldEvaluator(const EntangledState& state, FieldParams params = {})
        : state_(&state), params_(params) {}

    double density(const ConfigPoint& q, double t) const;

    /// (1/m) Im(psi* grad psi) for every block; zero where P is zero.
    BlockCurrent current(const ConfigPoint& q, double t) const;

    /// j/P per block.  Throws NodeDegeneracyError when P < eps_p.
    BlockVelocity velocity(const ConfigPoint& q, double t) const;

    /// Non-throwing guidance fast path; false means node degeneracy.
    bool try_velocity(const ConfigPoint& q, double t, BlockVelocity& v,
                      double& p) const;

    /// -(1/2m) laplacian(R)/R for one block (0 = atom), by central
    /// differences of |psi| with step fd_step (truncation O(h^2)).
    double quantum_potential(const ConfigPoint& q, double t, int block) const;

    /// Kinetic and quantum-potential energies per block; e_total is
    /// their sum (V = 0 everywhere in scope).
    FieldSample energy_split(const ConfigPoint& q, double t) const;

    /// Full local sample: P, R, j, v plus energies; quantum potentials
    /// are included when with_q is set.
    FieldSample sample(const ConfigPoint& q, double t, bool with_q) const;

    /// |dP/dt + sum_blocks div j| by central differences with step h.
    double continuity_residual(const ConfigPoint& q, double t, double h) const;

    /// Atom current with the auxiliary coordinate integrated out
    /// (single-aux states): branch terms plus alpha-weighted cross
    /// terms from the cached device overlaps.
    Vec2 reduced_current_atom(Vec2 r_a, double t) const;

    const EntangledState& state() const { return *state_; }
    const FieldParams& params() const { return params_; }

  private:
    const EntangledState* state_;
    FieldParams params_;
};

} // namespace bohmflow
