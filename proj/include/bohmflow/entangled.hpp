#pragma once

#include <array>
#include <vector>

#include "bohmflow/devicestate.hpp"
#include "bohmflow/wavepacket.hpp"

namespace bohmflow {

/// Up to two auxiliary 1D coordinates alongside the 2D atom block.
inline constexpr int kMaxAux = 2;

/// A configuration-space point (r_a, aux...).
struct ConfigPoint {
    Vec2 atom{};
    std::array<double, kMaxAux> aux{};
};

/// Sum of Gaussian packets occupying the atom block of one branch.
struct AtomFactor {
    std::vector<GaussianPacket> packets;

    Complex value(Vec2 r, double t) const;
    void value_with_gradient(Vec2 r, double t, Complex& v, CVec2& g) const;
};

/// One product term of the entangled superposition: coefficient times an
/// atom factor times one device factor per auxiliary coordinate.
struct Branch {
    Complex coefficient{1.0, 0.0};
    AtomFactor atom;
    std::vector<DeviceState> devices;
};

struct EvalResult {
    Complex psi{};
    CVec2 grad_atom{};
    std::array<Complex, kMaxAux> grad_aux{};
};

/// Multi-branch product state over (r_a, aux) configuration space.
/// Immutable after construction; all evaluation is pure.
class EntangledState {
  public:
    enum class NormCheck { Enforce, Skip };

    EntangledState(std::vector<Branch> branches, double reference_time,
                   NormCheck check = NormCheck::Enforce);

    Complex evaluate(const ConfigPoint& q, double t) const;
    /// Value plus the gradient of every coordinate block in one pass.
    EvalResult evaluate_all(const ConfigPoint& q, double t) const;
    /// Gradient of a single block: block 0 is the atom (2 components
    /// returned in out[0], out[1]), block j >= 1 is aux j-1 (out[0]).
    void grad_block(const ConfigPoint& q, double t, int block,
                    Complex out[2]) const;

    /// Total norm integral, via the pairwise-overlap Gram sum.
    double norm() const;

    int n_aux() const { return n_aux_; }
    int n_blocks() const { return 1 + n_aux_; }
    double atom_mass() const { return atom_mass_; }
    double aux_mass(int j) const { return aux_masses_[static_cast<size_t>(j)]; }
    double block_mass(int block) const {
        return block == 0 ? atom_mass_ : aux_mass(block - 1);
    }
    double reference_time() const { return reference_time_; }
    const std::vector<Branch>& branches() const { return branches_; }

    /// Gram matrix of the device products between branches:
    /// O_ij = prod_l <dev_il | dev_jl>.
    Complex device_overlap(std::size_t i, std::size_t j) const {
        return device_overlap_[i * branches_.size() + j];
    }

    /// Largest pairwise atom-envelope overlap between branches at t;
    /// the product sampler is exact when this is negligible.
    double max_branch_envelope_overlap(double t) const;

  private:
    std::vector<Branch> branches_;
    int n_aux_ = 0;
    double atom_mass_ = 1.0;
    std::array<double, kMaxAux> aux_masses_{1.0, 1.0};
    double reference_time_ = 0.0;
    std::vector<Complex> device_overlap_;
    bool uniform_packets_ = false; // all packets share (sigma0, mass, t0)
};

} // namespace bohmflow
