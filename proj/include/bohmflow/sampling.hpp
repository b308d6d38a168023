#pragma once

#include <cstdint>
#include <vector>

#include "bohmflow/entangled.hpp"
#include "bohmflow/rng.hpp"

namespace bohmflow {

enum class SamplerKind {
    Auto,          // product when branch atom packets are disjoint
    BranchProduct, // exact factor-wise sampling, branch picked by |c|^2
    Rejection,     // accept-reject with the branch-product proposal
};

struct EnsembleSpec {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::Auto;
};

class SamplerFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Draw n configuration points distributed as |Psi(., t_start)|^2.
/// Same seed, same state: bit-identical output.
std::vector<ConfigPoint> sample_ensemble(const EntangledState& state,
                                         const EnsembleSpec& spec,
                                         double t_start);

/// Figure-style seeding: per branch, evenly spaced offsets perpendicular
/// to the packet velocity in [-half_width, half_width], auxiliary
/// coordinates pinned at the given values.
std::vector<ConfigPoint> fan_ensemble(const EntangledState& state,
                                      double t_start, std::size_t n_per_branch,
                                      double half_width,
                                      const std::array<double, kMaxAux>& aux);

/// Draw one coordinate from a device state's |value|^2.
double sample_device_coordinate(const DeviceState& dev, Xoshiro256pp& rng);

} // namespace bohmflow
