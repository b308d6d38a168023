#pragma once

#include <cmath>

namespace testing_stats {

/// Upper chi-square quantile via the Wilson-Hilferty cube approximation;
/// plenty accurate for the large dof used in the sampler tests.
inline double chi2_quantile(double dof, double z_upper) {
    const double a = 2.0 / (9.0 * dof);
    const double c = 1.0 - a + z_upper * std::sqrt(a);
    return dof * c * c * c;
}

/// z for the upper 0.001 tail of the standard normal.
inline constexpr double kZ999 = 3.0902323061678132;

} // namespace testing_stats
