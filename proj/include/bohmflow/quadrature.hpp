#pragma once

#include <cstddef>
#include <functional>

#include "bohmflow/types.hpp"

namespace bohmflow {

/// Composite Simpson rule on [a,b] with n panels (n even).
template <typename F>
auto simpson(F&& f, double a, double b, std::size_t n) -> decltype(f(a)) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / static_cast<double>(n);
    auto acc = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) {
        const double w = (i % 2 == 0) ? 2.0 : 4.0;
        acc += w * f(a + h * static_cast<double>(i));
    }
    return acc * (h / 3.0);
}

/// Tensor-product Simpson on [ax,bx] x [az,bz].
template <typename F>
auto simpson2d(F&& f, double ax, double bx, double az, double bz,
               std::size_t nx, std::size_t nz) -> decltype(f(ax, az)) {
    return simpson(
        [&](double x) {
            return simpson([&](double z) { return f(x, z); }, az, bz, nz);
        },
        ax, bx, nx);
}

} // namespace bohmflow
