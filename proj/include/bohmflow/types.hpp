#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace bohmflow {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// 2D vector for the atom centre-of-mass plane (x along nominal
/// propagation, z transverse).
struct Vec2 {
    double x = 0.0;
    double z = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, z + o.z}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, z - o.z}; }
    Vec2 operator*(double s) const { return {x * s, z * s}; }
    double dot(Vec2 o) const { return x * o.x + z * o.z; }
    double norm2() const { return x * x + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

struct CVec2 {
    Complex x{0.0, 0.0};
    Complex z{0.0, 0.0};
};

/// exp(z) without the libm complex-exp overhead; the field evaluators
/// spend most of their time here.
inline Complex cexp_fast(Complex z) {
    const double m = std::exp(z.real());
    return {m * std::cos(z.imag()), m * std::sin(z.imag())};
}

class InvalidParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class OutOfDomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Signalled when an operation is asked to evaluate at a node of the
/// wavefunction (P below epsilon); callers decide the halt policy.
class NodeDegeneracyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnsupportedLayoutError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace bohmflow
