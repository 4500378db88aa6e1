#pragma once
// Shared numeric basics: complex alias, constants, error types, small helpers.
#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

namespace halfint {

using Complex = std::complex<double>;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline constexpr double TWO_PI = 2.0 * PI;

// Thrown when a computation cannot meet its accuracy contract
// (truncation certificate exceeded, contour too close to a pole, ...).
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// e(x) = exp(2 pi i x)
inline Complex unit_e(double x) {
    double t = TWO_PI * x;
    return Complex(std::cos(t), std::sin(t));
}

inline bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) < tol;
}

// Distance from z to the nearest nonpositive integer (pole set of Gamma).
inline double dist_to_gamma_pole(const Complex& z) {
    double re = z.real(), im = z.imag();
    if (re > 0.5) return std::hypot(re, im); // nearest pole is 0
    double r = std::round(re);
    if (r > 0.0) r = 0.0;
    return std::hypot(re - r, im);
}

} // namespace halfint
