#pragma once
// Complex special functions: log-gamma, upper incomplete gamma, Gauss 2F1,
// K-Bessel with imaginary order, Legendre P on the real axis x >= 1, the
// Barnes beta integral, the Riemann zeta function, and M(s, t, delta) in its
// quadrature / far-hypergeometric / near-hypergeometric representations.
#include "halfint/numeric.hpp"

namespace halfint {

// Principal-branch log Gamma (Lanczos with reflection).
Complex log_gamma(Complex z);
Complex gamma_c(Complex z); // exp(log_gamma), throws precision_error at poles

// Upper incomplete Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt for complex a,
// real x > 0. Series/continued-fraction switchover at x ~ Re(a) + 1.
Complex upper_incomplete_gamma(Complex a, double x);

// Gauss 2F1(a, b; c; z). Direct series for small |z|, Pfaff z/(z-1) mapping
// (covers large negative real z), 1/z continuation otherwise. Degenerate
// parameter configurations throw std::invalid_argument.
Complex gauss_2f1(Complex a, Complex b, Complex c, Complex z);

// K_{it}(y) via the cosh-integral representation, real-valued for real t.
double bessel_k_imaginary_order(double t, double y);
// Same integral with complex order parameter t (used by m_function).
Complex bessel_k_imaginary_order_c(Complex t, double y);
// Scaled variant e^y K_{it}(y) (overflow-safe building block).
Complex bessel_k_scaled_c(Complex t, double y);

// P_{-1/2+it}(x) for x >= 1, real and even in t (Mehler-Dirichlet integral,
// rewritten with a smooth integrand).
double legendre_p_on_axis(double t, double x);

// (1/2 pi i) int_(gamma) Gamma(u) Gamma(z-u)/Gamma(z) t^{-u} du over the
// vertical line Re u = contour_abscissa; equals (1+t)^{-z} when
// 0 < abscissa < Re z. Pole-touching contours are rejected.
Complex barnes_beta_integral(Complex z, double t, double contour_abscissa);

// Riemann zeta (alternating-series acceleration + functional equation).
Complex riemann_zeta(Complex z);

// ---------------------------------------------------------------------------
// M(s, t, delta) = int_0^inf e^{(1-delta) y} K_{it}(y) y^{s-1/2} dy / y.

struct MFunctionParams {
    Complex s;
    Complex t;
    double delta = 0.0; // > 0 for the integral; 0 allowed by the closed form
};

enum class MMethod { quadrature, hypergeometric_far, hypergeometric_near };

// Distance from s to the pole set {1/2 +- it - r : r = 0, 1, 2, ...}.
double m_pole_distance(Complex s, Complex t);

// The three representations; they agree on the common domain. Throws
// precision_error when s is within 1e-6 of a pole, std::invalid_argument when
// the quadrature precondition Re(s) > |Im t| + 1/2 fails for that method.
Complex m_function(const MFunctionParams& p, MMethod method);

// Closed form of the delta -> 0 limit:
// sqrt(pi) 2^{1/2-s} G(s-1/2+it) G(s-1/2-it) G(1-s) / (G(1/2+it) G(1/2-it)).
Complex m_function_delta0(Complex s, Complex t);

// Residue of M(., t, 0) at s0 = 1/2 + it - r:
// (-1)^r sqrt(pi) 2^{r-it} G(1/2-it+r) G(2it-r) / (r! G(1/2+it) G(1/2-it)).
Complex m_residue(Complex t, int r);

} // namespace halfint
