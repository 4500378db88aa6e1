#include "halfint/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfint/quadrature.hpp"

namespace halfint {

// ---------------------------------------------------------------------------
// log Gamma: Lanczos approximation (g = 7, 9 terms), principal branch via
// reflection for Re z < 0.5. Accuracy ~1e-14 relative on the tested domain.

namespace {
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};
} // namespace

Complex log_gamma(Complex z) {
    if (z.real() < 0.5) {
        // reflection: log G(z) = log(pi / sin(pi z)) - log G(1 - z), keeping
        // the principal branch continuous off the real axis.
        if (z.imag() == 0.0 && near_integer(z.real(), 1e-14) && z.real() <= 0.5)
            throw precision_error("log_gamma: pole at nonpositive integer");
        Complex lg = std::log(PI / std::sin(PI * z)) - log_gamma(Complex(1.0, 0.0) - z);
        return lg;
    }
    Complex x(lanczos_c[0], 0.0);
    Complex zm1 = z - Complex(1.0, 0.0);
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (zm1 + Complex((double)i, 0.0));
    Complex tt = zm1 + Complex(lanczos_g + 0.5, 0.0);
    return 0.5 * std::log(TWO_PI) + (zm1 + Complex(0.5, 0.0)) * std::log(tt) - tt +
           std::log(x);
}

Complex gamma_c(Complex z) {
    if (dist_to_gamma_pole(z) < 1e-12)
        throw precision_error("gamma_c: argument within 1e-12 of a pole");
    return std::exp(log_gamma(z));
}

// ---------------------------------------------------------------------------
// Upper incomplete gamma.

namespace {

// Lower incomplete gamma by the standard series, gamma(a,x) = x^a e^{-x}
// sum_n x^n / (a (a+1) ... (a+n)); valid for any a off the poles of Gamma.
Complex lower_gamma_series(Complex a, double x) {
    Complex term = Complex(1.0, 0.0) / a;
    Complex sum = term;
    Complex ap = a;
    for (int n = 1; n < 2000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum * std::exp(-x + a * std::log(Complex(x, 0.0)));
}

// Continued fraction (modified Lentz) for Gamma(a, x), good for x >~ Re a + 1.
Complex upper_gamma_cf(Complex a, double x) {
    const double tiny = 1e-290;
    Complex b = Complex(x, 0.0) + 1.0 - a;
    Complex c = Complex(1.0 / tiny, 0.0);
    Complex d = Complex(1.0, 0.0) / b;
    Complex h = d;
    for (int i = 1; i < 4000; ++i) {
        Complex an = -(double)i * (Complex((double)i, 0.0) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = Complex(tiny, 0.0);
        c = b + an / c;
        if (std::abs(c) < tiny) c = Complex(tiny, 0.0);
        d = Complex(1.0, 0.0) / d;
        Complex del = d * c;
        h *= del;
        if (std::abs(del - Complex(1.0, 0.0)) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(Complex(x, 0.0)));
}

} // namespace

Complex upper_incomplete_gamma(Complex a, double x) {
    if (x <= 0.0)
        throw std::invalid_argument("upper_incomplete_gamma: x must be positive");
    if (x > std::max(1.5, a.real() + 1.0)) return upper_gamma_cf(a, x);
    if (dist_to_gamma_pole(a) > 0.25)
        return gamma_c(a) - lower_gamma_series(a, x);
    // a close to a Gamma pole with small x: shift up with the recurrence
    // Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a, applied downward.
    Complex up = upper_incomplete_gamma(a + 1.0, x);
    return (up - std::exp(a * std::log(Complex(x, 0.0)) - x)) / a;
}

// ---------------------------------------------------------------------------
// Gauss 2F1.

namespace {

Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex z, int max_terms = 200000) {
    Complex term(1.0, 0.0), sum(1.0, 0.0);
    for (int n = 0; n < max_terms; ++n) {
        Complex cn = c + Complex((double)n, 0.0);
        if (dist_to_gamma_pole(cn) < 1e-13 && std::abs(cn) < 0.5)
            throw std::invalid_argument("gauss_2f1: c is a nonpositive integer");
        term *= (a + Complex((double)n, 0.0)) * (b + Complex((double)n, 0.0)) /
                (cn * Complex((double)n + 1.0, 0.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1.0) && n > 3) return sum;
    }
    throw precision_error("gauss_2f1: series did not converge");
}

} // namespace

Complex gauss_2f1(Complex a, Complex b, Complex c, Complex z) {
    if (dist_to_gamma_pole(c) < 1e-12)
        throw std::invalid_argument("gauss_2f1: c must not be a nonpositive integer");
    if (std::abs(z) < 1e-300) return Complex(1.0, 0.0);
    // terminating cases (a or b a nonpositive integer) are handled by the
    // series automatically (term hits zero).
    if (std::abs(z) <= 0.6) return hyp2f1_series(a, b, c, z);
    Complex w = z / (z - Complex(1.0, 0.0));
    // The Pfaff window reaches to |w| ~ 0.9975 (slow but cancellation-free
    // series) because the 1/z continuation below is degenerate whenever a - b
    // is an integer, which the M-function grid hits at integer s.
    if (std::abs(w) <= 0.9975) {
        // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; w); choose the variant
        // with the smaller first parameter for better conditioning.
        if (std::abs(a) <= std::abs(b))
            return std::exp(-a * std::log(Complex(1.0, 0.0) - z)) *
                   hyp2f1_series(a, c - b, c, w);
        return std::exp(-b * std::log(Complex(1.0, 0.0) - z)) *
               hyp2f1_series(b, c - a, c, w);
    }
    // Euler window for z inside the unit disc near 1 (e.g. F(k, k+h; h+1; rho^2)
    // with rho close to 1): F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z), whose
    // series terms decay like n^{Re(a+b-c)... reversed} z^n.  Pick whichever of
    // the pair has the faster-decaying terms; both keep |z| < 1 so the series
    // converges, just slowly (cap raised accordingly).
    if (std::abs(z) < 1.0 - 1e-9 && std::abs(Complex(1.0, 0.0) - z) <= 0.5) {
        Complex cab = c - a - b;
        if (cab.real() < -0.05)
            return std::exp(cab * std::log(Complex(1.0, 0.0) - z)) *
                   hyp2f1_series(c - a, c - b, c, z, 2000000);
        return hyp2f1_series(a, b, c, z, 2000000);
    }
    // Remaining interior points (0.6 < |z| < 1, away from both the Pfaff window
    // and the Euler window): the defining series still has radius 1 and the
    // excluded region keeps Re z >= 0, so there is no sign alternation to
    // cancel catastrophically; sum it directly with a raised cap.
    if (std::abs(z) < 1.0 - 1e-9) return hyp2f1_series(a, b, c, z, 2000000);
    // 1/z continuation (DLMF 15.8.2); requires a - b not an integer.
    Complex amb = a - b;
    if (near_integer(amb.real(), 1e-8) && std::abs(amb.imag()) < 1e-8)
        throw std::invalid_argument(
            "gauss_2f1: 1/z continuation degenerate (a - b integral) for |z| ~ 1");
    Complex mz = -z;
    Complex t1 = std::exp(log_gamma(c) + log_gamma(b - a) - log_gamma(b) -
                          log_gamma(c - a) - a * std::log(mz)) *
                 hyp2f1_series(a, a - c + 1.0, a - b + 1.0, 1.0 / z);
    Complex t2 = std::exp(log_gamma(c) + log_gamma(a - b) - log_gamma(a) -
                          log_gamma(c - b) - b * std::log(mz)) *
                 hyp2f1_series(b, b - c + 1.0, b - a + 1.0, 1.0 / z);
    return t1 + t2;
}

// ---------------------------------------------------------------------------
// K_{it}(y) = int_0^inf e^{-y cosh u} cos(t u) du.

// e^y K_{it}(y) = int_0^inf e^{-y (cosh u - 1)} cos(t u) du: the scaled form
// never overflows and is what the M quadrature pairs with its e^{-delta y}.
Complex bessel_k_scaled_c(Complex t, double y) {
    if (y <= 0.0)
        throw std::invalid_argument("bessel_k_imaginary_order: y must be positive");
    double imt = std::abs(t.imag());
    double U = 1.0;
    while (y * (std::cosh(U) - 1.0) - imt * U < 45.0 && U < 500.0) U += 0.5;
    auto integrand = [&](double u) {
        return std::exp(-y * (std::cosh(u) - 1.0)) * std::cos(t * u);
    };
    return integrate(integrand, 0.0, U, 1e-12).value;
}

Complex bessel_k_imaginary_order_c(Complex t, double y) {
    return std::exp(-y) * bessel_k_scaled_c(t, y);
}

double bessel_k_imaginary_order(double t, double y) {
    return bessel_k_imaginary_order_c(Complex(t, 0.0), y).real();
}

// ---------------------------------------------------------------------------
// P_{-1/2+it}(x), x >= 1: Mehler-Dirichlet integral
//   P(cosh r) = (sqrt2/pi) int_0^r cos(t u) / sqrt(cosh r - cosh u) du,
// rewritten with cosh u = 1 + (x-1) sin^2(psi), which turns it into the
// smooth form (2/pi) int_0^{pi/2} cos(t u(psi)) / sqrt(1 + beta^2 sin^2 psi)
// with beta^2 = (x-1)/2 and u(psi) = 2 asinh(beta sin psi).

double legendre_p_on_axis(double t, double x) {
    if (x < 1.0)
        throw std::invalid_argument("legendre_p_on_axis: x must be >= 1");
    if (x == 1.0) return 1.0;
    double beta = std::sqrt(0.5 * (x - 1.0));
    auto integrand = [&](double psi) {
        double bs = beta * std::sin(psi);
        double u = 2.0 * std::asinh(bs);
        return std::cos(t * u) / std::sqrt(1.0 + bs * bs);
    };
    return (2.0 / PI) * integrate_real(integrand, 0.0, 0.5 * PI, 1e-14);
}

// ---------------------------------------------------------------------------
// Barnes beta integral.

Complex barnes_beta_integral(Complex z, double t, double contour_abscissa) {
    if (t <= 0.0)
        throw std::invalid_argument("barnes_beta_integral: t must be positive");
    double g = contour_abscissa;
    if (!(g > 1e-6 && g < z.real() - 1e-6))
        throw precision_error(
            "barnes_beta_integral: contour abscissa must satisfy 0 < a < Re z "
            "strictly (pole-touching contour rejected)");
    Complex lgz = log_gamma(z);
    double lt = std::log(t);
    auto integrand = [&](double v) {
        Complex u(g, v);
        return std::exp(log_gamma(u) + log_gamma(z - u) - lgz -
                        u * Complex(lt, 0.0));
    };
    // Gamma-product decay ~ e^{-pi |v|} (t real keeps no growth term); expand
    // the window until the integrand is negligible.
    double V = 15.0;
    while (std::abs(integrand(V)) + std::abs(integrand(-V)) > 1e-20 && V < 300.0)
        V *= 1.4;
    Complex val = integrate(integrand, -V, V, 1e-14).value;
    return val / TWO_PI;
}

// ---------------------------------------------------------------------------
// Riemann zeta: alternating series with Cohen-Rodriguez-Zagier acceleration,
// reflection for Re z < 0.5.

Complex riemann_zeta(Complex z) {
    if (std::abs(z - Complex(1.0, 0.0)) < 1e-12)
        throw precision_error("riemann_zeta: pole at z = 1");
    if (std::abs(z) < 1e-7) // reflection is 0 * pole here; Taylor at the origin
        return Complex(-0.5, 0.0) - 0.5 * std::log(TWO_PI) * z;
    if (z.real() < 0.5) {
        // zeta(z) = 2^z pi^{z-1} sin(pi z / 2) Gamma(1-z) zeta(1-z)
        Complex one_minus = Complex(1.0, 0.0) - z;
        return std::pow(Complex(2.0, 0.0), z) * std::pow(Complex(PI, 0.0), z - 1.0) *
               std::sin(0.5 * PI * z) * gamma_c(one_minus) * riemann_zeta(one_minus);
    }
    const int n = 64;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = 0.5 * (d + 1.0 / d);
    double b = -1.0, c = -d;
    Complex s(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c * std::exp(-z * std::log((double)k + 1.0));
        b *= ((double)(k + n) * (double)(k - n)) /
             (((double)k + 0.5) * ((double)k + 1.0));
    }
    Complex eta = s / d;
    Complex denom = Complex(1.0, 0.0) -
                    std::exp((Complex(1.0, 0.0) - z) * std::log(2.0));
    return eta / denom;
}

// ---------------------------------------------------------------------------
// M(s, t, delta).

double m_pole_distance(Complex s, Complex t) {
    double best = 1e300;
    for (int sign = -1; sign <= 1; sign += 2) {
        Complex base = Complex(0.5, 0.0) + Complex((double)sign) * Complex(0.0, 1.0) * t;
        // poles at base - r; only r >= 0 contribute
        int r_lo = 0;
        int r_hi = (int)std::ceil(base.real() - s.real()) + 3;
        for (int r = r_lo; r <= std::max(r_hi, 3); ++r)
            best = std::min(best, std::abs(s - (base - Complex((double)r, 0.0))));
    }
    return best;
}

namespace {

Complex m_quadrature(Complex s, Complex t, double delta) {
    double margin = s.real() - std::abs(t.imag()) - 0.5;
    if (margin <= 0.0)
        throw std::invalid_argument(
            "m_function(quadrature): requires Re(s) > |Im t| + 1/2");
    // Swap the y and u integrals (Fubini holds exactly on this margin):
    //   int e^{(1-delta) y} K_{it}(y) y^{s-3/2} dy
    //     = Gamma(s-1/2) int_0^inf cos(t u) (cosh u - 1 + delta)^{-(s-1/2)} du,
    // one non-nested integral whose only cancellation is the genuine t
    // oscillation; cosh u - 1 = 2 sinh^2(u/2) avoids small-u roundoff.
    Complex a = s - 0.5;
    double peak = std::pow(delta, -a.real()); // integrand scale at u = 0
    double u_max = 1.0;
    while (u_max < 2000.0 &&
           a.real() * std::log((2.0 * std::pow(std::sinh(0.5 * u_max), 2.0) + delta) / delta) -
                   std::abs(t.imag()) * u_max <
               45.0)
        u_max += 1.0;
    auto integrand = [&](double u) {
        double sh = std::sinh(0.5 * u);
        return std::cos(t * u) *
               std::exp(-a * std::log(2.0 * sh * sh + delta));
    };
    double tol = 1e-13 * std::max(1.0, peak);
    return gamma_c(a) * integrate(integrand, 0.0, u_max, tol, 22).value;
}

Complex m_far(Complex s, Complex t, double delta) {
    Complex it = Complex(0.0, 1.0) * t;
    Complex pref = std::sqrt(PI) *
                   std::exp(it * std::log(2.0) -
                            (s - 0.5 + it) * std::log(delta) +
                            log_gamma(s - 0.5 - it) + log_gamma(s - 0.5 + it) -
                            log_gamma(s));
    Complex F = gauss_2f1(s - 0.5 + it, Complex(0.5, 0.0) + it, s,
                          Complex(1.0 - 2.0 / delta, 0.0));
    return pref * F;
}

Complex m_near_raw(Complex s, Complex t, double delta) {
    Complex it = Complex(0.0, 1.0) * t;
    Complex lg_half = log_gamma(Complex(0.5, 0.0) + it) + log_gamma(Complex(0.5, 0.0) - it);
    Complex term1 = std::sqrt(PI) *
                    std::exp((0.5 - s.real()) * std::log(2.0) +
                             Complex(0.0, -s.imag() * std::log(2.0)) +
                             log_gamma(s - 0.5 + it) + log_gamma(s - 0.5 - it) +
                             log_gamma(Complex(1.0, 0.0) - s) - lg_half) *
                    gauss_2f1(s - 0.5 + it, s - 0.5 - it, s, Complex(0.5 * delta, 0.0));
    Complex term2 = std::sqrt(0.5 * PI) *
                    std::exp(log_gamma(s - 1.0) + (Complex(1.0, 0.0) - s) * std::log(delta)) *
                    gauss_2f1(Complex(0.5, 0.0) + it, Complex(0.5, 0.0) - it,
                              Complex(2.0, 0.0) - s, Complex(0.5 * delta, 0.0));
    return term1 + term2;
}

Complex m_near(Complex s, Complex t, double delta) {
    // The sum-of-two representation has individually singular terms at
    // integer s (their poles cancel); evaluate symmetrically off-axis there.
    double dist_int = std::abs(s.real() - std::round(s.real()));
    bool near_int = std::hypot(dist_int, s.imag()) < 1e-3 && s.real() > -0.5;
    if (!near_int) return m_near_raw(s, t, delta);
    // The symmetric pair about s has an even-power error expansion, so one
    // Richardson step in the detour height removes the O(h^2) term (whose
    // coefficient grows with |t|). Larger h also shrinks the ~1e-16/h
    // cancellation between the individually singular terms, so take h as
    // large as the window allows; scaling it with |Im s| keeps every
    // stencil point at least h/2 - |Im s| >= 2e-4 away from the pole.
    double h = 4e-4 + 2.0 * std::abs(s.imag());
    Complex off(0.0, h);
    Complex f_h = 0.5 * (m_near_raw(s + off, t, delta) + m_near_raw(s - off, t, delta));
    Complex f_h2 = 0.5 * (m_near_raw(s + 0.5 * off, t, delta) +
                          m_near_raw(s - 0.5 * off, t, delta));
    return (4.0 * f_h2 - f_h) / 3.0;
}

} // namespace

Complex m_function(const MFunctionParams& p, MMethod method) {
    if (p.delta <= 0.0)
        throw std::invalid_argument("m_function: delta must be positive (use m_function_delta0 for the limit)");
    if (m_pole_distance(p.s, p.t) < 1e-6)
        throw precision_error("m_function: s within 1e-6 of a pole of M");
    switch (method) {
        case MMethod::quadrature: return m_quadrature(p.s, p.t, p.delta);
        case MMethod::hypergeometric_far: return m_far(p.s, p.t, p.delta);
        case MMethod::hypergeometric_near: return m_near(p.s, p.t, p.delta);
    }
    throw std::logic_error("m_function: unknown method");
}

Complex m_function_delta0(Complex s, Complex t) {
    Complex it = Complex(0.0, 1.0) * t;
    return std::sqrt(PI) *
           std::exp((Complex(0.5, 0.0) - s) * std::log(2.0) +
                    log_gamma(s - 0.5 + it) + log_gamma(s - 0.5 - it) +
                    log_gamma(Complex(1.0, 0.0) - s) -
                    log_gamma(Complex(0.5, 0.0) + it) -
                    log_gamma(Complex(0.5, 0.0) - it));
}

Complex m_residue(Complex t, int r) {
    if (r < 0) throw std::invalid_argument("m_residue: r must be >= 0");
    Complex it = Complex(0.0, 1.0) * t;
    double lfact = std::lgamma((double)r + 1.0);
    return std::pow(-1.0, r) * std::sqrt(PI) *
           std::exp(((double)r) * std::log(2.0) - it * std::log(2.0) +
                    log_gamma(Complex(0.5, 0.0) - it + (double)r) +
                    log_gamma(2.0 * it - (double)r) - lfact -
                    log_gamma(Complex(0.5, 0.0) + it) -
                    log_gamma(Complex(0.5, 0.0) - it));
}

} // namespace halfint
