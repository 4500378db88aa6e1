#include "halfint/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "halfint/quadrature.hpp"
#include "halfint/special.hpp"

namespace halfint {

double point_pair_u(Complex z, Complex z_prime) {
    if (z.imag() <= 0.0 || z_prime.imag() <= 0.0)
        throw std::invalid_argument("point_pair_u: both points need Im > 0");
    return std::norm(z - z_prime) / (4.0 * z.imag() * z_prime.imag());
}

Complex disc_map(Complex z, const DiscCenterFrame& frame) {
    if (frame.z_prime.imag() <= 0.0)
        throw std::invalid_argument("disc_map: frame center needs Im > 0");
    if (z.imag() <= 0.0)
        throw std::invalid_argument("disc_map: z needs Im > 0");
    return (z - frame.z_prime) / (z - std::conj(frame.z_prime));
}

Complex inverse_disc_map(Complex w, const DiscCenterFrame& frame) {
    if (frame.z_prime.imag() <= 0.0)
        throw std::invalid_argument("inverse_disc_map: frame center needs Im > 0");
    if (std::abs(w) >= 1.0)
        throw std::invalid_argument("inverse_disc_map: |w| < 1 required");
    return (frame.z_prime - std::conj(frame.z_prime) * w) / (Complex(1.0, 0.0) - w);
}

double ys_transform_check(const DiscCenterFrame& frame, double s,
                          const std::vector<Complex>& w_grid) {
    const double yp = frame.z_prime.imag();
    double worst = 0.0;
    for (Complex w : w_grid) {
        Complex z = inverse_disc_map(w, frame);
        double lhs = std::pow(z.imag(), s);
        double rhs = std::pow((1.0 - std::norm(w)) / std::norm(Complex(1.0, 0.0) - w), s) *
                     std::pow(yp, s);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Poisson kernel power integral.

PoissonPowerResult poisson_power_integral(double k, i64 h, double rho) {
    if (!(k > 0.0)) throw std::invalid_argument("poisson_power_integral: k > 0");
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("poisson_power_integral: 0 <= rho < 1");
    const i64 ha = h >= 0 ? h : -h;
    PoissonPowerResult r{};

    // e^{ih theta} P^k: the sine part is odd about theta = pi, so the average
    // collapses to (1/pi) int_0^pi cos(h theta) P(theta)^k dtheta.
    const double one_m = 1.0 - rho * rho;
    auto integrand = [&](double th) {
        double denom = 1.0 - 2.0 * rho * std::cos(th) + rho * rho;
        return std::cos((double)h * th) * std::pow(one_m / denom, k);
    };
    r.quadrature = integrate_real(integrand, 0.0, PI, 1e-13) / PI;

    // (1-rho^2)^k rho^{|h|} Gamma(k+|h|)/(Gamma(k) Gamma(|h|+1)) F(k,k+|h|;|h|+1;rho^2)
    double lc = std::lgamma(k + (double)ha) - std::lgamma(k) - std::lgamma((double)ha + 1.0);
    if (rho == 0.0) {
        r.closed_form = (ha == 0) ? 1.0 : 0.0;
        return r;
    }
    Complex F = gauss_2f1(Complex(k, 0.0), Complex(k + (double)ha, 0.0),
                          Complex((double)ha + 1.0, 0.0), Complex(rho * rho, 0.0));
    r.closed_form = std::pow(one_m, k) * std::pow(rho, (double)ha) * std::exp(lc) * F.real();
    return r;
}

// ---------------------------------------------------------------------------
// Disc Taylor sampling.

namespace {

// Scaled Taylor data c_n = a_n r_s^n of g(w) = f(z(w)) by an Ns-point DFT of
// samples on the circle |w| = r_s.  The DFT returns c_n directly (plus an
// aliasing term a_{n+Ns} r_s^{n+Ns} + ..., negligible for Ns >> n), which is
// the noise-flat representation: dividing by r_s^n would blow round-off up
// by r_s^{-n}.
std::vector<Complex> sample_scaled_coeffs(const QExpansion& f,
                                          const DiscCenterFrame& frame,
                                          int n_coeffs, int n_samples,
                                          double r_s) {
    if (n_coeffs < 1) throw std::invalid_argument("disc sampling: n_coeffs >= 1");
    if (n_samples < 2 * n_coeffs)
        throw std::invalid_argument("disc sampling: need n_samples >= 2 n_coeffs");
    if (!(r_s > 0.0 && r_s < 1.0))
        throw std::invalid_argument("disc sampling: 0 < sample_radius < 1");

    std::vector<Complex> g(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        double th = TWO_PI * (double)j / (double)n_samples;
        Complex w = r_s * Complex(std::cos(th), std::sin(th));
        g[j] = evaluate(f, inverse_disc_map(w, frame), 1e-13);
    }
    // Root table: e^{-2 pi i m / Ns} indexed by (j n) mod Ns.
    std::vector<Complex> root(n_samples);
    for (int m = 0; m < n_samples; ++m) {
        double th = -TWO_PI * (double)m / (double)n_samples;
        root[m] = Complex(std::cos(th), std::sin(th));
    }
    std::vector<Complex> c(n_coeffs);
    for (int n = 0; n < n_coeffs; ++n) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n_samples; ++j)
            acc += g[j] * root[(size_t)((long long)j * n % n_samples)];
        c[n] = acc / (double)n_samples;
    }
    return c;
}

} // namespace

std::vector<Complex> disc_taylor_coeffs(const QExpansion& f,
                                        const DiscCenterFrame& frame,
                                        int n_coeffs, int n_samples,
                                        double sample_radius) {
    std::vector<Complex> c =
        sample_scaled_coeffs(f, frame, n_coeffs, n_samples, sample_radius);
    double powr = 1.0;
    for (int n = 0; n < n_coeffs; ++n) {
        c[n] /= powr;
        powr *= sample_radius;
    }
    return c;
}

// ---------------------------------------------------------------------------
// B(rho).

BRhoEvaluator::BRhoEvaluator(const QExpansion& f1, const QExpansion& f2,
                             DiscCenterFrame frame, int n_coeffs, int n_samples,
                             double sample_radius)
    : k_(f1.k()), r_s_(sample_radius) {
    if (f1.two_k != f2.two_k)
        throw std::invalid_argument("BRhoEvaluator: forms must share the weight");
    c1_ = sample_scaled_coeffs(f1, frame, n_coeffs, n_samples, sample_radius);
    c2_ = sample_scaled_coeffs(f2, frame, n_coeffs, n_samples, sample_radius);
}

Complex BRhoEvaluator::operator()(Complex rho) const {
    if (std::abs(rho) >= 1.0)
        throw std::invalid_argument("BRhoEvaluator: |rho| < 1 required");
    const int n_max = (int)c1_.size();
    const Complex rho2 = rho * rho;
    const Complex one_m = Complex(1.0, 0.0) - rho2;
    const Complex pref = std::exp(Complex(k_, 0.0) * std::log(one_m));

    // e_h = (1-rho^2)^k rho^h Gamma(k+h)/(Gamma(k) Gamma(h+1)) F(k,k+h;h+1;rho^2):
    // the closed Poisson power with the shared rho^{n+m} factor stripped off.
    std::vector<Complex> e(n_max);
    Complex rho_pow(1.0, 0.0);
    for (int h = 0; h < n_max; ++h) {
        double lc = std::lgamma(k_ + (double)h) - std::lgamma(k_) -
                    std::lgamma((double)h + 1.0);
        Complex F = gauss_2f1(Complex(k_, 0.0), Complex(k_ + (double)h, 0.0),
                              Complex((double)h + 1.0, 0.0), rho2);
        e[h] = pref * rho_pow * std::exp(lc) * F;
        rho_pow *= rho;
    }

    // u_n = c_n (rho/r_s)^n keeps every factor at or below unit modulus for
    // |rho| <= r_s, so the sampling noise in c_n is never amplified.
    const Complex q = rho / r_s_;
    std::vector<Complex> u(n_max), v(n_max);
    Complex qp(1.0, 0.0);
    for (int n = 0; n < n_max; ++n) {
        u[n] = c1_[n] * qp;
        v[n] = std::conj(c2_[n]) * qp;
        qp *= q;
    }
    Complex B(0.0, 0.0);
    for (int n = 0; n < n_max; ++n)
        for (int m = 0; m < n_max; ++m)
            B += u[n] * v[m] * e[std::abs(n - m)];
    return B;
}

Complex B_rho(const QExpansion& f1, const QExpansion& f2,
              const DiscCenterFrame& frame, Complex rho, int H_max) {
    if (H_max < 1) throw std::invalid_argument("B_rho: H_max >= 1");
    double ar = std::abs(rho);
    if (ar >= 1.0) throw std::invalid_argument("B_rho: |rho| < 1 required");
    double r_s = std::min(0.97, std::max(0.6, 1.12 * ar));
    int n_samples = 512;
    while (n_samples < 4 * H_max) n_samples *= 2;
    BRhoEvaluator ev(f1, f2, frame, H_max, n_samples, r_s);
    return ev(rho);
}

Complex B_rho_quadrature(const QExpansion& f1, const QExpansion& f2,
                         const DiscCenterFrame& frame, double rho) {
    if (f1.two_k != f2.two_k)
        throw std::invalid_argument("B_rho_quadrature: forms must share the weight");
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("B_rho_quadrature: 0 <= rho < 1");
    const double k = f1.k();
    const double one_m = 1.0 - rho * rho;
    auto integrand = [&](double th) {
        Complex w = rho * Complex(std::cos(th), std::sin(th));
        Complex z = inverse_disc_map(w, frame);
        double denom = 1.0 - 2.0 * rho * std::cos(th) + rho * rho;
        return evaluate(f1, z, 1e-13) * std::conj(evaluate(f2, z, 1e-13)) *
               std::pow(one_m / denom, k);
    };
    return integrate(integrand, 0.0, TWO_PI, 1e-11).value / TWO_PI;
}

HypBoundScan hyp_bound_property(double k, const std::vector<i64>& h_grid,
                                const std::vector<double>& rho_grid) {
    if (!(k > 0.5)) throw std::invalid_argument("hyp_bound_property: k > 1/2");
    HypBoundScan scan;
    scan.bound = std::pow(2.0, k);
    for (i64 h : h_grid) {
        if (h < 0) throw std::invalid_argument("hyp_bound_property: h >= 0");
        for (double rho : rho_grid) {
            if (!(rho >= 0.0 && rho < 1.0))
                throw std::invalid_argument("hyp_bound_property: 0 <= rho < 1");
            Complex F = gauss_2f1(Complex(k, 0.0), Complex((double)h + k, 0.0),
                                  Complex((double)h + 1.0, 0.0),
                                  Complex(rho * rho, 0.0));
            double val = std::abs(F) * std::pow(1.0 - rho * rho, 2.0 * k - 1.0);
            if (val > scan.max_value) {
                scan.max_value = val;
                scan.argmax_h = h;
                scan.argmax_rho = rho;
            }
        }
    }
    return scan;
}

} // namespace halfint
