#pragma once
// Hyperbolic point-pair geometry and the disc-model identities: the invariant
// u(z,z') = |z-z'|^2 / (4 Im z Im z'), the disc map w = (z-z')/(z-conj(z')),
// the Poisson-kernel-power theta integral
//   (1/2pi) int_0^{2pi} e^{ih theta} ((1-rho^2)/|1-rho e^{i theta}|^2)^k dtheta
//     = (1-rho^2)^k rho^{|h|} Gamma(k+|h|)/(Gamma(k) Gamma(|h|+1))
//       F(k, k+|h|; |h|+1; rho^2),
// and the B(rho) angular average of a product of two weight-k forms pulled
// back to the disc, evaluated both by direct quadrature and by the double
// Taylor series against the closed Poisson powers.

#include <vector>

#include "halfint/numeric.hpp"
#include "halfint/qexp.hpp"

namespace halfint {

struct DiscCenterFrame {
    Complex z_prime{0.0, 1.0}; // disc center, Im > 0
};

// u(z, z') = |z - z'|^2 / (4 Im z Im z'); cosh d = 2u + 1.
double point_pair_u(Complex z, Complex z_prime);

// w = (z - z')/(z - conj(z')): upper half plane -> unit disc, z' -> 0.
Complex disc_map(Complex z, const DiscCenterFrame& frame);

// z = (z' - conj(z') w)/(1 - w): inverse of disc_map.
Complex inverse_disc_map(Complex w, const DiscCenterFrame& frame);

// max over the grid of |y^s - ((1-|w|^2)/|1-w|^2)^s (y')^s| under pullback.
double ys_transform_check(const DiscCenterFrame& frame, double s,
                          const std::vector<Complex>& w_grid);

struct PoissonPowerResult {
    double quadrature;
    double closed_form;
};

// Both routes to the theta integral; their agreement is the contract and pins
// the gamma normalization Gamma(k+|h|)/(Gamma(k) Gamma(|h|+1)).
PoissonPowerResult poisson_power_integral(double k, i64 h, double rho);

// Taylor coefficients a_n of the pullback g(w) = f(z(w)) (divided form), by an
// n_samples-point DFT on the circle |w| = sample_radius.
std::vector<Complex> disc_taylor_coeffs(const QExpansion& f,
                                        const DiscCenterFrame& frame,
                                        int n_coeffs, int n_samples,
                                        double sample_radius);

// Taylor data of the pulled-back forms g_i(w) = f_i(z(w)), held as the scaled
// coefficients c_n = a_n r_s^n (the raw circle-sampling DFT output, which
// keeps the round-off noise flat across n).
class BRhoEvaluator {
  public:
    BRhoEvaluator(const QExpansion& f1, const QExpansion& f2, DiscCenterFrame frame,
                  int n_coeffs = 96, int n_samples = 1024,
                  double sample_radius = 0.8);

    // B(rho) = sum_{n,m} a_n conj(b_m) rho^{2 max(n,m)} (1-rho^2)^k
    //          Gamma(k+|n-m|)/(Gamma(k) Gamma(|n-m|+1)) F(k, k+|n-m|; |n-m|+1; rho^2),
    // the analytic continuation of the angular average to complex rho.
    Complex operator()(Complex rho) const;

    const std::vector<Complex>& scaled_coeffs_1() const { return c1_; }
    const std::vector<Complex>& scaled_coeffs_2() const { return c2_; }
    double sample_radius() const { return r_s_; }
    double weight_k() const { return k_; }

  private:
    double k_;
    double r_s_;
    std::vector<Complex> c1_, c2_;
};

// Series evaluation of B(rho) with shift truncation H_max (Taylor order).
Complex B_rho(const QExpansion& f1, const QExpansion& f2,
              const DiscCenterFrame& frame, Complex rho, int H_max);

// Direct quadrature oracle for real rho:
//   (1/2pi) int g_1 conj(g_2) ((1-rho^2)/|1-rho e^{i theta}|^2)^k dtheta.
Complex B_rho_quadrature(const QExpansion& f1, const QExpansion& f2,
                         const DiscCenterFrame& frame, double rho);

struct HypBoundScan {
    double max_value = 0.0;
    double bound = 0.0; // 2^k
    i64 argmax_h = 0;
    double argmax_rho = 0.0;
};

// max over the grid of |F(k, h+k; h+1; rho^2) (1-rho^2)^{2k-1}|; contract <= 2^k.
HypBoundScan hyp_bound_property(double k, const std::vector<i64>& h_grid,
                                const std::vector<double>& rho_grid);

} // namespace halfint
