#pragma once
// The Harish-Chandra--Selberg transform chain k -> q -> g -> h (three-step and
// one-step Legendre routes), its inversion (Fourier + Abel, and Mehler-Fock),
// the Gaussian localizer pair, truncated automorphic kernels over Gamma_0(N),
// and the numerical kernel-pairing bound check.
//
// Conventions, pinned against each other by the route-agreement and roundtrip
// tests (the exponential pair k = e^{-au} <-> h = 4 sqrt(pi/a) e^{a/2} K_{it}(a/2)
// satisfies every line below):
//   q(v)  = 2 int_0^inf k(v + w^2) dw  = int_v^inf k(u) (u - v)^{-1/2} du
//   g(r)  = 2 q(sinh^2(r/2))
//   h(t)  = int_R g(r) e^{irt} dr = 2 int_0^inf g(r) cos(rt) dr
//   h(t)  = 4 pi int_0^inf k(u) P_{-1/2+it}(2u+1) du            (one step)
//   g(xi) = (1/pi) int_0^inf h(t) cos(t xi) dt
//   k(u)  = -(1/2 pi) int_{xi_u}^inf g'(xi) (sinh^2(xi/2) - u)^{-1/2} dxi,
//           xi_u = 2 arcsinh sqrt(u)                            (Abel)
//   k(u)  = (1/2 pi) int_0^inf P_{-1/2+it}(2u+1) h(t) t tanh(pi t) dt
//                                                               (Mehler-Fock)

#include <functional>
#include <vector>

#include "halfint/numeric.hpp"
#include "halfint/qexp.hpp"

namespace halfint {

using RealFn = std::function<double(double)>;

enum class PairProvenance { from_k, from_h, analytic_pair };

struct TransformPair {
    RealFn k_side; // point-pair kernel k(u), u >= 0
    RealFn q_side; // q(v)
    RealFn g_side; // g(r), even
    RealFn h_side; // h(t), even
    PairProvenance provenance = PairProvenance::analytic_pair;
};

// k -> (q, g, h): g is tabulated on a dense grid (cubic spline) so the h-side
// closure costs one quadrature, not three nested ones.  u_max = 0 auto-detects
// where |k| becomes negligible.
TransformPair forward_three_step(RealFn k, double u_max = 0.0);

// h(t) = 4 pi int_0^inf k(u) P_{-1/2+it}(2u+1) du.
double forward_single_step(const RealFn& k, double t, double u_max = 0.0);

struct InverseOptions {
    double xi_max = 6.0;  // g-support cutoff for the dense grid
    int grid_size = 0;    // 0 -> auto from xi_max and the detected t-decay
    double t_max = 0.0;   // 0 -> auto-detect where |h| becomes negligible
};

// h -> (g, g') on a dense grid -> q, and k by the Abel integral with the
// square-root endpoint singularity removed by the xi = xi_u + sigma^2
// substitution.
TransformPair inverse_transform(RealFn h, InverseOptions opt = {});

// The Legendre-route inverse for a single u (independent of inverse_transform).
double mehler_fock_k(const RealFn& h, double u, double t_max = 0.0);

// ---------------------------------------------------------------------------
// Gaussian localizer at frequency T:
//   g_T(xi) = 2 cos(T xi) e^{-pi xi^2}
//   h_T(t)  = e^{-(t-T)^2/(4 pi)} + e^{-(t+T)^2/(4 pi)}   (Fourier pair of g_T)
//   q_T(v)  = g_T(2 arcsinh sqrt v)/2
//   k_T(u)  = (1/pi) int_{xi_u}^inf (T sin(T xi) + 2 pi xi cos(T xi))
//             e^{-pi xi^2} (sinh^2(xi/2) - u)^{-1/2} dxi
// Note h_T(T) = 1 + e^{-T^2/pi}: the width follows from g_T, whose closed form
// anchors the pair (the two displays h_T(t) = e^{-pi (t +- T)^2} and g_T cannot
// both hold under h = int g e^{irt} dr; the g-side display wins the
// closed-vs-Fourier quadrature check).

struct LocalizerParams {
    double T = 1.0; // >= 1 for the regime the decay bound targets
};

TransformPair localizer(const LocalizerParams& params);

// ---------------------------------------------------------------------------
// Truncated automorphic kernel K(z, z') = sum over gamma in Gamma_0(N) mod +-1
// with d(z, gamma z') <= R of k(u(z, gamma z')).

struct AutomorphicKernelResult {
    double value = 0.0;
    double tail_bound = 0.0; // empirical shell estimate for the dropped orbit
    i64 terms = 0;           // orbit points inside the cutoff
};

AutomorphicKernelResult automorphic_kernel(Complex z, Complex z_prime,
                                           const TransformPair& pair, i64 N,
                                           double distance_cutoff);

// ---------------------------------------------------------------------------
// Kernel pairing  <f1 conj(f2) y^k, K(., z')>  evaluated in unfolded form
//   2 pi (y')^k int_0^{rho_max} B(rho) k(rho^2/(1-rho^2)) 4 rho (1-rho^2)^{-2} drho
// against the decay bound 64 M1 M2 T^{2k+1} e^{-pi T/2} e^{(3k-1)^2/(4 pi)} (1 + k/T).

struct PairingOptions {
    Complex z_prime{0.0, 1.0};
    double rho_max = 0.95;
    int n_coeffs = 700;
    int n_samples = 2048;
    double sample_radius = 0.97;
};

struct KernelPairingReport {
    double T = 0.0;
    double pairing = 0.0;        // unfolded <f1 conj(f2) y^k, K>
    double volume_pairing = 0.0; // volume(N) * pairing
    double bound = 0.0;
    double M1 = 0.0, M2 = 0.0;   // sup |f_i| y^{k/2} estimates
    double ratio = 0.0;          // volume_pairing / bound
    double rho_max = 0.0;
    double tail_estimate = 0.0;  // dropped rho in (rho_max, 1)
    double quad_error = 0.0;     // 15- vs 30-point composite difference
};

std::vector<KernelPairingReport> kernel_pairing_check(
    const QExpansion& f1, const QExpansion& f2, const std::vector<double>& T_list,
    i64 N, const PairingOptions& opt = {});

} // namespace halfint
