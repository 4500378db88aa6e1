#include "halfint/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "halfint/arith.hpp"
#include "halfint/geom.hpp"
#include "halfint/quadrature.hpp"
#include "halfint/special.hpp"

namespace halfint {

namespace {

// ---------------------------------------------------------------------------
// Natural cubic spline on an ascending grid; evaluates to 0 outside the grid
// (the tabulated transforms are compactly supported to working precision).

class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const size_t n = x_.size();
        if (n < 3 || y_.size() != n)
            throw std::invalid_argument("CubicSpline: need >= 3 matching nodes");
        std::vector<double> h(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            if (h[i] <= 0.0)
                throw std::invalid_argument("CubicSpline: grid must ascend");
        }
        // Second derivatives sigma: natural ends, tridiagonal (Thomas) solve.
        sigma_.assign(n, 0.0);
        std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
        diag[0] = 1.0;
        for (size_t i = 1; i + 1 < n; ++i) {
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            upper[i] = h[i];
            rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
        }
        diag[n - 1] = 1.0;
        // forward sweep (lower diagonal is h[i-1], zero in rows 0 and n-1)
        for (size_t i = 1; i + 1 < n; ++i) {
            double m = h[i - 1] / diag[i - 1];
            diag[i] -= m * upper[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        for (size_t i = n - 2; i >= 1; --i)
            sigma_[i] = (rhs[i] - upper[i] * sigma_[i + 1]) / diag[i];
    }

    double operator()(double q) const {
        if (q < x_.front() || q > x_.back()) return 0.0;
        size_t hi = (size_t)(std::upper_bound(x_.begin(), x_.end(), q) - x_.begin());
        if (hi == 0) hi = 1;
        if (hi >= x_.size()) hi = x_.size() - 1;
        size_t i = hi - 1;
        double hstep = x_[i + 1] - x_[i], d = q - x_[i];
        double b = (y_[i + 1] - y_[i]) / hstep - hstep * (2.0 * sigma_[i] + sigma_[i + 1]) / 6.0;
        return y_[i] + d * (b + d * (0.5 * sigma_[i] + d * (sigma_[i + 1] - sigma_[i]) / (6.0 * hstep)));
    }

  private:
    std::vector<double> x_, y_, sigma_;
};

// First x (marching geometrically from `start`) past which |f| stays below
// 1e-16 * (max seen + 1) for three consecutive samples.
double detect_decay_geometric(const RealFn& f, double start, double factor,
                              double cap) {
    double max_seen = std::abs(f(0.0));
    int quiet = 0;
    for (double x = start; x < cap; x *= factor) {
        double v = std::abs(f(x));
        max_seen = std::max(max_seen, v);
        if (v <= 1e-16 * (max_seen + 1.0)) {
            if (++quiet >= 3) return x;
        } else {
            quiet = 0;
        }
    }
    return cap;
}

// Abel inversion k(u) = -(1/2pi) int_{xi_u}^{xi_max} W(xi) (sinh^2(xi/2)-u)^{-1/2} dxi
// with W = g'.  The substitution xi = xi_u + sigma^2 plus the identity
// sinh^2(xi/2) - sinh^2(xi_u/2) = sinh(sigma^2/2) sinh((xi+xi_u)/2) removes
// the square-root endpoint singularity exactly.
double abel_k(const RealFn& W, double u, double xi_max) {
    if (u < 0.0) throw std::invalid_argument("abel_k: u >= 0 required");
    const double xi_u = 2.0 * std::asinh(std::sqrt(u));
    if (xi_u >= xi_max) return 0.0;
    const double sigma_max = std::sqrt(xi_max - xi_u);
    auto integrand = [&](double sig) {
        if (sig < 1e-12) {
            if (u < 1e-14) return 0.0; // integrand vanishes linearly at 0
            return -(1.0 / TWO_PI) * 2.0 * std::sqrt(2.0) * W(xi_u) /
                   std::sqrt(std::sinh(xi_u));
        }
        double xi = xi_u + sig * sig;
        double denom =
            std::sqrt(std::sinh(0.5 * sig * sig) * std::sinh(0.5 * (xi + xi_u)));
        return -(1.0 / TWO_PI) * 2.0 * sig * W(xi) / denom;
    };
    return integrate_real(integrand, 0.0, sigma_max, 1e-12);
}

} // namespace

// ---------------------------------------------------------------------------
// Forward transforms.

TransformPair forward_three_step(RealFn k, double u_max) {
    if (!k) throw std::invalid_argument("forward_three_step: empty k");
    if (u_max <= 0.0) u_max = detect_decay_geometric(k, 0.5, 1.4, 1e7);
    if (u_max >= 1e7)
        throw precision_error("forward_three_step: k does not decay within the u budget");
    const double um = u_max;
    RealFn kk = k; // shared copy for the closures

    auto q = [kk, um](double v) {
        if (v < 0.0) throw std::invalid_argument("q_side: v >= 0 required");
        if (v >= um) return 0.0;
        double wmax = std::sqrt(um - v);
        return 2.0 * integrate_real([&](double w) { return kk(v + w * w); }, 0.0,
                                    wmax, 1e-13);
    };

    // g support end: march xi additively until 2 q(sinh^2(xi/2)) is negligible.
    double g_max = std::abs(2.0 * q(0.0));
    double xi_end = 2.0 * std::asinh(std::sqrt(um));
    {
        int quiet = 0;
        for (double xi = 0.5; xi < 40.0; xi += 0.5) {
            double v = std::abs(2.0 * q(std::sinh(0.5 * xi) * std::sinh(0.5 * xi)));
            g_max = std::max(g_max, v);
            if (v <= 1e-16 * (g_max + 1.0)) {
                if (++quiet >= 3) { xi_end = xi; break; }
            } else {
                quiet = 0;
            }
        }
        xi_end = std::min(xi_end, 40.0);
    }

    const int n = std::max(800, std::min(4000, (int)(160.0 * xi_end)));
    std::vector<double> xs(n), gs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = xi_end * (double)i / (double)(n - 1);
        double sh = std::sinh(0.5 * xs[i]);
        gs[i] = 2.0 * q(sh * sh);
    }
    auto spline = std::make_shared<CubicSpline>(std::move(xs), std::move(gs));

    TransformPair pair;
    pair.provenance = PairProvenance::from_k;
    pair.k_side = kk;
    pair.q_side = q;
    pair.g_side = [spline](double r) { return (*spline)(std::abs(r)); };
    // Fourier side: evaluate g exactly through q inside the integrand (the
    // spline's O(dx^4) bias would otherwise cap h at ~1e-8 of g's scale).
    pair.h_side = [q, xi_end](double t) {
        return 2.0 * integrate_real(
                         [&](double r) {
                             double sh = std::sinh(0.5 * r);
                             return 2.0 * q(sh * sh) * std::cos(r * t);
                         },
                         0.0, xi_end, 1e-12);
    };
    return pair;
}

double forward_single_step(const RealFn& k, double t, double u_max) {
    if (!k) throw std::invalid_argument("forward_single_step: empty k");
    if (u_max <= 0.0) u_max = detect_decay_geometric(k, 0.5, 1.4, 1e7);
    if (u_max >= 1e7)
        throw precision_error("forward_single_step: k does not decay within the u budget");
    auto integrand = [&](double u) {
        return k(u) * legendre_p_on_axis(t, 2.0 * u + 1.0);
    };
    return 4.0 * PI * integrate_real(integrand, 0.0, u_max, 1e-11);
}

// ---------------------------------------------------------------------------
// Inverse transforms.

TransformPair inverse_transform(RealFn h, InverseOptions opt) {
    if (!h) throw std::invalid_argument("inverse_transform: empty h");
    if (!(opt.xi_max > 0.0))
        throw std::invalid_argument("inverse_transform: xi_max > 0 required");
    double t_max = opt.t_max;
    if (t_max <= 0.0) {
        t_max = detect_decay_geometric(h, 1.0, 1.3, 1e5);
        if (t_max >= 1e5)
            throw precision_error("inverse_transform: h does not decay within the t budget");
    }
    const int n =
        opt.grid_size > 0
            ? opt.grid_size
            : std::max(600, std::min(6000, (int)(opt.xi_max * (30.0 + 12.0 * t_max))));

    const double xi_max = opt.xi_max, tm = t_max;
    std::vector<double> xs(n), gv(n), gpv(n);
    for (int i = 0; i < n; ++i) {
        double xi = xi_max * (double)i / (double)(n - 1);
        xs[i] = xi;
        gv[i] = (1.0 / PI) * integrate_real(
                                 [&](double t) { return h(t) * std::cos(t * xi); },
                                 0.0, tm, 1e-12);
        gpv[i] = -(1.0 / PI) *
                 integrate_real(
                     [&](double t) { return t * h(t) * std::sin(t * xi); }, 0.0,
                     tm, 1e-12);
    }
    auto gs = std::make_shared<CubicSpline>(xs, gv);
    auto gps = std::make_shared<CubicSpline>(xs, gpv);

    TransformPair pair;
    pair.provenance = PairProvenance::from_h;
    pair.h_side = h;
    pair.g_side = [gs](double r) { return (*gs)(std::abs(r)); };
    pair.q_side = [gs, xi_max](double v) {
        if (v < 0.0) throw std::invalid_argument("q_side: v >= 0 required");
        double xi = 2.0 * std::asinh(std::sqrt(v));
        if (xi >= xi_max) return 0.0;
        return 0.5 * (*gs)(xi);
    };
    pair.k_side = [gps, xi_max](double u) {
        return abel_k([gps](double xi) { return (*gps)(xi); }, u, xi_max);
    };
    return pair;
}

double mehler_fock_k(const RealFn& h, double u, double t_max) {
    if (!h) throw std::invalid_argument("mehler_fock_k: empty h");
    if (u < 0.0) throw std::invalid_argument("mehler_fock_k: u >= 0 required");
    if (t_max <= 0.0) {
        t_max = detect_decay_geometric(h, 1.0, 1.3, 1e5);
        if (t_max >= 1e5)
            throw precision_error("mehler_fock_k: h does not decay within the t budget");
    }
    const double x = 2.0 * u + 1.0;
    auto integrand = [&](double t) {
        return legendre_p_on_axis(t, x) * h(t) * t * std::tanh(PI * t);
    };
    return integrate_real(integrand, 0.0, t_max, 1e-11) / TWO_PI;
}

// ---------------------------------------------------------------------------
// Localizer.

TransformPair localizer(const LocalizerParams& params) {
    const double T = params.T;
    if (!(T > 0.0)) throw std::invalid_argument("localizer: T > 0 required");
    const double xi_max = 5.0 + 0.05 * T;

    TransformPair pair;
    pair.provenance = PairProvenance::analytic_pair;
    pair.h_side = [T](double t) {
        double a = (t - T), b = (t + T);
        return std::exp(-a * a / (4.0 * PI)) + std::exp(-b * b / (4.0 * PI));
    };
    pair.g_side = [T](double xi) {
        return 2.0 * std::cos(T * xi) * std::exp(-PI * xi * xi);
    };
    pair.q_side = [T](double v) {
        if (v < 0.0) throw std::invalid_argument("q_side: v >= 0 required");
        double xi = 2.0 * std::asinh(std::sqrt(v));
        return std::cos(T * xi) * std::exp(-PI * xi * xi);
    };
    // g'(xi) = -2 (T sin(T xi) + 2 pi xi cos(T xi)) e^{-pi xi^2}, fed to the
    // Abel integral: k(u) = (1/pi) int_{xi_u}^inf (T sin + 2 pi xi cos) e^{-pi xi^2}
    // (sinh^2(xi/2) - u)^{-1/2} dxi.
    pair.k_side = [T, xi_max](double u) {
        auto gp = [T](double xi) {
            return -2.0 * (T * std::sin(T * xi) + TWO_PI * xi * std::cos(T * xi)) *
                   std::exp(-PI * xi * xi);
        };
        return abel_k(gp, u, xi_max);
    };
    return pair;
}

// ---------------------------------------------------------------------------
// Automorphic kernel over Gamma_0(N) mod +-1.

AutomorphicKernelResult automorphic_kernel(Complex z, Complex z_prime,
                                           const TransformPair& pair, i64 N,
                                           double distance_cutoff) {
    if (!pair.k_side) throw std::invalid_argument("automorphic_kernel: empty k side");
    if (N < 1) throw std::invalid_argument("automorphic_kernel: N >= 1");
    if (z.imag() <= 0.0 || z_prime.imag() <= 0.0)
        throw std::invalid_argument("automorphic_kernel: points need Im > 0");
    if (!(distance_cutoff > 0.0))
        throw std::invalid_argument("automorphic_kernel: cutoff > 0");

    const RealFn& k = pair.k_side;
    const double R = distance_cutoff;
    const double sh = std::sinh(0.5 * R);
    const double uR = sh * sh; // d(z,w) <= R <=> u(z,w) <= sinh^2(R/2)
    const double x = z.real(), y = z.imag();
    const double xp = z_prime.real(), yp = z_prime.imag();

    AutomorphicKernelResult res;

    // c = 0 classes: gamma z' = z' + b.
    {
        double w2 = 4.0 * y * yp * uR - (y - yp) * (y - yp);
        if (w2 >= 0.0) {
            double w = std::sqrt(w2);
            i64 blo = (i64)std::ceil(x - xp - w), bhi = (i64)std::floor(x - xp + w);
            for (i64 b = blo; b <= bhi; ++b) {
                double u = std::norm(z - (z_prime + Complex((double)b, 0.0))) /
                           (4.0 * y * yp);
                if (u <= uR) { res.value += k(u); ++res.terms; }
            }
        }
    }

    // c > 0, N | c: the class of (c,d) contributes the points p + t, t in Z,
    // with p = a0/c - 1/(c (c z' + d)) and Im = y'/|c z' + d|^2.  The vertical
    // window e^{-R} <= Im(gamma z')/y <= e^R bounds |c z' + d|^2 and hence c, d.
    const double Bcd = (yp / y) * std::exp(R);
    const i64 cmax = (i64)std::floor(std::sqrt(Bcd) / yp);
    for (i64 c = N; c <= cmax; c += N) {
        double D2 = Bcd - (double)c * (double)c * yp * yp;
        if (D2 < 0.0) continue;
        double D = std::sqrt(D2);
        i64 dlo = (i64)std::ceil(-(double)c * xp - D);
        i64 dhi = (i64)std::floor(-(double)c * xp + D);
        for (i64 d = dlo; d <= dhi; ++d) {
            i64 dm = ((d % c) + c) % c;
            if (gcd_ll(dm == 0 ? c : dm, c) != 1) continue; // gcd(c,d) = 1
            i64 a0 = (c == 1) ? 0 : mod_inverse(dm, c);
            Complex czd = Complex((double)c, 0.0) * z_prime + Complex((double)d, 0.0);
            double den = std::norm(czd);
            double y2 = yp / den;
            Complex p = Complex((double)a0 / (double)c, 0.0) -
                        Complex(1.0, 0.0) / (Complex((double)c, 0.0) * czd);
            double wt2 = 4.0 * y * y2 * uR - (y - y2) * (y - y2);
            if (wt2 < 0.0) continue;
            double wt = std::sqrt(wt2);
            double ctr = x - p.real();
            i64 tlo = (i64)std::ceil(ctr - wt), thi = (i64)std::floor(ctr + wt);
            for (i64 t = tlo; t <= thi; ++t) {
                double u = std::norm(z - (p + Complex((double)t, 0.0))) /
                           (4.0 * y * y2);
                if (u <= uR) { res.value += k(u); ++res.terms; }
            }
        }
    }

    // Empirical shell certificate for everything past the cutoff: hyperbolic
    // orbit counts grow linearly in u, so bound each dyadic u-shell by
    // kappa * width * (sampled max of |k| on the shell).  Validated by the
    // radius-doubling refinement test rather than by a proof.
    double kappa = std::max(8.0, 2.0 * (double)res.terms / std::max(uR, 1.0));
    double lo = uR;
    for (int shell = 0; shell < 60; ++shell) {
        double hi = 2.0 * lo;
        double env = 0.0;
        for (int j = 0; j <= 4; ++j)
            env = std::max(env, std::abs(k(lo + (hi - lo) * (double)j / 4.0)));
        double piece = kappa * (hi - lo) * env;
        res.tail_bound += piece;
        if (piece < 1e-250 && shell >= 3) break;
        lo = hi;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Kernel pairing check.

std::vector<KernelPairingReport> kernel_pairing_check(
    const QExpansion& f1, const QExpansion& f2, const std::vector<double>& T_list,
    i64 N, const PairingOptions& opt) {
    if (f1.two_k != f2.two_k)
        throw std::invalid_argument("kernel_pairing_check: forms must share the weight");
    if (!(opt.rho_max > 0.0 && opt.rho_max < 1.0))
        throw std::invalid_argument("kernel_pairing_check: 0 < rho_max < 1");
    const double kw = f1.k();
    const double yp = opt.z_prime.imag();

    BRhoEvaluator ev(f1, f2, DiscCenterFrame{opt.z_prime}, opt.n_coeffs,
                     opt.n_samples, opt.sample_radius);

    // Fixed composite panels: B is cached at every node once and reused for
    // each T; the 15- vs 30-point difference is the quadrature error report.
    std::vector<double> edges;
    for (double e : {0.0, 0.15, 0.3, 0.45, 0.6, 0.7, 0.8, 0.875})
        if (e < opt.rho_max) edges.push_back(e);
    edges.push_back(opt.rho_max);

    struct Node { double rho, w; Complex B; };
    std::vector<Node> n15, n30;
    for (size_t pnl = 0; pnl + 1 < edges.size(); ++pnl) {
        double a = edges[pnl], b = edges[pnl + 1];
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int rule : {15, 30}) {
            const auto& xs = gauss_nodes(rule);
            const auto& ws = gauss_weights(rule);
            for (int i = 0; i < rule; ++i) {
                Node nd;
                nd.rho = mid + half * xs[i];
                nd.w = half * ws[i];
                nd.B = ev(Complex(nd.rho, 0.0));
                (rule == 15 ? n15 : n30).push_back(nd);
            }
        }
    }

    double M1 = sup_norm_estimate(f1).value;
    double M2 = (&f1 == &f2) ? M1 : sup_norm_estimate(f2).value;

    std::vector<KernelPairingReport> reports;
    for (double T : T_list) {
        TransformPair loc = localizer({T});
        auto weight = [&](double rho) {
            double r2 = rho * rho;
            return loc.k_side(r2 / (1.0 - r2)) * 4.0 * rho /
                   ((1.0 - r2) * (1.0 - r2));
        };
        Complex I15(0.0, 0.0), I30(0.0, 0.0);
        for (const Node& nd : n15) I15 += nd.w * nd.B * weight(nd.rho);
        for (const Node& nd : n30) I30 += nd.w * nd.B * weight(nd.rho);

        KernelPairingReport r;
        r.T = T;
        r.rho_max = opt.rho_max;
        r.quad_error = std::abs(I30 - I15);
        r.pairing = TWO_PI * std::pow(yp, kw) * I30.real();
        r.M1 = M1;
        r.M2 = M2;
        r.volume_pairing = volume(N) * r.pairing;
        r.bound = 64.0 * M1 * M2 * std::pow(T, 2.0 * kw + 1.0) *
                  std::exp(-0.5 * PI * T) *
                  std::exp((3.0 * kw - 1.0) * (3.0 * kw - 1.0) / (4.0 * PI)) *
                  (1.0 + kw / T);
        // Dropped rho in (rho_max, 1): |B| <= M1 M2 (y')^{-k} for real rho, and
        // the localizer k vanishes numerically past its xi budget.
        double xi_cap = 5.0 + 0.05 * T;
        double u_kill = std::sinh(0.5 * xi_cap) * std::sinh(0.5 * xi_cap);
        double rho_kill = std::min(0.999999, std::sqrt(u_kill / (1.0 + u_kill)) + 1e-6);
        if (rho_kill > opt.rho_max) {
            double tail_int = integrate_real(
                [&](double rho) { return std::abs(weight(rho)); }, opt.rho_max,
                rho_kill, 1e-20);
            r.tail_estimate = TWO_PI * M1 * M2 * tail_int;
        }
        r.ratio = (r.bound > 0.0) ? r.volume_pairing / r.bound : 0.0;
        reports.push_back(r);
    }
    return reports;
}

} // namespace halfint
