// halfint: command-line driver for the half-integer weight twisted-L toolkit.
//
// Commands: scan, verify, coeffs, lvalue, amplify, shifted, selberg,
// geom-check, mfun.  Configuration is a single JSON document; command-line
// flags override individual fields.  CSV outputs carry '#' header comments,
// print every float with round-trip precision, and are byte-identical for
// identical config + seed.
//
// Exit codes: 0 success, 1 usage/input error, 2 precision failure,
// 3 verification-suite failure.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "halfint/amplifier.hpp"
#include "halfint/arith.hpp"
#include "halfint/chars.hpp"
#include "halfint/cutoff.hpp"
#include "halfint/geom.hpp"
#include "halfint/lfunc.hpp"
#include "halfint/numeric.hpp"
#include "halfint/qexp.hpp"
#include "halfint/quadrature.hpp"
#include "halfint/selberg.hpp"
#include "halfint/shifted.hpp"
#include "halfint/special.hpp"

using namespace halfint;
using nlohmann::json;

namespace {

std::string g17(double v) {
    char buf[48];
    snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

std::string cplx(Complex z) {
    return g17(z.real()) + (z.imag() < 0 ? " - " : " + ") +
           g17(std::abs(z.imag())) + "i";
}

bool is_prime_i64(i64 n) {
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

Complex parse_complex(const std::string& text) {
    // "re" or "re,im"
    auto comma = text.find(',');
    if (comma == std::string::npos) return Complex(std::stod(text), 0.0);
    return Complex(std::stod(text.substr(0, comma)),
                   std::stod(text.substr(comma + 1)));
}

// Resolve an eta-quotient string to an expansion.  The two shipped forms know
// their own level; anything else needs an explicit level declaration.
QExpansion load_form(const std::string& spec_text, i64 M, i64 level) {
    auto spec = EtaQuotientSpec::parse(spec_text);
    std::string canon = spec.to_string();
    if (level > 0) return expand_eta_quotient(spec, M, level);
    if (canon == "eta(8z)^3") return make_eta8_cubed(M);
    if (canon == "eta(24z)^1") return make_eta24(M);
    throw std::invalid_argument(
        "load_form: unknown level for \"" + canon +
        "\"; pass --level (only eta(8z)^3 and eta(24z) are built in)");
}

// --------------------------------------------------------------------------
// Sweep configuration: JSON document + flag overrides.

struct SweepConfig {
    std::string spec = "eta(8z)^3";
    i64 level = 0; // 0: resolved by load_form
    i64 q_min = 101;
    i64 q_max = 499;
    bool primes_only = true;
    std::string char_policy = "all-primitive"; // or "random-sample"
    int sample_size = 8;
    unsigned long long seed = 12345;
    i64 budget = 0; // coefficients; 0 = 2 sqrt(N) q_max (1 + 5%)
    double theta_constant = 7.0 / 64.0;
    int threads = 1;

    void validate() const {
        if (q_min < 1 || q_max < q_min)
            throw std::invalid_argument("config: need 1 <= q_min <= q_max");
        if (char_policy != "all-primitive" && char_policy != "random-sample")
            throw std::invalid_argument(
                "config: char_policy must be all-primitive or random-sample");
        if (sample_size < 1)
            throw std::invalid_argument("config: sample_size must be >= 1");
        if (threads < 1)
            throw std::invalid_argument("config: threads must be >= 1");
        if (theta_constant < 0.0 || theta_constant > 0.25)
            throw std::invalid_argument("config: theta_constant outside [0, 1/4]");
    }
};

SweepConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j = json::parse(in);
    SweepConfig c;
    if (j.contains("spec")) c.spec = j["spec"].get<std::string>();
    if (j.contains("level")) c.level = j["level"].get<i64>();
    if (j.contains("q_min")) c.q_min = j["q_min"].get<i64>();
    if (j.contains("q_max")) c.q_max = j["q_max"].get<i64>();
    if (j.contains("primes_only")) c.primes_only = j["primes_only"].get<bool>();
    if (j.contains("char_policy")) c.char_policy = j["char_policy"].get<std::string>();
    if (j.contains("sample_size")) c.sample_size = j["sample_size"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<unsigned long long>();
    if (j.contains("budget")) c.budget = j["budget"].get<i64>();
    if (j.contains("theta_constant")) c.theta_constant = j["theta_constant"].get<double>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    return c;
}

// --------------------------------------------------------------------------
// scan: the headline Q-sweep of central twisted L-values.

struct ScanRow {
    i64 Q = 0;
    i64 chi_index = 0;
    double abs_L = 0.0;
    Complex L_star;
    double trunc = 0.0;
};

struct ScanCell {
    std::vector<ScanRow> rows;
    std::string error;
};

int cmd_scan(const SweepConfig& cfg, const std::string& out_path) {
    cfg.validate();

    std::vector<i64> Qs;
    for (i64 Q = cfg.q_min; Q <= cfg.q_max; ++Q) {
        if (cfg.primes_only && !is_prime_i64(Q)) continue;
        Qs.push_back(Q);
    }

    QExpansion f;
    Complex eps(0.0, 0.0);
    i64 budget = cfg.budget;
    if (!Qs.empty()) {
        // peek at the level to derive the default coefficient budget
        QExpansion probe = load_form(cfg.spec, 16, cfg.level);
        i64 need = (i64)std::ceil(2.0 * std::sqrt((double)probe.N) *
                                  (double)cfg.q_max * 1.05);
        // the split-point tail certificate needs 2 pi M y0 >= 30 at
        // y0 = 1/(sqrt(N) q); derive defaults from that stronger requirement
        i64 certified = (i64)std::ceil(std::sqrt((double)probe.N) *
                                       (double)cfg.q_max * 30.0 / TWO_PI * 1.02);
        if (budget == 0) budget = std::max(need, certified);
        if (budget < need)
            throw std::invalid_argument(
                "config: budget " + std::to_string(budget) +
                " below the required " + std::to_string(need) +
                " coefficients for q_max " + std::to_string(cfg.q_max));
        f = load_form(cfg.spec, budget, cfg.level);
        eps = fricke_eigenvalue(f).eps;
    }

    const Complex s_half(0.5, 0.0);
    const double sp = 0.5 + 0.5 * (f.k() - 1.0);
    std::vector<ScanCell> cells(Qs.size());

    auto work = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            i64 Q = Qs[i];
            try {
                auto entries = sweep_primitive_twists(f, s_half, Q, eps, false);
                double pref = std::pow(std::sqrt((double)f.N) * (double)Q, 0.5) *
                              std::pow(TWO_PI, -sp) * std::tgamma(sp);
                std::vector<ScanRow> rows;
                rows.reserve(entries.size());
                for (const auto& e : entries)
                    rows.push_back({Q, e.chi_index, std::abs(e.result.value) / pref,
                                    e.result.value, e.result.truncation_error});
                if (cfg.char_policy == "random-sample" &&
                    (int)rows.size() > cfg.sample_size) {
                    // per-Q deterministic subsample, independent of threading
                    std::mt19937_64 rng(cfg.seed ^
                                        (0x9e3779b97f4a7c15ULL * (unsigned long long)Q));
                    std::shuffle(rows.begin(), rows.end(), rng);
                    rows.resize((size_t)cfg.sample_size);
                    std::sort(rows.begin(), rows.end(),
                              [](const ScanRow& a, const ScanRow& b) {
                                  return a.chi_index < b.chi_index;
                              });
                }
                cells[i].rows = std::move(rows);
            } catch (const std::exception& e) {
                cells[i].error = e.what();
            }
        }
    };

    int nthreads = std::max(1, std::min<int>(cfg.threads, (int)Qs.size()));
    if (nthreads <= 1) {
        work(0, Qs.size());
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (Qs.size() + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            size_t lo = (size_t)t * chunk, hi = std::min(Qs.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // CSV (merged in Q order regardless of completion order)
    std::ostringstream csv;
    csv << "# halfint scan: central twisted L-values across prime-power moduli\n";
    csv << "# spec: " << cfg.spec << "\n";
    csv << "# q_min: " << cfg.q_min << "  q_max: " << cfg.q_max
        << "  primes_only: " << (cfg.primes_only ? 1 : 0) << "\n";
    csv << "# char_policy: " << cfg.char_policy
        << "  sample_size: " << cfg.sample_size << "  seed: " << cfg.seed << "\n";
    csv << "# budget: " << budget << "  threads: " << cfg.threads << "\n";
    csv << "# columns: Q, chi_index, abs_L_half, re_L_star, im_L_star, "
           "truncation_error\n";
    size_t n_rows = 0, n_fail = 0;
    std::vector<double> logQ, logM;
    for (size_t i = 0; i < Qs.size(); ++i) {
        if (!cells[i].error.empty()) {
            csv << "# Q=" << Qs[i] << " error: " << cells[i].error << "\n";
            ++n_fail;
            continue;
        }
        double best = 0.0;
        for (const auto& r : cells[i].rows) {
            csv << r.Q << "," << r.chi_index << "," << g17(r.abs_L) << ","
                << g17(r.L_star.real()) << "," << g17(r.L_star.imag()) << ","
                << g17(r.trunc) << "\n";
            best = std::max(best, r.abs_L);
            ++n_rows;
        }
        if (best > 0.0) {
            logQ.push_back(std::log((double)Qs[i]));
            logM.push_back(std::log(best));
        }
    }

    if (out_path == "-") {
        fputs(csv.str().c_str(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << csv.str();
    }

    printf("scan: %zu moduli, %zu rows, %zu failures%s%s\n", Qs.size(), n_rows,
           n_fail, out_path == "-" ? "" : ", csv: ",
           out_path == "-" ? "" : out_path.c_str());
    printf("seed: %llu\n", cfg.seed);
    if (logQ.size() >= 2) {
        double n = (double)logQ.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < logQ.size(); ++i) {
            sx += logQ[i];
            sy += logM[i];
            sxx += logQ[i] * logQ[i];
            sxy += logQ[i] * logM[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        printf("fitted exponent of max |L(1/2)| vs Q: %s\n", g17(slope).c_str());
        printf("reference exponents: convexity 0.5, target 3/8 + theta/4 = %.5f "
               "(theta = %s)\n",
               0.375 + cfg.theta_constant / 4.0, g17(cfg.theta_constant).c_str());
    } else {
        printf("fit undefined (need at least two moduli with values)\n");
    }
    return 0;
}

// --------------------------------------------------------------------------
// verify: fast invariant suites, machine-readable pass/fail lines.

struct CheckOutcome {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tol = 0.0;
    std::string note;
};

class SuiteRunner {
  public:
    void check(const std::string& name, double tol,
               const std::function<double()>& residual_fn) {
        CheckOutcome o;
        o.name = name;
        o.tol = tol;
        try {
            o.residual = residual_fn();
            o.pass = o.residual <= tol;
        } catch (const std::exception& e) {
            o.pass = false;
            o.residual = INFINITY;
            o.note = e.what();
        }
        printf("%s %s residual=%.3e tol=%.1e%s%s\n", o.name.c_str(),
               o.pass ? "PASS" : "FAIL", o.residual, o.tol,
               o.note.empty() ? "" : " note=", o.note.c_str());
        fflush(stdout);
        outcomes.push_back(std::move(o));
    }

    int failures() const {
        int n = 0;
        for (const auto& o : outcomes)
            if (!o.pass) ++n;
        return n;
    }

    std::vector<CheckOutcome> outcomes;
};

void suite_identities(SuiteRunner& R) {
    R.check("identities.theta_multiplier", 1e-10, [] {
        const IntegerMatrix2x2 gs[] = {
            {1, 1, 0, 1}, {1, 0, 4, 1}, {5, 1, 4, 1}, {3, 1, 8, 3}, {7, 2, 24, 7}};
        const Complex zs[] = {{0.3, 0.8}, {-0.2, 1.3}, {0.05, 0.55}};
        double worst = 0.0;
        for (const auto& g : gs)
            for (Complex z : zs)
                worst = std::max(worst, std::abs(jacobi_theta(g.act(z)) -
                                                 cocycle_j(g, z) * jacobi_theta(z)));
        return worst;
    });
    R.check("identities.character_parseval", 1e-10, [] {
        std::mt19937 rng(99u);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst = 0.0;
        for (i64 Q : {5, 12}) {
            size_t n = enumerate_characters(Q).size();
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<Complex> F(n);
                for (auto& v : F) v = Complex(gauss(rng), gauss(rng));
                auto pr = parseval_check(Q, F);
                worst = std::max(worst,
                                 std::abs(pr.lhs - pr.rhs) / std::max(1.0, pr.lhs));
            }
        }
        return worst;
    });
    R.check("identities.gauss_separability", 1e-10, [] {
        double worst = 0.0;
        for (const auto& chi : primitive_characters(7)) {
            Complex g1 = gauss_sum(1, chi);
            auto chibar = chi.conjugate();
            for (i64 n = 0; n < 7; ++n)
                worst = std::max(worst, std::abs(gauss_sum(n, chi) - chibar(n) * g1));
        }
        return worst;
    });
    R.check("identities.congruence_split", 1e-12, [] {
        auto f = make_eta8_cubed(420);
        SmoothCutoff H;
        double worst = 0.0;
        for (i64 Q : {7, 11})
            for (auto [l1, l2] : {std::pair<i64, i64>{1, 1}, {3, 5}}) {
                auto s = shifted_split_sums(f, H, 200.0, l1, l2, Q);
                Complex uns = congruence_sum_unsplit(f, H, 200.0, l1, l2, Q);
                worst = std::max(worst, std::abs(s.S1 + s.S2 + s.S3 - uns) /
                                            std::max(1.0, std::abs(uns)));
            }
        return worst;
    });
    R.check("identities.amplifier_inequality", 0.0, [] {
        auto f = make_eta8_cubed(420);
        SmoothCutoff H;
        auto chi = primitive_characters(11)[0];
        auto rep = amplification_inequality_check(f, chi, H, 200.0, 3.0);
        // residual: how far the two one-sided inequalities dip below zero
        double dip = std::max(0.0, -(rep.slack + 1e-9 * rep.scale));
        dip = std::max(dip, -(rep.single_slack + 1e-9 * rep.scale));
        return std::max(0.0, dip);
    });
}

void suite_lvalues(SuiteRunner& R) {
    auto f = make_eta8_cubed(2500);
    Complex eps = fricke_eigenvalue(f).eps;
    R.check("lvalues.split_point_independence", 1e-9, [&] {
        double worst = 0.0;
        double y0 = default_split_point(f, 5);
        Complex a = completed_L_additive(f, Complex(0.5, 0.0), 1, 5, y0, eps).value;
        Complex b =
            completed_L_additive(f, Complex(0.5, 0.0), 1, 5, 2.0 * y0, eps).value;
        worst = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
        return worst;
    });
    R.check("lvalues.dirichlet_series_s3", 1e-8, [&] {
        const Complex s(3.0, 0.0);
        const Complex sp = s + Complex(0.5 * (f.k() - 1.0), 0.0);
        double worst = 0.0;
        for (i64 Q : {i64(1), i64(5)}) {
            i64 u = Q == 1 ? 0 : 1;
            Complex series = 0;
            for (const auto& [n, an] : f.support)
                series += (double)an * unit_e((double)(u * (n % Q)) / (double)Q) *
                          std::exp(-sp * std::log((double)n));
            series *= std::exp(s * std::log(std::sqrt((double)f.N) * (double)Q)) *
                      std::exp(-sp * std::log(TWO_PI)) * gamma_c(sp);
            Complex got =
                completed_L_additive(f, s, u, Q, default_split_point(f, Q), eps)
                    .value;
            worst = std::max(worst, std::abs(got - series) / std::abs(series));
        }
        return worst;
    });
    R.check("lvalues.additive_root_modulus", 1e-6, [&] {
        double worst = 0.0;
        for (i64 Q : {i64(5), i64(7)})
            for (i64 u : {i64(1), i64(2)})
                worst = std::max(
                    worst, std::abs(std::abs(additive_root_number(
                                        f, Complex(0.5, 0.0), u, Q, eps)) -
                                    1.0));
        return worst;
    });
    R.check("lvalues.multiplicative_root_modulus", 1e-6, [&] {
        auto chi = primitive_characters(5)[0];
        auto res = completed_L_multiplicative(f, Complex(0.5, 0.0), chi, eps, true);
        if (!res.empirical_root_number)
            throw std::runtime_error("root number not computed");
        return std::abs(std::abs(*res.empirical_root_number) - 1.0);
    });
}

void suite_special(SuiteRunner& R) {
    R.check("special.mfun_three_methods", 1e-6, [] {
        double worst = 0.0;
        for (Complex s : {Complex(2, 0), Complex(2, 2)})
            for (Complex t : {Complex(0, 0), Complex(1, 0)})
                for (double delta : {0.1, 0.01}) {
                    MFunctionParams p{s, t, delta};
                    Complex q = m_function(p, MMethod::quadrature);
                    Complex hf = m_function(p, MMethod::hypergeometric_far);
                    Complex hn = m_function(p, MMethod::hypergeometric_near);
                    double scale = std::max({std::abs(q), std::abs(hf), std::abs(hn)});
                    worst = std::max(worst, std::max(std::abs(q - hf),
                                                     std::abs(q - hn)) / scale);
                }
        return worst;
    });
    R.check("special.mfun_delta_limit", 0.0, [] {
        Complex s0(0.6, 0.0), t0(0.5, 0.0);
        Complex closed = m_function_delta0(s0, t0);
        double e2 = std::abs(m_function({s0, t0, 1e-2}, MMethod::quadrature) - closed);
        double e3 = std::abs(m_function({s0, t0, 1e-3}, MMethod::quadrature) - closed);
        bool ok = e3 < e2 && e3 < 0.05 * std::abs(closed);
        return ok ? 0.0 : e3;
    });
    R.check("special.mfun_residue_probe", 1e-3, [] {
        Complex t1(1.0, 0.0);
        Complex h(1e-4, 0.0);
        Complex probe = h * m_function({Complex(0.5, 1.0) + h, t1, 1e-3},
                                       MMethod::hypergeometric_near);
        Complex res = m_residue(t1, 0);
        return std::abs(probe - res) / std::abs(res);
    });
    R.check("special.barnes_contour", 1e-8, [] {
        double worst = 0.0;
        for (Complex z : {Complex(1.2, 0), Complex(2.5, 0)})
            for (double t : {0.5, 2.0}) {
                Complex target = std::exp(-z * std::log(1.0 + t));
                worst = std::max(worst, std::abs(barnes_beta_integral(
                                            z, t, 0.5 * z.real()) -
                                                 target));
            }
        return worst;
    });
}

void suite_geometry(SuiteRunner& R) {
    R.check("geometry.poisson_power", 1e-8, [] {
        double worst = 0.0;
        for (double k : {0.75, 1.5})
            for (i64 h : {i64(0), i64(1), i64(5)})
                for (double rho : {0.3, 0.7}) {
                    auto r = poisson_power_integral(k, h, rho);
                    worst = std::max(worst, std::abs(r.quadrature - r.closed_form));
                }
        return worst;
    });
    R.check("geometry.b_rho_series_vs_quadrature", 1e-6, [] {
        auto f = make_eta8_cubed(500);
        DiscCenterFrame frame{Complex(0, 1)};
        Complex series = B_rho(f, f, frame, Complex(0.4, 0.0), 72);
        Complex quad = B_rho_quadrature(f, f, frame, 0.4);
        return std::abs(series - quad) / std::max(1.0, std::abs(quad));
    });
    R.check("geometry.hypergeometric_envelope", 0.0, [] {
        std::vector<i64> hs{0, 1, 2, 5, 10, 25, 60, 100};
        std::vector<double> rhos;
        for (double r = 0.0; r <= 0.99; r += 0.03) rhos.push_back(r);
        auto scan = hyp_bound_property(1.5, hs, rhos);
        return std::max(0.0, scan.max_value - scan.bound * (1.0 + 1e-9));
    });
    R.check("geometry.ys_pullback", 1e-11, [] {
        DiscCenterFrame frame{Complex(0.1, 1.0)};
        std::vector<Complex> grid;
        for (double r : {0.0, 0.3, 0.7, 0.95})
            for (int j = 0; j < 6; ++j)
                grid.push_back(std::polar(r, j * PI / 3.0));
        return ys_transform_check(frame, 1.0, grid);
    });
}

void suite_selberg(SuiteRunner& R) {
    R.check("selberg.localizer_fourier", 1e-9, [] {
        auto loc = localizer({2.0});
        double worst = 0.0;
        for (double xi : {0.0, 0.5, 1.0}) {
            double fourier = integrate_real([&](double t) { return loc.h_side(t) *
                                                                   std::cos(t * xi); },
                                            0.0, 28.0, 1e-12) /
                             PI;
            worst = std::max(worst, std::abs(fourier - loc.g_side(xi)));
        }
        return worst;
    });
    R.check("selberg.inverse_roundtrip", 1e-6, [] {
        auto loc = localizer({2.0});
        auto inv = inverse_transform(loc.h_side);
        double worst = 0.0;
        for (double xi : {0.0, 0.8})
            worst = std::max(worst, std::abs(inv.g_side(xi) - loc.g_side(xi)));
        for (double u : {0.0, 0.5})
            worst = std::max(worst, std::abs(inv.k_side(u) - loc.k_side(u)));
        return worst;
    });
    R.check("selberg.route_agreement", 1e-6, [] {
        auto k_exp = [](double u) { return std::exp(-u); };
        auto pair = forward_three_step(k_exp);
        double worst = 0.0;
        for (double t : {0.0, 1.0})
            worst = std::max(worst,
                             std::abs(pair.h_side(t) - forward_single_step(k_exp, t)));
        return worst;
    });
    R.check("selberg.kernel_invariance", 1e-8, [] {
        auto loc = localizer({3.0});
        Complex z(0.31, 0.8), zp(0.2, 1.1);
        IntegerMatrix2x2 g{65, 1, 64, 1};
        auto base = automorphic_kernel(z, zp, loc, 64, 5.0);
        auto moved = automorphic_kernel(g.act(z), zp, loc, 64, 5.0);
        return std::abs(base.value - moved.value) /
               std::max(1.0, std::abs(base.value));
    });
}

void suite_shifted(SuiteRunner& R) {
    R.check("shifted.d_series_closed", 1e-12, [] {
        auto f = make_eta8_cubed(300);
        Complex s(2.2, 0.0);
        Complex d8 = D_series(f, f, s, 8, /*tail_tol=*/1.0).value;   // only 9 - 1 = 8: a(9) a(1) = -3
        Complex d16 = D_series(f, f, s, 16, /*tail_tol=*/1.0).value; // only 25 - 9 = 16: 5 (-3) 9^{-s-1/2}
        double w1 = std::abs(d8 - Complex(-3.0, 0.0));
        double w2 =
            std::abs(d16 - Complex(-15.0, 0.0) * std::pow(9.0, -(2.2 + 0.5)));
        return std::max(w1, w2);
    });
    R.check("shifted.z_solution_set", 0.0, [] {
        auto f = make_eta8_cubed(200);
        auto sols = z_solutions(f, 11, 1, 1, 200, 50);
        bool ok = sols.size() == 1 && sols[0].m1 == 169 && sols[0].m2 == 81 &&
                  sols[0].h == 8;
        return ok ? 0.0 : 1.0;
    });
    R.check("shifted.dilation_compatibility", 1e-8, [] {
        auto f = make_eta8_cubed(400);
        auto rep = two_z_relation_check(f, Complex(2.5, 0), Complex(2.5, 0), 11, 3, 5);
        double scale = std::max(1.0, std::abs(rep.z_normalized));
        double fdev = std::abs(rep.factor - std::pow(15.0, 0.25));
        return std::max(fdev, rep.abs_diff / scale);
    });
    R.check("shifted.gamma_factor", 1e-12, [] {
        Complex got = gamma_factor_G(Complex(2.3, 0), Complex(0.7, 0), 1.5);
        double closed = 0.5 * std::pow(4.0 * PI, 1.5) * std::tgamma(2.0) *
                        std::tgamma(1.6) * std::tgamma(-1.3) /
                        (std::tgamma(0.7) * std::tgamma(0.3) * std::tgamma(2.8));
        double w1 = std::abs(got - Complex(closed, 0.0)) / std::abs(closed);
        Complex sym = gamma_factor_G(Complex(2.3, 0), Complex(0.3, 0), 1.5);
        double w2 = std::abs(got - sym) / std::abs(closed);
        return std::max(w1, w2);
    });
    R.check("shifted.eisenstein_constant_term", 1e-5, [] {
        auto got = eisenstein_rho(12, 3, Complex(1.6, 0.0), 0, 20000);
        Complex closed = eisenstein_rho_closed(12, 3, Complex(1.6, 0.0));
        double dev = std::abs(got.value - closed);
        return std::max(0.0, dev - got.tail_bound);
    });
    R.check("shifted.zeta_qa_definitional", 1e-6, [] {
        Complex s(2.5, 0.0), u(-0.5, 0.3);
        auto got = zeta_Q_a(12, 3, s, u, 11, 10);
        Complex hexp = s + u - 0.5;
        Complex direct = 0;
        for (i64 h = 1; h <= 10; ++h) {
            auto rho = eisenstein_rho(12, 3, Complex(1.0, 0.0) - u, -h * 11, 5000);
            direct += rho.value * std::exp(-hexp * std::log((double)(h * 11)));
        }
        direct *= riemann_zeta(Complex(2.0, 0.0) - 2.0 * u);
        return std::abs(got.value - direct) / std::max(1.0, std::abs(direct));
    });
    R.check("shifted.triple_mellin_toy", 1e-6, [] {
        QExpansion toy;
        toy.two_k = 3;
        toy.N = 4;
        toy.M = 6;
        toy.a = {0, 0, 0, 0, 0, 1, 0};
        toy.spec_string = "toy:a(5)=1";
        toy.rebuild_support();
        auto rep = triple_mellin_inner_check(toy, Complex(2.5, 0), Complex(2.5, 0),
                                             10, 3, 1, 10, 2.0, 40.0);
        return std::max(0.0, rep.abs_diff - rep.contour_tail);
    });
}

int cmd_verify(const std::string& suite) {
    SuiteRunner R;
    bool known = false;
    if (suite == "identities" || suite == "all") { suite_identities(R); known = true; }
    if (suite == "lvalues" || suite == "all") { suite_lvalues(R); known = true; }
    if (suite == "special" || suite == "all") { suite_special(R); known = true; }
    if (suite == "geometry" || suite == "all") { suite_geometry(R); known = true; }
    if (suite == "selberg" || suite == "all") { suite_selberg(R); known = true; }
    if (suite == "shifted" || suite == "all") { suite_shifted(R); known = true; }
    if (!known)
        throw std::invalid_argument(
            "verify: unknown suite \"" + suite +
            "\" (identities, lvalues, special, geometry, selberg, shifted, all)");
    int fails = R.failures();
    printf("suite %s: %zu/%zu passed\n", suite.c_str(),
           R.outcomes.size() - (size_t)fails, R.outcomes.size());
    return fails == 0 ? 0 : 3;
}

// --------------------------------------------------------------------------
// coeffs / lvalue / amplify / shifted / selberg / geom-check / mfun

int cmd_coeffs(const std::string& spec, i64 M, i64 level,
               const std::string& out_path, const std::string& cache_path,
               const std::string& load_path) {
    QExpansion f;
    if (!load_path.empty()) {
        f = read_coefficient_cache(load_path);
    } else {
        f = load_form(spec, M, level);
    }
    if (!cache_path.empty()) write_coefficient_cache(f, cache_path);

    std::ostringstream csv;
    csv << "# halfint coeffs\n";
    csv << "# spec: " << f.spec_string << "\n";
    csv << "# two_k: " << f.two_k << "  level: " << f.N << "  M: " << f.M << "\n";
    csv << "# columns: n, a_n   (nonzero coefficients only)\n";
    for (const auto& [n, an] : f.support) csv << n << "," << an << "\n";
    if (out_path == "-") {
        fputs(csv.str().c_str(), stdout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << csv.str();
        printf("coeffs: %zu nonzero terms up to %lld, csv: %s\n", f.support.size(),
               (long long)f.M, out_path.c_str());
    }
    return 0;
}

int cmd_lvalue(const std::string& spec, i64 level, i64 budget,
               const std::string& s_text, i64 Q, i64 u, i64 chi_index, double y0,
               bool with_root) {
    Complex s = parse_complex(s_text);
    if (budget == 0) {
        QExpansion probe = load_form(spec, 16, level);
        budget = std::max<i64>(
            600,
            (i64)std::ceil(2.0 * std::sqrt((double)probe.N) * (double)Q * 1.05) + 16);
    }
    QExpansion f = load_form(spec, budget, level);
    Complex eps = fricke_eigenvalue(f).eps;

    if (chi_index >= 0) {
        auto prim = primitive_characters(Q);
        if (prim.empty())
            throw std::invalid_argument("lvalue: no primitive characters mod " +
                                        std::to_string(Q));
        if (chi_index >= (i64)prim.size())
            throw std::invalid_argument(
                "lvalue: chi index out of range (have " +
                std::to_string(prim.size()) + " primitive characters)");
        const auto& chi = prim[(size_t)chi_index];
        auto res = completed_L_multiplicative(f, s, chi, eps, with_root);
        printf("completed L*(s, f, chi) = %s\n", cplx(res.value).c_str());
        printf("s = %s, Q = %lld, chi_index = %lld (order %lld)\n",
               cplx(res.s).c_str(), (long long)Q, (long long)chi_index,
               (long long)chi.order());
        printf("y0 = %s, truncation_error = %s\n", g17(res.y0).c_str(),
               g17(res.truncation_error).c_str());
        if (res.empirical_root_number)
            printf("empirical root number = %s (modulus %s)\n",
                   cplx(*res.empirical_root_number).c_str(),
                   g17(std::abs(*res.empirical_root_number)).c_str());
        if (s == Complex(0.5, 0.0))
            printf("central L(1/2, f, chi) = %s\n",
                   cplx(central_value(f, chi, eps)).c_str());
    } else {
        if (y0 == 0.0) y0 = default_split_point(f, Q);
        auto res = completed_L_additive(f, s, u, Q, y0, eps);
        printf("completed L*(s, f, u/Q) = %s\n", cplx(res.value).c_str());
        printf("s = %s, u/Q = %lld/%lld\n", cplx(res.s).c_str(), (long long)u,
               (long long)Q);
        printf("y0 = %s, truncation_error = %s\n", g17(res.y0).c_str(),
               g17(res.truncation_error).c_str());
        if (with_root) {
            Complex ratio = additive_root_number(f, s, u, Q, eps);
            printf("functional-equation ratio = %s (modulus %s)\n",
                   cplx(ratio).c_str(), g17(std::abs(ratio)).c_str());
        }
    }
    return 0;
}

int cmd_amplify(const std::string& spec, i64 level, i64 budget, double X,
                double L, i64 Q, i64 chi_index) {
    if (budget == 0) budget = (i64)std::ceil(2.0 * X) + 20;
    QExpansion f = load_form(spec, budget, level);
    auto prim = primitive_characters(Q);
    if (prim.empty() || chi_index < 0 || chi_index >= (i64)prim.size())
        throw std::invalid_argument("amplify: bad chi index for modulus " +
                                    std::to_string(Q));
    SmoothCutoff H;
    auto rep = amplification_inequality_check(f, prim[(size_t)chi_index], H, X, L);
    printf("amplified sum S = %s\n", g17(rep.S).c_str());
    printf("rhs (statement form) = %s\n", cplx(rep.rhs_statement).c_str());
    printf("rhs (proof form)     = %s\n", cplx(rep.rhs_proof).c_str());
    printf("slack = %s  (scale %s)\n", g17(rep.slack).c_str(),
           g17(rep.scale).c_str());
    printf("single-term lower bound = %s, slack = %s\n",
           g17(rep.single_term).c_str(), g17(rep.single_slack).c_str());
    std::string plist;
    for (i64 p : rep.primes) plist += (plist.empty() ? "" : " ") + std::to_string(p);
    printf("amplifier primes: %s\n", plist.c_str());
    return 0;
}

int cmd_shifted(const std::string& mode, const std::string& spec, i64 level,
                i64 budget, const std::string& s_text, const std::string& w_text,
                i64 h, double delta, i64 Q, i64 l1, i64 l2, i64 m_cap,
                double gamma_abscissa, double V) {
    Complex s = parse_complex(s_text), w = parse_complex(w_text);
    if (mode == "d") {
        QExpansion f = load_form(spec, budget == 0 ? 2000 : budget, level);
        // report the tail certificate rather than gating on it
        auto val = D_series_delta(f, f, s, h, delta, /*tail_tol=*/INFINITY);
        printf("D(s; h = %lld; delta = %s) = %s\n", (long long)h,
               g17(delta).c_str(), cplx(val.value).c_str());
        printf("tail_bound = %s\n", g17(val.tail_bound).c_str());
        return 0;
    }
    if (mode == "z") {
        QExpansion f = load_form(spec, budget == 0 ? 600 : budget, level);
        auto z = Z_Q_bruteforce(f, s, w, Q, l1, l2);
        printf("Z_Q(s, w) = %s\n", cplx(z.value).c_str());
        printf("solutions = %lld (m2_cap %lld, h_cap %lld), tail_bound = %s\n",
               (long long)z.solution_count, (long long)z.m2_cap,
               (long long)z.h_cap, g17(z.tail_bound).c_str());
        auto rel = two_z_relation_check(f, s, w, Q, l1, l2);
        printf("dilation factor (l1 l2)^{(k-1)/2} = %s, cross-check diff = %s\n",
               g17(rel.factor).c_str(), g17(rel.abs_diff).c_str());
        return 0;
    }
    if (mode == "triple") {
        QExpansion f = load_form(spec, budget == 0 ? 600 : budget, level);
        auto rep = triple_mellin_inner_check(f, s, w, Q, l1, l2, m_cap,
                                             gamma_abscissa, V);
        printf("contour side = %s\n", cplx(rep.contour_side).c_str());
        printf("direct side  = %s\n", cplx(rep.direct_side).c_str());
        printf("abs_diff = %s, contour_tail = %s, solutions = %lld\n",
               g17(rep.abs_diff).c_str(), g17(rep.contour_tail).c_str(),
               (long long)rep.solution_count);
        return 0;
    }
    throw std::invalid_argument("shifted: mode must be d, z, or triple");
}

int cmd_selberg(const std::string& mode, double T, double zx, double zy,
                double zpx, double zpy, i64 N, double R, int table) {
    auto loc = localizer({T});
    if (mode == "localizer") {
        printf("localizer at T = %s\n", g17(T).c_str());
        printf("g(0) = %s, h(T) = %s\n", g17(loc.g_side(0.0)).c_str(),
               g17(loc.h_side(T)).c_str());
        double fourier =
            integrate_real([&](double t) { return loc.h_side(t) * std::cos(0.5 * t); },
                           0.0, T + 26.0, 1e-12) /
            PI;
        printf("g(0.5) closed vs Fourier residual = %s\n",
               g17(std::abs(fourier - loc.g_side(0.5))).c_str());
        double rt = std::abs(forward_single_step(loc.k_side, T,
                                                 std::pow(std::sinh(0.5 * (5.0 + 0.05 * T)), 2.0) + 2.0) -
                             loc.h_side(T));
        printf("k -> h roundtrip residual at t = T: %s\n", g17(rt).c_str());
        if (table > 0) {
            printf("# columns: xi, g(xi), t, h(t)\n");
            for (int i = 0; i < table; ++i) {
                double xi = 3.0 * i / (table - 1.0);
                double t = (T + 3.0) * i / (table - 1.0);
                printf("%s,%s,%s,%s\n", g17(xi).c_str(), g17(loc.g_side(xi)).c_str(),
                       g17(t).c_str(), g17(loc.h_side(t)).c_str());
            }
        }
        return 0;
    }
    if (mode == "kernel") {
        auto res = automorphic_kernel(Complex(zx, zy), Complex(zpx, zpy), loc, N, R);
        printf("K(z, z') = %s  (%lld orbit terms, tail bound %s)\n",
               g17(res.value).c_str(), (long long)res.terms,
               g17(res.tail_bound).c_str());
        return 0;
    }
    throw std::invalid_argument("selberg: mode must be localizer or kernel");
}

int cmd_geom_check(double k, i64 h, double rho, bool grid,
                   const std::string& spec, i64 level, i64 budget, double b_rho) {
    if (b_rho >= 0.0) {
        QExpansion f = load_form(spec, budget == 0 ? 500 : budget, level);
        DiscCenterFrame frame{Complex(0, 1)};
        Complex series = B_rho(f, f, frame, Complex(b_rho, 0.0), 72);
        Complex quad = B_rho_quadrature(f, f, frame, b_rho);
        printf("B(rho = %s): series = %s\n", g17(b_rho).c_str(),
               cplx(series).c_str());
        printf("             quadrature = %s\n", cplx(quad).c_str());
        printf("relative difference = %s\n",
               g17(std::abs(series - quad) / std::max(1.0, std::abs(quad))).c_str());
        return 0;
    }
    if (grid) {
        printf("# columns: k, h, rho, quadrature, closed_form, abs_diff\n");
        double worst = 0.0;
        for (double kk : {0.75, 1.5, 2.5})
            for (i64 hh : {i64(0), i64(1), i64(2), i64(5), i64(11)})
                for (double rr : {0.1, 0.3, 0.55, 0.8}) {
                    auto r = poisson_power_integral(kk, hh, rr);
                    double d = std::abs(r.quadrature - r.closed_form);
                    worst = std::max(worst, d);
                    printf("%s,%lld,%s,%s,%s,%s\n", g17(kk).c_str(), (long long)hh,
                           g17(rr).c_str(), g17(r.quadrature).c_str(),
                           g17(r.closed_form).c_str(), g17(d).c_str());
                }
        printf("# max abs difference: %s\n", g17(worst).c_str());
        return 0;
    }
    auto r = poisson_power_integral(k, h, rho);
    printf("theta integral (k = %s, h = %lld, rho = %s)\n", g17(k).c_str(),
           (long long)h, g17(rho).c_str());
    printf("quadrature  = %s\n", g17(r.quadrature).c_str());
    printf("closed form = %s\n", g17(r.closed_form).c_str());
    printf("abs diff    = %s\n", g17(std::abs(r.quadrature - r.closed_form)).c_str());
    return 0;
}

int cmd_mfun(const std::string& s_text, const std::string& t_text, double delta,
             const std::string& method) {
    Complex s = parse_complex(s_text), t = parse_complex(t_text);
    if (method == "delta0") {
        printf("M(s, t, 0+) closed form = %s\n", cplx(m_function_delta0(s, t)).c_str());
        return 0;
    }
    MFunctionParams p{s, t, delta};
    if (method == "quadrature" || method == "all")
        printf("quadrature          : %s\n",
               cplx(m_function(p, MMethod::quadrature)).c_str());
    if (method == "far" || method == "all")
        printf("hypergeometric far  : %s\n",
               cplx(m_function(p, MMethod::hypergeometric_far)).c_str());
    if (method == "near" || method == "all")
        printf("hypergeometric near : %s\n",
               cplx(m_function(p, MMethod::hypergeometric_near)).c_str());
    if (method == "all") {
        Complex q = m_function(p, MMethod::quadrature);
        Complex hf = m_function(p, MMethod::hypergeometric_far);
        Complex hn = m_function(p, MMethod::hypergeometric_near);
        double scale = std::max({std::abs(q), std::abs(hf), std::abs(hn), 1e-300});
        printf("max pairwise relative deviation: %s\n",
               g17(std::max({std::abs(q - hf), std::abs(q - hn), std::abs(hf - hn)}) /
                   scale)
                   .c_str());
    }
    if (method != "quadrature" && method != "far" && method != "near" &&
        method != "all")
        throw std::invalid_argument("mfun: method must be quadrature, far, near, "
                                    "all, or delta0");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for half-integer weight twisted L-functions"};
    app.require_subcommand(1);

    // ---- scan
    auto* scan = app.add_subcommand("scan", "sweep central twisted L-values over a "
                                            "range of moduli and fit the growth");
    std::string scan_config, scan_out = "halfint_scan.csv";
    SweepConfig cfg;
    scan->add_option("--config", scan_config, "JSON config file");
    scan->add_option("--out", scan_out, "output CSV path ('-' for stdout)");
    auto* o_spec = scan->add_option("--spec", cfg.spec, "eta-quotient form");
    auto* o_level = scan->add_option("--level", cfg.level, "declared level");
    auto* o_qmin = scan->add_option("--q-min", cfg.q_min, "smallest modulus");
    auto* o_qmax = scan->add_option("--q-max", cfg.q_max, "largest modulus");
    auto* o_primes = scan->add_flag("--primes-only,!--all-moduli", cfg.primes_only,
                                    "restrict to prime moduli");
    auto* o_policy = scan->add_option("--chars", cfg.char_policy,
                                      "all-primitive or random-sample");
    auto* o_sample = scan->add_option("--sample-size", cfg.sample_size,
                                      "characters per modulus when sampling");
    auto* o_seed = scan->add_option("--seed", cfg.seed, "sampling seed");
    auto* o_budget = scan->add_option("--budget", cfg.budget,
                                      "coefficient budget (0 = derived)");
    auto* o_theta = scan->add_option("--theta", cfg.theta_constant,
                                     "progress-toward-Ramanujan constant");
    auto* o_threads = scan->add_option("--threads", cfg.threads, "worker threads");

    // ---- verify
    auto* verify = app.add_subcommand("verify", "run an invariant suite");
    std::string suite = "all";
    verify->add_option("--suite", suite,
                       "identities|lvalues|special|geometry|selberg|shifted|all");

    // ---- coeffs
    auto* coeffs = app.add_subcommand("coeffs", "expand an eta quotient");
    std::string co_spec = "eta(8z)^3", co_out = "-", co_cache, co_load;
    i64 co_M = 30, co_level = 0;
    coeffs->add_option("spec", co_spec, "eta-quotient string");
    coeffs->add_option("M", co_M, "expand through q^M");
    coeffs->add_option("--level", co_level, "declared level");
    coeffs->add_option("--out", co_out, "CSV path ('-' for stdout)");
    coeffs->add_option("--cache", co_cache, "write coefficient cache here");
    coeffs->add_option("--load", co_load, "read expansion from a cache file");

    // ---- lvalue
    auto* lvalue = app.add_subcommand("lvalue", "completed twisted L-value");
    std::string lv_spec = "eta(8z)^3", lv_s = "0.5";
    i64 lv_level = 0, lv_budget = 0, lv_Q = 1, lv_u = 0, lv_chi = -1;
    double lv_y0 = 0.0;
    bool lv_root = false;
    lvalue->add_option("--spec", lv_spec, "eta-quotient form");
    lvalue->add_option("--level", lv_level, "declared level");
    lvalue->add_option("--budget", lv_budget, "coefficient budget (0 = derived)");
    lvalue->add_option("--s", lv_s, "evaluation point re[,im]");
    lvalue->add_option("--q", lv_Q, "twist modulus");
    lvalue->add_option("--u", lv_u, "additive twist numerator");
    lvalue->add_option("--chi-index", lv_chi,
                       "primitive-character index (switches to multiplicative)");
    lvalue->add_option("--y0", lv_y0, "integral split point (0 = default)");
    lvalue->add_flag("--root-number", lv_root, "also compute the empirical root number");

    // ---- amplify
    auto* amplify = app.add_subcommand("amplify", "amplified-sum inequality report");
    std::string am_spec = "eta(8z)^3";
    i64 am_level = 0, am_budget = 0, am_Q = 11, am_chi = 0;
    double am_X = 200.0, am_L = 3.0;
    amplify->add_option("--spec", am_spec, "eta-quotient form");
    amplify->add_option("--level", am_level, "declared level");
    amplify->add_option("--budget", am_budget, "coefficient budget (0 = derived)");
    amplify->add_option("--x", am_X, "smooth-cutoff scale X");
    amplify->add_option("--l", am_L, "amplifier length L");
    amplify->add_option("--q", am_Q, "modulus");
    amplify->add_option("--chi-index", am_chi, "primitive-character index");

    // ---- shifted
    auto* shifted = app.add_subcommand("shifted", "shifted-convolution series");
    std::string sh_mode = "z", sh_spec = "eta(8z)^3", sh_s = "2.5", sh_w = "2.5";
    i64 sh_level = 0, sh_budget = 0, sh_h = 8, sh_Q = 11, sh_l1 = 1, sh_l2 = 1,
        sh_mcap = 200;
    double sh_delta = 0.0, sh_gamma = 2.0, sh_V = 40.0;
    shifted->add_option("--mode", sh_mode, "d | z | triple");
    shifted->add_option("--spec", sh_spec, "eta-quotient form");
    shifted->add_option("--level", sh_level, "declared level");
    shifted->add_option("--budget", sh_budget, "coefficient budget");
    shifted->add_option("--s", sh_s, "s re[,im]");
    shifted->add_option("--w", sh_w, "w re[,im]");
    shifted->add_option("--shift", sh_h, "shift h (mode d)");
    shifted->add_option("--delta", sh_delta, "denominator perturbation (mode d)");
    shifted->add_option("--q", sh_Q, "modulus Q");
    shifted->add_option("--l1", sh_l1, "dilation ell_1");
    shifted->add_option("--l2", sh_l2, "dilation ell_2");
    shifted->add_option("--m-cap", sh_mcap, "solution cap (mode triple)");
    shifted->add_option("--gamma", sh_gamma, "contour abscissa (mode triple)");
    shifted->add_option("--v", sh_V, "contour height (mode triple)");

    // ---- selberg
    auto* selberg = app.add_subcommand("selberg", "transform pair and automorphic "
                                                  "kernel diagnostics");
    std::string se_mode = "localizer";
    double se_T = 3.0, se_zx = 0.31, se_zy = 0.8, se_zpx = 0.2, se_zpy = 1.1,
           se_R = 5.0;
    i64 se_N = 64;
    int se_table = 0;
    selberg->add_option("--mode", se_mode, "localizer | kernel");
    selberg->add_option("--t", se_T, "localizer frequency T");
    selberg->add_option("--zx", se_zx, "Re z (mode kernel)");
    selberg->add_option("--zy", se_zy, "Im z (mode kernel)");
    selberg->add_option("--zpx", se_zpx, "Re z' (mode kernel)");
    selberg->add_option("--zpy", se_zpy, "Im z' (mode kernel)");
    selberg->add_option("--n", se_N, "level N (mode kernel)");
    selberg->add_option("--r", se_R, "distance cutoff (mode kernel)");
    selberg->add_option("--table", se_table, "emit an N-row g/h table (mode localizer)");

    // ---- geom-check
    auto* geom = app.add_subcommand("geom-check", "disc-model theta integral checks");
    double ge_k = 1.5, ge_rho = 0.5, ge_brho = -1.0;
    i64 ge_h = 1, ge_level = 0, ge_budget = 0;
    bool ge_grid = false;
    std::string ge_spec = "eta(8z)^3";
    geom->add_option("--k", ge_k, "Poisson power");
    geom->add_option("--freq", ge_h, "angular frequency");
    geom->add_option("--rho", ge_rho, "disc radius");
    geom->add_flag("--grid", ge_grid, "run the (k, h, rho) grid");
    geom->add_option("--b-rho", ge_brho, "angular-average B(rho) cross-check at "
                                         "this radius");
    geom->add_option("--spec", ge_spec, "eta-quotient form (with --b-rho)");
    geom->add_option("--level", ge_level, "declared level");
    geom->add_option("--budget", ge_budget, "coefficient budget");

    // ---- mfun
    auto* mfun = app.add_subcommand("mfun", "Bessel-kernel Mellin transform M(s,t,delta)");
    std::string mf_s = "2", mf_t = "1", mf_method = "all";
    double mf_delta = 0.1;
    mfun->add_option("--s", mf_s, "s re[,im]");
    mfun->add_option("--t", mf_t, "t re[,im]");
    mfun->add_option("--delta", mf_delta, "delta > 0");
    mfun->add_option("--method", mf_method, "quadrature|far|near|all|delta0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*scan) {
            if (!scan_config.empty()) {
                SweepConfig file_cfg = read_config(scan_config);
                // flags override file fields only when set on the command line
                if (!*o_spec) cfg.spec = file_cfg.spec;
                if (!*o_level) cfg.level = file_cfg.level;
                if (!*o_qmin) cfg.q_min = file_cfg.q_min;
                if (!*o_qmax) cfg.q_max = file_cfg.q_max;
                if (!*o_primes) cfg.primes_only = file_cfg.primes_only;
                if (!*o_policy) cfg.char_policy = file_cfg.char_policy;
                if (!*o_sample) cfg.sample_size = file_cfg.sample_size;
                if (!*o_seed) cfg.seed = file_cfg.seed;
                if (!*o_budget) cfg.budget = file_cfg.budget;
                if (!*o_theta) cfg.theta_constant = file_cfg.theta_constant;
                if (!*o_threads) cfg.threads = file_cfg.threads;
            }
            return cmd_scan(cfg, scan_out);
        }
        if (*verify) return cmd_verify(suite);
        if (*coeffs) return cmd_coeffs(co_spec, co_M, co_level, co_out, co_cache, co_load);
        if (*lvalue)
            return cmd_lvalue(lv_spec, lv_level, lv_budget, lv_s, lv_Q, lv_u, lv_chi,
                              lv_y0, lv_root);
        if (*amplify)
            return cmd_amplify(am_spec, am_level, am_budget, am_X, am_L, am_Q, am_chi);
        if (*shifted)
            return cmd_shifted(sh_mode, sh_spec, sh_level, sh_budget, sh_s, sh_w, sh_h,
                               sh_delta, sh_Q, sh_l1, sh_l2, sh_mcap, sh_gamma, sh_V);
        if (*selberg)
            return cmd_selberg(se_mode, se_T, se_zx, se_zy, se_zpx, se_zpy, se_N,
                               se_R, se_table);
        if (*geom)
            return cmd_geom_check(ge_k, ge_h, ge_rho, ge_grid, ge_spec, ge_level,
                                  ge_budget, ge_brho);
        if (*mfun) return cmd_mfun(mf_s, mf_t, mf_delta, mf_method);
    } catch (const precision_error& e) {
        fprintf(stderr, "precision failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
