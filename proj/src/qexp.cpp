#include "halfint/qexp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace halfint {

// ---------------------------------------------------------------------------
// EtaQuotientSpec

std::string EtaQuotientSpec::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << " * ";
        os << "eta(" << factors[i].m << "z)^" << factors[i].exponent;
    }
    if (factors.empty()) os << "1";
    return os.str();
}

int EtaQuotientSpec::total_two_k() const {
    int s = 0;
    for (const auto& f : factors) s += f.exponent;
    return s;
}

EtaQuotientSpec EtaQuotientSpec::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s.push_back(c);
    EtaQuotientSpec spec;
    if (s.empty() || s == "1") return spec;
    size_t pos = 0;
    while (pos < s.size()) {
        if (s.compare(pos, 4, "eta(") != 0)
            throw std::invalid_argument("EtaQuotientSpec::parse: expected 'eta(' at '" +
                                        s.substr(pos) + "'");
        pos += 4;
        size_t zpos = s.find("z)", pos);
        if (zpos == std::string::npos)
            throw std::invalid_argument("EtaQuotientSpec::parse: missing 'z)'");
        std::string mtext = s.substr(pos, zpos - pos); // "eta(z)" means m = 1
        i64 m = mtext.empty() ? 1 : std::stoll(mtext);
        if (m < 1) throw std::invalid_argument("EtaQuotientSpec::parse: dilation must be positive");
        pos = zpos + 2;
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            size_t end = pos;
            if (end < s.size() && (s[end] == '-' || s[end] == '+')) ++end;
            while (end < s.size() && std::isdigit((unsigned char)s[end])) ++end;
            e = std::stoi(s.substr(pos, end - pos));
            pos = end;
        }
        spec.factors.push_back({m, e});
        if (pos < s.size()) {
            if (s[pos] != '*')
                throw std::invalid_argument("EtaQuotientSpec::parse: expected '*' between factors");
            ++pos;
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Expansion

void QExpansion::rebuild_support() {
    support.clear();
    for (i64 n = 0; n <= M; ++n)
        if (a[n] != 0) support.push_back({n, a[n]});
}

namespace {

// Sparse coefficient list of prod_{n>=1} (1 - x^n) up to x^limit
// (pentagonal number theorem), as (exponent, coefficient in {+-1}).
std::vector<std::pair<i64, int>> pentagonal_terms(i64 limit) {
    std::vector<std::pair<i64, int>> out;
    out.push_back({0, 1});
    for (i64 j = 1;; ++j) {
        i64 g1 = j * (3 * j - 1) / 2;
        i64 g2 = j * (3 * j + 1) / 2;
        int sign = (j % 2 == 0) ? 1 : -1;
        bool any = false;
        if (g1 <= limit) { out.push_back({g1, sign}); any = true; }
        if (g2 <= limit) { out.push_back({g2, sign}); any = true; }
        if (!any) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

void checked_store(std::vector<long long>& w, i64 idx, __int128 v) {
    if (v > (__int128)INT64_MAX || v < (__int128)INT64_MIN)
        throw std::overflow_error("expand_eta_quotient: coefficient exceeds 64-bit range");
    w[idx] = (long long)v;
}

// w *= P where P is the sparse unit-leading series (in place, degree <= M).
void multiply_sparse(std::vector<long long>& w, const std::vector<std::pair<i64, int>>& P,
                     i64 M) {
    std::vector<long long> out(M + 1, 0);
    for (i64 n = 0; n <= M; ++n) {
        if (w[n] == 0) continue;
        for (auto [t, c] : P) {
            i64 idx = n + t;
            if (idx > M) break;
            __int128 v = (__int128)out[idx] + (__int128)c * w[n];
            checked_store(out, idx, v);
        }
    }
    w.swap(out);
}

// w /= P (P sparse, P[0] = 1): exact power-series division.
void divide_sparse(std::vector<long long>& w, const std::vector<std::pair<i64, int>>& P,
                   i64 M) {
    std::vector<long long> out(M + 1, 0);
    for (i64 n = 0; n <= M; ++n) {
        __int128 acc = w[n];
        for (auto [t, c] : P) {
            if (t == 0) continue;
            if (t > n) break;
            acc -= (__int128)c * out[n - t];
        }
        checked_store(out, n, acc);
    }
    w.swap(out);
}

} // namespace

QExpansion expand_eta_quotient(const EtaQuotientSpec& spec, i64 M, i64 declared_level) {
    if (M < 1) throw std::invalid_argument("expand_eta_quotient: M must be >= 1");
    // leading power = sum m_i e_i / 24
    i64 num = 0;
    for (const auto& f : spec.factors) num += f.m * f.exponent;
    if (num % 24 != 0)
        throw std::domain_error("expand_eta_quotient: non-integral leading q-power " +
                                std::to_string(num) + "/24");
    i64 lead = num / 24;
    if (lead < 0)
        throw std::domain_error("expand_eta_quotient: negative leading q-power (not a holomorphic form)");

    QExpansion out;
    out.two_k = spec.total_two_k();
    out.N = declared_level;
    out.M = M;
    out.leading_q_power = lead;
    out.spec_string = spec.to_string();
    out.a.assign(M + 1, 0);

    if (lead > M) { out.rebuild_support(); return out; }
    i64 Mw = M - lead;
    std::vector<long long> w(Mw + 1, 0);
    w[0] = 1;
    for (const auto& f : spec.factors) {
        // (1 - q^{m n}) product terms: pentagonal exponents scaled by m
        auto pent = pentagonal_terms(Mw / f.m);
        for (auto& [t, c] : pent) t *= f.m;
        int reps = std::abs(f.exponent);
        for (int r = 0; r < reps; ++r) {
            if (f.exponent > 0)
                multiply_sparse(w, pent, Mw);
            else
                divide_sparse(w, pent, Mw);
        }
    }
    for (i64 n = 0; n <= Mw; ++n) out.a[n + lead] = w[n];
    out.rebuild_support();
    return out;
}

std::vector<double> normalized_coeffs(const QExpansion& f) {
    std::vector<double> A(f.M + 1, 0.0);
    double expo = 0.5 * (f.k() - 1.0);
    for (auto [n, an] : f.support) {
        if (n == 0) continue;
        A[n] = (double)an * std::pow((double)n, -expo);
    }
    return A;
}

double coefficient_envelope(const QExpansion& f, double exponent) {
    double C = 0.0;
    for (auto [n, an] : f.support) {
        if (n == 0) continue;
        C = std::max(C, std::abs((double)an) * std::pow((double)n, -exponent));
    }
    return C;
}

EvalResult evaluate_with_tail(const QExpansion& f, Complex z, double tol) {
    double y = z.imag();
    if (y <= 0.0) throw std::invalid_argument("evaluate: Im z must be positive");
    Complex acc(0.0, 0.0);
    for (auto [n, an] : f.support) {
        double damp = std::exp(-TWO_PI * (double)n * y);
        if (damp == 0.0) break;
        acc += (double)an * damp * unit_e((double)n * z.real());
    }
    // Tail certificate: |a(n)| <= C n^q with measured C, q = (k-1)/2 + 3/4
    // (trivial-bound exponent with slack); geometric tail from n = M+1.
    double q = 0.5 * (f.k() - 1.0) + 0.75;
    double C = coefficient_envelope(f, q);
    double r = std::exp(-TWO_PI * y);
    double ratio = r * std::pow((double)(f.M + 2) / (double)(f.M + 1), q);
    double tail;
    if (ratio >= 0.999) {
        tail = INFINITY;
    } else {
        tail = C * std::pow((double)(f.M + 1), q) * std::pow(r, (double)(f.M + 1)) /
               (1.0 - ratio);
    }
    if (!(tail <= tol))
        throw precision_error("evaluate: tail bound " + std::to_string(tail) +
                              " exceeds tolerance at Im z = " + std::to_string(y));
    return {acc, tail};
}

Complex evaluate(const QExpansion& f, Complex z, double tol) {
    return evaluate_with_tail(f, z, tol).value;
}

SupNormResult sup_norm_estimate(const QExpansion& f, int nx, int ny, int refine_rounds) {
    if (f.N < 1) throw std::invalid_argument("sup_norm_estimate: level must be declared");
    double khalf = 0.5 * f.k();
    // lowest y the truncation supports with tail below 1e-13 at that y
    double y_floor_eval = 16.0 / (double)f.M;
    double y_min = std::max(1.0 / (3.0 * (double)f.N), y_floor_eval);
    double y_max = 3.0;
    SupNormResult best;
    best.grid_dx = 1.0 / nx;
    best.y_levels = ny;

    auto weight = [&](double x, double y) {
        Complex v = evaluate(f, Complex(x, y), 1e-9);
        return std::abs(v) * std::pow(y, khalf);
    };

    double ly0 = std::log(y_min), ly1 = std::log(y_max);
    for (int iy = 0; iy <= ny; ++iy) {
        double y = std::exp(ly0 + (ly1 - ly0) * iy / ny);
        for (int ix = 0; ix < nx; ++ix) {
            double x = (double)ix / nx;
            double v = weight(x, y);
            if (v > best.value) {
                best.value = v;
                best.argmax = Complex(x, y);
            }
        }
    }
    // local refinement around the grid argmax
    double dx = 1.0 / nx;
    double dly = (ly1 - ly0) / ny;
    double cx = best.argmax.real(), cly = std::log(best.argmax.imag());
    for (int round = 0; round < refine_rounds; ++round) {
        double bx = cx, bly = cly, bv = best.value;
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                double x = cx + i * dx / 4.0;
                double ly = cly + j * dly / 4.0;
                double y = std::exp(ly);
                if (y < 0.8 * y_min || y > 1.2 * y_max) continue;
                double v = weight(x, y);
                if (v > bv) { bv = v; bx = x; bly = ly; }
            }
        }
        cx = bx; cly = bly;
        best.value = bv;
        best.argmax = Complex(cx, std::exp(cly));
        dx /= 4.0; dly /= 4.0;
    }
    return best;
}

FrickeResult fricke_eigenvalue(const QExpansion& f) {
    if (f.N < 1) throw std::invalid_argument("fricke_eigenvalue: level must be declared");
    double N = (double)f.N;
    double k = f.k();
    auto fricke_ratio = [&](Complex z) {
        Complex fz = evaluate(f, z, 1e-11);
        Complex w = Complex(-1.0, 0.0) / (N * z);
        Complex fw = evaluate(f, w, 1e-11);
        Complex pref = std::exp(Complex(0.0, -0.5 * PI * k)) * std::pow(N, 0.5 * k) *
                       std::exp(-k * std::log(N * z));
        return pref * fw / fz;
    };
    // probes: i/sqrt(N) is the Fricke fixed point (ratio forced for any f);
    // the off-fixed probes provide the actual eigenform evidence.
    double y_star = 1.0 / std::sqrt(N);
    double y1 = 0.55 * y_star, y2 = 1.45 * y_star;
    Complex r_fixed = fricke_ratio(Complex(0.0, y_star));
    Complex r1 = fricke_ratio(Complex(0.0, y1));
    Complex r2 = fricke_ratio(Complex(0.0, y2));
    FrickeResult out;
    out.eps = r1;
    out.residual = std::abs(r2 - r1) + std::abs(r_fixed - r1);
    out.ratio_fixed_point = r_fixed;
    return out;
}

Complex empirical_nebentypus(const QExpansion& f, i64 d) {
    if (f.N < 1) throw std::invalid_argument("empirical_nebentypus: level must be declared");
    if (f.N % 4 != 0)
        throw std::invalid_argument("empirical_nebentypus: level must be divisible by 4");
    i64 N = f.N;
    d = ((d % N) + N) % N;
    if (gcd_ll(d, N) != 1)
        throw std::invalid_argument("empirical_nebentypus: d must be coprime to N");
    if (d % 2 == 0) throw std::invalid_argument("empirical_nebentypus: d must be odd");
    // gamma = (a, b; N, d) with a = d^{-1} mod N, b = (a d - 1)/N
    i64 a = mod_inverse(d, N);
    i64 b = (a * d - 1) / N;
    IntegerMatrix2x2 g{a, b, N, d};
    // probe near the balanced point: |N z + d| ~ 1 so both heights ~ 1/N
    Complex z(-(double)d / (double)N + 0.37 / (double)N, 1.0 / (double)N);
    Complex jz = cocycle_j_pow(g, z, f.two_k);
    Complex fz = evaluate(f, z, 1e-11);
    Complex fgz = evaluate(f, g.act(z), 1e-11);
    return fgz / (jz * fz);
}

QExpansion make_eta8_cubed(i64 M) {
    EtaQuotientSpec spec{{{8, 3}}};
    return expand_eta_quotient(spec, M, 64);
}

QExpansion make_eta24(i64 M) {
    EtaQuotientSpec spec{{{24, 1}}};
    return expand_eta_quotient(spec, M, 576);
}

// ---------------------------------------------------------------------------
// Coefficient cache

namespace {

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

void write_coefficient_cache(const QExpansion& f, const std::string& path) {
    std::ostringstream payload;
    for (auto [n, an] : f.support) payload << n << "," << an << "\n";
    std::string body = payload.str();
    uint64_t h = fnv1a64(body);

    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("write_coefficient_cache: cannot open " + tmp);
        os << "# halfint-coeffs v1\n";
        char head[256];
        std::snprintf(head, sizeof(head), "%d,%lld,%lld,%llx\n", f.two_k,
                      (long long)f.N, (long long)f.M, (unsigned long long)h);
        os << head;
        os << f.spec_string << "\n";
        os << "n,a\n";
        os << body;
        if (!os) throw std::runtime_error("write_coefficient_cache: write failed");
    }
    std::filesystem::rename(tmp, path);
}

QExpansion read_coefficient_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_coefficient_cache: cannot open " + path);
    std::string line;
    if (!std::getline(is, line) || line != "# halfint-coeffs v1")
        throw std::runtime_error("read_coefficient_cache: bad magic in " + path);
    if (!std::getline(is, line))
        throw std::runtime_error("read_coefficient_cache: missing header");
    QExpansion f;
    unsigned long long stored_hash = 0;
    {
        long long nn = 0, mm = 0;
        if (std::sscanf(line.c_str(), "%d,%lld,%lld,%llx", &f.two_k, &nn, &mm,
                        &stored_hash) != 4)
            throw std::runtime_error("read_coefficient_cache: malformed header");
        f.N = nn;
        f.M = mm;
    }
    if (!std::getline(is, f.spec_string))
        throw std::runtime_error("read_coefficient_cache: missing spec string");
    if (!std::getline(is, line) || line != "n,a")
        throw std::runtime_error("read_coefficient_cache: missing column header");
    std::ostringstream payload;
    f.a.assign(f.M + 1, 0);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        payload << line << "\n";
        long long n, an;
        if (std::sscanf(line.c_str(), "%lld,%lld", &n, &an) != 2)
            throw std::runtime_error("read_coefficient_cache: malformed row '" + line + "'");
        if (n < 0 || n > f.M)
            throw std::runtime_error("read_coefficient_cache: coefficient index out of range");
        f.a[n] = an;
    }
    if (fnv1a64(payload.str()) != stored_hash)
        throw std::runtime_error("read_coefficient_cache: integrity hash mismatch in " + path);
    f.leading_q_power = 0;
    for (i64 n = 0; n <= f.M; ++n)
        if (f.a[n] != 0) { f.leading_q_power = n; break; }
    f.rebuild_support();
    return f;
}

} // namespace halfint
