#include "halfint/quadrature.hpp"

#include <map>
#include <mutex>

namespace halfint {

namespace {

// Golub-Welsch is overkill: Newton iteration on P_n against the Chebyshev
// initial guess converges in a handful of steps and is exact enough (1e-15).
void compute_gauss(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

struct GaussCache {
    std::mutex mu;
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> table;

    const std::pair<std::vector<double>, std::vector<double>>& get(int n) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = table.find(n);
        if (it == table.end()) {
            std::pair<std::vector<double>, std::vector<double>> nw;
            compute_gauss(n, nw.first, nw.second);
            it = table.emplace(n, std::move(nw)).first;
        }
        return it->second;
    }
};

GaussCache& cache() {
    static GaussCache c;
    return c;
}

} // namespace

const std::vector<double>& gauss_nodes(int n) { return cache().get(n).first; }
const std::vector<double>& gauss_weights(int n) { return cache().get(n).second; }

} // namespace halfint
