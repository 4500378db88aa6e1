#pragma once
// The smooth bump H supported on [1,2]:
//   H(x) = exp(1 + 1/((2x-3)^2 - 1)) for x in (1,2), 0 elsewhere,
// with H(3/2) = 1 and analytic derivatives up to order 2.
#include <cmath>
#include <stdexcept>

namespace halfint {

struct SmoothCutoff {
    double operator()(double x) const { return deriv(x, 0); }

    double deriv(double x, int order) const {
        if (order < 0 || order > 2)
            throw std::invalid_argument("SmoothCutoff: derivative order must be 0..2");
        if (x <= 1.0 || x >= 2.0) return 0.0;
        double w = 2.0 * x - 3.0;     // in (-1, 1)
        double d = w * w - 1.0;       // in [-1, 0)
        double h = std::exp(1.0 + 1.0 / d);
        if (order == 0) return h;
        double g1 = -4.0 * w / (d * d);           // (log h)'
        if (order == 1) return h * g1;
        double g2 = -8.0 / (d * d) + 32.0 * w * w / (d * d * d); // (log h)''
        return h * (g1 * g1 + g2);
    }
};

} // namespace halfint
