#pragma once

#include <cmath>
#include <functional>

#include "wct/phantom.hpp"

namespace wct::test {

// Adaptive Simpson quadrature, independent of the library's analytic
// integrals. Recurses until the Richardson estimate meets eps.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps, int depth = 30) {
    auto simpson = [&](double lo, double hi) {
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    };
    std::function<double(double, double, double, int)> rec =
        [&](double lo, double hi, double whole, int d) -> double {
        double mid = 0.5 * (lo + hi);
        double left = simpson(lo, mid), right = simpson(mid, hi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, left, d - 1) + rec(mid, hi, right, d - 1);
    };
    return rec(a, b, simpson(a, b), depth);
}

// Brute-force weighted ray integral of rho^k f(u + rho sigma) by point
// evaluation. The integrand is piecewise polynomial in rho, so subdividing
// at primitive boundaries is unnecessary at the tolerances used here.
inline double beam_integral_oracle(const Phantom& ph, const Vec3& u, const Vec3& sigma, int k,
                                   double rho_max, double eps = 1e-12) {
    auto f = [&](double rho) {
        return std::pow(rho, k) * ph.value_at(u + rho * sigma);
    };
    return adaptive_simpson(f, 0.0, rho_max, eps);
}

}  // namespace wct::test
