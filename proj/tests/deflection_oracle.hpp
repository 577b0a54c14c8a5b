#pragma once

// Independent check for the ray tracer: the weak-field deflection integral
//   alpha(b) = 2 b * integral_b^inf |dn/dr| dr / (n sqrt(r^2 - b^2))
// for n = 1 + GM/(r c^2). With r = b / cos(t) it becomes
//   alpha(b) = 2 k * integral_0^{pi/2} cos t / (1 + k cos t) dt,  k = GM/(b c^2),
// a smooth integrand evaluated here by composite Simpson.

#include <cmath>

namespace gravshift::test {

inline double deflection_quadrature(double gm, double b, double c = 299792458.0) {
    const double k = gm / (b * c * c);
    constexpr int kIntervals = 4096;
    const double h = (M_PI / 2.0) / kIntervals;
    auto f = [k](double t) { return std::cos(t) / (1.0 + k * std::cos(t)); };
    double sum = f(0.0) + f(M_PI / 2.0);
    for (int i = 1; i < kIntervals; ++i) {
        sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
    }
    return 2.0 * k * sum * h / 3.0;
}

}  // namespace gravshift::test
