#include "swme/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swme {

std::vector<double> real_quadratic_roots(double c2, double c1, double c0)
{
    if (c2 == 0.0) {
        if (c1 == 0.0)
            return {};
        return {-c0 / c1};
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0)
        return {};
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    std::vector<double> roots;
    if (q == 0.0) {
        roots = {0.0, 0.0};
    } else {
        roots = {q / c2, c0 / q};
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0)
{
    if (c3 == 0.0)
        return real_quadratic_roots(c2, c1, c0);

    const double a = c2 / c3;
    const double b = c1 / c3;
    const double c = c0 / c3;

    // Depressed cubic t^3 + p t + q with x = t - a/3.
    const double shift = a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    std::vector<double> roots;
    const double half_q = 0.5 * q;
    const double third_p = p / 3.0;
    const double disc = half_q * half_q + third_p * third_p * third_p;

    if (p == 0.0 && q == 0.0) {
        roots = {-shift, -shift, -shift};
    } else if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double t = std::cbrt(-half_q + s) + std::cbrt(-half_q - s);
        roots = {t - shift};
    } else {
        // Three real roots (some possibly repeated).
        const double r = std::sqrt(-third_p);
        const double arg = std::clamp(-half_q / (r * r * r), -1.0, 1.0);
        const double phi = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            roots.push_back(2.0 * r * std::cos((phi - 2.0 * std::numbers::pi * k) / 3.0) - shift);
    }

    auto poly = [&](double x) { return ((x + a) * x + b) * x + c; };
    auto dpoly = [&](double x) { return (3.0 * x + 2.0 * a) * x + b; };
    for (double& x : roots) {
        for (int it = 0; it < 3; ++it) {
            const double d = dpoly(x);
            if (d == 0.0)
                break;
            const double step = poly(x) / d;
            const double candidate = x - step;
            if (std::abs(poly(candidate)) >= std::abs(poly(x)))
                break;
            x = candidate;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace swme
