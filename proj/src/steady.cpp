#include "swme/steady.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "swme/polynomial.hpp"

namespace swme {

namespace {

constexpr double kCriticalTolerance = 1e-10;
constexpr double kResidualTolerance = 1e-13;
constexpr int kMaxIterations = 100;

double residual_scale(const SteadyConstants& c, double b, double h)
{
    const double h2 = h * h;
    return c.d * h2 * h2 + 2.0 * c.gravity * h2 * h + 2.0 * h2 * (std::abs(c.gravity * b) + std::abs(c.c2)) +
           c.c1 * c.c1;
}

double residual_slope(const SteadyConstants& c, double b, double h)
{
    return 4.0 * c.d * h * h * h + 6.0 * c.gravity * h * h + 4.0 * (c.gravity * b - c.c2) * h;
}

// A few extra Newton steps once converged, keeping the smallest residual.
double polish(const SteadyConstants& c, double b, double x)
{
    double best = x;
    double fbest = std::abs(steady_residual(c, b, x));
    for (int k = 0; k < 3 && fbest > 0.0; ++k) {
        const double slope = residual_slope(c, b, x);
        if (slope == 0.0)
            break;
        x -= steady_residual(c, b, x) / slope;
        const double fx = std::abs(steady_residual(c, b, x));
        if (!(fx < fbest))
            break;
        best = x;
        fbest = fx;
    }
    return best;
}

// Newton on f with f(lo) and f(hi) of opposite sign; falls back to bisection
// whenever the step leaves the bracket.
double bracketed_newton(const SteadyConstants& c, double b, double lo, double hi, double x)
{
    const double flo = steady_residual(c, b, lo);
    for (int it = 0; it < kMaxIterations; ++it) {
        const double fx = steady_residual(c, b, x);
        if (std::abs(fx) <= kResidualTolerance * residual_scale(c, b, x))
            return polish(c, b, x);
        if ((fx > 0.0) == (flo > 0.0))
            lo = x;
        else
            hi = x;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            return 0.5 * (lo + hi);
        const double slope = residual_slope(c, b, x);
        double next = slope != 0.0 ? x - fx / slope : lo - 1.0;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        x = next;
    }
    throw Error("steady_height_at: Newton iteration did not converge");
}

} // namespace

SteadyConstants make_constants(double c1, double c2, const Vec& ratios, double g)
{
    SteadyConstants c;
    c.c1 = c1;
    c.c2 = c2;
    c.ratios = ratios;
    c.gravity = g;
    for (int i = 1; i <= ratios.size(); ++i)
        c.d += 3.0 * ratios[i - 1] * ratios[i - 1] / (2.0 * i + 1.0);
    return c;
}

SteadyConstants constants_from_state(const Vec& u, double b, double g)
{
    const Primitive p = to_primitive(u);
    double s = 0.0;
    for (int i = 1; i <= p.moments(); ++i)
        s += p.alpha[i - 1] * p.alpha[i - 1] / (2.0 * i + 1.0);
    const double c2 = 0.5 * p.um * p.um + g * (p.h + b) + 1.5 * s;
    return make_constants(u[1], c2, p.alpha / p.h, g);
}

double steady_residual(const SteadyConstants& c, double b, double h)
{
    const double q = c.gravity * b - c.c2;
    return ((c.d * h + 2.0 * c.gravity) * h + 2.0 * q) * h * h + c.c1 * c.c1;
}

double critical_height(const SteadyConstants& c, double b)
{
    const double q = c.gravity * b - c.c2;
    if (!(q < 0.0))
        throw NoSteadyState("no steady state: g b >= C2 at b=" + std::to_string(b));
    const double g = c.gravity;
    return -4.0 * q / (3.0 * g + std::sqrt(9.0 * g * g - 16.0 * c.d * q));
}

double newton_start(const SteadyConstants& c, double b)
{
    const double q = c.gravity * b - c.c2;
    if (!(q < 0.0))
        throw NoSteadyState("no steady state: g b >= C2 at b=" + std::to_string(b));
    const double g = c.gravity;
    return -2.0 * q / (3.0 * g + std::sqrt(9.0 * g * g - 12.0 * c.d * q));
}

double steady_height_at(const SteadyConstants& c, double b, FlowRegime regime, double guess)
{
    const double g = c.gravity;
    const double q = g * b - c.c2;
    const double hc = critical_height(c, b);
    const double fc = steady_residual(c, b, hc);
    const double scale = residual_scale(c, b, hc);
    if (fc > kCriticalTolerance * scale)
        throw NoSteadyState("no steady state: f(h_c) = " + std::to_string(fc) + " > 0 at b=" + std::to_string(b));
    if (fc >= -kCriticalTolerance * scale)
        return hc;

    if (regime == FlowRegime::Supercritical) {
        if (c.c1 == 0.0)
            throw NoSteadyState("no supercritical steady state at rest");
        const double start = (guess > 0.0 && guess < hc) ? guess : newton_start(c, b);
        return bracketed_newton(c, b, 0.0, hc, start);
    }

    if (c.c1 == 0.0) // f = h^2 (D h^2 + 2 g h + 2 q)
        return -2.0 * q / (g + std::sqrt(g * g - 2.0 * c.d * q));

    double hmax = 2.0 * hc + std::cbrt(c.c1 * c.c1 / (2.0 * g)) + c.c2 / g;
    for (int k = 0; steady_residual(c, b, hmax) < 0.0; ++k) {
        if (k > 60)
            throw Error("steady_height_at: could not bracket the subcritical root");
        hmax *= 2.0;
    }
    double start = (guess > hc && guess < hmax) ? guess : 2.0 * hc + std::cbrt(c.c1 * c.c1 / g);
    if (!(start > hc && start < hmax))
        start = 0.5 * (hc + hmax);
    return bracketed_newton(c, b, hc, hmax, start);
}

Vec evaluate_steady_state(const SteadyConstants& c, double b, FlowRegime regime, double guess)
{
    const double h = steady_height_at(c, b, regime, guess);
    if (!(h > kDryTolerance))
        throw NoSteadyState("no steady state: non-positive height");
    const int n = c.moments();
    Vec u(n + 2);
    u[0] = h;
    u[1] = c.c1;
    u.tail(n) = c.ratios * (h * h);
    return u;
}

FlowRegime classify_regime(const Vec& u, double g)
{
    const Primitive p = to_primitive(u);
    double s = 0.0;
    for (int i = 1; i <= p.moments(); ++i)
        s += 3.0 * p.alpha[i - 1] * p.alpha[i - 1] / (2.0 * i + 1.0);
    return std::abs(p.um) > std::sqrt(g * p.h + s) ? FlowRegime::Supercritical : FlowRegime::Subcritical;
}

RegimeSelection select_regimes(const Vec& left, const Vec& center, const Vec& right, double g)
{
    const FlowRegime l = classify_regime(left, g);
    const FlowRegime r = classify_regime(right, g);
    if (l != r)
        return {l, r, true};
    const FlowRegime own = classify_regime(center, g);
    return {own, own, false};
}

std::vector<double> JumpSolutions::heights() const
{
    std::vector<double> out{h0};
    for (double y : ratios)
        out.push_back(h0 * y);
    return out;
}

JumpSolutions rh_jump(double h0, double u0, const Vec& alpha0, double g)
{
    require_wet(h0, "rh_jump");
    JumpSolutions out;
    out.h0 = h0;
    double s = 0.0;
    for (int i = 1; i <= alpha0.size(); ++i)
        s += alpha0[i - 1] * alpha0[i - 1] / (2.0 * i + 1.0);
    if (u0 == 0.0) {
        out.degenerate = s > 0.0;
        return out;
    }
    const double fr2 = u0 * u0 / (g * h0);
    const double k = s / (g * h0);
    for (double y : real_cubic_roots(k, k + 0.5, k + 0.5, -fr2))
        if (y > 0.0)
            out.ratios.push_back(y);
    return out;
}

} // namespace swme
