#include "swme/quadrature.hpp"

#include <algorithm>
#include <numbers>
#include <queue>

namespace swme {

QuadratureRule gauss_legendre_unit(int points)
{
    if (points < 1)
        throw Error("gauss_legendre_unit: need at least one point");

    QuadratureRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);

    // Newton on P_n(x) from the Chebyshev guesses, then map [-1,1] -> [0,1].
    const int n = points;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

namespace {

const QuadratureRule& panel_rule()
{
    static const QuadratureRule rule = gauss_legendre_unit(10);
    return rule;
}

double panel(const std::function<double(double)>& f, double a, double b)
{
    const auto& rule = panel_rule();
    double sum = 0.0;
    for (int k = 0; k < rule.size(); ++k)
        sum += rule.weights[k] * f(a + (b - a) * rule.nodes[k]);
    return (b - a) * sum;
}

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment refine(const std::function<double(double)>& f, double a, double b)
{
    const double whole = panel(f, a, b);
    const double mid = 0.5 * (a + b);
    const double halves = panel(f, a, mid) + panel(f, mid, b);
    return {a, b, halves, std::abs(halves - whole)};
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol, int max_depth)
{
    // Global adaptivity: always bisect the segment with the largest error
    // estimate until the summed estimate meets the tolerance.
    std::priority_queue<Segment> queue;
    queue.push(refine(f, a, b));
    double value = queue.top().value;
    double error = queue.top().error;
    const std::size_t max_segments = std::size_t{1} << std::min(max_depth, 16);

    while (error > tol && queue.size() < max_segments) {
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            break;
        const Segment left = refine(f, worst.a, mid);
        const Segment right = refine(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }
    if (error > tol) {
        // Re-sum to discard drift from the running updates before reporting.
        error = 0.0;
        for (auto q = queue; !q.empty(); q.pop())
            error += q.top().error;
        if (error > tol)
            throw QuadratureError("integrate_adaptive: no convergence, achieved error " + std::to_string(error), error);
    }
    value = 0.0;
    for (auto q = queue; !q.empty(); q.pop())
        value += q.top().value;
    return value;
}

} // namespace swme
