#include "swme/basis.hpp"

#include <string>

namespace swme {

namespace {

std::int64_t binomial(int n, int k)
{
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// P_0..P_n(x) and their derivatives by the three-term recurrence.
void legendre_values(int n, double x, double* p, double* dp)
{
    p[0] = 1.0;
    if (dp)
        dp[0] = 0.0;
    if (n == 0)
        return;
    p[1] = x;
    if (dp)
        dp[1] = 1.0;
    for (int k = 1; k < n; ++k) {
        p[k + 1] = ((2.0 * k + 1.0) * x * p[k] - k * p[k - 1]) / (k + 1.0);
        if (dp)
            dp[k + 1] = dp[k - 1] + (2.0 * k + 1.0) * p[k];
    }
}

} // namespace

BasisSet::BasisSet(int order) : order_(order)
{
    if (order < 0 || order > kMaxMoments)
        throw Error("BasisSet: order must be in [0, " + std::to_string(kMaxMoments) + "], got " +
                    std::to_string(order));
    monomials_.resize(order + 1);
    for (int j = 0; j <= order; ++j) {
        auto& c = monomials_[j];
        c.resize(j + 1);
        for (int k = 0; k <= j; ++k)
            c[k] = ((k % 2) ? -1 : 1) * binomial(j, k) * binomial(j + k, k);
    }
    rule_ = gauss_legendre_unit((3 * order + 2 + 1) / 2 + 1);
}

void BasisSet::check_index(int j) const
{
    if (j < 0 || j > order_)
        throw std::out_of_range("basis index " + std::to_string(j) + " outside [0, " + std::to_string(order_) + "]");
}

double BasisSet::phi(int j, double zeta) const
{
    check_index(j);
    double p[kMaxMoments + 2];
    legendre_values(j, 1.0 - 2.0 * zeta, p, nullptr);
    return p[j];
}

double BasisSet::dphi(int j, double zeta) const
{
    check_index(j);
    double p[kMaxMoments + 2];
    double dp[kMaxMoments + 2];
    legendre_values(j, 1.0 - 2.0 * zeta, p, dp);
    return -2.0 * dp[j];
}

double BasisSet::phi_integral(int j, double zeta) const
{
    check_index(j);
    if (j == 0)
        return zeta;
    // int P_j dx = (P_{j+1} - P_{j-1}) / (2j+1), and dzeta = -dx/2.
    double p[kMaxMoments + 2];
    legendre_values(j + 1, 1.0 - 2.0 * zeta, p, nullptr);
    return -0.5 * (p[j + 1] - p[j - 1]) / (2.0 * j + 1.0);
}

const std::vector<std::int64_t>& BasisSet::monomial_coefficients(int j) const
{
    check_index(j);
    return monomials_[j];
}

MomentTensors::MomentTensors(int order)
    : order_(order),
      a_(static_cast<std::size_t>(order) * order * order, 0.0),
      b_(static_cast<std::size_t>(order) * order * order, 0.0),
      c_(static_cast<std::size_t>(order) * order, 0.0)
{
}

MomentTensors compute_moment_tensors(const BasisSet& basis)
{
    const int n = basis.order();
    MomentTensors t(n);
    if (n == 0)
        return t;

    const auto& rule = basis.rule();
    std::vector<double> phi(n + 1), dphi(n + 1), iphi(n + 1);
    for (int q = 0; q < rule.size(); ++q) {
        const double z = rule.nodes[q];
        const double w = rule.weights[q];
        for (int j = 1; j <= n; ++j) {
            phi[j] = basis.phi(j, z);
            dphi[j] = basis.dphi(j, z);
            iphi[j] = basis.phi_integral(j, z);
        }
        for (int i = 1; i <= n; ++i) {
            const double scale = 2.0 * i + 1.0;
            for (int j = 1; j <= n; ++j) {
                t.c_[(i - 1) * n + (j - 1)] += w * dphi[i] * dphi[j];
                for (int k = 1; k <= n; ++k) {
                    t.a_[t.index(i, j, k)] += w * scale * phi[i] * phi[j] * phi[k];
                    t.b_[t.index(i, j, k)] += w * scale * dphi[i] * iphi[j] * phi[k];
                }
            }
        }
    }
    return t;
}

ProfileCoefficients project_profile(const std::function<double(double)>& profile, const BasisSet& basis, double tol)
{
    ProfileCoefficients out;
    out.um = integrate_adaptive(profile, 0.0, 1.0, tol);
    out.alpha = Vec::Zero(basis.order());
    for (int i = 1; i <= basis.order(); ++i) {
        const double moment =
            integrate_adaptive([&](double z) { return profile(z) * basis.phi(i, z); }, 0.0, 1.0, tol);
        out.alpha[i - 1] = (2.0 * i + 1.0) * moment;
    }
    return out;
}

double evaluate_profile(const ProfileCoefficients& coeffs, const BasisSet& basis, double zeta)
{
    double u = coeffs.um;
    for (int j = 1; j <= coeffs.alpha.size(); ++j)
        u += coeffs.alpha[j - 1] * basis.phi(j, zeta);
    return u;
}

double friction_coupling(int m, int j)
{
    if ((m + j) % 2 != 0)
        return 0.0;
    const int k = std::min(m, j);
    return 0.5 * k * (k + 1);
}

Vec friction_source(const State& state, double viscosity, double slip)
{
    require_wet(state.h(), "friction_source");
    if (!(slip > 0.0))
        throw Error("friction_source: slip length must be positive");
    const Primitive p = to_primitive(state.u);
    const int n = p.moments();
    Vec out = Vec::Zero(n + 2);
    if (viscosity == 0.0)
        return out;

    const double bottom = p.um + p.alpha.sum();
    out[1] = -(viscosity / slip) * bottom;
    for (int m = 1; m <= n; ++m) {
        double coupling = 0.0;
        for (int j = 1; j <= n; ++j)
            coupling += 4.0 * friction_coupling(m, j) * p.alpha[j - 1];
        out[1 + m] = -(2.0 * m + 1.0) * ((viscosity / slip) * bottom + (viscosity / p.h) * coupling);
    }
    return out;
}

} // namespace swme
