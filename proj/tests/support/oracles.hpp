#pragma once

// Reference computations used by the unit and acceptance tests. They share no
// code with the library beyond the model's pointwise B matrix and flux.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "swme/models.hpp"

namespace swme::oracle {

/// 5-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr std::array<double, 5> kGaussX{-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
inline constexpr std::array<double, 5> kGaussW{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                               0.4786286704993665, 0.2369268850561891};

inline Primitive primitive_of(const Vec& u)
{
    Primitive p;
    p.h = u[0];
    p.um = u[1] / u[0];
    p.alpha = u.tail(u.size() - 2) / u[0];
    return p;
}

/// int_0^1 B(Phi(s)) Phi'(s) ds along Phi(s) = U_l + s (U_r - U_l), by
/// composite Gauss-Legendre on panels over which h changes by at most 1%.
inline Vec path_integral_b(const Model& model, const Vec& ul, const Vec& ur)
{
    const Vec du = ur - ul;
    const double ratio = std::max(ul[0], ur[0]) / std::min(ul[0], ur[0]);
    const int panels = std::max(8, static_cast<int>(std::ceil(std::log(ratio) / std::log(1.01))));
    // Panel edges equidistant in log h when h varies, in s otherwise.
    std::vector<double> edges(panels + 1);
    for (int k = 0; k <= panels; ++k) {
        const double t = static_cast<double>(k) / panels;
        if (std::abs(ur[0] - ul[0]) < 1e-14 * ul[0]) {
            edges[k] = t;
        } else {
            const double h = ul[0] * std::pow(ur[0] / ul[0], t);
            edges[k] = (h - ul[0]) / (ur[0] - ul[0]);
        }
    }
    edges.front() = 0.0;
    edges.back() = 1.0;
    Vec acc = Vec::Zero(ul.size());
    for (int k = 0; k < panels; ++k) {
        const double mid = 0.5 * (edges[k] + edges[k + 1]);
        const double half = 0.5 * (edges[k + 1] - edges[k]);
        for (std::size_t q = 0; q < kGaussX.size(); ++q) {
            const double s = mid + half * kGaussX[q];
            const Vec u = ul + s * du;
            acc += half * kGaussW[q] * (model.nonconservative_matrix(primitive_of(u)) * du);
        }
    }
    return acc;
}

/// Eigenvalues of the linearized moment system: u_m and u_m +- sqrt(gh + sum 3 alpha_i^2 / (2i+1)).
inline std::vector<double> linearized_eigenvalues(const Primitive& p, double g)
{
    double s = g * p.h;
    for (int i = 1; i <= p.moments(); ++i)
        s += 3.0 * p.alpha[i - 1] * p.alpha[i - 1] / (2.0 * i + 1.0);
    std::vector<double> out(p.moments(), p.um);
    out.push_back(p.um - std::sqrt(s));
    out.push_back(p.um + std::sqrt(s));
    std::sort(out.begin(), out.end());
    return out;
}

/// Plain first-order HLL finite volumes for the shallow water equations on a
/// flat bottom: Roe-average wave speeds, forward Euler, global CFL step,
/// transmissive boundaries, last step shortened to hit t_end.
struct SweState {
    double h;
    double q;
};

inline std::vector<SweState> hll_swe(std::vector<SweState> w, double dx, double g, double cfl, double t_end)
{
    const std::size_t n = w.size();
    auto flux = [g](const SweState& s) { return SweState{s.q, s.q * s.q / s.h + 0.5 * g * s.h * s.h}; };
    std::vector<SweState> fl(n + 1);
    double t = 0.0;
    while (t < t_end) {
        double smax = 0.0;
        for (const SweState& s : w)
            smax = std::max(smax, std::abs(s.q / s.h) + std::sqrt(g * s.h));
        double dt = cfl * dx / smax;
        const bool last = t + dt >= t_end;
        if (last)
            dt = t_end - t;
        for (std::size_t f = 0; f <= n; ++f) {
            const SweState& l = w[f == 0 ? 0 : f - 1];
            const SweState& r = w[f == n ? n - 1 : f];
            const double rl = std::sqrt(l.h);
            const double rr = std::sqrt(r.h);
            const double uhat = (rl * l.q / l.h + rr * r.q / r.h) / (rl + rr);
            const double c = std::sqrt(0.5 * g * (l.h + r.h));
            const double sl = uhat - c;
            const double sr = uhat + c;
            const SweState fl_l = flux(l);
            const SweState fl_r = flux(r);
            if (sl >= 0.0) {
                fl[f] = fl_l;
            } else if (sr <= 0.0) {
                fl[f] = fl_r;
            } else {
                const double inv = 1.0 / (sr - sl);
                fl[f] = {(sr * fl_l.h - sl * fl_r.h + sl * sr * (r.h - l.h)) * inv,
                         (sr * fl_l.q - sl * fl_r.q + sl * sr * (r.q - l.q)) * inv};
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            w[i].h -= dt / dx * (fl[i + 1].h - fl[i].h);
            w[i].q -= dt / dx * (fl[i + 1].q - fl[i].q);
        }
        t = last ? t_end : t + dt;
    }
    return w;
}

/// Random conserved state with h in [hmin, hmax] and |u|, |alpha_i| <= vmax.
inline Vec random_state(std::mt19937_64& rng, int n, double hmin, double hmax, double vmax)
{
    std::uniform_real_distribution<double> hd(hmin, hmax);
    std::uniform_real_distribution<double> vd(-vmax, vmax);
    Vec u(n + 2);
    u[0] = hd(rng);
    for (int k = 1; k < n + 2; ++k)
        u[k] = u[0] * vd(rng);
    return u;
}

} // namespace swme::oracle
