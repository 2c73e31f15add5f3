#include "swme/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include <Eigen/QR>

#include "swme/steady.hpp"

namespace swme {

namespace {

// (r - log(1 + r)) / r^2, with a series near r = 0 where the direct form
// cancels.
double log_ratio_weight(double r)
{
    if (std::abs(r) < 1e-2) {
        double term = 1.0;
        double sum = 0.0;
        for (int k = 0; k <= 8; ++k) {
            sum += term / (k + 2.0);
            term *= -r;
        }
        return sum;
    }
    return (r - std::log1p(r)) / (r * r);
}

bool has_positive_height(const CellTrace& t)
{
    return t.left.u[0] > kDryTolerance && t.right.u[0] > kDryTolerance;
}

bool supports_steady_states(ModelKind kind)
{
    return kind == ModelKind::SWE || kind == ModelKind::SWME1 || kind == ModelKind::SWLME;
}

} // namespace

std::pair<double, double> path_weights(double hl, double hr)
{
    require_wet(hl, "path_weights");
    require_wet(hr, "path_weights");
    const double wr = (hr / hl) * log_ratio_weight((hr - hl) / hl);
    return {1.0 - wr, wr};
}

RoeData roe_averages(const Model& model, const Vec& ul, const Vec& ur)
{
    const Primitive pl = to_primitive(ul);
    const Primitive pr = to_primitive(ur);
    const double sl = std::sqrt(pl.h);
    const double sr = std::sqrt(pr.h);

    RoeData roe;
    roe.h = 0.5 * (pl.h + pr.h);
    roe.um = (sl * pl.um + sr * pr.um) / (sl + sr);
    roe.alpha = (sl * pl.alpha + sr * pr.alpha) / (sl + sr);

    const auto [wl, wr] = path_weights(pl.h, pr.h);
    roe.path.h = roe.h;
    roe.path.um = wl * pl.um + wr * pr.um;
    roe.path.alpha = wl * pl.alpha + wr * pr.alpha;

    roe.b = model.nonconservative_matrix(roe.path);
    roe.a = model.flux_jacobian(Primitive{roe.h, roe.um, roe.alpha}) + roe.b;
    roe.s = Vec::Zero(model.size());
    roe.s[1] = -model.gravity() * roe.h;
    return roe;
}

Fluctuations pvm_hll_fluctuations(const Model& model, const Vec& ul, const Vec& ur, double bl, double br)
{
    const RoeData roe = roe_averages(model, ul, ur);
    const Vec du = ur - ul;
    const double db = br - bl;
    const Vec source = roe.s * db;
    const Vec central = model.flux(ur) - model.flux(ul) + roe.b * du - source;

    Fluctuations out;
    std::tie(out.smin, out.smax) = model.speed_bounds(roe.a);
    if (!(out.smax > out.smin))
        throw Error("pvm_hll_fluctuations: degenerate wave speeds");
    const double width = out.smax - out.smin;
    const double a0 = (out.smax * std::abs(out.smin) - out.smin * std::abs(out.smax)) / width;
    const double a1 = (std::abs(out.smax) - std::abs(out.smin)) / width;

    Vec viscous = a0 * du + a1 * (roe.a * du - source);
    if (db != 0.0 && a0 != 0.0) {
        Eigen::FullPivLU<Mat> lu(roe.a);
        if (lu.isInvertible()) {
            viscous -= a0 * lu.solve(source);
        } else {
            const Eigen::CompleteOrthogonalDecomposition<Mat> cod(roe.a);
            const Vec x = cod.solve(source);
            if ((roe.a * x - source).norm() <= 1e-10 * std::max(1.0, source.norm()))
                viscous -= a0 * x;
            else
                out.resonant = true;
        }
    }
    out.minus = 0.5 * (central - viscous);
    out.plus = 0.5 * (central + viscous);
    return out;
}

double minmod(double a, double b, double c)
{
    if (a > 0.0 && b > 0.0 && c > 0.0)
        return std::min({a, b, c});
    if (a < 0.0 && b < 0.0 && c < 0.0)
        return std::max({a, b, c});
    return 0.0;
}

SemiDiscretization::SemiDiscretization(std::shared_ptr<const Model> model, Grid grid, Topography bottom,
                                       SchemeOptions options)
    : model_(std::move(model)), grid_(grid), topography_(std::move(bottom)), options_(options)
{
    if (!model_)
        throw std::invalid_argument("SemiDiscretization: no model");
    if (grid_.cells < 1 || !(grid_.x_max > grid_.x_min))
        throw std::invalid_argument("SemiDiscretization: invalid grid");
    if (options_.order != 1 && options_.order != 2)
        throw std::invalid_argument("SemiDiscretization: order must be 1 or 2");
    if (options_.well_balanced && !supports_steady_states(model_->kind()))
        throw std::invalid_argument("well-balanced reconstruction requires an SWE, SWME1 or SWLME model");
    if (!topography_)
        topography_ = [](double) { return 0.0; };

    const int n = grid_.cells;
    bottom_.resize(n);
    for (int i = 0; i < n; ++i)
        bottom_[i] = topography_(grid_.center(i));
    face_bottom_.resize(n + 1);
    for (int i = 0; i <= n; ++i)
        face_bottom_[i] = topography_(grid_.face(i));
    padded_bottom_.resize(n + 2 * kGhosts);
    for (int p = 0; p < n + 2 * kGhosts; ++p)
        padded_bottom_[p] = bottom_[std::clamp(p - kGhosts, 0, n - 1)];
}

void SemiDiscretization::fill_padded(const std::vector<Vec>& u) const
{
    const int n = grid_.cells;
    if (static_cast<int>(u.size()) != n)
        throw std::invalid_argument("SemiDiscretization: expected " + std::to_string(n) + " cells");
    padded_.resize(n + 2 * kGhosts);
    for (int p = 0; p < n + 2 * kGhosts; ++p) {
        const Vec& src = u[std::clamp(p - kGhosts, 0, n - 1)];
        if (src.size() != model_->size())
            throw InvalidState("SemiDiscretization: state size does not match the model");
        require_wet(src[0], "semidiscrete_rhs");
        padded_[p] = src;
    }
}

CellTrace SemiDiscretization::constant_trace(int p) const
{
    const int m = model_->size();
    const Vec& w = padded_[p];
    const double b = padded_bottom_[p];
    CellTrace t{State(w, b), State(w, b), Vec::Zero(m), 0.0, false, false};
    const bool ghost = p < kGhosts || p >= grid_.cells + kGhosts;
    if (options_.order == 1 || ghost)
        return t;

    const double dx = grid_.dx();
    const Vec vl = padded_[p - 1] - w;
    const Vec vr = padded_[p + 1] - w;
    for (int k = 0; k < m; ++k)
        t.slope[k] = minmod(-vl[k] / dx, (vr[k] - vl[k]) / (2.0 * dx), vr[k] / dx);
    const double bl = padded_bottom_[p - 1] - b;
    const double br = padded_bottom_[p + 1] - b;
    t.slope_b = minmod(-bl / dx, (br - bl) / (2.0 * dx), br / dx);

    t.left = State(w - 0.5 * dx * t.slope, b - 0.5 * dx * t.slope_b);
    t.right = State(w + 0.5 * dx * t.slope, b + 0.5 * dx * t.slope_b);
    if (!has_positive_height(t)) {
        t.slope.setZero();
        t.slope_b = 0.0;
        t.left = State(w, b);
        t.right = State(w, b);
    }
    return t;
}

CellTrace SemiDiscretization::steady_trace(int p) const
{
    const int i = p - kGhosts;
    const int m = model_->size();
    const double g = model_->gravity();
    const Vec& w = padded_[p];
    const SteadyConstants c = constants_from_state(w, padded_bottom_[p], g);
    const RegimeSelection sel = select_regimes(padded_[p - 1], w, padded_[p + 1], g);

    CellTrace t;
    t.transcritical = sel.transcritical;
    t.slope = Vec::Zero(m);
    // The cell's own height is a good Newton start on its own branch.
    const double h = w[0];
    const Vec face_l = evaluate_steady_state(c, face_bottom_[i], sel.left, h);
    const Vec face_r = evaluate_steady_state(c, face_bottom_[i + 1], sel.right, h);
    t.left = State(face_l, face_bottom_[i]);
    t.right = State(face_r, face_bottom_[i + 1]);

    if (options_.order == 2) {
        const double dx = grid_.dx();
        const Vec vl = padded_[p - 1] - evaluate_steady_state(c, padded_bottom_[p - 1], sel.left, face_l[0]);
        const Vec vr = padded_[p + 1] - evaluate_steady_state(c, padded_bottom_[p + 1], sel.right, face_r[0]);
        for (int k = 0; k < m; ++k)
            t.slope[k] = minmod(-vl[k] / dx, (vr[k] - vl[k]) / (2.0 * dx), vr[k] / dx);
        CellTrace limited = t;
        limited.left.u -= 0.5 * dx * t.slope;
        limited.right.u += 0.5 * dx * t.slope;
        if (has_positive_height(limited))
            return limited;
        t.slope.setZero();
    }
    if (!has_positive_height(t))
        throw InvalidState("steady extension lost positivity");
    return t;
}

CellTrace SemiDiscretization::trace_cell(int p) const
{
    const bool ghost = p < kGhosts || p >= grid_.cells + kGhosts;
    if (ghost || !options_.well_balanced)
        return constant_trace(p);
    try {
        return steady_trace(p);
    } catch (const Error&) {
        CellTrace t = constant_trace(p);
        t.fallback = true;
        return t;
    }
}

std::vector<CellTrace> SemiDiscretization::reconstruct(const std::vector<Vec>& u) const
{
    fill_padded(u);
    std::vector<CellTrace> out;
    out.reserve(grid_.cells);
    for (int i = 0; i < grid_.cells; ++i)
        out.push_back(trace_cell(i + kGhosts));
    return out;
}

RhsDiagnostics SemiDiscretization::rhs(const std::vector<Vec>& u, std::vector<Vec>& out) const
{
    fill_padded(u);
    const int n = grid_.cells;
    const double dx = grid_.dx();
    RhsDiagnostics diag;

    // Traces of cells -1 .. n (one ghost on each side).
    traces_.resize(n + 2);
    for (int k = 0; k < n + 2; ++k) {
        traces_[k] = trace_cell(k + kGhosts - 1);
        if (k >= 1 && k <= n) {
            diag.fallback_cells += traces_[k].fallback ? 1 : 0;
            diag.transcritical_cells += traces_[k].transcritical ? 1 : 0;
        }
    }

    out.resize(n);
    for (int i = 0; i < n; ++i)
        out[i] = Vec::Zero(model_->size());
    // Face f separates cell f-1 and cell f (trace indices f and f+1).
    for (int f = 0; f <= n; ++f) {
        const CellTrace& lt = traces_[f];
        const CellTrace& rt = traces_[f + 1];
        const Fluctuations d = pvm_hll_fluctuations(*model_, lt.right.u, rt.left.u, lt.right.b, rt.left.b);
        diag.resonant_interfaces += d.resonant ? 1 : 0;
        if (f > 0)
            out[f - 1] -= d.minus / dx;
        if (f < n)
            out[f] -= d.plus / dx;
    }

    if (options_.order == 2) {
        for (int i = 0; i < n; ++i) {
            const CellTrace& t = traces_[i + 1];
            if (t.slope.isZero(0.0) && t.slope_b == 0.0)
                continue;
            out[i] -= model_->system_matrix(u[i]) * t.slope;
            out[i][1] -= model_->gravity() * u[i][0] * t.slope_b;
        }
    }
    return diag;
}

std::vector<Vec> semidiscrete_rhs(const SemiDiscretization& scheme, const std::vector<Vec>& u)
{
    std::vector<Vec> out;
    scheme.rhs(u, out);
    return out;
}

} // namespace swme
