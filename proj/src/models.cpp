#include "swme/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "swme/polynomial.hpp"

namespace swme {

namespace {

constexpr double kImagTolerance = 1e-10;

double weighted_square_sum(const Vec& alpha)
{
    double s = 0.0;
    for (int i = 1; i <= alpha.size(); ++i)
        s += alpha[i - 1] * alpha[i - 1] / (2.0 * i + 1.0);
    return s;
}

// Mass row, momentum row of the SWLME family and the 2 alpha_i column shared
// by every model.
Mat base_jacobian(const Primitive& p, double g)
{
    const int n = p.moments();
    Mat j = Mat::Zero(n + 2, n + 2);
    j(0, 1) = 1.0;
    j(1, 0) = g * p.h - p.um * p.um - weighted_square_sum(p.alpha);
    j(1, 1) = 2.0 * p.um;
    for (int i = 1; i <= n; ++i) {
        j(1, 1 + i) = 2.0 * p.alpha[i - 1] / (2.0 * i + 1.0);
        j(1 + i, 1) = 2.0 * p.alpha[i - 1];
    }
    return j;
}

Vec base_flux(const Vec& u, double g)
{
    const int n = static_cast<int>(u.size()) - 2;
    const double h = u[0];
    const double um = u[1] / h;
    Vec f = Vec::Zero(n + 2);
    f[0] = u[1];
    f[1] = u[1] * um + 0.5 * g * h * h;
    for (int i = 1; i <= n; ++i) {
        const double a = u[1 + i] / h;
        f[1] += h * a * a / (2.0 * i + 1.0);
    }
    return f;
}

} // namespace

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::SWE: return "swe";
    case ModelKind::SWME1: return "swme1";
    case ModelKind::SWME2: return "swme2";
    case ModelKind::SWMEGeneral: return "swme";
    case ModelKind::SWLME: return "swlme";
    case ModelKind::HSWME: return "hswme";
    case ModelKind::BetaHSWME: return "betahswme";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name)
{
    for (auto kind : {ModelKind::SWE, ModelKind::SWME1, ModelKind::SWME2, ModelKind::SWMEGeneral, ModelKind::SWLME,
                      ModelKind::HSWME, ModelKind::BetaHSWME})
        if (name == to_string(kind))
            return kind;
    if (name == "beta-hswme")
        return ModelKind::BetaHSWME;
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

void ModelSpec::validate() const
{
    if (order < 0 || order > kMaxMoments)
        throw std::invalid_argument("model order must be in [0, " + std::to_string(kMaxMoments) + "], got " +
                                    std::to_string(order));
    if (!(gravity > 0.0) || !std::isfinite(gravity))
        throw std::invalid_argument("gravity must be positive");
    auto expect = [&](int n) {
        if (order != n)
            throw std::invalid_argument(std::string(to_string(kind)) + " requires N=" + std::to_string(n) +
                                        ", got N=" + std::to_string(order));
    };
    switch (kind) {
    case ModelKind::SWE: expect(0); break;
    case ModelKind::SWME1: expect(1); break;
    case ModelKind::SWME2: expect(2); break;
    default: break;
    }
}

bool Spectrum::is_real() const
{
    return std::all_of(values.begin(), values.end(), [](const std::complex<double>& z) {
        return std::abs(z.imag()) <= kImagTolerance * (1.0 + std::abs(z.real()));
    });
}

Vec Spectrum::real_parts() const
{
    Vec out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k)
        out[static_cast<Eigen::Index>(k)] = values[k].real();
    std::sort(out.data(), out.data() + out.size());
    return out;
}

Spectrum numerical_spectrum(const Mat& a)
{
    Eigen::EigenSolver<Mat> solver(a, false);
    if (solver.info() != Eigen::Success)
        throw Error("eigensolver did not converge");
    Spectrum s;
    const auto& ev = solver.eigenvalues();
    s.values.assign(ev.data(), ev.data() + ev.size());
    return s;
}

Model::Model(ModelSpec spec) : spec_(spec) { spec_.validate(); }

void Model::check_state(const Vec& u, const char* where) const
{
    if (u.size() != size())
        throw InvalidState(std::string(where) + ": expected " + std::to_string(size()) + " unknowns, got " +
                           std::to_string(u.size()));
    require_wet(u[0], where);
}

Vec Model::source(const Vec& u) const
{
    check_state(u, "source");
    Vec s = Vec::Zero(size());
    s[1] = -gravity() * u[0];
    return s;
}

Mat Model::system_matrix(const Vec& u) const
{
    check_state(u, "system_matrix");
    return system_matrix(to_primitive(u));
}

Spectrum Model::eigenvalues(const Vec& u) const
{
    if (moments() == 0) {
        // Every model reduces to the shallow water equations.
        check_state(u, "eigenvalues");
        const double um = u[1] / u[0];
        const double c = std::sqrt(gravity() * u[0]);
        return Spectrum{{um + c, um - c}};
    }
    return numerical_spectrum(system_matrix(u));
}

double Model::max_wave_speed(const Vec& u) const
{
    double m = 0.0;
    for (const auto& z : eigenvalues(u).values)
        m = std::max(m, std::abs(z.real()));
    return m;
}

std::pair<double, double> Model::speed_bounds(const Mat& a) const
{
    if (a.rows() == 2) {
        const auto r = real_quadratic_roots(1.0, -a(1, 1), -a(1, 0));
        if (r.size() == 2)
            return {r[0], r[1]};
    }
    const Vec re = numerical_spectrum(a).real_parts();
    return {re[0], re[re.size() - 1]};
}

// ---------------------------------------------------------------------------

LinearizedMomentModel::LinearizedMomentModel(ModelSpec spec) : Model(spec)
{
    if (spec.kind != ModelKind::SWE && spec.kind != ModelKind::SWME1 && spec.kind != ModelKind::SWLME)
        throw std::invalid_argument("LinearizedMomentModel: unsupported kind");
}

Vec LinearizedMomentModel::flux(const Vec& u) const
{
    check_state(u, "flux");
    Vec f = base_flux(u, gravity());
    for (int i = 1; i <= moments(); ++i)
        f[1 + i] = 2.0 * u[1] * u[1 + i] / u[0];
    return f;
}

Mat LinearizedMomentModel::flux_jacobian(const Primitive& p) const
{
    Mat j = base_jacobian(p, gravity());
    for (int i = 1; i <= moments(); ++i) {
        j(1 + i, 0) = -2.0 * p.um * p.alpha[i - 1];
        j(1 + i, 1 + i) = 2.0 * p.um;
    }
    return j;
}

Mat LinearizedMomentModel::nonconservative_matrix(const Primitive& p) const
{
    Mat b = Mat::Zero(size(), size());
    for (int i = 1; i <= moments(); ++i)
        b(1 + i, 1 + i) = -p.um;
    return b;
}

std::pair<double, double> LinearizedMomentModel::gravity_wave_speeds(const Vec& u) const
{
    check_state(u, "eigenvalues");
    const Primitive p = to_primitive(u);
    const double c = std::sqrt(gravity() * p.h + 3.0 * weighted_square_sum(p.alpha));
    return {p.um + c, p.um - c};
}

Spectrum LinearizedMomentModel::eigenvalues(const Vec& u) const
{
    const auto [plus, minus] = gravity_wave_speeds(u);
    const double um = u[1] / u[0];
    Spectrum s;
    s.values.reserve(size());
    s.values.emplace_back(plus);
    s.values.emplace_back(minus);
    for (int i = 0; i < moments(); ++i)
        s.values.emplace_back(um);
    return s;
}

double LinearizedMomentModel::max_wave_speed(const Vec& u) const
{
    const auto [plus, minus] = gravity_wave_speeds(u);
    return std::max(std::abs(plus), std::abs(minus));
}

std::pair<double, double> LinearizedMomentModel::speed_bounds(const Mat& a) const
{
    const int n = moments();
    const double a10 = a(1, 0);
    const double a11 = a(1, 1);
    if (n == 0)
        return Model::speed_bounds(a);
    // Alpha block is c I; eliminating it leaves
    // (lambda - c)(lambda^2 - a11 lambda - a10) - Rf lambda - Re = 0.
    const double c = a(2, 2);
    double rf = 0.0;
    double re = 0.0;
    for (int i = 1; i <= n; ++i) {
        rf += a(1, 1 + i) * a(1 + i, 1);
        re += a(1, 1 + i) * a(1 + i, 0);
    }
    const auto r = real_cubic_roots(1.0, -(a11 + c), a11 * c - a10 - rf, c * a10 - re);
    if (r.size() != 3)
        return Model::speed_bounds(a);
    double lo = r.front();
    double hi = r.back();
    if (n > 1) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return {lo, hi};
}

Mat LinearizedMomentModel::eigenvectors(const Vec& u) const
{
    const auto [plus, minus] = gravity_wave_speeds(u);
    const Primitive p = to_primitive(u);
    const int n = moments();
    Mat v = Mat::Zero(n + 2, n + 2);
    int col = 0;
    for (double lambda : {plus, minus}) {
        v(0, col) = 1.0;
        v(1, col) = lambda;
        for (int i = 1; i <= n; ++i)
            v(1 + i, col) = 2.0 * p.alpha[i - 1];
        ++col;
    }
    if (n == 0)
        return v;

    const double gh = gravity() * p.h;
    const double s1 = weighted_square_sum(p.alpha);
    if (std::abs(gh - s1) > 1e-12 * (gh + s1)) {
        // (A - u I) v = 0 leaves one condition on the momentum row.
        for (int k = 1; k <= n; ++k) {
            const double x0 = -2.0 * p.alpha[k - 1] / ((2.0 * k + 1.0) * (gh - s1));
            v(0, col) = x0;
            v(1, col) = p.um * x0;
            v(1 + k, col) = 1.0;
            ++col;
        }
        return v;
    }
    Mat shifted = system_matrix(p) - p.um * Mat::Identity(n + 2, n + 2);
    Eigen::FullPivLU<Mat> lu(shifted);
    const Mat kernel = lu.kernel();
    if (kernel.cols() != n)
        throw Error("eigenvectors: defective eigenspace for lambda = u_m");
    v.rightCols(n) = kernel;
    return v;
}

// ---------------------------------------------------------------------------

SwmeSecondOrderModel::SwmeSecondOrderModel(ModelSpec spec) : Model(spec) {}

Vec SwmeSecondOrderModel::flux(const Vec& u) const
{
    check_state(u, "flux");
    Vec f = base_flux(u, gravity());
    const double h = u[0];
    const double um = u[1] / h;
    const double a1 = u[2] / h;
    const double a2 = u[3] / h;
    f[2] = 2.0 * h * um * a1 + 0.8 * h * a1 * a2;
    f[3] = 2.0 * h * um * a2 + (2.0 / 3.0) * h * a1 * a1 + (2.0 / 7.0) * h * a2 * a2;
    return f;
}

Mat SwmeSecondOrderModel::flux_jacobian(const Primitive& p) const
{
    Mat j = base_jacobian(p, gravity());
    const double um = p.um;
    const double a1 = p.alpha[0];
    const double a2 = p.alpha[1];
    j(2, 0) = -2.0 * a1 * um - 0.8 * a1 * a2;
    j(2, 2) = 2.0 * um + 0.8 * a2;
    j(2, 3) = 0.8 * a1;
    j(3, 0) = -(2.0 / 3.0) * a1 * a1 - 2.0 * a2 * um - (2.0 / 7.0) * a2 * a2;
    j(3, 2) = (4.0 / 3.0) * a1;
    j(3, 3) = 2.0 * um + (4.0 / 7.0) * a2;
    return j;
}

Mat SwmeSecondOrderModel::nonconservative_matrix(const Primitive& p) const
{
    const double um = p.um;
    const double a1 = p.alpha[0];
    const double a2 = p.alpha[1];
    Mat b = Mat::Zero(4, 4);
    b(2, 2) = -(um - a2 / 5.0);
    b(2, 3) = -a1 / 5.0;
    b(3, 2) = -a1;
    b(3, 3) = -(um + a2 / 7.0);
    return b;
}

// ---------------------------------------------------------------------------

SwmeGeneralModel::SwmeGeneralModel(ModelSpec spec)
    : Model(spec), tensors_(compute_moment_tensors(BasisSet(spec.order)))
{
}

Vec SwmeGeneralModel::flux(const Vec& u) const
{
    check_state(u, "flux");
    Vec f = base_flux(u, gravity());
    const int n = moments();
    const double h = u[0];
    const double um = u[1] / h;
    const Vec alpha = u.tail(n) / h;
    for (int i = 1; i <= n; ++i) {
        double quad = 0.0;
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                quad += tensors_.A(i, j, k) * alpha[j - 1] * alpha[k - 1];
        f[1 + i] = 2.0 * h * um * alpha[i - 1] + h * quad;
    }
    return f;
}

Mat SwmeGeneralModel::flux_jacobian(const Primitive& p) const
{
    Mat jac = base_jacobian(p, gravity());
    const int n = moments();
    for (int i = 1; i <= n; ++i) {
        double quad = 0.0;
        for (int m = 1; m <= n; ++m) {
            double lin = 0.0;
            for (int k = 1; k <= n; ++k) {
                lin += tensors_.A(i, m, k) * p.alpha[k - 1];
                quad += tensors_.A(i, m, k) * p.alpha[m - 1] * p.alpha[k - 1];
            }
            jac(1 + i, 1 + m) = 2.0 * lin + (i == m ? 2.0 * p.um : 0.0);
        }
        jac(1 + i, 0) = -2.0 * p.um * p.alpha[i - 1] - quad;
    }
    return jac;
}

Mat SwmeGeneralModel::nonconservative_matrix(const Primitive& p) const
{
    const int n = moments();
    Mat b = Mat::Zero(n + 2, n + 2);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            double q = (i == j) ? p.um : 0.0;
            for (int k = 1; k <= n; ++k)
                q -= tensors_.B(i, j, k) * p.alpha[k - 1];
            b(1 + i, 1 + j) = -q;
        }
    return b;
}

// ---------------------------------------------------------------------------

HyperbolicMomentModel::HyperbolicMomentModel(ModelSpec spec)
    : Model(spec), beta_(spec.kind == ModelKind::BetaHSWME)
{
}

Vec HyperbolicMomentModel::flux(const Vec& u) const
{
    check_state(u, "flux");
    const int n = moments();
    const double h = u[0];
    Vec f = Vec::Zero(n + 2);
    f[0] = u[1];
    f[1] = u[1] * (u[1] / h) + 0.5 * gravity() * h * h;
    if (n >= 1) {
        const double a1 = u[2] / h;
        f[1] += h * a1 * a1 / 3.0;
        f[2] = 2.0 * u[1] * a1;
        if (n >= 2)
            f[3] = (2.0 / 3.0) * h * a1 * a1;
    }
    return f;
}

Mat HyperbolicMomentModel::flux_jacobian(const Primitive& p) const
{
    const int n = moments();
    Mat j = Mat::Zero(n + 2, n + 2);
    j(0, 1) = 1.0;
    j(1, 0) = gravity() * p.h - p.um * p.um;
    j(1, 1) = 2.0 * p.um;
    if (n >= 1) {
        const double a1 = p.alpha[0];
        j(1, 0) -= a1 * a1 / 3.0;
        j(1, 2) = 2.0 * a1 / 3.0;
        j(2, 0) = -2.0 * p.um * a1;
        j(2, 1) = 2.0 * a1;
        j(2, 2) = 2.0 * p.um;
        if (n >= 2) {
            j(3, 0) = -(2.0 / 3.0) * a1 * a1;
            j(3, 2) = (4.0 / 3.0) * a1;
        }
    }
    return j;
}

Mat HyperbolicMomentModel::nonconservative_matrix(const Primitive& p) const
{
    const int n = moments();
    Mat b = Mat::Zero(n + 2, n + 2);
    if (n == 0)
        return b;
    const double a1 = p.alpha[0];
    // Moment indices are 1-based; row/column offset 1.
    b(2, 2) = -p.um;
    for (int i = 2; i <= n; ++i)
        b(1 + i, 1 + i) = p.um;
    for (int i = 1; i < n; ++i)
        b(1 + i, 2 + i) = (i + 2.0) / (2.0 * i + 3.0) * a1;
    if (n >= 2)
        b(3, 2) = -a1;
    for (int i = 3; i <= n; ++i)
        b(1 + i, i) = (i - 1.0) / (2.0 * i - 1.0) * a1;
    if (beta_ && n >= 2) {
        const double nn = n;
        b(1 + n, n) += (nn * nn - nn) / (2.0 * nn * nn + nn - 1.0) * a1;
    }
    return b;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Model> make_model(const ModelSpec& spec)
{
    spec.validate();
    switch (spec.kind) {
    case ModelKind::SWE:
    case ModelKind::SWME1:
    case ModelKind::SWLME: return std::make_shared<LinearizedMomentModel>(spec);
    case ModelKind::SWME2: return std::make_shared<SwmeSecondOrderModel>(spec);
    case ModelKind::SWMEGeneral: return std::make_shared<SwmeGeneralModel>(spec);
    case ModelKind::HSWME:
    case ModelKind::BetaHSWME: return std::make_shared<HyperbolicMomentModel>(spec);
    }
    throw std::invalid_argument("make_model: unknown kind");
}

std::vector<HyperbolicitySample> hyperbolicity_scan(const Model& model, const ScanGrid& grid)
{
    if (model.moments() < 2)
        throw std::invalid_argument("hyperbolicity_scan needs at least two moments");
    if (grid.samples < 2 || !(grid.alpha_max > grid.alpha_min))
        throw std::invalid_argument("hyperbolicity_scan: invalid grid");
    require_wet(grid.h, "hyperbolicity_scan");

    std::vector<HyperbolicitySample> out;
    out.reserve(static_cast<std::size_t>(grid.samples) * grid.samples);
    const double step = (grid.alpha_max - grid.alpha_min) / (grid.samples - 1);
    Primitive p;
    p.h = grid.h;
    p.um = grid.um;
    p.alpha = Vec::Zero(model.moments());
    for (int a = 0; a < grid.samples; ++a) {
        for (int c = 0; c < grid.samples; ++c) {
            p.alpha[0] = grid.alpha_min + a * step;
            p.alpha[1] = grid.alpha_min + c * step;
            const bool real = model.eigenvalues(to_conserved(p)).is_real();
            out.push_back({p.alpha[0], p.alpha[1], real});
        }
    }
    return out;
}

std::string hyperbolicity_csv(const std::vector<HyperbolicitySample>& samples)
{
    std::ostringstream os;
    os.precision(10);
    os << "alpha1,alpha2,is_hyperbolic\n";
    for (const auto& s : samples)
        os << s.alpha1 << ',' << s.alpha2 << ',' << (s.hyperbolic ? 1 : 0) << '\n';
    return os.str();
}

} // namespace swme
