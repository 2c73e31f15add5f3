#include <doctest.h>

#include <cmath>
#include <random>

#include "swme/models.hpp"

using namespace swme;
using doctest::Approx;

namespace {

const ModelKind kAllKinds[] = {ModelKind::SWE,   ModelKind::SWME1, ModelKind::SWME2,    ModelKind::SWMEGeneral,
                               ModelKind::SWLME, ModelKind::HSWME, ModelKind::BetaHSWME};

int natural_order(ModelKind kind, int n)
{
    switch (kind) {
    case ModelKind::SWE: return 0;
    case ModelKind::SWME1: return 1;
    case ModelKind::SWME2: return 2;
    default: return n;
    }
}

Primitive make_primitive(double h, double um, std::initializer_list<double> alpha)
{
    Primitive p{h, um, Vec(static_cast<Eigen::Index>(alpha.size()))};
    int i = 0;
    for (double a : alpha)
        p.alpha[i++] = a;
    return p;
}

Primitive random_primitive(std::mt19937& rng, int n)
{
    std::uniform_real_distribution<double> hd(0.5, 3.0), ud(-1.5, 1.5), ad(-0.6, 0.6);
    Primitive p{hd(rng), ud(rng), Vec(n)};
    for (int i = 0; i < n; ++i)
        p.alpha[i] = ad(rng);
    return p;
}

Mat fd_jacobian(const Model& m, const Vec& u)
{
    const int n = m.size();
    Mat j(n, n);
    for (int c = 0; c < n; ++c) {
        const double step = 1e-6 * std::max(1.0, std::abs(u[c]));
        Vec up = u, dn = u;
        up[c] += step;
        dn[c] -= step;
        j.col(c) = (m.flux(up) - m.flux(dn)) / (2 * step);
    }
    return j;
}

double max_abs(const Mat& a) { return a.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("ModelSpec validation")
{
    CHECK_THROWS(make_model({ModelKind::SWE, 2, 1.0}));
    CHECK_THROWS(make_model({ModelKind::SWME2, 3, 1.0}));
    CHECK_THROWS(make_model({ModelKind::SWLME, kMaxMoments + 1, 1.0}));
    CHECK_THROWS(make_model({ModelKind::SWLME, 2, 0.0}));
    CHECK(parse_model_kind("betahswme") == ModelKind::BetaHSWME);
    CHECK_THROWS(parse_model_kind("euler"));
    const auto m = make_model({ModelKind::SWLME, 2, 1.0});
    CHECK_THROWS_AS(m->flux(Vec::Constant(4, 0.0)), InvalidState);
    CHECK_THROWS_AS(m->flux(Vec::Constant(3, 1.0)), InvalidState);
}

TEST_CASE("flux examples")
{
    const auto swe = make_model({ModelKind::SWE, 0, 1.0});
    Vec u(2);
    u << 1.0, 0.0;
    const Vec f = swe->flux(u);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == Approx(0.5));

    const Vec s = to_conserved(make_primitive(1, 1, {1, 1}));
    const Vec fl = make_model({ModelKind::SWLME, 2, 1.0})->flux(s);
    CHECK(fl[0] == Approx(1));
    CHECK(fl[1] == Approx(1 + 0.5 + 1.0 / 3 + 0.2));
    CHECK(fl[2] == Approx(2));
    CHECK(fl[3] == Approx(2));

    CHECK(make_model({ModelKind::SWME2, 2, 1.0})->flux(s)[2] == Approx(2.8));

    const Vec s3 = to_conserved(make_primitive(2, 0.5, {0.3, -0.2, 0.1}));
    for (auto kind : {ModelKind::HSWME, ModelKind::BetaHSWME}) {
        const Vec fh = make_model({kind, 3, 1.0})->flux(s3);
        CHECK(fh[2] == Approx(2 * 2 * 0.5 * 0.3));
        CHECK(fh[3] == Approx(2.0 / 3 * 2 * 0.09));
        CHECK(fh[4] == 0.0);
    }
}

TEST_CASE("nonconservative matrix examples")
{
    const auto lin = make_model({ModelKind::SWLME, 3, 1.0});
    const Mat b = lin->nonconservative_matrix(make_primitive(1, 2, {0.1, 0.2, 0.3}));
    Mat expected = Mat::Zero(5, 5);
    expected.diagonal() << 0, 0, -2, -2, -2;
    CHECK(max_abs(b - expected) == 0.0);

    for (int n : {2, 3, 8}) {
        const double a1 = 0.37;
        const Primitive p = [&] {
            Primitive q{1.0, 0.4, Vec::Zero(n)};
            q.alpha[0] = a1;
            return q;
        }();
        const Mat bh = make_model({ModelKind::HSWME, n, 1.0})->nonconservative_matrix(p);
        const Mat bb = make_model({ModelKind::BetaHSWME, n, 1.0})->nonconservative_matrix(p);
        const double beta = (double(n) * n - n) / (2.0 * n * n + n - 1) * a1;
        CHECK(bb(n + 1, n) == Approx(bh(n + 1, n) + beta));
        if (n >= 3)
            CHECK(bb(n + 1, n) == Approx(beta + (n - 1.0) / (2.0 * n - 1.0) * a1));
        CHECK(max_abs((bb - bh).topLeftCorner(n + 1, n + 2)) == 0.0);
        CHECK(bh(2, 2) == Approx(-0.4));
        CHECK(bh(2, 3) == Approx(0.6 * a1));
        CHECK(bh(3, 2) == Approx(-a1));
        CHECK(bh(n + 1, n + 1) == Approx(0.4));
        CHECK(bh(n, n + 1) == Approx((n + 1.0) / (2.0 * n + 1.0) * a1));
    }

    // u_m = 0 and alpha_1 = 0 give a zero matrix for every kind; only the
    // original SWME reacts to higher moments, so keep them zero.
    for (auto kind : kAllKinds) {
        const int n = natural_order(kind, 4);
        const auto m = make_model({kind, n, 9.81});
        CHECK(max_abs(m->nonconservative_matrix(Primitive{2.0, 0.0, Vec::Zero(n)})) == 0.0);
    }
}

TEST_CASE("SWLME N=2 system matrix entries")
{
    const double h = 2, um = 1, a1 = 0.5, a2 = -0.5, g = 1;
    const Mat a = make_model({ModelKind::SWLME, 2, g})->system_matrix(to_conserved(make_primitive(h, um, {a1, a2})));
    Mat e(4, 4);
    e << 0, 1, 0, 0,                                                        //
        -a1 * a1 / 3 - um * um + g * h - a2 * a2 / 5, 2 * um, 2 * a1 / 3, 2 * a2 / 5, //
        -2 * um * a1, 2 * a1, um, 0,                                        //
        -2 * um * a2, 2 * a2, 0, um;
    CHECK(max_abs(a - e) < 1e-14);
}

TEST_CASE("SWME1 system matrix")
{
    const double h = 1.5, um = -0.3, a1 = 0.7, g = 9.81;
    const Mat a = make_model({ModelKind::SWME1, 1, g})->system_matrix(to_conserved(make_primitive(h, um, {a1})));
    Mat e(3, 3);
    e << 0, 1, 0, -um * um - a1 * a1 / 3 + g * h, 2 * um, 2 * a1 / 3, -2 * um * a1, 2 * a1, um;
    CHECK(max_abs(a - e) < 1e-13);
}

TEST_CASE("SWME2 system matrix")
{
    const double h = 1.2, um = 0.3, a1 = 0.4, a2 = -0.25, g = 2.0;
    const Mat a = make_model({ModelKind::SWME2, 2, g})->system_matrix(to_conserved(make_primitive(h, um, {a1, a2})));
    CHECK(a(2, 2) == Approx(um + a2));
    CHECK(a(2, 3) == Approx(3 * a1 / 5));
    CHECK(a(3, 2) == Approx(a1 / 3));
    CHECK(a(3, 3) == Approx(um + 3 * a2 / 7));
}

TEST_CASE("analytic Jacobians match finite differences")
{
    std::mt19937 rng(11);
    for (auto kind : kAllKinds) {
        const int n = natural_order(kind, 4);
        const auto m = make_model({kind, n, 9.81});
        for (int trial = 0; trial < 20; ++trial) {
            const Primitive p = random_primitive(rng, n);
            const Vec u = to_conserved(p);
            CHECK(max_abs(m->flux_jacobian(p) - fd_jacobian(*m, u)) < 1e-6);
        }
    }
}

TEST_CASE("general SWME reduces to the hand-coded forms")
{
    std::mt19937 rng(3);
    const auto g1 = make_model({ModelKind::SWMEGeneral, 1, 9.81});
    const auto s1 = make_model({ModelKind::SWME1, 1, 9.81});
    const auto g2 = make_model({ModelKind::SWMEGeneral, 2, 9.81});
    const auto s2 = make_model({ModelKind::SWME2, 2, 9.81});
    for (int trial = 0; trial < 20; ++trial) {
        const Primitive p1 = random_primitive(rng, 1);
        CHECK(max_abs(g1->flux(to_conserved(p1)) - s1->flux(to_conserved(p1))) < 1e-13);
        CHECK(max_abs(g1->system_matrix(p1) - s1->system_matrix(p1)) < 1e-13);
        const Primitive p2 = random_primitive(rng, 2);
        CHECK(max_abs(g2->flux(to_conserved(p2)) - s2->flux(to_conserved(p2))) < 1e-13);
        CHECK(max_abs(g2->flux_jacobian(p2) - s2->flux_jacobian(p2)) < 1e-13);
        CHECK(max_abs(g2->nonconservative_matrix(p2) - s2->nonconservative_matrix(p2)) < 1e-13);
    }
}

TEST_CASE("momentum column is shared across models")
{
    std::mt19937 rng(5);
    for (auto kind : kAllKinds) {
        const int n = natural_order(kind, 5);
        const auto m = make_model({kind, n, 9.81});
        // HSWME drops the hu dependence of the flux beyond the first moment.
        const bool truncated = kind == ModelKind::HSWME || kind == ModelKind::BetaHSWME;
        for (int trial = 0; trial < 100; ++trial) {
            const Primitive p = random_primitive(rng, n);
            const Mat a = m->system_matrix(p);
            CHECK(a(0, 1) == 1.0);
            CHECK(a(1, 1) == Approx(2 * p.um));
            for (int i = 1; i <= (truncated ? std::min(n, 1) : n); ++i)
                CHECK(a(1 + i, 1) == Approx(2 * p.alpha[i - 1]));
        }
    }
}

TEST_CASE("SWLME eigenvalues")
{
    const auto m = make_model({ModelKind::SWLME, 3, 1.0});
    const Vec still = to_conserved(make_primitive(1, 0, {0, 0, 0}));
    const Vec ev = m->eigenvalues(still).real_parts();
    CHECK(ev[0] == Approx(-1));
    CHECK(ev[4] == Approx(1));
    CHECK(ev.segment(1, 3).cwiseAbs().maxCoeff() == 0.0);

    const auto m2 = make_model({ModelKind::SWLME, 2, 1.0});
    const Vec ev2 = m2->eigenvalues(to_conserved(make_primitive(1, 1, {1, 1}))).real_parts();
    CHECK(ev2[0] == Approx(1 - std::sqrt(2.6)));
    CHECK(ev2[1] == Approx(1));
    CHECK(ev2[2] == Approx(1));
    CHECK(ev2[3] == Approx(1 + std::sqrt(2.6)));

    const auto swe = make_model({ModelKind::SWE, 0, 9.81});
    Vec u(2);
    u << 2.0, 1.0;
    const Vec es = swe->eigenvalues(u).real_parts();
    CHECK(es[0] == Approx(0.5 - std::sqrt(9.81 * 2)));
    CHECK(es[1] == Approx(0.5 + std::sqrt(9.81 * 2)));
}

TEST_CASE("SWLME characteristic polynomial and bracketing")
{
    std::mt19937 rng(17);
    for (int n : {1, 2, 5, 8}) {
        const auto m = make_model({ModelKind::SWLME, n, 9.81});
        for (int trial = 0; trial < 100; ++trial) {
            const Primitive p = random_primitive(rng, n);
            const Vec u = to_conserved(p);
            const Mat a = m->system_matrix(u);
            double s3 = 0.0;
            for (int i = 1; i <= n; ++i)
                s3 += 3 * p.alpha[i - 1] * p.alpha[i - 1] / (2 * i + 1);
            for (double lambda : {-3.0, -0.7, 0.1, 1.3, 4.0}) {
                const double lhs = (a - lambda * Mat::Identity(n + 2, n + 2)).determinant();
                const double rhs = std::pow(p.um - lambda, n) *
                                   ((lambda - p.um) * (lambda - p.um) - 9.81 * p.h - s3);
                CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
            }
            const Vec ev = m->eigenvalues(u).real_parts();
            CHECK(ev[0] <= p.um);
            CHECK(ev[n + 1] >= p.um);
            const Vec numeric = numerical_spectrum(a).real_parts();
            CHECK(max_abs(ev - numeric) < 1e-6);
        }
    }
}

TEST_CASE("SWLME eigenvectors")
{
    std::mt19937 rng(23);
    for (int n : {1, 3, 8}) {
        const LinearizedMomentModel m({ModelKind::SWLME, n, 9.81});
        for (int trial = 0; trial < 50; ++trial) {
            const Vec u = to_conserved(random_primitive(rng, n));
            const Mat a = m.system_matrix(u);
            const Mat v = m.eigenvectors(u);
            const auto [plus, minus] = m.gravity_wave_speeds(u);
            const double um = u[1] / u[0];
            for (int c = 0; c < n + 2; ++c) {
                const double lambda = c == 0 ? plus : (c == 1 ? minus : um);
                const Vec col = v.col(c);
                CHECK((a * col - lambda * col).norm() / col.norm() < 1e-10);
            }
            CHECK(std::abs(v.determinant()) > 1e-12);
        }
    }

    const LinearizedMomentModel still({ModelKind::SWLME, 2, 1.0});
    const Mat v = still.eigenvectors(to_conserved(make_primitive(1, 0, {0, 0})));
    CHECK(v.block(2, 0, 2, 2).cwiseAbs().maxCoeff() == 0.0);

    // Degenerate g h = sum alpha^2/(2i+1) goes through the kernel path.
    const LinearizedMomentModel deg({ModelKind::SWLME, 1, 1.0});
    const Vec ud = to_conserved(make_primitive(1, 0.2, {std::sqrt(3.0)}));
    const Mat vd = deg.eigenvectors(ud);
    const Mat ad = deg.system_matrix(ud);
    CHECK((ad * vd.col(2) - 0.2 * vd.col(2)).norm() / vd.col(2).norm() < 1e-10);
}

TEST_CASE("N=1 models share one matrix")
{
    std::mt19937 rng(29);
    const auto lin = make_model({ModelKind::SWLME, 1, 9.81});
    const auto s1 = make_model({ModelKind::SWME1, 1, 9.81});
    const auto hs = make_model({ModelKind::HSWME, 1, 9.81});
    for (int trial = 0; trial < 20; ++trial) {
        const Vec u = to_conserved(random_primitive(rng, 1));
        CHECK(max_abs(lin->system_matrix(u) - s1->system_matrix(u)) == 0.0);
        CHECK(max_abs(lin->system_matrix(u) - hs->system_matrix(u)) < 1e-14);
        CHECK(max_abs(lin->eigenvalues(u).real_parts() - numerical_spectrum(s1->system_matrix(u)).real_parts()) <
              1e-8);
    }
}

TEST_CASE("SWME2 loses hyperbolicity")
{
    const auto m = make_model({ModelKind::SWME2, 2, 1.0});
    CHECK_FALSE(m->eigenvalues(to_conserved(make_primitive(1, 0, {2.0, -2.4}))).is_real());
    CHECK(m->eigenvalues(to_conserved(make_primitive(1, 0, {0, 0}))).is_real());
}

TEST_CASE("hyperbolicity scan")
{
    ScanGrid grid;
    grid.samples = 31;
    const auto swme2 = hyperbolicity_scan(*make_model({ModelKind::SWME2, 2, 1.0}), grid);
    REQUIRE(swme2.size() == 31u * 31u);
    int complex = 0;
    for (const auto& s : swme2) {
        if (s.alpha1 == 0.0 && s.alpha2 == 0.0)
            CHECK(s.hyperbolic);
        complex += s.hyperbolic ? 0 : 1;
    }
    CHECK(complex > 0);
    CHECK(complex < static_cast<int>(swme2.size()) / 2);

    for (const auto& s : hyperbolicity_scan(*make_model({ModelKind::SWLME, 4, 1.0}), grid))
        CHECK(s.hyperbolic);

    const std::string csv = hyperbolicity_csv(swme2);
    CHECK(csv.rfind("alpha1,alpha2,is_hyperbolic\n", 0) == 0);
    CHECK_THROWS(hyperbolicity_scan(*make_model({ModelKind::SWME1, 1, 1.0}), grid));
}

TEST_CASE("closed-form speed bounds match the numerical spectrum")
{
    std::mt19937 rng(31);
    for (int n : {0, 1, 2, 8}) {
        const auto m = make_model({ModelKind::SWLME, n, 9.81});
        for (int trial = 0; trial < 200; ++trial) {
            // Roe-like matrix: Jacobian at one state, B at another.
            const Primitive pj = random_primitive(rng, n);
            const Primitive pb = random_primitive(rng, n);
            const Mat a = m->flux_jacobian(pj) + m->nonconservative_matrix(pb);
            const auto [lo, hi] = m->speed_bounds(a);
            const Vec ref = numerical_spectrum(a).real_parts();
            CHECK(lo == Approx(ref[0]).epsilon(1e-8));
            CHECK(hi == Approx(ref[ref.size() - 1]).epsilon(1e-8));
        }
    }
}
