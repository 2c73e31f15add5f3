#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swme/basis.hpp"
#include "swme/types.hpp"

namespace swme {

enum class ModelKind { SWE, SWME1, SWME2, SWMEGeneral, SWLME, HSWME, BetaHSWME };

std::string_view to_string(ModelKind kind);
/// Accepts the lower-case names used on the command line (swe, swme1, swme2,
/// swme, swlme, hswme, betahswme).
ModelKind parse_model_kind(std::string_view name);

struct ModelSpec {
    ModelKind kind = ModelKind::SWLME;
    int order = 0;
    double gravity = 9.812;

    /// Throws if the order is out of range or inconsistent with the kind
    /// (SWE is N=0, SWME1 is N=1, SWME2 is N=2).
    void validate() const;
};

/// Eigenvalues with their imaginary parts kept, for hyperbolicity checks.
struct Spectrum {
    std::vector<std::complex<double>> values;

    /// All eigenvalues real: |Im| <= 1e-10 (1 + |Re|).
    bool is_real() const;
    /// Real parts sorted ascending.
    Vec real_parts() const;
};

/// Dense matrix eigenvalues via Eigen's real Schur (Hessenberg QR) solver.
Spectrum numerical_spectrum(const Mat& a);

/// A model in the form  dU/dt + dF(U)/dx + B(U) dU/dx = S(U) db/dx  with
/// U = (h, hu_m, h alpha_1, ..., h alpha_N) and S(U) = (0, -g h, 0, ..., 0).
/// B is linear in the primitives (u_m, alpha), which the path-conservative
/// scheme relies on when averaging it along segments.
class Model {
public:
    explicit Model(ModelSpec spec);
    virtual ~Model() = default;

    const ModelSpec& spec() const { return spec_; }
    ModelKind kind() const { return spec_.kind; }
    int moments() const { return spec_.order; }
    int size() const { return spec_.order + 2; }
    double gravity() const { return spec_.gravity; }

    virtual Vec flux(const Vec& u) const = 0;
    /// dF/dU written in primitives.
    virtual Mat flux_jacobian(const Primitive& p) const = 0;
    /// B(U) written in primitives; only h-independent entries appear.
    virtual Mat nonconservative_matrix(const Primitive& p) const = 0;

    Vec source(const Vec& u) const;
    Mat system_matrix(const Vec& u) const;
    Mat system_matrix(const Primitive& p) const { return flux_jacobian(p) + nonconservative_matrix(p); }

    virtual Spectrum eigenvalues(const Vec& u) const;
    /// max_k |lambda_k(U)| using real parts.
    virtual double max_wave_speed(const Vec& u) const;
    /// Smallest and largest eigenvalue (real parts) of a matrix built by
    /// this model, e.g. a Roe matrix.
    virtual std::pair<double, double> speed_bounds(const Mat& a) const;

protected:
    void check_state(const Vec& u, const char* where) const;

private:
    ModelSpec spec_;
};

/// SWE (N=0), SWME with N=1, and the linearized moment equations SWLME:
///   F = (hu, hu^2 + g h^2/2 + sum h alpha_i^2/(2i+1), 2 h u alpha_i),
///   B = diag(0, 0, -u, ..., -u).
/// The three kinds share this closed form; for N=1 the linearization is exact.
class LinearizedMomentModel final : public Model {
public:
    explicit LinearizedMomentModel(ModelSpec spec);

    Vec flux(const Vec& u) const override;
    Mat flux_jacobian(const Primitive& p) const override;
    Mat nonconservative_matrix(const Primitive& p) const override;
    Spectrum eigenvalues(const Vec& u) const override;
    double max_wave_speed(const Vec& u) const override;
    /// Exploits the arrow structure shared by the state and Roe matrices:
    /// det(A - lambda I) = (c - lambda)^(N-1) * cubic(lambda).
    std::pair<double, double> speed_bounds(const Mat& a) const override;

    /// u_m +- sqrt(g h + sum 3 alpha_i^2 / (2i+1)).
    std::pair<double, double> gravity_wave_speeds(const Vec& u) const;
    /// Columns are right eigenvectors ordered as (lambda_+, lambda_-, u_m x N).
    Mat eigenvectors(const Vec& u) const;
};

/// Original SWME with N=2, hand-coded.
class SwmeSecondOrderModel final : public Model {
public:
    explicit SwmeSecondOrderModel(ModelSpec spec);

    Vec flux(const Vec& u) const override;
    Mat flux_jacobian(const Primitive& p) const override;
    Mat nonconservative_matrix(const Primitive& p) const override;
};

/// Original SWME for arbitrary N assembled from the moment tensors.
class SwmeGeneralModel final : public Model {
public:
    explicit SwmeGeneralModel(ModelSpec spec);

    Vec flux(const Vec& u) const override;
    Mat flux_jacobian(const Primitive& p) const override;
    Mat nonconservative_matrix(const Primitive& p) const override;

    const MomentTensors& tensors() const { return tensors_; }

private:
    MomentTensors tensors_;
};

/// HSWME and beta-HSWME: only alpha_1 enters the flux and B.
class HyperbolicMomentModel final : public Model {
public:
    explicit HyperbolicMomentModel(ModelSpec spec);

    Vec flux(const Vec& u) const override;
    Mat flux_jacobian(const Primitive& p) const override;
    Mat nonconservative_matrix(const Primitive& p) const override;

private:
    bool beta_;
};

std::shared_ptr<const Model> make_model(const ModelSpec& spec);

struct HyperbolicitySample {
    double alpha1;
    double alpha2;
    bool hyperbolic;
};

struct ScanGrid {
    double alpha_min = -3.0;
    double alpha_max = 3.0;
    int samples = 61;
    double h = 1.0;
    double um = 0.0;
};

/// Samples the (alpha_1, alpha_2) plane (other moments zero) and records
/// whether the system matrix has only real eigenvalues. Requires N >= 2.
std::vector<HyperbolicitySample> hyperbolicity_scan(const Model& model, const ScanGrid& grid);

/// CSV with header `alpha1,alpha2,is_hyperbolic`.
std::string hyperbolicity_csv(const std::vector<HyperbolicitySample>& samples);

} // namespace swme
