#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "swme/models.hpp"
#include "swme/types.hpp"

namespace swme {

using Topography = std::function<double(double)>;

/// Uniform grid of `cells` cells on [x_min, x_max].
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    int cells = 100;

    double dx() const { return (x_max - x_min) / cells; }
    double center(int i) const { return x_min + (i + 0.5) * dx(); }
    /// Left face of cell i, i.e. x_{i-1/2}; face(cells) is the right end.
    double face(int i) const { return x_min + i * dx(); }
};

/// Averages for one interface of the segment-path Roe linearization.
struct RoeData {
    double h = 0.0;      // arithmetic mean
    double um = 0.0;     // sqrt(h)-weighted
    Vec alpha;           // sqrt(h)-weighted
    Primitive path;      // int_0^1 primitives along the segment, for B
    Mat a;               // J(roe) + B(path)
    Mat b;               // B(path)
    Vec s;               // (0, -g (h_l + h_r)/2, 0, ...)
};

/// Weights (w_l, w_r) with int_0^1 v(s) ds = w_l v_l + w_r v_r for a primitive
/// v = (h v)/h along the straight segment in conserved variables.
std::pair<double, double> path_weights(double hl, double hr);

RoeData roe_averages(const Model& model, const Vec& ul, const Vec& ur);

struct Fluctuations {
    Vec minus;
    Vec plus;
    double smin = 0.0;
    double smax = 0.0;
    /// Topography correction could not be inverted (singular, inconsistent A).
    bool resonant = false;
};

/// PVM-HLL fluctuations D-, D+ at an interface with states U_l, U_r and
/// bottom values b_l, b_r.
Fluctuations pvm_hll_fluctuations(const Model& model, const Vec& ul, const Vec& ur, double bl, double br);

/// Componentwise three-argument minmod.
double minmod(double a, double b, double c);

struct SchemeOptions {
    int order = 1;
    bool well_balanced = true;
};

/// Traces of the reconstruction operator of one cell.
struct CellTrace {
    State left;   // P_i(x_{i-1/2})
    State right;  // P_i(x_{i+1/2})
    Vec slope;    // limited slope of U
    double slope_b = 0.0;
    bool fallback = false;      // constant extension used instead of a steady state
    bool transcritical = false;
};

struct RhsDiagnostics {
    int fallback_cells = 0;
    int transcritical_cells = 0;
    int resonant_interfaces = 0;
};

/// Semi-discrete operator dU/dt = L(U) on a fixed grid and topography.
/// Cell-centre topography is sampled once from the analytic function; the
/// steady extension uses the analytic function at faces. Free boundaries.
class SemiDiscretization {
public:
    SemiDiscretization(std::shared_ptr<const Model> model, Grid grid, Topography bottom, SchemeOptions options);

    const Model& model() const { return *model_; }
    const Grid& grid() const { return grid_; }
    const SchemeOptions& options() const { return options_; }
    const std::vector<double>& bottom() const { return bottom_; }
    const Topography& topography() const { return topography_; }

    /// Reconstruction of every interior cell.
    std::vector<CellTrace> reconstruct(const std::vector<Vec>& u) const;

    /// Evaluates the right-hand side into `out` (resized as needed).
    RhsDiagnostics rhs(const std::vector<Vec>& u, std::vector<Vec>& out) const;

private:
    static constexpr int kGhosts = 2;

    void fill_padded(const std::vector<Vec>& u) const;
    CellTrace trace_cell(int padded) const;
    CellTrace constant_trace(int padded) const;
    CellTrace steady_trace(int padded) const;

    std::shared_ptr<const Model> model_;
    Grid grid_;
    Topography topography_;
    SchemeOptions options_;
    std::vector<double> bottom_;
    std::vector<double> padded_bottom_;
    std::vector<double> face_bottom_;

    // Scratch, reused between calls.
    mutable std::vector<Vec> padded_;
    mutable std::vector<CellTrace> traces_;
};

/// Convenience wrapper: one RHS evaluation.
std::vector<Vec> semidiscrete_rhs(const SemiDiscretization& scheme, const std::vector<Vec>& u);

} // namespace swme
