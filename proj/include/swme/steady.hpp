#pragma once

#include <vector>

#include "swme/types.hpp"

namespace swme {

/// Invariants of a smooth SWLME steady state:
///   C1 = h u_m
///   C2 = u_m^2/2 + g (h + b) + 3/2 sum alpha_i^2/(2i+1)
///   ratios_i = alpha_i / h
///   D = sum 3 ratios_i^2 / (2i+1)
struct SteadyConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    Vec ratios;
    double d = 0.0;
    double gravity = 9.812;

    int moments() const { return static_cast<int>(ratios.size()); }
};

enum class FlowRegime { Subcritical, Supercritical, Transcritical };

/// No positive root of the steady-state height equation exists.
class NoSteadyState : public Error {
public:
    using Error::Error;
};

SteadyConstants constants_from_state(const Vec& u, double b, double g);

/// Builds constants directly, with D computed from the ratios.
SteadyConstants make_constants(double c1, double c2, const Vec& ratios, double g);

/// Quartic in h whose positive roots are the steady heights at topography b:
///   f(h) = D h^4 + 2 g h^3 + 2 h^2 (g b - C2) + C1^2.
double steady_residual(const SteadyConstants& c, double b, double h);

/// Positive root of f'(h)/h; f is minimal there. Requires g b < C2.
double critical_height(const SteadyConstants& c, double b);

/// Root of f'' used to start Newton on the supercritical branch; lies in
/// [0, critical_height].
double newton_start(const SteadyConstants& c, double b);

/// Steady height for the requested branch (Subcritical: h above the
/// critical height, Supercritical: below). If f(h_c) vanishes to 1e-10
/// relative to its terms, the flow is critical there and h_c is returned for
/// both branches. Throws NoSteadyState if f(h_c) > 0 or g b >= C2.
/// A positive `guess` inside the branch's bracket replaces the default Newton
/// start; it only affects speed.
double steady_height_at(const SteadyConstants& c, double b, FlowRegime regime, double guess = 0.0);

/// Conserved state (h, C1, C3 h^2, ..., C_{N+2} h^2) on the requested branch.
Vec evaluate_steady_state(const SteadyConstants& c, double b, FlowRegime regime, double guess = 0.0);

/// Supercritical iff |u_m| > sqrt(g h + sum 3 alpha_i^2/(2i+1)); ties count as
/// subcritical.
FlowRegime classify_regime(const Vec& u, double g);

/// Branches used to extend the steady state of a cell to its left and right
/// neighbourhood. A cell whose neighbours have different regimes is
/// transcritical: the left side follows the left neighbour's regime and the
/// right side the right neighbour's. Otherwise both sides use the cell's own.
struct RegimeSelection {
    FlowRegime left = FlowRegime::Subcritical;
    FlowRegime right = FlowRegime::Subcritical;
    bool transcritical = false;
};

RegimeSelection select_regimes(const Vec& left, const Vec& center, const Vec& right, double g);

/// Admissible heights behind a stationary jump from (h0, u0, alpha0):
/// h0 itself and h0 y for each positive root y of
///   K y^3 + (K + 1/2) y^2 + (K + 1/2) y - Fr^2 = 0,
/// Fr^2 = u0^2/(g h0), K = sum alpha_i^2 / ((2i+1) g h0).
struct JumpSolutions {
    double h0 = 0.0;
    std::vector<double> ratios;
    /// u0 = 0 with non-zero moments: the moment Mach number is undefined.
    bool degenerate = false;

    std::vector<double> heights() const;
};

JumpSolutions rh_jump(double h0, double u0, const Vec& alpha0, double g);

} // namespace swme
