#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swme/models.hpp"
#include "swme/scheme.hpp"
#include "swme/timeint.hpp"

namespace swme {

enum class TopographyKind {
    Flat,
    Parabola,   // 2 - x^2 on (-0.5, 0.5), 1.75 elsewhere
    CosineBump  // 0.25 (1 + cos(5 pi (x + 0.5))) on (1.3, 1.7), 0 elsewhere
};

Topography make_topography(TopographyKind kind);

enum class InitialKind { LakeAtRest, Steady, DamBreak };

/// Vertical velocity profile of a dam-break initial state.
struct VelocityProfile {
    enum class Kind {
        FirstLast,   // u_m, alpha_1 = first, alpha_N = last, others zero
        SquareRoot   // projection of mean * (3/2) sqrt(zeta)
    };
    Kind kind = Kind::FirstLast;
    double um = 0.0;
    double first = 0.0;
    double last = 0.0;
    double mean = 1.0;
};

struct Scenario {
    std::string name;
    Grid grid{0.0, 1.0, 1000};
    TopographyKind topography = TopographyKind::Flat;

    InitialKind initial = InitialKind::LakeAtRest;
    // Lake at rest: h + b = surface.
    double surface = 3.0;
    // Steady: C1, C2 and C_{i+2} = ratio for every moment; transcritical flows
    // switch from the subcritical to the supercritical branch at `split`.
    double c1 = 0.0;
    double c2 = 0.0;
    double ratio = 0.0;
    bool transcritical = false;
    double split = 1.5;
    // Dam break: h_left for x < split, h_right for x > split.
    double h_left = 5.0;
    double h_right = 1.0;
    VelocityProfile velocity;
    // Gaussian added to h: amplitude * exp(-((x - center) / width)^2).
    double pulse_amplitude = 0.0;
    double pulse_center = 0.0;
    double pulse_width = 0.1;

    ModelSpec model{ModelKind::SWLME, 8, 9.812};
    double cfl = 0.5;
    double t_end = 0.5;
    SchemeOptions scheme;
};

/// Built-in scenarios test1 .. test6.
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

/// Cell-centre initial states (midpoint sampling).
std::vector<Vec> initial_states(const Scenario& s);

/// L1 norms dx sum |difference| on primitives (h, u_m, alpha_i).
struct ErrorReport {
    double h = 0.0;
    double u = 0.0;
    Vec alpha;

    double alpha_max() const { return alpha.size() ? alpha.maxCoeff() : 0.0; }
};

ErrorReport l1_error(const Grid& grid, const std::vector<Vec>& a, const std::vector<Vec>& b);

struct RunResult {
    Scenario scenario;
    std::vector<double> bottom;
    std::vector<Vec> initial;
    std::vector<Vec> final;
    RunStats stats;
    double seconds = 0.0;
    ErrorReport drift; // final vs initial
};

/// Integrates the scenario to t_end. Solver aborts propagate as SolverAbort.
RunResult run_scenario(const Scenario& s);

/// CSV with header x,b,h,hu,halpha1..halphaN.
void write_profile_csv(std::ostream& os, const Grid& grid, const std::vector<double>& bottom,
                       const std::vector<Vec>& states);

/// One column per run of a single primitive variable: 0 = h, 1 = u_m,
/// k + 1 = alpha_k. Header `x,<name1>,<name2>,...`.
void write_aligned_csv(std::ostream& os, const Grid& grid, const std::vector<std::string>& names,
                       const std::vector<const std::vector<Vec>*>& runs, int variable);

/// Location of the right-going shock: the face with the steepest drop of h
/// among x > x_from.
double shock_position(const Grid& grid, const std::vector<Vec>& states, double x_from = 0.0);

/// sum_i |alpha_k(i+1) - alpha_k(i)| for moment k (1-based).
double total_variation_alpha(const std::vector<Vec>& states, int k);

struct ModelComparison {
    std::vector<RunResult> runs;
    std::vector<double> shock_positions;
    std::vector<double> alpha_last_tv;
};

/// Runs one scenario with several model kinds (same N, grid and scheme).
ModelComparison compare_models(const Scenario& s, const std::vector<ModelKind>& kinds);

/// Self-convergence against a fine reference run: cell averages of the
/// reference are restricted to each coarse mesh. `order_*[k]` compares meshes
/// k - 1 and k; the first entry is zero.
struct ConvergenceResult {
    std::vector<int> cells;
    std::vector<double> error_h;
    std::vector<double> error_u;
    std::vector<double> order_h;
    std::vector<double> order_u;
    int reference_cells = 0;
};
ConvergenceResult convergence_study(const Scenario& s, const std::vector<int>& meshes, int reference_cells);

/// Drift errors of one steady scenario at one order, WB or not.
struct TableEntry {
    std::string scenario;
    int order = 1;
    bool well_balanced = true;
    ErrorReport error;
    double seconds = 0.0;
};

/// Runs tests 1-4, orders 1 and 2, with and without well-balancing, on up to
/// `jobs` threads. Output order is deterministic.
std::vector<TableEntry> reproduce_tables(int cells, int jobs);

std::string format_tables(const std::vector<TableEntry>& entries);

} // namespace swme
