#pragma once

#include <functional>
#include <vector>

#include "swme/scheme.hpp"
#include "swme/types.hpp"

namespace swme {

enum class TimeMethod { Euler, SspRk2 };

/// Thrown when a cell loses positivity (or becomes non-finite) during a step.
class SolverAbort : public Error {
public:
    SolverAbort(int cell, double x, double time);

    int cell() const { return cell_; }
    double x() const { return x_; }
    double time() const { return time_; }

private:
    int cell_;
    double x_;
    double time_;
};

/// dt = cfl dx / max_i max_k |lambda_k(U_i)|; if every speed vanishes,
/// dt = cfl dx / sqrt(g max h).
double compute_dt(const Model& model, const std::vector<Vec>& u, double cfl, double dx);

using RhsFunction = std::function<void(const std::vector<Vec>&, std::vector<Vec>&)>;

/// One explicit step of the ODE system dU/dt = rhs(U), in place.
///   Euler:   U <- U + dt L(U)
///   SSP-RK2: U1 = U + dt L(U);  U <- (U + U1 + dt L(U1)) / 2
void explicit_step(std::vector<Vec>& u, double dt, TimeMethod method, const RhsFunction& rhs);

struct RunStats {
    int steps = 0;
    double time = 0.0;
    double min_dt = 0.0;
    double max_dt = 0.0;
    /// Largest per-evaluation counts seen during the run.
    RhsDiagnostics peak;
};

class TimeStepper {
public:
    TimeStepper(const SemiDiscretization& scheme, TimeMethod method, double cfl = 0.5);

    /// Advances from t_start to t_end with a global CFL step, the last one
    /// shortened to land on t_end. Throws SolverAbort on loss of positivity.
    RunStats run(std::vector<Vec>& u, double t_start, double t_end);

    TimeMethod method() const { return method_; }
    double cfl() const { return cfl_; }

private:
    void check(const std::vector<Vec>& u, double time) const;

    const SemiDiscretization& scheme_;
    TimeMethod method_;
    double cfl_;
};

/// Euler for first-order space, SSP-RK2 for second order.
TimeMethod default_method(int order);

} // namespace swme
