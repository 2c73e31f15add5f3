#include "swme/timeint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swme {

namespace {

std::string abort_message(int cell, double x, double time)
{
    std::ostringstream os;
    os << "non-positive or non-finite water height in cell " << cell << " (x=" << x << ") at t=" << time;
    return os.str();
}

void merge_peak(RhsDiagnostics& peak, const RhsDiagnostics& d)
{
    peak.fallback_cells = std::max(peak.fallback_cells, d.fallback_cells);
    peak.transcritical_cells = std::max(peak.transcritical_cells, d.transcritical_cells);
    peak.resonant_interfaces = std::max(peak.resonant_interfaces, d.resonant_interfaces);
}

} // namespace

SolverAbort::SolverAbort(int cell, double x, double time)
    : Error(abort_message(cell, x, time)), cell_(cell), x_(x), time_(time)
{
}

double compute_dt(const Model& model, const std::vector<Vec>& u, double cfl, double dx)
{
    double speed = 0.0;
    double hmax = 0.0;
    for (const Vec& w : u) {
        speed = std::max(speed, model.max_wave_speed(w));
        hmax = std::max(hmax, w[0]);
    }
    if (speed == 0.0)
        speed = std::sqrt(model.gravity() * hmax);
    if (!(speed > 0.0) || !std::isfinite(speed))
        throw Error("compute_dt: invalid wave speed");
    return cfl * dx / speed;
}

void explicit_step(std::vector<Vec>& u, double dt, TimeMethod method, const RhsFunction& rhs)
{
    std::vector<Vec> k;
    rhs(u, k);
    if (method == TimeMethod::Euler) {
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] += dt * k[i];
        return;
    }
    std::vector<Vec> stage(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        stage[i] = u[i] + dt * k[i];
    rhs(stage, k);
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = 0.5 * (u[i] + stage[i] + dt * k[i]);
}

TimeMethod default_method(int order) { return order >= 2 ? TimeMethod::SspRk2 : TimeMethod::Euler; }

TimeStepper::TimeStepper(const SemiDiscretization& scheme, TimeMethod method, double cfl)
    : scheme_(scheme), method_(method), cfl_(cfl)
{
    if (!(cfl > 0.0))
        throw std::invalid_argument("CFL number must be positive");
}

void TimeStepper::check(const std::vector<Vec>& u, double time) const
{
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!(u[i][0] > kDryTolerance) || !u[i].allFinite())
            throw SolverAbort(static_cast<int>(i), scheme_.grid().center(static_cast<int>(i)), time);
}

RunStats TimeStepper::run(std::vector<Vec>& u, double t_start, double t_end)
{
    RunStats stats;
    stats.time = t_start;
    check(u, t_start);
    const double dx = scheme_.grid().dx();
    const RhsFunction rhs = [&](const std::vector<Vec>& w, std::vector<Vec>& out) {
        check(w, stats.time);
        merge_peak(stats.peak, scheme_.rhs(w, out));
    };
    while (stats.time < t_end) {
        double dt = compute_dt(scheme_.model(), u, cfl_, dx);
        const bool last = stats.time + dt >= t_end;
        if (last)
            dt = t_end - stats.time;
        explicit_step(u, dt, method_, rhs);
        stats.time = last ? t_end : stats.time + dt;
        check(u, stats.time);
        ++stats.steps;
        stats.min_dt = stats.steps == 1 ? dt : std::min(stats.min_dt, dt);
        stats.max_dt = std::max(stats.max_dt, dt);
    }
    return stats;
}

} // namespace swme
