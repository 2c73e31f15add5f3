#include "swme/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "swme/basis.hpp"
#include "swme/steady.hpp"

namespace swme {

Topography make_topography(TopographyKind kind)
{
    switch (kind) {
    case TopographyKind::Flat: return [](double) { return 0.0; };
    case TopographyKind::Parabola:
        return [](double x) { return (x > -0.5 && x < 0.5) ? 2.0 - x * x : 1.75; };
    case TopographyKind::CosineBump:
        return [](double x) { return (x > 1.3 && x < 1.7) ? 0.25 * (1.0 + std::cos(5.0 * M_PI * (x + 0.5))) : 0.0; };
    }
    throw std::invalid_argument("unknown topography");
}

std::vector<std::string> builtin_scenario_names() { return {"test1", "test2", "test3", "test4", "test5", "test6"}; }

Scenario builtin_scenario(const std::string& name)
{
    Scenario s;
    s.name = name;
    if (name == "test1") {
        s.grid = {-1.0, 1.0, 1000};
        s.topography = TopographyKind::Parabola;
        s.initial = InitialKind::LakeAtRest;
        s.surface = 3.0;
        return s;
    }
    if (name == "test2" || name == "test3" || name == "test4") {
        s.grid = {0.0, 3.0, 1000};
        s.topography = TopographyKind::CosineBump;
        s.initial = InitialKind::Steady;
        if (name == "test2") {
            s.c1 = 3.5;
            s.c2 = 21.15525;
        } else if (name == "test3") {
            s.c1 = 2.5;
            s.c2 = 17.56957396120237;
            s.transcritical = true;
            s.split = 1.5;
        } else {
            s.c1 = 3.5;
            s.c2 = 21.15525;
            s.ratio = 0.25;
        }
        return s;
    }
    if (name == "test5" || name == "test6") {
        s.grid = {-0.4, 0.4, 1000};
        s.topography = TopographyKind::Flat;
        s.initial = InitialKind::DamBreak;
        s.split = 0.0;
        s.h_left = 5.0;
        s.h_right = 1.0;
        s.model.gravity = 1.0;
        s.t_end = 0.1;
        s.scheme.well_balanced = false;
        if (name == "test5") {
            s.velocity.kind = VelocityProfile::Kind::FirstLast;
            s.velocity.um = 0.25;
            s.velocity.first = -0.25;
            s.velocity.last = 0.25;
        } else {
            s.velocity.kind = VelocityProfile::Kind::SquareRoot;
            s.velocity.mean = 1.0;
        }
        return s;
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::vector<Vec> initial_states(const Scenario& s)
{
    const int n = s.model.order;
    const double g = s.model.gravity;
    const Topography topo = make_topography(s.topography);
    std::vector<Vec> out(s.grid.cells);

    Primitive dam{0.0, 0.0, Vec::Zero(n)};
    if (s.initial == InitialKind::DamBreak) {
        if (s.velocity.kind == VelocityProfile::Kind::SquareRoot) {
            const double scale = 1.5 * s.velocity.mean;
            const auto c = project_profile([scale](double z) { return scale * std::sqrt(z); }, BasisSet(n));
            dam.um = c.um;
            dam.alpha = c.alpha;
        } else {
            dam.um = s.velocity.um;
            if (n >= 1)
                dam.alpha[0] = s.velocity.first;
            if (n >= 2)
                dam.alpha[n - 1] = s.velocity.last;
        }
    }
    const SteadyConstants constants = make_constants(s.c1, s.c2, Vec::Constant(n, s.ratio), g);

    for (int i = 0; i < s.grid.cells; ++i) {
        const double x = s.grid.center(i);
        const double b = topo(x);
        switch (s.initial) {
        case InitialKind::LakeAtRest:
            out[i] = Vec::Zero(n + 2);
            out[i][0] = s.surface - b;
            require_wet(out[i][0], "initial_states");
            break;
        case InitialKind::Steady: {
            const FlowRegime regime =
                (s.transcritical && x > s.split) ? FlowRegime::Supercritical : FlowRegime::Subcritical;
            out[i] = evaluate_steady_state(constants, b, regime);
            break;
        }
        case InitialKind::DamBreak: {
            Primitive p = dam;
            p.h = x < s.split ? s.h_left : s.h_right;
            out[i] = to_conserved(p);
            break;
        }
        }
        if (s.pulse_amplitude != 0.0) {
            const double z = (x - s.pulse_center) / s.pulse_width;
            out[i][0] += s.pulse_amplitude * std::exp(-z * z);
            require_wet(out[i][0], "initial_states");
        }
    }
    return out;
}

ErrorReport l1_error(const Grid& grid, const std::vector<Vec>& a, const std::vector<Vec>& b)
{
    if (a.size() != b.size() || static_cast<int>(a.size()) != grid.cells)
        throw std::invalid_argument("l1_error: grid mismatch");
    ErrorReport e;
    const int n = a.empty() ? 0 : static_cast<int>(a.front().size()) - 2;
    e.alpha = Vec::Zero(n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size())
            throw std::invalid_argument("l1_error: state size mismatch");
        const Primitive pa = to_primitive(a[i]);
        const Primitive pb = to_primitive(b[i]);
        e.h += std::abs(pa.h - pb.h);
        e.u += std::abs(pa.um - pb.um);
        e.alpha += (pa.alpha - pb.alpha).cwiseAbs();
    }
    const double dx = grid.dx();
    e.h *= dx;
    e.u *= dx;
    e.alpha *= dx;
    return e;
}

RunResult run_scenario(const Scenario& s)
{
    RunResult r;
    r.scenario = s;
    const auto model = make_model(s.model);
    const SemiDiscretization scheme(model, s.grid, make_topography(s.topography), s.scheme);
    r.bottom = scheme.bottom();
    r.initial = initial_states(s);
    r.final = r.initial;
    TimeStepper stepper(scheme, default_method(s.scheme.order), s.cfl);
    const auto start = std::chrono::steady_clock::now();
    r.stats = stepper.run(r.final, 0.0, s.t_end);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.drift = l1_error(s.grid, r.final, r.initial);
    return r;
}

ConvergenceResult convergence_study(const Scenario& s, const std::vector<int>& meshes, int reference_cells)
{
    if (meshes.empty())
        throw std::invalid_argument("convergence_study: no meshes");
    auto run_on = [&s](int cells) {
        Scenario copy = s;
        copy.grid.cells = cells;
        return run_scenario(copy).final;
    };
    ConvergenceResult out;
    out.reference_cells = reference_cells;
    const std::vector<Vec> reference = run_on(reference_cells);
    for (const int cells : meshes) {
        if (cells <= 0 || reference_cells % cells != 0)
            throw std::invalid_argument("convergence_study: reference must refine every mesh");
        const int ratio = reference_cells / cells;
        std::vector<Vec> restricted(cells);
        for (int i = 0; i < cells; ++i) {
            Vec sum = Vec::Zero(reference.front().size());
            for (int k = 0; k < ratio; ++k)
                sum += reference[i * ratio + k];
            restricted[i] = sum / ratio;
        }
        Grid grid = s.grid;
        grid.cells = cells;
        const ErrorReport e = l1_error(grid, run_on(cells), restricted);
        out.cells.push_back(cells);
        out.error_h.push_back(e.h);
        out.error_u.push_back(e.u);
    }
    auto rate = [&out](const std::vector<double>& err, std::size_t k) {
        return std::log(err[k - 1] / err[k]) /
               std::log(static_cast<double>(out.cells[k]) / static_cast<double>(out.cells[k - 1]));
    };
    out.order_h.assign(meshes.size(), 0.0);
    out.order_u.assign(meshes.size(), 0.0);
    for (std::size_t k = 1; k < meshes.size(); ++k) {
        out.order_h[k] = rate(out.error_h, k);
        out.order_u[k] = rate(out.error_u, k);
    }
    return out;
}

void write_profile_csv(std::ostream& os, const Grid& grid, const std::vector<double>& bottom,
                       const std::vector<Vec>& states)
{
    const int n = states.empty() ? 0 : static_cast<int>(states.front().size()) - 2;
    os << "x,b,h,hu";
    for (int i = 1; i <= n; ++i)
        os << ",halpha" << i;
    os << '\n';
    os << std::setprecision(17);
    for (std::size_t c = 0; c < states.size(); ++c) {
        os << grid.center(static_cast<int>(c)) << ',' << bottom[c];
        for (int k = 0; k < states[c].size(); ++k)
            os << ',' << states[c][k];
        os << '\n';
    }
}

void write_aligned_csv(std::ostream& os, const Grid& grid, const std::vector<std::string>& names,
                       const std::vector<const std::vector<Vec>*>& runs, int variable)
{
    if (names.size() != runs.size())
        throw std::invalid_argument("write_aligned_csv: one name per run required");
    for (const auto* run : runs) {
        if (static_cast<int>(run->size()) != grid.cells)
            throw std::invalid_argument("write_aligned_csv: grid mismatch");
        if (variable < 0 || variable >= run->front().size())
            throw std::invalid_argument("write_aligned_csv: no such variable");
    }
    os << 'x';
    for (const auto& n : names)
        os << ',' << n;
    os << '\n' << std::setprecision(17);
    for (int i = 0; i < grid.cells; ++i) {
        os << grid.center(i);
        for (const auto* run : runs) {
            const Vec& u = (*run)[i];
            os << ',' << (variable == 0 ? u[0] : u[variable] / u[0]);
        }
        os << '\n';
    }
}

double shock_position(const Grid& grid, const std::vector<Vec>& states, double x_from)
{
    double best = 0.0;
    double where = x_from;
    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
        if (grid.center(static_cast<int>(i)) <= x_from)
            continue;
        const double drop = states[i][0] - states[i + 1][0];
        if (drop > best) {
            best = drop;
            where = grid.face(static_cast<int>(i) + 1);
        }
    }
    return where;
}

double total_variation_alpha(const std::vector<Vec>& states, int k)
{
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < states.size(); ++i)
        tv += std::abs(states[i + 1][1 + k] / states[i + 1][0] - states[i][1 + k] / states[i][0]);
    return tv;
}

ModelComparison compare_models(const Scenario& s, const std::vector<ModelKind>& kinds)
{
    ModelComparison out;
    for (ModelKind kind : kinds) {
        Scenario run = s;
        run.model.kind = kind;
        out.runs.push_back(run_scenario(run));
        const auto& final = out.runs.back().final;
        out.shock_positions.push_back(shock_position(run.grid, final));
        out.alpha_last_tv.push_back(run.model.order > 0 ? total_variation_alpha(final, run.model.order) : 0.0);
    }
    return out;
}

std::vector<TableEntry> reproduce_tables(int cells, int jobs)
{
    std::vector<TableEntry> entries;
    for (const char* name : {"test1", "test2", "test3", "test4"})
        for (bool wb : {true, false})
            for (int order : {1, 2})
                entries.push_back({name, order, wb, {}, 0.0});

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(entries.size());
    auto worker = [&] {
        for (std::size_t k = next++; k < entries.size(); k = next++) {
            try {
                Scenario s = builtin_scenario(entries[k].scenario);
                s.grid.cells = cells;
                s.scheme.order = entries[k].order;
                s.scheme.well_balanced = entries[k].well_balanced;
                const RunResult r = run_scenario(s);
                entries[k].error = r.drift;
                entries[k].seconds = r.seconds;
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(entries.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return entries;
}

std::string format_tables(const std::vector<TableEntry>& entries)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(2);
    std::string current;
    for (const auto& e : entries) {
        if (e.scenario != current) {
            current = e.scenario;
            os << '\n' << current << "  (L1 drift at t_end)\n";
            os << "  scheme        order   |dh|_1     |du|_1     max|dalpha_i|_1   seconds\n";
        }
        os << "  " << (e.well_balanced ? "well-balanced " : "non-WB        ") << e.order << "       " << e.error.h
           << "   " << e.error.u << "   " << e.error.alpha_max() << "          " << std::fixed
           << std::setprecision(2) << e.seconds << std::scientific << '\n';
    }
    return os.str();
}

} // namespace swme
