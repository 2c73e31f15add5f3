#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "swme/harness.hpp"
#include "swme/scenario_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunArgs {
    std::string scenario = "test1";
    std::string config;
    std::optional<std::string> model;
    std::optional<int> order_n;
    std::optional<int> order;
    std::optional<bool> wb;
    std::optional<int> cells;
    std::optional<double> cfl;
    std::optional<double> t_end;
    std::string out = "out";
};

swme::Scenario resolve(const RunArgs& a)
{
    swme::Scenario s;
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        if (!in)
            throw std::runtime_error("cannot open config " + a.config);
        s = swme::scenario_from_json(json::parse(in));
    } else {
        s = swme::builtin_scenario(a.scenario);
    }
    if (a.model)
        s.model.kind = swme::parse_model_kind(*a.model);
    if (a.order_n)
        s.model.order = *a.order_n;
    if (a.order)
        s.scheme.order = *a.order;
    if (a.wb)
        s.scheme.well_balanced = *a.wb;
    if (a.cells)
        s.grid.cells = *a.cells;
    if (a.cfl)
        s.cfl = *a.cfl;
    if (a.t_end)
        s.t_end = *a.t_end;
    s.model.validate();
    return s;
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream os(p);
    if (!os)
        throw std::runtime_error("cannot write " + p.string());
    os << text;
}

int cmd_run(const RunArgs& a)
{
    const swme::Scenario s = resolve(a);
    fs::create_directories(a.out);
    const swme::RunResult r = swme::run_scenario(s);

    std::ostringstream initial, final;
    swme::write_profile_csv(initial, s.grid, r.bottom, r.initial);
    swme::write_profile_csv(final, s.grid, r.bottom, r.final);
    write_file(fs::path(a.out) / (s.name + "_initial.csv"), initial.str());
    write_file(fs::path(a.out) / (s.name + "_final.csv"), final.str());
    write_file(fs::path(a.out) / (s.name + "_manifest.json"), swme::run_manifest(r).dump(2) + "\n");

    std::cout << s.name << ": " << r.stats.steps << " steps to t=" << r.stats.time << " in " << std::setprecision(3)
              << r.seconds << " s\n"
              << std::scientific << "  L1 drift h=" << r.drift.h << " u=" << r.drift.u
              << " alpha_max=" << r.drift.alpha_max() << "\n";
    return 0;
}

int cmd_tables(int cells, int jobs)
{
    std::cout << swme::format_tables(swme::reproduce_tables(cells, jobs));
    return 0;
}

int cmd_compare(const RunArgs& a, const std::string& models)
{
    const swme::Scenario s = resolve(a);
    std::vector<swme::ModelKind> kinds;
    std::stringstream ss(models);
    for (std::string item; std::getline(ss, item, ',');)
        kinds.push_back(swme::parse_model_kind(item));
    const swme::ModelComparison c = swme::compare_models(s, kinds);

    fs::create_directories(a.out);
    std::vector<std::string> names;
    std::vector<const std::vector<swme::Vec>*> finals;
    std::cout << std::left << std::setw(12) << "model" << std::setw(16) << "shock_x" << "TV(alpha_N)\n";
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        names.emplace_back(swme::to_string(kinds[k]));
        finals.push_back(&c.runs[k].final);
        std::cout << std::setw(12) << names.back() << std::setw(16) << c.shock_positions[k] << c.alpha_last_tv[k]
                  << "\n";
    }
    std::cout << "shock offset vs " << names.front() << ":";
    for (std::size_t k = 1; k < kinds.size(); ++k)
        std::cout << " " << names[k] << " " << c.shock_positions[k] - c.shock_positions.front();
    std::cout << "\n";

    // Aligned profiles of h, u_m, alpha_1 and alpha_N, one column per model.
    const int n = s.model.order;
    std::vector<std::pair<std::string, int>> variables{{"h", 0}, {"u", 1}};
    if (n >= 1)
        variables.emplace_back("alpha1", 2);
    if (n >= 2)
        variables.emplace_back("alpha" + std::to_string(n), n + 1);
    for (const auto& [label, index] : variables) {
        std::ostringstream csv;
        swme::write_aligned_csv(csv, s.grid, names, finals, index);
        write_file(fs::path(a.out) / (s.name + "_" + label + ".csv"), csv.str());
    }
    return 0;
}

int cmd_scan(const std::string& model, int n, const swme::ScanGrid& grid, const std::string& out)
{
    const auto m = swme::make_model({swme::parse_model_kind(model), n, 1.0});
    const std::string csv = swme::hyperbolicity_csv(swme::hyperbolicity_scan(*m, grid));
    if (out.empty())
        std::cout << csv;
    else
        write_file(out, csv);
    return 0;
}

void add_run_options(CLI::App* app, RunArgs& a)
{
    app->add_option("--scenario", a.scenario, "built-in scenario (test1..test6)");
    app->add_option("--config", a.config, "JSON scenario file (overrides --scenario)");
    app->add_option("--model", a.model, "swe, swme1, swme2, swme, swlme, hswme, betahswme");
    app->add_option("--N", a.order_n, "number of moments");
    app->add_option("--order", a.order, "reconstruction order (1 or 2)")->check(CLI::Range(1, 2));
    app->add_flag("--wb,!--no-wb", a.wb, "well-balanced reconstruction");
    app->add_option("--cells", a.cells, "number of cells")->check(CLI::PositiveNumber);
    app->add_option("--cfl", a.cfl, "CFL number");
    app->add_option("--tend", a.t_end, "final time");
    app->add_option("--out", a.out, "output directory");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Shallow water moment model laboratory"};
    app.set_version_flag("--version", swme::build_id());
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "integrate one scenario, write CSV profiles and a JSON manifest");
    add_run_options(run, run_args);

    int table_cells = 1000;
    int table_jobs = 1;
    auto* tables = app.add_subcommand("tables", "L1 drift tables for tests 1-4");
    tables->add_option("--cells", table_cells)->check(CLI::PositiveNumber);
    tables->add_option("--jobs", table_jobs)->check(CLI::PositiveNumber);

    RunArgs cmp_args;
    cmp_args.scenario = "test5";
    std::string cmp_models = "swlme,hswme,betahswme";
    auto* compare = app.add_subcommand("compare", "run one scenario with several models");
    add_run_options(compare, cmp_args);
    compare->add_option("--models", cmp_models, "comma separated model list");

    std::string scan_model = "swme2";
    int scan_n = 2;
    std::string scan_out;
    swme::ScanGrid scan_grid;
    auto* scan = app.add_subcommand("scan-hyperbolicity", "sample hyperbolicity over (alpha1, alpha2)");
    scan->add_option("--model", scan_model);
    scan->add_option("--N", scan_n);
    scan->add_option("--min", scan_grid.alpha_min);
    scan->add_option("--max", scan_grid.alpha_max);
    scan->add_option("--samples", scan_grid.samples)->check(CLI::Range(2, 100000));
    scan->add_option("--depth", scan_grid.h, "water height h");
    scan->add_option("--um", scan_grid.um);
    scan->add_option("--out", scan_out, "CSV file (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(run_args);
        if (*tables)
            return cmd_tables(table_cells, table_jobs);
        if (*compare)
            return cmd_compare(cmp_args, cmp_models);
        if (*scan)
            return cmd_scan(scan_model, scan_n, scan_grid, scan_out);
    } catch (const swme::SolverAbort& e) {
        std::cerr << "solver aborted: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
