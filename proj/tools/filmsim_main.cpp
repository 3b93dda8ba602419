// filmsim: thin-film two-layer flow experiments from a key = value config.
//
//   filmsim <mode> [--config <path>] [--out <dir>]
//
// Modes: stability-sweep, simulate-full, simulate-gaptooth, eigs, compare.
// Every output CSV embeds the resolved configuration as comment lines.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "filmsim/compare.hpp"
#include "filmsim/csv.hpp"
#include "filmsim/initial_condition.hpp"
#include "filmsim/integrator.hpp"
#include "filmsim/run_config.hpp"
#include "filmsim/stability.hpp"

namespace {

using namespace filmsim;

void echo_config(CsvWriter& out, const RunConfig& cfg) {
    for (const auto& [key, value] : cfg.echo()) out.comment(key + " = " + value);
}

std::filesystem::path out_path(const RunConfig& cfg, const char* name) {
    std::filesystem::create_directories(cfg.out_dir);
    return std::filesystem::path(cfg.out_dir) / name;
}

void run_stability_sweep(const RunConfig& cfg) {
    const auto grid = cfg.k_grid();
    const auto sweep =
        growth_rate_sweep(cfg.model.re, cfg.model.tan_theta, cfg.model.c_reg, grid);
    CsvWriter out(out_path(cfg, "growth_rates.csv"));
    echo_config(out, cfg);
    out.header({"k", "re_lambda_1", "re_lambda_2", "re_lambda_3", "im_lambda_1", "im_lambda_2",
                "im_lambda_3"});
    for (const auto& g : sweep)
        out.row({g.k, g.lambdas[0].real(), g.lambdas[1].real(), g.lambdas[2].real(),
                 g.lambdas[0].imag(), g.lambdas[1].imag(), g.lambdas[2].imag()});
    std::cout << "wrote " << sweep.size() << " wavenumbers; max growth rate "
              << format_double(max_growth_rate(sweep)) << "\n";
}

void run_simulate_full(const RunConfig& cfg) {
    FlowField f = make_initial_full(cfg);
    std::vector<double> flat(f.size());
    f.to_flat(flat);
    FlowField work = f, dwork = f;
    CsvWriter out(out_path(cfg, "full_snapshots.csv"));
    echo_config(out, cfg);
    out.header({"t", "x", "field_type", "value"});
    FlowField snap = f;
    const Observer observer = [&](double t, std::span<const double> y) {
        snap.from_flat(y);
        for (int p = 0; p < snap.grid.h_count(); ++p)
            out.row({t, snap.grid.x_h(p), "h", snap.h[p]});
        for (int q = 0; q < snap.grid.u_count(); ++q) {
            out.row({t, snap.grid.x_u(q), "u1", snap.u1[q]});
            out.row({t, snap.grid.x_u(q), "u2", snap.u2[q]});
        }
    };
    const auto result = integrate(
        [&](double, std::span<const double> y, std::span<double> dydt) {
            work.from_flat(y);
            full_rhs(work, cfg.model, dwork, cfg.coupling.form);
            dwork.to_flat(dydt);
        },
        flat, 0.0, cfg.t_end, cfg.integrator, cfg.output_times, observer);
    snap.from_flat(result.y);
    std::cout << "integrated " << result.stats.steps << " steps; final mass "
              << format_double(mass(snap)) << "\n";
}

void run_simulate_gaptooth(const RunConfig& cfg) {
    const PatchLayout layout = build_layout(cfg.m, cfg.D, cfg.r, cfg.n);
    CoupledState s = make_initial_gaptooth(cfg, layout);
    CsvWriter out(out_path(cfg, "gaptooth_snapshots.csv"));
    echo_config(out, cfg);
    out.comment("dof_count = " + std::to_string(layout.dof_count()));
    out.header({"t", "patch", "x", "field", "value"});
    const Observer observer = [&](double t, std::span<const double> y) {
        for (int i = 0; i < layout.dof_count(); ++i) {
            const DofKey key = dof_key(layout, i);
            const char* field = key.field == PatchField::H ? "h"
                                : key.field == PatchField::U1 ? "u1"
                                                              : "u2";
            out.row({t, static_cast<double>(key.patch), layout.x(key.patch, key.micro_index),
                     field, y[i]});
        }
    };
    const auto result = integrate(
        [&](double, std::span<const double> y, std::span<double> dydt) {
            gaptooth_rhs(y, layout, cfg.model, cfg.coupling, dydt);
        },
        s.values, 0.0, cfg.t_end, cfg.integrator, cfg.output_times, observer);
    std::cout << "integrated " << result.stats.steps << " steps over " << layout.dof_count()
              << " DOFs\n";
}

void run_eigs(const RunConfig& cfg) {
    const PatchLayout layout = build_layout(cfg.m, cfg.D, cfg.r, cfg.n);
    const auto [u1_eq, u2_eq] = equilibrium_velocities(cfg.model.re, cfg.model.tan_theta);
    const CoupledState base = CoupledState::uniform(layout, 1.0, u1_eq, u2_eq);
    const Spectrum spectrum =
        jacobian_spectrum(base.values, layout, cfg.model, cfg.coupling, cfg.spectrum_bands);
    CsvWriter out(out_path(cfg, "spectrum.csv"));
    echo_config(out, cfg);
    out.comment("dof_count = " + std::to_string(layout.dof_count()));
    out.header({"re_lambda", "im_lambda", "class"});
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i)
        out.row({spectrum.eigenvalues[i].real(), spectrum.eigenvalues[i].imag(),
                 to_string(spectrum.classes[i])});
    std::cout << layout.dof_count() << " DOFs; max growth rate "
              << format_double(spectrum.eigenvalues.front().real()) << "\n";
}

int run_compare_mode(const RunConfig& cfg) {
    const ComparisonReport report = run_compare(cfg);
    CsvWriter out(out_path(cfg, "comparison.csv"));
    echo_config(out, cfg);
    if (!report.ok()) out.comment("failure = " + report.failure);
    out.header({"t", "linf_h", "rel_l2_h", "max_dev_full", "max_dev_gap", "mass_drift"});
    for (const auto& row : report.rows)
        out.row({row.t, row.linf_h, row.rel_l2_h, row.max_dev_full, row.max_dev_gap,
                 row.mass_drift});
    if (!report.ok()) {
        std::cerr << "comparison incomplete: " << report.failure << "\n";
        return 2;
    }
    std::cout << "compared " << report.rows.size() << " output times; final rel_l2_h "
              << format_double(report.rows.empty() ? 0.0 : report.rows.back().rel_l2_h) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-layer thin-film flow: stability, full-domain and patch-scheme runs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    const std::vector<std::string> modes = {"stability-sweep", "simulate-full",
                                            "simulate-gaptooth", "eigs", "compare"};
    for (const auto& mode : modes) {
        auto* sub = app.add_subcommand(mode);
        sub->add_option("--config,-c", config_path, "key = value configuration file");
        sub->add_option("--out,-o", out_dir, "output directory (default from config)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg =
            config_path.empty() ? RunConfig{} : parse_config_file(config_path);
        cfg.mode = app.get_subcommands().front()->get_name();
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        cfg.validate();

        if (cfg.mode == "stability-sweep") run_stability_sweep(cfg);
        else if (cfg.mode == "simulate-full") run_simulate_full(cfg);
        else if (cfg.mode == "simulate-gaptooth") run_simulate_gaptooth(cfg);
        else if (cfg.mode == "eigs") run_eigs(cfg);
        else return run_compare_mode(cfg);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
