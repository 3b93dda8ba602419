#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "filmsim/gaptooth.hpp"
#include "filmsim/integrator.hpp"
#include "filmsim/model.hpp"

namespace filmsim {

/// Initial-condition parameters: h = 1 + a sin(2 pi q x / L) + noise with
/// uniform layer velocities.
struct InitialConditionConfig {
    double amplitude = 0.2;
    int mode_number = 1;
    double noise_amplitude = 1e-3;
    std::uint64_t seed = 1;
    double u1 = 0.0;
    double u2 = 0.2;
};

/// Full run configuration; defaults reproduce the reference experiment
/// (m = 10, n = 9, re = 15, C = 0.5 on a horizontal plate).
struct RunConfig {
    std::string mode = "compare";
    ModelParams model{15.0, 0.0, 0.5, 1.0};

    // Patch layout.
    int m = 10;
    double D = 3.14159265358979323846;
    double r = 1.0 / 6.0;
    int n = 9;

    // Full-domain reference grid; n_cells = 0 derives 24 cells per patch.
    double L = 10.0 * 3.14159265358979323846;
    int n_cells = 0;

    IntegratorConfig integrator;
    InitialConditionConfig ic;
    CouplingOptions coupling;
    SpectrumClassification spectrum_bands;

    double t_end = 30.0;
    std::vector<double> output_times = {0.0, 2.0, 10.0, 20.0, 30.0};

    // Wavenumber grid of stability sweeps.
    double k_min = 0.0;
    double k_max = 10.0;
    double k_step = 0.01;

    std::string out_dir = ".";

    int resolved_n_cells() const { return n_cells > 0 ? n_cells : 24 * m; }
    std::vector<double> k_grid() const;

    /// Cross-field consistency; throws std::invalid_argument.
    void validate() const;

    /// The resolved configuration as ordered key/value pairs (the comment
    /// header embedded in every output file).
    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Applies one dotted key (e.g. "model.re") to the config; throws
/// std::invalid_argument naming the key on unknown keys or bad values.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses a flat key = value file ('#' comments, blank lines ignored).
RunConfig parse_config_file(const std::filesystem::path& path);

const char* to_string(RegularisationForm f);
const char* to_string(InterpolationMode m);
const char* to_string(EdgeFluxDepth e);

}  // namespace filmsim
