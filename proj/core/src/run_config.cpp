#include "filmsim/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "filmsim/csv.hpp"

namespace filmsim {

std::vector<double> RunConfig::k_grid() const {
    if (!(k_step > 0.0) || !(k_max >= k_min))
        throw std::invalid_argument("filmsim: invalid wavenumber grid");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>((k_max - k_min) / k_step + 1.5);
    grid.reserve(count);
    for (double k = k_min; k <= k_max + 0.5 * k_step; k += k_step) grid.push_back(k);
    return grid;
}

void RunConfig::validate() const {
    model.validate();
    integrator.validate();
    static const char* modes[] = {"stability-sweep", "simulate-full", "simulate-gaptooth",
                                  "eigs", "compare"};
    if (std::find_if(std::begin(modes), std::end(modes),
                     [&](const char* s) { return mode == s; }) == std::end(modes))
        throw std::invalid_argument("filmsim: unknown mode '" + mode + "'");
    if (mode == "compare" && std::abs(L - m * D) > 1e-9 * L)
        throw std::invalid_argument(
            "filmsim: compare mode requires matching domains, L = m*D");
    if (!(t_end > 0.0)) throw std::invalid_argument("filmsim: t_end must be > 0");
    if (!std::is_sorted(output_times.begin(), output_times.end()))
        throw std::invalid_argument("filmsim: output_times must be ascending");
    if (!output_times.empty() && output_times.back() > t_end + 1e-12)
        throw std::invalid_argument("filmsim: output_times must not exceed t_end");
    if (ic.amplitude < 0.0 || ic.noise_amplitude < 0.0)
        throw std::invalid_argument("filmsim: initial amplitudes must be >= 0");
    if (ic.amplitude + ic.noise_amplitude >= 1.0)
        throw std::invalid_argument(
            "filmsim: initial amplitude plus noise must stay below 1 so h remains positive");
}

namespace {

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("filmsim: bad numeric value for '" + key + "': " + value);
    }
}

long to_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("filmsim: bad integer value for '" + key + "': " + value);
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("filmsim: bad boolean value for '" + key + "': " + value);
}

std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "mode") cfg.mode = value;
    else if (key == "model.re") cfg.model.re = to_double(key, value);
    else if (key == "model.tan_theta") cfg.model.tan_theta = to_double(key, value);
    else if (key == "model.c_reg") cfg.model.c_reg = to_double(key, value);
    else if (key == "model.gamma") cfg.model.gamma = to_double(key, value);
    else if (key == "patch.m") cfg.m = static_cast<int>(to_long(key, value));
    else if (key == "patch.D") cfg.D = to_double(key, value);
    else if (key == "patch.r") cfg.r = to_double(key, value);
    else if (key == "patch.n") cfg.n = static_cast<int>(to_long(key, value));
    else if (key == "grid.L") cfg.L = to_double(key, value);
    else if (key == "grid.n_cells") cfg.n_cells = static_cast<int>(to_long(key, value));
    else if (key == "integrator.rtol") cfg.integrator.rtol = to_double(key, value);
    else if (key == "integrator.atol") cfg.integrator.atol = to_double(key, value);
    else if (key == "integrator.initial_step") cfg.integrator.initial_step = to_double(key, value);
    else if (key == "integrator.max_step") cfg.integrator.max_step = to_double(key, value);
    else if (key == "integrator.max_newton_iterations")
        cfg.integrator.max_newton_iterations = static_cast<int>(to_long(key, value));
    else if (key == "ic.amplitude") cfg.ic.amplitude = to_double(key, value);
    else if (key == "ic.mode_number") cfg.ic.mode_number = static_cast<int>(to_long(key, value));
    else if (key == "ic.noise_amplitude") cfg.ic.noise_amplitude = to_double(key, value);
    else if (key == "ic.seed") cfg.ic.seed = static_cast<std::uint64_t>(to_long(key, value));
    else if (key == "ic.u1") cfg.ic.u1 = to_double(key, value);
    else if (key == "ic.u2") cfg.ic.u2 = to_double(key, value);
    else if (key == "coupling.interpolation") {
        if (value == "lagrange") cfg.coupling.interpolation = InterpolationMode::Lagrange;
        else if (value == "unit_offset") cfg.coupling.interpolation = InterpolationMode::UnitOffset;
        else throw std::invalid_argument("filmsim: bad value for 'coupling.interpolation': " + value);
    } else if (key == "coupling.degree") cfg.coupling.degree = static_cast<int>(to_long(key, value));
    else if (key == "coupling.edge_lift_h2") cfg.coupling.edge_lift_h2 = to_bool(key, value);
    else if (key == "coupling.edge_flux_h") {
        if (value == "interpolate") cfg.coupling.edge_flux_depth = EdgeFluxDepth::Interpolate;
        else if (value == "extrapolate") cfg.coupling.edge_flux_depth = EdgeFluxDepth::Extrapolate;
        else throw std::invalid_argument("filmsim: bad value for 'coupling.edge_flux_h': " + value);
    } else if (key == "regularisation.form") {
        if (value == "rhs") cfg.coupling.form = RegularisationForm::RhsFolded;
        else if (value == "operator") cfg.coupling.form = RegularisationForm::OperatorBare;
        else if (value == "both") cfg.coupling.form = RegularisationForm::OperatorFolded;
        else throw std::invalid_argument("filmsim: bad value for 'regularisation.form': " + value);
    } else if (key == "spectrum.macro_abs_re") cfg.spectrum_bands.macro_abs_re = to_double(key, value);
    else if (key == "spectrum.fast_re") cfg.spectrum_bands.fast_re = to_double(key, value);
    else if (key == "spectrum.wave_abs_im") cfg.spectrum_bands.wave_abs_im = to_double(key, value);
    else if (key == "run.t_end") cfg.t_end = to_double(key, value);
    else if (key == "run.output_times") {
        cfg.output_times.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
            cfg.output_times.push_back(to_double(key, trim(item)));
    } else if (key == "sweep.k_min") cfg.k_min = to_double(key, value);
    else if (key == "sweep.k_max") cfg.k_max = to_double(key, value);
    else if (key == "sweep.k_step") cfg.k_step = to_double(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else throw std::invalid_argument("filmsim: unknown configuration key '" + key + "'");
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("filmsim: cannot open config file: " + path.string());
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("filmsim: expected 'key = value' at " + path.string() +
                                        ":" + std::to_string(line_no));
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

const char* to_string(RegularisationForm f) {
    switch (f) {
        case RegularisationForm::RhsFolded: return "rhs";
        case RegularisationForm::OperatorBare: return "operator";
        default: return "both";
    }
}

const char* to_string(InterpolationMode m) {
    return m == InterpolationMode::Lagrange ? "lagrange" : "unit_offset";
}

const char* to_string(EdgeFluxDepth e) {
    return e == EdgeFluxDepth::Interpolate ? "interpolate" : "extrapolate";
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> kv;
    const auto num = [&](const char* k, double v) { kv.emplace_back(k, format_double(v)); };
    const auto integer = [&](const char* k, long v) { kv.emplace_back(k, std::to_string(v)); };
    kv.emplace_back("mode", mode);
    num("model.re", model.re);
    num("model.tan_theta", model.tan_theta);
    num("model.c_reg", model.c_reg);
    num("model.gamma", model.gamma);
    integer("patch.m", m);
    num("patch.D", D);
    num("patch.r", r);
    integer("patch.n", n);
    num("grid.L", L);
    integer("grid.n_cells", resolved_n_cells());
    num("integrator.rtol", integrator.rtol);
    num("integrator.atol", integrator.atol);
    num("integrator.initial_step", integrator.initial_step);
    num("integrator.max_step", integrator.max_step);
    integer("integrator.max_newton_iterations", integrator.max_newton_iterations);
    num("ic.amplitude", ic.amplitude);
    integer("ic.mode_number", ic.mode_number);
    num("ic.noise_amplitude", ic.noise_amplitude);
    integer("ic.seed", static_cast<long>(ic.seed));
    num("ic.u1", ic.u1);
    num("ic.u2", ic.u2);
    kv.emplace_back("coupling.interpolation", to_string(coupling.interpolation));
    integer("coupling.degree", coupling.degree);
    kv.emplace_back("coupling.edge_lift_h2", coupling.edge_lift_h2 ? "true" : "false");
    kv.emplace_back("coupling.edge_flux_h", to_string(coupling.edge_flux_depth));
    kv.emplace_back("regularisation.form", to_string(coupling.form));
    num("spectrum.macro_abs_re", spectrum_bands.macro_abs_re);
    num("spectrum.fast_re", spectrum_bands.fast_re);
    num("spectrum.wave_abs_im", spectrum_bands.wave_abs_im);
    num("run.t_end", t_end);
    std::string times;
    for (std::size_t i = 0; i < output_times.size(); ++i) {
        if (i) times += ',';
        times += format_double(output_times[i]);
    }
    kv.emplace_back("run.output_times", times);
    num("sweep.k_min", k_min);
    num("sweep.k_max", k_max);
    num("sweep.k_step", k_step);
    // out_dir is deliberately omitted: outputs stay byte-identical no
    // matter where they are written.
    return kv;
}

}  // namespace filmsim
