#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccwave/field.hpp"
#include "ccwave/solver.hpp"

namespace ccwave {

inline constexpr const char* kVersion = "1.0.0";

enum class ExperimentKind { evolve, linear_decay, wavepacket, scatter, illposed, norms, symbols };

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::evolve;
    std::uint64_t seed = 0;
    std::string raw_json;  // for the manifest hash

    // grid + datum (evolve, linear_decay)
    int nx = 256, ny = 256;
    double Lx = 2.0 * M_PI, Ly = 2.0 * M_PI;
    Depth h = Depth::finite(1.0);
    double dt = 0.0;  // <= 0: default rule
    double t_end = 0.0;
    double amplitude = 0.05;
    std::string ic = "gaussian";
    std::string ic_file;
    int snapshot_every = 0;
    double k0 = 0.0, sigma_x = 0.0, sigma_y = 0.0;  // 0: defaults

    // linear_decay
    std::vector<double> times;

    // wavepacket / scatter
    std::string run_dir;
    std::vector<double> v_list{0.5, 1.0, 2.0};

    // illposed
    double p = 2.0, eps = 0.1;
    std::vector<double> N_list{16, 32, 64, 128};

    // norms
    std::string in_file;
    double t_eval = 0.0;
};

ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_json(const std::string& json_text);

// Modulated-Gaussian datum A cos(k0 x) exp(-x^2/2sx^2 - y^2/2sy^2), pinned
// mean-zero in x with the Nyquist modes cleared.
Field gaussian_datum(const Grid& g, const Depth& h, double amplitude, double k0, double sigma_x,
                     double sigma_y);

struct RunResult {
    int exit_code = 0;  // 0 ok, 2 config, 3 numerical (blow-up/wrap), 4 property failure
    std::string message;
    std::map<std::string, double> constants;  // regression-locked values touched
};

// Executes the experiment, writing artifacts and manifest.json under out_dir.
RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir, int threads = 1);

// Formats a double with round-trip precision (deterministic CSV output).
std::string fmt_g17(double v);

}  // namespace ccwave
