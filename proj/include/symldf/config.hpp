// config.hpp: run configuration for the command-line tool

#pragma once

#include "symldf/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace symldf {

inline constexpr int kSchemaVersion = 1;

enum class InitialKind { mixed, symmetric, antisymmetric };

struct LdfConfig {
    double lambda_half_width{3.0};  // dual grid is centred on kappa/2
    double lambda_step{0.01};
    double epsilon_min{-2.0};
    double epsilon_max{4.0};
    double epsilon_step{0.01};
    double surface_lambda_step{0.03};
    double surface_epsilon_step{0.03};
    double q_max{0.2};
    std::size_t q_points{81};
    double a_min{0.005};
    double a_max{0.3};
    std::size_t a_points{60};
};

struct TrajectoryConfig {
    double duration{200.0};
    std::size_t n_traj{1000};
    std::size_t xi_samples{500};
    std::vector<double> gammas{0.0, 0.01, 0.001};
    InitialKind initial{InitialKind::mixed};
    std::size_t records{5};  // trajectories written out event by event
    double window{50.0};     // quiescent-window length for the C+- scan
    double freeze_tol{1e-3};
};

struct SweepConfig {
    std::vector<double> n_values{0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0};
    double n_sweep_b_z{0.1};
    std::vector<double> bz_values;  // defaults to 0.01, 0.02, ..., 0.50
    double bz_sweep_n{0.1};
};

struct DephasingConfig {
    std::vector<double> gammas{0.0, 0.01};
    std::vector<double> epsilon_fixed{-0.5, 0.0, 0.5};  // lambda slices
    std::vector<double> lambda_fixed{-0.5, 0.5};        // epsilon slices
};

struct RunConfig {
    int schema_version{kSchemaVersion};
    std::uint64_t seed{20240501};
    unsigned threads{0};
    std::string output_dir{"symldf_out"};
    ModelParams model{ModelParams::reference()};
    LdfConfig ldf;
    TrajectoryConfig trajectories;
    SweepConfig sweep;
    DephasingConfig dephasing;

    RunConfig();
};

// Sections: top level (schema_version, seed, threads), [model], [ldf],
// [trajectories], [sweep], [dephasing], [output]. Missing keys keep their
// defaults; unknown sections or keys raise ConfigError with a suggestion.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

// Canonical text with every field spelled out; parse_run_config reads it back
// to an equal configuration.
std::string to_text(const RunConfig& config);

// FNV-1a of the canonical text.
std::uint64_t config_hash(const RunConfig& config);

const char* to_string(InitialKind k);

} // namespace symldf
