// trajectories.hpp: quantum-jump unraveling: single trajectories, ensembles,
// C+- event scans and dissipative-freezing statistics.

#pragma once

#include "symldf/model.hpp"
#include "symldf/superoperator.hpp"

#include <cstdint>
#include <vector>

namespace symldf {

struct JumpEvent {
    double time;
    JumpChannel channel;
};

struct TrajectoryRecord {
    std::uint64_t seed{0};
    double duration{0.0};
    std::vector<JumpEvent> jump_events;
    std::vector<double> sample_times;
    std::vector<double> xi;  // |P_- psi|^2 at sample_times
    long k_plus{0};
    long k_minus{0};
    Vector final_state;

    long current() const { return k_plus - k_minus; }   // Q
    long activity() const { return k_plus + k_minus; }  // A
};

struct TrajectoryOptions {
    std::size_t xi_samples{500};  // uniform over [0, T], both ends included
    // Jump times are resolved to (T / (xi_samples - 1)) / 2^time_bits.
    int time_bits{40};
};

// Per-trajectory seed derived from a master seed and the trajectory index, so
// ensembles do not depend on the parallel schedule.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

// No-jump evolution under H_eff = H - (i/2) sum_k L_k^dagger L_k is propagated
// exactly; a jump fires when |psi|^2 drops to a uniform draw u, located by
// dyadic bisection of the step. Dephasing jumps are recorded but not counted.
// A state that cannot decay (dark) simply evolves to T.
TrajectoryRecord sample_trajectory(const ModelParams& p, const Vector& psi0, double T,
                                   std::uint64_t seed, const TrajectoryOptions& options = {});

// Pure initial state, or a mixture whose components are drawn per trajectory.
struct InitialState {
    std::vector<double> weights;
    std::vector<Vector> states;

    static InitialState pure(const Vector& psi);
    // Eigen-decomposition of rho; components below 1e-14 weight are dropped.
    static InitialState mixture(const DensityMatrix& rho);
    DensityMatrix density() const;
};

struct EnsembleOptions {
    TrajectoryOptions trajectory{};
    bool keep_records{false};
};

struct EnsembleStats {
    std::size_t n_traj{0};
    double duration{0.0};
    std::vector<double> times;
    std::vector<double> mean_xi;
    std::vector<double> stderr_xi;
    double mean_q{0.0};  // <Q>/T
    double stderr_q{0.0};
    double mean_a{0.0};  // <A>/T
    double stderr_a{0.0};

    // Per trajectory, in index order.
    std::vector<std::uint64_t> seeds;
    std::vector<long> k_plus;
    std::vector<long> k_minus;
    std::vector<long> c_plus_count;
    std::vector<long> c_minus_count;
    std::vector<std::vector<double>> xi;  // sampled xi of every trajectory
    std::vector<TrajectoryRecord> records;  // only with keep_records

    // Fraction of trajectories whose last xi exceeds 1 - tol (frozen into A).
    double freeze_fraction(double tol = 1e-3) const;
};

EnsembleStats ensemble_run(const ModelParams& p, const InitialState& init, double T,
                           std::size_t n_traj, std::uint64_t master_seed,
                           const EnsembleOptions& options = {});

struct OrderParameterEvents {
    std::vector<double> c_plus;   // second of two consecutive absorptions
    std::vector<double> c_minus;  // second of two consecutive emissions
};

OrderParameterEvents order_parameters(const TrajectoryRecord& record);

// Fraction of consecutive windows of length `window` on [0, duration) that
// contain no C+ or C- event.
double quiescent_fraction(const OrderParameterEvents& events, double duration, double window);

struct FreezingStatistics {
    double fraction_to_A{0.0};
    double mean_collapse_time{0.0};
    std::size_t n_traj{0};
};

// Throws NotFrozen (carrying the offending seeds) if any trajectory still has
// xi in (tol, 1 - tol) at its last sample.
FreezingStatistics freezing_statistics(const EnsembleStats& stats, double tol = 1e-3);

// Tr(P_- e^{L t} rho0) at each time: the master-equation value of <xi(t)>.
std::vector<double> antisymmetric_weight(const ModelParams& p, const DensityMatrix& rho0,
                                         const std::vector<double>& times);

} // namespace symldf
