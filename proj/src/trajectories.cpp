#include "symldf/trajectories.hpp"

#include "symldf/errors.hpp"
#include "symldf/liouville.hpp"
#include "symldf/parallel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace symldf {

namespace {

using Vec8 = Eigen::Matrix<cplx, 8, 1>;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Uniform {
public:
    explicit Uniform(std::uint64_t seed) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
        engine_.seed(seq);
    }
    // (0, 1], 53 random bits
    double operator()() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

struct Channel {
    JumpChannel channel;
    Mat8 op;
};

// Everything a trajectory needs that depends only on (params, step).
struct Propagator {
    std::vector<Mat8> steps;  // steps[k] = exp(-i H_eff h / 2^k)
    std::vector<Channel> channels;
    Mat8 projector;
};

Propagator make_propagator(const ModelParams& p, double h, int bits) {
    const auto jumps = build_jump_operators(p);
    Matrix heff = build_hamiltonian(p);
    Propagator prop;
    for (const auto& j : jumps) {
        if (j.op.cwiseAbs().maxCoeff() == 0.0) continue;
        heff -= 0.5 * kI * j.op.adjoint() * j.op;
        prop.channels.push_back({j.channel, j.op});
    }
    prop.steps.reserve(static_cast<std::size_t>(bits) + 1);
    double dt = h;
    for (int k = 0; k <= bits; ++k) {
        const Matrix generator = (-kI * dt) * heff;
        prop.steps.emplace_back(generator.exp());
        dt *= 0.5;
    }
    prop.projector = symmetry_bases().antisym_projector;
    return prop;
}

double xi_of(const Propagator& prop, const Vec8& psi) {
    return (prop.projector * psi).squaredNorm() / psi.squaredNorm();
}

TrajectoryRecord run(const Propagator& prop, const Vector& psi0, double T, std::size_t samples,
                     int bits, std::uint64_t seed) {
    TrajectoryRecord rec;
    rec.seed = seed;
    rec.duration = T;
    rec.sample_times.resize(samples);
    rec.xi.resize(samples);

    Uniform rng(seed);
    Vec8 psi = psi0;
    double u = rng();
    const double h = T / static_cast<double>(samples - 1);
    const std::uint64_t full = std::uint64_t{1} << bits;
    const double unit = h / static_cast<double>(full);

    rec.sample_times[0] = 0.0;
    rec.xi[0] = xi_of(prop, psi);

    std::vector<double> rates(prop.channels.size());
    for (std::size_t s = 1; s < samples; ++s) {
        const double start = h * static_cast<double>(s - 1);
        std::uint64_t pos = 0;
        int cap = bits;
        while (pos < full) {
            const std::uint64_t remaining = full - pos;
            int b = std::min(cap, static_cast<int>(std::bit_width(remaining)) - 1);
            const Vec8 trial = prop.steps[static_cast<std::size_t>(bits - b)] * psi;
            if (trial.squaredNorm() >= u) {
                psi = trial;
                pos += std::uint64_t{1} << b;
                continue;
            }
            if (b > 0) {
                cap = b - 1;
                continue;
            }
            // The norm crosses u within the finest resolvable piece: jump.
            psi = trial;
            pos += 1;
            double total = 0.0;
            for (std::size_t c = 0; c < prop.channels.size(); ++c) {
                rates[c] = (prop.channels[c].op * psi).squaredNorm();
                total += rates[c];
            }
            if (!(total > 0.0)) {
                throw ZeroNorm("no jump channel can act although the norm decayed");
            }
            double pick = rng() * total;
            std::size_t chosen = prop.channels.size() - 1;
            for (std::size_t c = 0; c < prop.channels.size(); ++c) {
                if (pick <= rates[c]) {
                    chosen = c;
                    break;
                }
                pick -= rates[c];
            }
            psi = prop.channels[chosen].op * psi;
            psi /= psi.norm();
            const JumpChannel ch = prop.channels[chosen].channel;
            rec.jump_events.push_back({start + unit * static_cast<double>(pos), ch});
            if (ch == JumpChannel::plus) ++rec.k_plus;
            if (ch == JumpChannel::minus) ++rec.k_minus;
            u = rng();
            cap = bits;
        }
        rec.sample_times[s] = h * static_cast<double>(s);
        rec.xi[s] = xi_of(prop, psi);
    }
    rec.sample_times.back() = T;
    rec.final_state = psi / psi.norm();
    return rec;
}

void check_inputs(const Vector& psi0, double T, const TrajectoryOptions& options) {
    if (psi0.size() != kHilbertDim) {
        throw DimensionMismatch("initial state must have dimension 8");
    }
    const double norm = psi0.norm();
    if (norm == 0.0) throw ZeroNorm("initial state has zero norm");
    if (std::abs(norm - 1.0) > 1e-8) throw InvalidParameter("initial state must be normalized");
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidParameter("duration must be positive");
    if (options.xi_samples < 2) throw InvalidParameter("need at least 2 xi samples");
    if (options.time_bits < 1 || options.time_bits > 60) {
        throw InvalidParameter("time_bits must lie in [1, 60]");
    }
}

} // namespace

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed ^ splitmix64(index));
}

TrajectoryRecord sample_trajectory(const ModelParams& p, const Vector& psi0, double T,
                                   std::uint64_t seed, const TrajectoryOptions& options) {
    p.validate();
    check_inputs(psi0, T, options);
    const double h = T / static_cast<double>(options.xi_samples - 1);
    const Propagator prop = make_propagator(p, h, options.time_bits);
    return run(prop, psi0, T, options.xi_samples, options.time_bits, seed);
}

InitialState InitialState::pure(const Vector& psi) { return {{1.0}, {psi}}; }

InitialState InitialState::mixture(const DensityMatrix& rho) {
    if (rho.rows() != kHilbertDim || rho.cols() != kHilbertDim) {
        throw DimensionMismatch("density matrix must be 8x8");
    }
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    InitialState out;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double w = es.eigenvalues()(i);
        if (w < -1e-10) throw NoPhysicalState("density matrix has a negative eigenvalue");
        if (w <= 1e-14) continue;
        out.weights.push_back(w);
        out.states.push_back(es.eigenvectors().col(i).normalized());
    }
    if (out.weights.empty()) throw NoPhysicalState("density matrix has no positive weight");
    return out;
}

DensityMatrix InitialState::density() const {
    DensityMatrix rho = Matrix::Zero(kHilbertDim, kHilbertDim);
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        rho += weights[i] * states[i] * states[i].adjoint();
        total += weights[i];
    }
    return rho / total;
}

double EnsembleStats::freeze_fraction(double tol) const {
    if (xi.empty()) return 0.0;
    std::size_t frozen = 0;
    for (const auto& x : xi) {
        if (x.back() > 1.0 - tol) ++frozen;
    }
    return static_cast<double>(frozen) / static_cast<double>(xi.size());
}

EnsembleStats ensemble_run(const ModelParams& p, const InitialState& init, double T,
                           std::size_t n_traj, std::uint64_t master_seed,
                           const EnsembleOptions& options) {
    p.validate();
    if (n_traj < 1) throw InvalidParameter("n_traj must be >= 1");
    if (init.weights.empty() || init.weights.size() != init.states.size()) {
        throw InvalidParameter("initial state has no components");
    }
    for (const Vector& s : init.states) check_inputs(s, T, options.trajectory);

    const std::size_t samples = options.trajectory.xi_samples;
    const int bits = options.trajectory.time_bits;
    const Propagator prop = make_propagator(p, T / static_cast<double>(samples - 1), bits);

    std::vector<double> cumulative(init.weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < init.weights.size(); ++i) {
        total += init.weights[i];
        cumulative[i] = total;
    }

    EnsembleStats st;
    st.n_traj = n_traj;
    st.duration = T;
    st.seeds.resize(n_traj);
    st.k_plus.resize(n_traj);
    st.k_minus.resize(n_traj);
    st.c_plus_count.resize(n_traj);
    st.c_minus_count.resize(n_traj);
    st.xi.resize(n_traj);
    if (options.keep_records) st.records.resize(n_traj);
    std::vector<double> times;

    parallel_for(n_traj, [&](std::size_t i) {
        const std::uint64_t seed = trajectory_seed(master_seed, i);
        std::size_t component = 0;
        if (init.states.size() > 1) {
            // separate stream for the component draw
            Uniform pick(splitmix64(seed ^ 0x5bd1e995ULL));
            const double x = pick() * total;
            component = static_cast<std::size_t>(
                std::lower_bound(cumulative.begin(), cumulative.end(), x) - cumulative.begin());
            component = std::min(component, init.states.size() - 1);
        }
        TrajectoryRecord rec = run(prop, init.states[component], T, samples, bits, seed);
        const OrderParameterEvents ev = order_parameters(rec);
        st.seeds[i] = seed;
        st.k_plus[i] = rec.k_plus;
        st.k_minus[i] = rec.k_minus;
        st.c_plus_count[i] = static_cast<long>(ev.c_plus.size());
        st.c_minus_count[i] = static_cast<long>(ev.c_minus.size());
        if (i == 0) times = rec.sample_times;
        st.xi[i] = rec.xi;
        if (options.keep_records) st.records[i] = std::move(rec);
    });

    // Sequential reduction in index order keeps results schedule independent.
    st.times = times;
    st.mean_xi.assign(samples, 0.0);
    st.stderr_xi.assign(samples, 0.0);
    const double n = static_cast<double>(n_traj);
    for (std::size_t s = 0; s < samples; ++s) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n_traj; ++i) sum += st.xi[i][s];
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t i = 0; i < n_traj; ++i) ss += (st.xi[i][s] - mean) * (st.xi[i][s] - mean);
        st.mean_xi[s] = mean;
        st.stderr_xi[s] = n_traj > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    }
    const auto mean_and_error = [&](auto value, double& mean, double& err) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n_traj; ++i) sum += value(i);
        mean = sum / n;
        double ss = 0.0;
        for (std::size_t i = 0; i < n_traj; ++i) ss += (value(i) - mean) * (value(i) - mean);
        err = n_traj > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    };
    mean_and_error([&](std::size_t i) { return static_cast<double>(st.k_plus[i] - st.k_minus[i]) / T; },
                   st.mean_q, st.stderr_q);
    mean_and_error([&](std::size_t i) { return static_cast<double>(st.k_plus[i] + st.k_minus[i]) / T; },
                   st.mean_a, st.stderr_a);
    return st;
}

OrderParameterEvents order_parameters(const TrajectoryRecord& record) {
    OrderParameterEvents ev;
    bool have_previous = false;
    JumpChannel previous = JumpChannel::plus;
    for (const JumpEvent& e : record.jump_events) {
        if (e.channel != JumpChannel::plus && e.channel != JumpChannel::minus) continue;
        if (have_previous && e.channel == previous) {
            (e.channel == JumpChannel::plus ? ev.c_plus : ev.c_minus).push_back(e.time);
        }
        previous = e.channel;
        have_previous = true;
    }
    return ev;
}

double quiescent_fraction(const OrderParameterEvents& events, double duration, double window) {
    if (!(window > 0.0) || !(duration >= window)) {
        throw InvalidParameter("need 0 < window <= duration");
    }
    const auto n = static_cast<std::size_t>(std::floor(duration / window));
    std::vector<char> active(n, 0);
    for (const auto* list : {&events.c_plus, &events.c_minus}) {
        for (double t : *list) {
            const auto w = static_cast<std::size_t>(t / window);
            if (w < n) active[w] = 1;
        }
    }
    const auto quiet = std::count(active.begin(), active.end(), 0);
    return static_cast<double>(quiet) / static_cast<double>(n);
}

FreezingStatistics freezing_statistics(const EnsembleStats& stats, double tol) {
    if (stats.xi.empty()) throw InvalidParameter("ensemble has no xi samples");
    std::vector<unsigned long long> unsettled;
    std::size_t to_a = 0;
    double collapse_sum = 0.0;
    for (std::size_t i = 0; i < stats.xi.size(); ++i) {
        const auto& x = stats.xi[i];
        const auto inside = [&](double v) { return v > tol && v < 1.0 - tol; };
        if (inside(x.back())) {
            unsettled.push_back(stats.seeds[i]);
            continue;
        }
        if (x.back() >= 1.0 - tol) ++to_a;
        std::size_t settle = 0;
        for (std::size_t s = x.size(); s-- > 0;) {
            if (inside(x[s])) {
                settle = s + 1;
                break;
            }
        }
        collapse_sum += stats.times[settle];
    }
    if (!unsettled.empty()) {
        const std::string what = std::to_string(unsettled.size()) + " of " +
                                 std::to_string(stats.xi.size()) +
                                 " trajectories have not collapsed onto a sector";
        throw NotFrozen(what, std::move(unsettled));
    }
    const double n = static_cast<double>(stats.xi.size());
    return {static_cast<double>(to_a) / n, collapse_sum / n, stats.xi.size()};
}

std::vector<double> antisymmetric_weight(const ModelParams& p, const DensityMatrix& rho0,
                                         const std::vector<double>& times) {
    const SuperOperator l = build_liouvillian(p);
    const Matrix& proj = symmetry_bases().antisym_projector;
    std::vector<double> out(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        out[i] = (proj * evolve(rho0, times[i], l)).trace().real();
    });
    return out;
}

} // namespace symldf
