#include "symldf/acceptance.hpp"

#include "symldf/analysis.hpp"
#include "symldf/errors.hpp"
#include "symldf/legendre.hpp"
#include "symldf/spectral.hpp"
#include "symldf/symmetry.hpp"
#include "symldf/trajectories.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace symldf {

const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::pass: return "PASS";
    case Outcome::fail: return "FAIL";
    case Outcome::expected_fail: return "XFAIL";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Collects named sub-checks; the criterion passes when all of them do.
class Checks {
public:
    void add(const std::string& name, bool ok, const std::string& measured) {
        all_ &= ok;
        if (!first_) os_ << "; ";
        first_ = false;
        os_ << name << (ok ? " ok" : " FAILED") << " (" << measured << ")";
    }
    bool ok() const { return all_; }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
    bool all_{true};
    bool first_{true};
};

std::string sci(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << v;
    return os.str();
}

std::string fix(double v, int digits = 6) {
    std::ostringstream os;
    os << std::setprecision(digits) << std::fixed << v;
    return os.str();
}

double commutator_norm(const Matrix& a, const Matrix& b) { return max_abs(commutator(a, b)); }

ModelParams with_n(double n) {
    ModelParams p = ModelParams::reference();
    p.n_bath = n;
    return p;
}

ModelParams warm_bath(double gamma) { return {0.5, 0.1, 0.5, gamma}; }

Vector weighted_state(double weight_a) {
    // (|0> + |1>)/sqrt2 on qubit 0, sqrt(1-w)|00> + sqrt(w)|-> on qubits 1, 2
    const SymmetryBases& b = symmetry_bases();
    const double s = std::sqrt(0.5);
    Vector psi = s * std::sqrt(1.0 - weight_a) * (b.sym[0] + b.sym[3]) +
                 s * std::sqrt(weight_a) * (b.antisym[0] + b.antisym[1]);
    return psi / psi.norm();
}

// ---------------------------------------------------------------------------

void symmetry_structure(Checks& c) {
    const SymmetryBases& b = symmetry_bases();
    Eigen::SelfAdjointEigenSolver<Matrix> es(b.exchange);
    int plus = 0, minus = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = es.eigenvalues()(i);
        if (std::abs(v - 1.0) <= 1e-12) ++plus;
        if (std::abs(v + 1.0) <= 1e-12) ++minus;
    }
    c.add("exchange multiplicities", plus == 6 && minus == 2,
          "+1:" + std::to_string(plus) + ", -1:" + std::to_string(minus));

    double comm = 0.0;
    for (const ModelParams& p : {ModelParams::reference(), with_n(0.5)}) {
        comm = std::max(comm, commutator_norm(b.exchange, build_hamiltonian(p)));
        for (const JumpOperator& j : build_jump_operators(p)) {
            if (j.channel == JumpChannel::plus || j.channel == JumpChannel::minus) {
                comm = std::max(comm, commutator_norm(b.exchange, j.op));
            }
        }
    }
    c.add("[pi,H], [pi,L+-] <= 1e-12", comm <= 1e-12, sci(comm));

    const SymmetryBlockMap& map = block_map();
    const bool dims = map.dim(Block::SS) == 36 && map.dim(Block::AA) == 4 &&
                      map.dim(Block::SA) == 12 && map.dim(Block::AS) == 12;
    c.add("block dims {36,4,12,12}", dims,
          std::to_string(map.dim(Block::SS)) + "," + std::to_string(map.dim(Block::AA)) + "," +
              std::to_string(map.dim(Block::SA)) + "," + std::to_string(map.dim(Block::AS)));

    double leak = 0.0;
    const ModelParams p = ModelParams::reference();
    std::vector<Matrix> generators{build_liouvillian(p).matrix};
    for (CountingFields f : {CountingFields{0.7, -0.2}, CountingFields{-1.5, 0.8},
                             CountingFields{0.3, 0.1}}) {
        generators.push_back(build_tilted_liouvillian(p, f).matrix);
    }
    for (const Matrix& l : generators) {
        for (Block blk : kAllBlocks) leak = std::max(leak, block_leakage(l, blk));
    }
    c.add("block leakage <= 1e-12", leak <= 1e-12, sci(leak));
}

void steady_states(Checks& c) {
    const ModelParams ref = ModelParams::reference();
    const Matrix l = build_liouvillian(ref).matrix;
    const int nulls = count_null_eigenvalues(l);
    const int ss = count_null_eigenvalues(restrict_superop(l, Block::SS));
    const int aa = count_null_eigenvalues(restrict_superop(l, Block::AA));
    c.add("gamma=0 null eigenvalues", nulls == 2 && ss == 1 && aa == 1,
          "total " + std::to_string(nulls) + ", SS " + std::to_string(ss) + ", AA " +
              std::to_string(aa));

    const SymmetryBases& b = symmetry_bases();
    double worst = 0.0;
    for (double n : {0.1, 0.5, 1.0}) {
        const Matrix rho = steady_state(with_n(n), Sector::A);
        Matrix expected = Matrix::Zero(kHilbertDim, kHilbertDim);
        expected += n / (1.0 + 2.0 * n) * b.antisym[0] * b.antisym[0].adjoint();
        expected += (1.0 + n) / (1.0 + 2.0 * n) * b.antisym[1] * b.antisym[1].adjoint();
        worst = std::max(worst, max_abs(Matrix(rho - expected)));
    }
    c.add("antisymmetric steady state <= 1e-10", worst <= 1e-10, sci(worst));

    ModelParams deph = ref;
    deph.gamma_dephase = 0.01;
    const int unique = count_null_eigenvalues(build_liouvillian(deph).matrix);
    c.add("gamma=0.01 null eigenvalues", unique == 1, std::to_string(unique));
}

void sector_transport(Checks& c) {
    const ModelParams p = ModelParams::reference();
    const SectorAverages avg = sector_averages(p);
    c.add("q_A = 0 +- 1e-9", std::abs(avg.q_A) <= 1e-9, sci(avg.q_A));
    const TiltedGenerator gen(p);
    double flat = 0.0;
    for (double lambda : linspace(-4.0, 2.0, 61)) {
        flat = std::max(flat, std::abs(gen.leading(Sector::A, {lambda, 0.0}).value.real()));
    }
    c.add("mu_A(lambda,0) flat to 1e-9", flat <= 1e-9, sci(flat));
    c.add("q_S < 0", avg.q_S < 0.0, fix(avg.q_S));
    c.add("a_S > a_A > 0", avg.a_S > avg.a_A && avg.a_A > 0.0,
          fix(avg.a_S) + " > " + fix(avg.a_A));
}

void fluctuation_relation(Checks& c, const TiltConvention& conv) {
    for (double n : {0.1, 0.5}) {
        const ModelParams p = with_n(n);
        const TiltedGenerator gen(p, conv);
        const double kappa = p.kappa();
        double worst = 0.0;
        for (double lambda : linspace(-4.0, 2.0, 201)) {
            const double a = gen.mu({lambda, 0.0}, overlap_both()).value;
            const double b = gen.mu({kappa - lambda, 0.0}, overlap_both()).value;
            worst = std::max(worst, std::abs(a - b));
        }
        c.add("theta n=" + fix(n, 1), worst <= 1e-8, sci(worst));
    }
    const ModelParams p = ModelParams::reference();
    const TiltedGenerator gen(p, conv);
    double worst = 0.0;
    for (double lambda : linspace(-4.0, 2.0, 21)) {
        for (double eps : linspace(-2.0, 4.0, 21)) {
            const double a = gen.mu({lambda, eps}, overlap_both()).value;
            const double b = gen.mu({p.kappa() - lambda, eps}, overlap_both()).value;
            worst = std::max(worst, std::abs(a - b));
        }
    }
    c.add("mu 21x21", worst <= 1e-8, sci(worst));
}

void phase_transitions(Checks& c) {
    const ModelParams p = ModelParams::reference();
    const SweepOptions opt;  // lambda in [-4, 2], eps in [-2, 4], 601 points each
    const double cell = opt.lambda_grid[1] - opt.lambda_grid[0];
    const SweepPoint pt = analyse_point(p, p.n_bath, opt);
    const double kappa = p.kappa();

    bool theta_ok = pt.theta_kinks.size() == 2;
    std::string where;
    for (const Kink& k : pt.theta_kinks) where += (where.empty() ? "" : ", ") + fix(k.position, 4);
    if (theta_ok) {
        theta_ok = std::abs(pt.theta_kinks[0].position - kappa) <= cell &&
                   std::abs(pt.theta_kinks[1].position) <= cell;
    }
    c.add("theta kinks at kappa and 0", theta_ok, "[" + where + "], kappa " + fix(kappa, 5));

    const double qs = std::abs(pt.averages.q_S);
    c.add("jump at 0 = |q_S| to 1e-4", std::abs(pt.jump_q - qs) <= 1e-4,
          fix(pt.jump_q, 7) + " vs " + fix(qs, 7));

    const double da = pt.averages.a_S - pt.averages.a_A;
    const double ecell = opt.epsilon_grid[1] - opt.epsilon_grid[0];
    const bool zeta_one =
        pt.zeta_kinks.size() == 1 && std::abs(pt.zeta_kinks[0].position) <= ecell;
    c.add("zeta single kink at 0", zeta_one,
          std::to_string(pt.zeta_kinks.size()) + " kink(s)" +
              (pt.zeta_kinks.empty() ? "" : " at " + fix(pt.zeta_kinks[0].position, 4)));
    c.add("zeta jump = a_S - a_A to 1e-4", std::abs(pt.jump_a - da) <= 1e-4,
          fix(pt.jump_a, 7) + " vs " + fix(da, 7));

    for (double n : {0.1, 0.2, 0.5, 1.0}) {
        const ModelParams q = with_n(n);
        const TiltedGenerator gen(q);
        const LdfCurve theta = scan_curve(gen, Axis::lambda, opt.lambda_grid, overlap_both());
        const auto kinks = detect_kinks(theta.grid, theta.values);
        const double expected = std::log((n + 1.0) / n);
        const double measured =
            kinks.size() == 2 ? kinks[1].position - kinks[0].position : std::nan("");
        c.add("delta n=" + fix(n, 1), std::abs(measured - expected) <= cell,
              fix(measured, 4) + " vs " + fix(expected, 4));
    }
}

void evolution_oracle(Checks& c, const TiltConvention& conv, std::uint64_t seed) {
    const ModelParams p = ModelParams::reference();
    const TiltedGenerator gen(p, conv);
    const Matrix rho0 = Matrix::Identity(kHilbertDim, kHilbertDim) / double(kHilbertDim);
    const SectorOverlap overlap = sector_overlap(rho0);
    std::mt19937_64 rng(seed);
    const double t = 2000.0;
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
        const double lambda = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        const double eps = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        const SuperOperator l = build_tilted_liouvillian(p, {lambda, eps}, conv);
        const double finite_time = log_trace_evolution(l, rho0, t) / t;
        worst = std::max(worst, std::abs(finite_time - gen.mu({lambda, eps}, overlap).value));
    }
    c.add("|ln Z(t)/t - mu| <= 1e-4 at t=2000", worst <= 1e-4, sci(worst));
}

void joint_geometry(Checks& c) {
    const ModelParams p = ModelParams::reference();
    const TiltedGenerator gen(p);
    const double kappa = p.kappa();
    const auto lambda_grid = symmetric_lambda_grid(kappa, 3.0, 0.03);
    const auto eps_grid = linspace(-2.0, 4.0, 241);
    const LdfSurface surface = scan_surface(gen, lambda_grid, eps_grid, overlap_both());

    // q grid mirrored exactly about 0
    std::vector<double> q_grid(41);
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
        q_grid[i] = 0.1 * (2.0 * static_cast<double>(i) - 40.0) / 40.0;
    }
    const auto a_grid = linspace(0.0025, 0.1, 40);
    const JointRateSurface joint = invert_surface(surface, q_grid, a_grid);

    bool mask_ok = true;
    bool finite_ok = true;
    for (std::size_t iq = 0; iq < q_grid.size(); ++iq) {
        for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
            const bool outside = std::abs(q_grid[iq]) > a_grid[ia];
            mask_ok &= joint.is_infeasible(iq, ia) == outside;
            if (!outside) finite_ok &= std::isfinite(joint.value(iq, ia));
        }
    }
    c.add("infeasible exactly on |q|>a", mask_ok && finite_ok,
          std::string(mask_ok ? "mask matches" : "mask differs") +
              (finite_ok ? ", feasible cells finite" : ", non-finite feasible cell"));

    const SectorAverages avg = sector_averages(p);
    const double a_c = std::abs(avg.q_S);
    double worst_zero = 0.0;
    std::size_t finite_off_axis = 0, checked = 0;
    for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
        if (a_grid[ia] >= a_c) continue;
        for (std::size_t iq = 0; iq < q_grid.size(); ++iq) {
            if (q_grid[iq] == 0.0) {
                worst_zero = std::max(worst_zero, std::abs(joint.value(iq, ia)));
            } else {
                ++checked;
                if (!joint.is_infeasible(iq, ia)) ++finite_off_axis;
            }
        }
    }
    c.add("G(0,a<a_c) = 0", worst_zero <= 1e-6, "max |G| " + sci(worst_zero));
    c.add("G(q!=0,a<a_c) = -inf", finite_off_axis == 0,
          std::to_string(finite_off_axis) + " of " + std::to_string(checked) +
              " cells finite, a_c " + fix(a_c));

    const GeometryReport geo = geometry_report(avg, p);
    const double fitted = fitted_kink_line_slope(gen);
    const double rel = std::abs(fitted - geo.u0) / std::abs(geo.u0);
    c.add("u0 within 5%", rel <= 0.05,
          "formula " + fix(geo.u0, 5) + ", fitted " + fix(fitted, 5));

    const LdfCurve theta = scan_curve(gen, Axis::lambda, lambda_grid, overlap_both());
    const RateFunctionCurve fq = invert_curve(theta, q_grid, {.strict = false});
    const LdfCurve zeta = scan_curve(gen, Axis::epsilon, eps_grid, overlap_both());
    const RateFunctionCurve ia = invert_curve(zeta, a_grid, {.strict = false});
    const ConditionalLdfs cond = conditional_ldfs(joint, fq, ia);
    double worst = 0.0;
    const std::size_t nq = q_grid.size();
    for (std::size_t iq = 0; iq < nq; ++iq) {
        for (std::size_t k = 0; k < a_grid.size(); ++k) {
            const double a = cond.activity_given_current(static_cast<Eigen::Index>(iq),
                                                         static_cast<Eigen::Index>(k));
            const double b = cond.activity_given_current(static_cast<Eigen::Index>(nq - 1 - iq),
                                                         static_cast<Eigen::Index>(k));
            if (std::isinf(a) || std::isinf(b)) {
                if (a != b) worst = std::numeric_limits<double>::infinity();
                continue;
            }
            worst = std::max(worst, std::abs(a - b));
        }
    }
    c.add("G_A(a|q) = G_A(a|-q) to 1e-8", worst <= 1e-8, sci(worst));
}

void trajectory_cross_validation(Checks& c, std::uint64_t seed) {
    const std::size_t n_traj = 10000;
    const double T = 200.0;
    const InitialState psi0 = InitialState::pure(mixed_sector_state());
    for (double gamma : {0.0, 0.001, 0.01}) {
        const ModelParams p = warm_bath(gamma);
        const EnsembleStats st = ensemble_run(p, psi0, T, n_traj, seed);
        std::vector<double> times;
        std::vector<std::size_t> idx;
        for (std::size_t k = 1; k <= 10; ++k) {
            idx.push_back((st.times.size() - 1) * k / 10);
            times.push_back(st.times[idx.back()]);
        }
        const auto oracle = antisymmetric_weight(p, psi0.density(), times);
        double worst_z = 0.0;
        bool ok = true;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const double diff = std::abs(st.mean_xi[idx[k]] - oracle[k]);
            ok &= diff <= 3.0 * st.stderr_xi[idx[k]] + 1e-12;
            if (st.stderr_xi[idx[k]] > 0) worst_z = std::max(worst_z, diff / st.stderr_xi[idx[k]]);
        }
        c.add("xi(t) gamma=" + fix(gamma, 3), ok, "max |z| " + fix(worst_z, 2));
    }

    const ModelParams ref = ModelParams::reference();
    const SectorAverages avg = sector_averages(ref);
    for (Sector s : {Sector::S, Sector::A}) {
        const auto init = InitialState::mixture(steady_state(ref, s));
        const EnsembleStats st = ensemble_run(ref, init, T, n_traj, seed + 1);
        const double q = s == Sector::S ? avg.q_S : avg.q_A;
        const double a = s == Sector::S ? avg.a_S : avg.a_A;
        const bool q_ok = std::abs(st.mean_q - q) <= 3.0 * st.stderr_q + 1e-12;
        const bool a_ok = std::abs(st.mean_a - a) <= 3.0 * st.stderr_a + 1e-12;
        c.add(std::string("sector ") + to_string(s) + " q", q_ok,
              fix(st.mean_q) + " +- " + fix(st.stderr_q) + " vs " + fix(q));
        c.add(std::string("sector ") + to_string(s) + " a", a_ok,
              fix(st.mean_a) + " +- " + fix(st.stderr_a) + " vs " + fix(a));
    }
}

void freezing(Checks& c, std::uint64_t seed) {
    const ModelParams p = warm_bath(0.0);
    const std::size_t n_traj = 10000;
    const double T = 2000.0;
    const double tol = 1e-3;
    for (double w : {0.5, 0.25}) {
        const Vector psi = w == 0.5 ? mixed_sector_state() : weighted_state(w);
        const EnsembleStats st = ensemble_run(p, InitialState::pure(psi), T, n_traj, seed + 7);
        const double sigma = std::sqrt(w * (1.0 - w) / static_cast<double>(n_traj));
        try {
            const FreezingStatistics f = freezing_statistics(st, tol);
            c.add("xi(0)=" + fix(w, 2) + " all frozen", true,
                  "mean collapse time " + fix(f.mean_collapse_time, 1));
            c.add("xi(0)=" + fix(w, 2) + " fraction", std::abs(f.fraction_to_A - w) <= 3.0 * sigma,
                  fix(f.fraction_to_A, 4) + " vs " + fix(w, 2) + " +- " + fix(3.0 * sigma, 4));
        } catch (const NotFrozen& e) {
            c.add("xi(0)=" + fix(w, 2) + " all frozen", false, e.what());
        }
    }
}

void dephasing_washout(Checks& c, std::uint64_t seed) {
    const ModelParams p = ModelParams::reference();
    const auto results = dephasing_comparison(p, {0.0, 0.01}, default_slices());
    bool clean_kinks = true;
    bool smooth = true;
    std::size_t kinks0 = 0, kinks1 = 0;
    for (const SliceResult& r : results) {
        if (r.gamma == 0.0) {
            const std::size_t want = r.slice.axis == Axis::lambda ? 2 : 1;
            clean_kinks &= r.kinks.size() == want;
            kinks0 += r.kinks.size();
        } else {
            smooth &= r.kinks.empty();
            kinks1 += r.kinks.size();
        }
    }
    c.add("kinks at gamma=0", clean_kinks, std::to_string(kinks0) + " on " +
                                               std::to_string(results.size() / 2) + " slices");
    c.add("no kinks at gamma=0.01", smooth, std::to_string(kinks1));

    const auto init = InitialState::mixture(steady_state(p, Sector::A));
    const EnsembleStats st = ensemble_run(p, init, 2000.0, 200, seed + 3);
    long events = 0, jumps = 0;
    for (std::size_t i = 0; i < st.n_traj; ++i) {
        events += st.c_plus_count[i] + st.c_minus_count[i];
        jumps += st.k_plus[i] + st.k_minus[i];
    }
    c.add("antisymmetric start C+- = 0", events == 0 && jumps > 0,
          std::to_string(events) + " events over " + std::to_string(jumps) + " jumps");

    ModelParams deph = p;
    deph.gamma_dephase = 0.01;
    const double T = 20000.0;
    const TrajectoryRecord rec = sample_trajectory(deph, mixed_sector_state(), T, seed + 5);
    const OrderParameterEvents ev = order_parameters(rec);
    const double quiet = quiescent_fraction(ev, T, 50.0);
    c.add("gamma=0.01 quiescent windows", quiet > 0.0 && quiet < 1.0,
          "fraction " + fix(quiet, 3) + ", " + std::to_string(ev.c_plus.size() + ev.c_minus.size()) +
              " C+- events");
}

void sweep_structure(Checks& c) {
    std::vector<double> bz;
    for (int i = 1; i <= 50; ++i) bz.push_back(0.01 * i);
    const SweepResult r = sweep_bz(ModelParams::reference(), bz);
    double qa_lo = 1e300, qa_hi = -1e300, aa_lo = 1e300, aa_hi = -1e300, d_lo = 1e300, d_hi = -1e300;
    for (const SweepPoint& pt : r.points) {
        const double qa = std::abs(pt.averages.q_A);
        qa_lo = std::min(qa_lo, qa);
        qa_hi = std::max(qa_hi, qa);
        aa_lo = std::min(aa_lo, pt.averages.a_A);
        aa_hi = std::max(aa_hi, pt.averages.a_A);
        d_lo = std::min(d_lo, pt.delta);
        d_hi = std::max(d_hi, pt.delta);
    }
    c.add("|q_A| constant to 1e-8", qa_hi - qa_lo <= 1e-8, sci(qa_hi - qa_lo));
    c.add("a_A constant to 1e-8", aa_hi - aa_lo <= 1e-8, sci(aa_hi - aa_lo));
    const double cell = 0.01;
    const bool common = r.q_difference_max.interior && r.a_difference_max.interior &&
                        std::abs(r.q_difference_max.location - r.a_difference_max.location) <= cell;
    c.add("common interior maximum", common,
          "q at " + fix(r.q_difference_max.location, 4) + ", a at " +
              fix(r.a_difference_max.location, 4));
    c.add("delta constant", d_hi - d_lo <= 1e-6, sci(d_hi - d_lo));
    const SweepOptions opt;
    const double lcell = opt.lambda_grid[1] - opt.lambda_grid[0];
    double worst = 0.0;
    for (const SweepPoint& pt : r.points) {
        const double d = std::abs(pt.delta_kinks - pt.delta);
        worst = std::isnan(d) ? std::numeric_limits<double>::infinity() : std::max(worst, d);
    }
    c.add("kink gap within one cell", worst <= lcell, fix(worst, 5));
}

struct Criterion {
    int id;
    const char* title;
    double time_limit;  // seconds, 0 = none
    std::function<void(Checks&, const AcceptanceOptions&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "symmetry structure", 1.0, [](Checks& c, const AcceptanceOptions&) { symmetry_structure(c); }},
        {2, "steady states", 5.0, [](Checks& c, const AcceptanceOptions&) { steady_states(c); }},
        {3, "sector transport", 0.0, [](Checks& c, const AcceptanceOptions&) { sector_transport(c); }},
        {4, "fluctuation relation", 0.0,
         [](Checks& c, const AcceptanceOptions& o) { fluctuation_relation(c, o.convention); }},
        {5, "dynamical phase transitions", 0.0,
         [](Checks& c, const AcceptanceOptions&) { phase_transitions(c); }},
        {6, "spectral vs finite-time evolution", 30.0,
         [](Checks& c, const AcceptanceOptions& o) { evolution_oracle(c, o.convention, o.seed); }},
        {7, "joint current-activity geometry", 0.0,
         [](Checks& c, const AcceptanceOptions&) { joint_geometry(c); }},
        {8, "trajectories vs master equation", 300.0,
         [](Checks& c, const AcceptanceOptions& o) { trajectory_cross_validation(c, o.seed); }},
        {9, "dissipative freezing", 0.0, [](Checks& c, const AcceptanceOptions& o) { freezing(c, o.seed); }},
        {10, "dephasing washout", 0.0,
         [](Checks& c, const AcceptanceOptions& o) { dephasing_washout(c, o.seed); }},
        {11, "field sweep structure", 0.0, [](Checks& c, const AcceptanceOptions&) { sweep_structure(c); }},
    };
    return list;
}

} // namespace

int acceptance_criterion_count() { return static_cast<int>(criteria().size()); }

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options, const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (const Criterion& cr : criteria()) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), cr.id) == options.only.end()) {
            continue;
        }
        CriterionResult r;
        r.id = cr.id;
        r.title = cr.title;
        Checks checks;
        const auto start = Clock::now();
        try {
            cr.run(checks, options);
        } catch (const std::exception& e) {
            checks.add("exception", false, e.what());
        }
        r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (cr.time_limit > 0.0) {
            checks.add("runtime < " + fix(cr.time_limit, 0) + " s", r.seconds < cr.time_limit,
                       fix(r.seconds, 2) + " s");
        }
        r.outcome = checks.ok() ? Outcome::pass : Outcome::fail;
        r.detail = checks.str();
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

CriterionResult symmetry_check(const ModelParams& p) {
    CriterionResult r;
    r.id = 0;
    r.title = "strong symmetry of the configured model";
    const auto start = Clock::now();
    const Matrix& pi = symmetry_bases().exchange;
    double worst = commutator_norm(pi, build_hamiltonian(p));
    for (const JumpOperator& j : build_jump_operators(p)) worst = std::max(worst, commutator_norm(pi, j.op));
    const bool ok = worst <= 1e-12;
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.detail = "max commutator with pi_12 " + sci(worst);
    if (ok) r.outcome = Outcome::pass;
    else r.outcome = p.symmetric() ? Outcome::fail : Outcome::expected_fail;
    if (r.outcome == Outcome::expected_fail) r.detail += "; dephasing breaks the exchange symmetry";
    return r;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << '[' << to_string(r.outcome) << "] " << r.id << ' ' << r.title << ": " << r.detail << " ("
       << std::fixed << std::setprecision(2) << r.seconds << " s)";
    return os.str();
}

} // namespace symldf
