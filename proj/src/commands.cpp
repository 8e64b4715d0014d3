#include "symldf/commands.hpp"

#include "symldf/acceptance.hpp"
#include "symldf/analysis.hpp"
#include "symldf/errors.hpp"
#include "symldf/io.hpp"
#include "symldf/legendre.hpp"
#include "symldf/parallel.hpp"
#include "symldf/spectral.hpp"
#include "symldf/symmetry.hpp"
#include "symldf/trajectories.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace symldf {

namespace {

using KV = std::vector<std::pair<std::string, std::string>>;

std::string num(double v) { return format_number(v); }

// Multiples of `step` inside [lo, hi]; 0 is on the grid whenever lo <= 0 <= hi.
std::vector<double> stepped_grid(double lo, double hi, double step) {
    const auto k0 = static_cast<long>(std::ceil(lo / step - 1e-9));
    const auto k1 = static_cast<long>(std::floor(hi / step + 1e-9));
    std::vector<double> g;
    for (long k = k0; k <= k1; ++k) g.push_back(static_cast<double>(k) * step);
    return g;
}

// n points on [-x, x], mirrored exactly.
std::vector<double> mirrored_grid(double x, std::size_t n) {
    std::vector<double> g(n);
    const double half = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = x * (2.0 * static_cast<double>(i) - half) / half;
    return g;
}

Vector eigenvalues_of(const Matrix& m) {
    Eigen::ComplexEigenSolver<Matrix> es(m, false);
    return es.eigenvalues();
}

int count_small(const Vector& v, double tol) {
    int c = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) c += std::abs(v(i)) <= tol;
    return c;
}

Vector initial_vector(InitialKind kind) {
    const Vector mixed = mixed_sector_state();
    if (kind == InitialKind::mixed) return mixed;
    const Matrix& pm = symmetry_bases().antisym_projector;
    Vector v = kind == InitialKind::antisymmetric ? Vector(pm * mixed) : Vector(mixed - pm * mixed);
    return v / v.norm();
}

std::string gamma_tag(double g) { return "gamma" + num(g); }

void require_symmetric(const ModelParams& p, const std::string& what) {
    if (!p.symmetric()) throw ConfigError(what + " needs gamma_dephase = 0");
}

// ---------------------------------------------------------------------------

void cmd_spectrum(const RunConfig& c, Manifest& m, std::ostream& log) {
    const ModelParams& p = c.model;
    m.write("spectrum_hamiltonian.csv", operator_table(build_hamiltonian(p)));
    for (const JumpOperator& j : build_jump_operators(p)) {
        if (max_abs(j.op) == 0.0) continue;
        m.write(std::string("spectrum_jump_") + to_string(j.channel) + ".csv", operator_table(j.op));
    }
    m.write("spectrum_exchange.csv", operator_table(symmetry_bases().exchange));
    const Matrix l = build_liouvillian(p).matrix;
    m.write("spectrum_liouvillian.csv", operator_table(l));
    m.write("spectrum_block_map.csv", block_map_table(block_map()));

    const Vector full = eigenvalues_of(l);
    CsvTable spectra = spectrum_table(full, "full");
    const int nulls = count_small(full, 1e-10);
    KV summary{{"null_eigenvalues", std::to_string(nulls)},
               {"symmetric", p.symmetric() ? "true" : "false"}};
    if (p.symmetric()) {
        for (Block b : kAllBlocks) {
            const Vector ev = eigenvalues_of(restrict_superop(l, b));
            append_spectrum(spectra, ev, to_string(b));
            summary.emplace_back(std::string("null_eigenvalues_") + to_string(b),
                                 std::to_string(count_small(ev, 1e-10)));
        }
    }
    m.write("spectrum_eigenvalues.csv", spectra);
    m.write_text("spectrum_summary.txt", key_value_text(summary));
    log << "spectrum: " << nulls << " null eigenvalue(s) of the Liouvillian\n";
}

void cmd_ldf(const RunConfig& c, Manifest& m, std::ostream& log) {
    const ModelParams& p = c.model;
    const LdfConfig& g = c.ldf;
    const TiltedGenerator gen(p);
    const SectorOverlap overlap = overlap_both();
    const double kappa = p.kappa();

    const auto lambda_grid = symmetric_lambda_grid(kappa, g.lambda_half_width, g.lambda_step);
    const auto eps_grid = stepped_grid(g.epsilon_min, g.epsilon_max, g.epsilon_step);
    const LdfCurve theta = scan_curve(gen, Axis::lambda, lambda_grid, overlap);
    const LdfCurve zeta = scan_curve(gen, Axis::epsilon, eps_grid, overlap);
    m.write("ldf_theta.csv", curve_table(theta));
    m.write("ldf_zeta.csv", curve_table(zeta));
    const auto theta_kinks = detect_kinks(theta.grid, theta.values);
    const auto zeta_kinks = detect_kinks(zeta.grid, zeta.values);
    m.write("ldf_theta_kinks.csv", kink_table(theta_kinks, "theta"));
    m.write("ldf_zeta_kinks.csv", kink_table(zeta_kinks, "zeta"));

    const auto s_lambda =
        symmetric_lambda_grid(kappa, g.lambda_half_width, g.surface_lambda_step);
    const auto s_eps = stepped_grid(g.epsilon_min, g.epsilon_max, g.surface_epsilon_step);
    const LdfSurface surface = scan_surface(gen, s_lambda, s_eps, overlap);
    m.write("ldf_surface.csv", surface_table(surface));

    const auto q_grid = mirrored_grid(g.q_max, g.q_points);
    const auto a_grid = linspace(g.a_min, g.a_max, g.a_points);
    const InversionOptions loose{.strict = false};
    const RateFunctionCurve fq = invert_curve(theta, q_grid, loose);
    const RateFunctionCurve ia = invert_curve(zeta, a_grid, loose);
    m.write("ldf_F.csv", rate_curve_table(fq));
    m.write("ldf_I.csv", rate_curve_table(ia));
    const JointRateSurface joint = invert_surface(surface, q_grid, a_grid);
    m.write("ldf_G.csv", joint_table(joint));
    m.write("ldf_conditional.csv", conditional_table(conditional_ldfs(joint, fq, ia)));

    KV report{{"b_z", num(p.b_z)},
              {"gamma_bath", num(p.gamma_bath)},
              {"n_bath", num(p.n_bath)},
              {"gamma_dephase", num(p.gamma_dephase)},
              {"kappa", num(kappa)}};
    for (std::size_t k = 0; k < theta_kinks.size(); ++k) {
        report.emplace_back("theta_kink_" + std::to_string(k), num(theta_kinks[k].position));
    }
    for (std::size_t k = 0; k < zeta_kinks.size(); ++k) {
        report.emplace_back("zeta_kink_" + std::to_string(k), num(zeta_kinks[k].position));
    }
    if (p.symmetric() && p.n_bath > 0.0) {
        const SectorAverages avg = sector_averages(p);
        const GeometryReport geo = geometry_report(avg, p);
        report.insert(report.end(), {{"q_S", num(avg.q_S)},
                                     {"q_A", num(avg.q_A)},
                                     {"a_S", num(avg.a_S)},
                                     {"a_A", num(avg.a_A)},
                                     {"a_c", num(geo.a_c)},
                                     {"u0", num(geo.u0)},
                                     {"u0_fitted", num(fitted_kink_line_slope(gen))},
                                     {"delta", num(geo.delta)},
                                     {"theta_crossing", num(theta_crossing(gen))}});
        for (Sector s : {Sector::S, Sector::A}) {
            for (Observable o : {Observable::current, Observable::activity}) {
                for (int k = 2; k <= 3; ++k) {
                    report.emplace_back(std::string("cumulant_") +
                                            (o == Observable::current ? "q" : "a") +
                                            std::to_string(k) + "_" + to_string(s),
                                        num(cumulant(p, o, k, s)));
                }
            }
        }
        // Lockdown: below a_c the joint rate function should collapse onto q = 0.
        double worst_axis = 0.0;
        std::size_t finite_off_axis = 0;
        for (std::size_t ia_ = 0; ia_ < a_grid.size(); ++ia_) {
            if (a_grid[ia_] >= geo.a_c) continue;
            for (std::size_t iq = 0; iq < q_grid.size(); ++iq) {
                if (q_grid[iq] == 0.0) worst_axis = std::max(worst_axis, std::abs(joint.value(iq, ia_)));
                else if (!joint.is_infeasible(iq, ia_)) ++finite_off_axis;
            }
        }
        report.emplace_back("lockdown_max_abs_G_on_axis", num(worst_axis));
        report.emplace_back("lockdown_finite_off_axis_cells", std::to_string(finite_off_axis));
        report.emplace_back("lockdown_confirmed",
                            worst_axis <= 1e-6 && finite_off_axis == 0 ? "true" : "false");
        log << "ldf: a_c = " << num(geo.a_c) << ", u0 = " << num(geo.u0)
            << ", lockdown confirmed: " << report.back().second << "\n";
    } else {
        report.emplace_back("geometry", "unavailable without exchange symmetry and n > 0");
    }
    m.write_text("ldf_geometry.txt", key_value_text(report));
    log << "ldf: " << theta_kinks.size() << " theta kink(s), " << zeta_kinks.size()
        << " zeta kink(s)\n";
}

void cmd_trajectories(const RunConfig& c, Manifest& m, std::ostream& log) {
    const TrajectoryConfig& t = c.trajectories;
    const Vector psi0 = initial_vector(t.initial);
    EnsembleOptions opts;
    opts.trajectory.xi_samples = t.xi_samples;
    KV summary{{"initial", to_string(t.initial)},
               {"duration", num(t.duration)},
               {"n_traj", std::to_string(t.n_traj)}};
    for (double gamma : t.gammas) {
        ModelParams p = c.model;
        p.gamma_dephase = gamma;
        const std::string tag = gamma_tag(gamma);
        const EnsembleStats st = ensemble_run(p, InitialState::pure(psi0), t.duration, t.n_traj,
                                              c.seed, opts);
        m.write("trajectories_xi_" + tag + ".csv", ensemble_table(st));
        summary.emplace_back(tag + "_mean_q", num(st.mean_q));
        summary.emplace_back(tag + "_mean_a", num(st.mean_a));
        summary.emplace_back(tag + "_frozen_to_A", num(st.freeze_fraction(t.freeze_tol)));
        try {
            const FreezingStatistics f = freezing_statistics(st, t.freeze_tol);
            summary.emplace_back(tag + "_fraction_to_A", num(f.fraction_to_A));
            summary.emplace_back(tag + "_mean_collapse_time", num(f.mean_collapse_time));
        } catch (const NotFrozen& e) {
            summary.emplace_back(tag + "_not_frozen", std::to_string(e.seeds().size()));
        }
        double quiet = 0.0;
        const std::size_t n_rec = std::min(t.records, t.n_traj);
        for (std::size_t k = 0; k < n_rec; ++k) {
            const TrajectoryRecord rec = sample_trajectory(
                p, psi0, t.duration, trajectory_seed(c.seed, k), opts.trajectory);
            const OrderParameterEvents ev = order_parameters(rec);
            const std::string name = tag + "_traj" + std::to_string(k) + ".csv";
            m.write("trajectories_events_" + name, events_table(rec));
            m.write("trajectories_xitraj_" + name, xi_table(rec));
            m.write("trajectories_cpm_" + name, order_parameter_table(ev));
            quiet += quiescent_fraction(ev, t.duration, t.window);
        }
        if (n_rec > 0) {
            summary.emplace_back(tag + "_quiescent_fraction", num(quiet / static_cast<double>(n_rec)));
        }
        log << "trajectories: " << tag << " <q> = " << num(st.mean_q) << ", <a> = " << num(st.mean_a)
            << "\n";
    }
    m.write_text("trajectories_summary.txt", key_value_text(summary));
}

void sweep_summary(const SweepResult& r, const std::string& name, Manifest& m, std::ostream& log) {
    m.write(name + "_averages.csv", sweep_table(r));
    const auto line = [](const InteriorMax& x) {
        return num(x.location) + " +- " + num(x.uncertainty) + (x.interior ? "" : " (edge)");
    };
    m.write_text(name + "_summary.txt",
                 key_value_text({{"q_difference_max", line(r.q_difference_max)},
                                 {"a_difference_max", line(r.a_difference_max)}}));
    log << name << ": maxima at " << line(r.q_difference_max) << " and "
        << line(r.a_difference_max) << "\n";
}

void cmd_sweep_n(const RunConfig& c, Manifest& m, std::ostream& log) {
    require_symmetric(c.model, "sweep-n");
    ModelParams base = c.model;
    base.b_z = c.sweep.n_sweep_b_z;
    sweep_summary(sweep_n(base, c.sweep.n_values), "sweep-n", m, log);
}

void cmd_sweep_bz(const RunConfig& c, Manifest& m, std::ostream& log) {
    require_symmetric(c.model, "sweep-bz");
    ModelParams base = c.model;
    base.n_bath = c.sweep.bz_sweep_n;
    sweep_summary(sweep_bz(base, c.sweep.bz_values), "sweep-bz", m, log);
}

void cmd_dephasing(const RunConfig& c, Manifest& m, std::ostream& log) {
    const SweepOptions grids;
    std::vector<Slice> slices;
    for (double e : c.dephasing.epsilon_fixed) slices.push_back({Axis::lambda, e, grids.lambda_grid});
    for (double l : c.dephasing.lambda_fixed) slices.push_back({Axis::epsilon, l, grids.epsilon_grid});
    const auto results = dephasing_comparison(c.model, c.dephasing.gammas, slices);
    m.write("dephasing_slices.csv", slices_table(results));
    CsvTable kinks({"gamma", "axis", "fixed", "position", "jump"});
    for (const SliceResult& r : results) {
        for (const Kink& k : r.kinks) {
            kinks.add_row({num(r.gamma), to_string(r.slice.axis), num(r.slice.fixed), num(k.position),
                           num(k.jump)});
        }
    }
    m.write("dephasing_kinks.csv", kinks);
    log << "dephasing: " << kinks.rows() << " kink(s) over " << results.size() << " slices\n";
}

bool cmd_validate(const RunConfig& c, const CommandOptions& o, Manifest& m, std::ostream& log) {
    AcceptanceOptions ao;
    ao.seed = c.seed;
    if (o.inject_tilt_sign_error) ao.convention.minus_sign = -ao.convention.minus_sign;
    std::string text;
    bool ok = true;
    const auto emit = [&](const CriterionResult& r) {
        const std::string line = format_result(r);
        log << line << std::endl;
        text += line + "\n";
        ok &= r.passed();
    };
    run_acceptance(ao, emit);
    emit(symmetry_check(c.model));
    m.write_text("validate_report.txt", text);
    return ok;
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"spectrum",  "ldf",       "trajectories", "sweep-n",
                                                "sweep-bz", "dephasing", "validate"};
    return names;
}

CommandResult run_command(const std::string& command, const RunConfig& config, std::ostream& log,
                          const CommandOptions& options) {
    if (std::find(command_names().begin(), command_names().end(), command) == command_names().end()) {
        throw ConfigError("unknown command '" + command + "'");
    }
    if (config.threads != 0) set_max_threads(config.threads);
    Manifest m(config.output_dir, config_hash(config));
    CommandResult result;
    if (command == "spectrum") cmd_spectrum(config, m, log);
    else if (command == "ldf") cmd_ldf(config, m, log);
    else if (command == "trajectories") cmd_trajectories(config, m, log);
    else if (command == "sweep-n") cmd_sweep_n(config, m, log);
    else if (command == "sweep-bz") cmd_sweep_bz(config, m, log);
    else if (command == "dephasing") cmd_dephasing(config, m, log);
    else if (!cmd_validate(config, options, m, log)) result.exit_code = kExitValidation;
    const auto manifest = m.finish();
    result.files = m.files();
    result.files.push_back(manifest);
    return result;
}

} // namespace symldf
