#include "symldf/legendre.hpp"

#include "symldf/errors.hpp"
#include "symldf/parallel.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace symldf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimizers within `tol` of the optimum that are not neighbours of `best`.
bool has_distant_tie(const std::vector<double>& objective, std::size_t best, double tol) {
    const double target = objective[best] + tol;
    for (std::size_t i = 0; i < objective.size(); ++i) {
        const std::size_t gap = i > best ? i - best : best - i;
        if (gap > 1 && objective[i] <= target) return true;
    }
    return false;
}

bool near_kink(const std::vector<Kink>& kinks, const std::vector<double>& grid, std::size_t node) {
    for (const Kink& k : kinks) {
        const std::size_t lo = node > 0 ? node - 1 : 0;
        const std::size_t hi = std::min(node + 1, grid.size() - 1);
        if (k.position >= grid[lo] && k.position <= grid[hi]) return true;
    }
    return false;
}

} // namespace

RateFunctionCurve invert_curve(const LdfCurve& curve, std::vector<double> target,
                               const InversionOptions& options) {
    const std::size_t n = curve.grid.size();
    if (n < 5 || curve.values.size() != n) {
        throw InvalidParameter("invert_curve needs at least 5 consistent samples");
    }
    if (target.empty()) {
        const double lo = -curve.derivative[n - 3];
        const double hi = -curve.derivative[2];
        target = linspace(std::min(lo, hi), std::max(lo, hi), n);
    }

    RateFunctionCurve out;
    out.observable = curve.axis == Axis::lambda ? Observable::current : Observable::activity;
    out.grid = std::move(target);
    const std::size_t m = out.grid.size();
    out.values.assign(m, 0.0);
    out.dual.assign(m, 0.0);
    out.affine_flags.assign(m, 0);
    out.clipped.assign(m, 0);

    const std::vector<Kink> kinks = detect_kinks(curve.grid, curve.values, options.kinks);

    std::vector<double> objective(n);
    for (std::size_t k = 0; k < m; ++k) {
        const double x = out.grid[k];
        for (std::size_t i = 0; i < n; ++i) objective[i] = curve.values[i] + curve.grid[i] * x;
        const auto best = static_cast<std::size_t>(
            std::min_element(objective.begin(), objective.end()) - objective.begin());
        out.values[k] = objective[best];
        out.dual[k] = curve.grid[best];
        if (best == 0 || best == n - 1) {
            if (options.strict) {
                throw GridTooNarrow("optimum for x = " + std::to_string(x) +
                                    " lies on the edge of the dual grid");
            }
            out.clipped[k] = 1;
        }
        out.affine_flags[k] = near_kink(kinks, curve.grid, best) ||
                              has_distant_tie(objective, best, options.tie_tolerance);
    }
    return out;
}

double JointRateSurface::value(std::size_t iq, std::size_t ia) const {
    if (is_infeasible(iq, ia)) return -kInf;
    return values(static_cast<Eigen::Index>(iq), static_cast<Eigen::Index>(ia));
}

JointRateSurface invert_surface(const LdfSurface& surface, const std::vector<double>& q_grid,
                                const std::vector<double>& a_grid, InversionOptions options) {
    const std::size_t nl = surface.lambda_grid.size();
    const std::size_t ne = surface.epsilon_grid.size();
    if (nl < 3 || ne < 3) throw InvalidParameter("invert_surface needs at least 3x3 samples");
    if (q_grid.empty() || a_grid.empty()) throw InvalidParameter("empty q or a grid");
    const std::size_t nq = q_grid.size();
    const std::size_t na = a_grid.size();

    // h(i, k) = min_j [mu(i, j) + eps_j a_k], with its argmin.
    RealMatrix h(static_cast<Eigen::Index>(nl), static_cast<Eigen::Index>(na));
    std::vector<std::size_t> h_arg(nl * na);
    parallel_for(nl, [&](std::size_t i) {
        const auto ii = static_cast<Eigen::Index>(i);
        for (std::size_t k = 0; k < na; ++k) {
            double best = kInf;
            std::size_t arg = 0;
            for (std::size_t j = 0; j < ne; ++j) {
                const double v = surface.mu(ii, static_cast<Eigen::Index>(j)) +
                                 surface.epsilon_grid[j] * a_grid[k];
                if (v < best) {
                    best = v;
                    arg = j;
                }
            }
            h(ii, static_cast<Eigen::Index>(k)) = best;
            h_arg[i * na + k] = arg;
        }
    });

    JointRateSurface out;
    out.q_grid = q_grid;
    out.a_grid = a_grid;
    out.values = RealMatrix::Zero(static_cast<Eigen::Index>(nq), static_cast<Eigen::Index>(na));
    out.infeasible.assign(nq * na, 0);
    out.affine_flags.assign(nq * na, 0);
    out.clipped.assign(nq * na, 0);
    out.lambda_star.assign(nq * na, 0.0);
    out.epsilon_star.assign(nq * na, 0.0);

    const bool labelled = !surface.dominant_sector.empty() &&
                          surface.dominant_sector.front() != DominantSector::none;
    const auto on_sector_boundary = [&](std::size_t i, std::size_t j) {
        if (!labelled) return false;
        const DominantSector s = surface.sector_at(i, j);
        for (std::size_t di = (i > 0 ? i - 1 : 0); di <= std::min(i + 1, nl - 1); ++di) {
            for (std::size_t dj = (j > 0 ? j - 1 : 0); dj <= std::min(j + 1, ne - 1); ++dj) {
                if (surface.sector_at(di, dj) != s) return true;
            }
        }
        return false;
    };

    std::vector<char> failed(nq * na, 0);
    parallel_for(nq, [&](std::size_t iq) {
        std::vector<double> objective(nl);
        for (std::size_t k = 0; k < na; ++k) {
            const std::size_t cell = out.index(iq, k);
            if (std::abs(q_grid[iq]) > a_grid[k]) {
                out.infeasible[cell] = 1;
                continue;
            }
            for (std::size_t i = 0; i < nl; ++i) {
                objective[i] = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) +
                               surface.lambda_grid[i] * q_grid[iq];
            }
            const auto best = static_cast<std::size_t>(
                std::min_element(objective.begin(), objective.end()) - objective.begin());
            const std::size_t jbest = h_arg[best * na + k];
            out.values(static_cast<Eigen::Index>(iq), static_cast<Eigen::Index>(k)) =
                objective[best];
            out.lambda_star[cell] = surface.lambda_grid[best];
            out.epsilon_star[cell] = surface.epsilon_grid[jbest];
            if (best == 0 || best == nl - 1 || jbest == 0 || jbest == ne - 1) {
                out.clipped[cell] = 1;
                failed[cell] = 1;
            }
            out.affine_flags[cell] = on_sector_boundary(best, jbest) ||
                                     has_distant_tie(objective, best, options.tie_tolerance);
        }
    });
    if (options.strict && std::find(failed.begin(), failed.end(), 1) != failed.end()) {
        throw GridTooNarrow("some feasible (q, a) optima lie on the edge of the dual grid");
    }
    return out;
}

namespace {

void require_same(const std::vector<double>& a, const std::vector<double>& b, const char* what) {
    if (a.size() != b.size()) {
        throw GridMismatch(std::string(what) + " grids differ in length");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-12 * std::max(1.0, std::abs(a[i]))) {
            throw GridMismatch(std::string(what) + " grids differ at index " + std::to_string(i));
        }
    }
}

} // namespace

ConditionalLdfs conditional_ldfs(const JointRateSurface& joint, const RateFunctionCurve& fq,
                                 const RateFunctionCurve& ia) {
    if (fq.observable != Observable::current || ia.observable != Observable::activity) {
        throw GridMismatch("expected a current LDF and an activity LDF");
    }
    require_same(joint.q_grid, fq.grid, "q");
    require_same(joint.a_grid, ia.grid, "a");

    const auto nq = static_cast<Eigen::Index>(joint.q_grid.size());
    const auto na = static_cast<Eigen::Index>(joint.a_grid.size());
    ConditionalLdfs out;
    out.q_grid = joint.q_grid;
    out.a_grid = joint.a_grid;
    out.infeasible = joint.infeasible;
    out.current_given_activity.resize(nq, na);
    out.activity_given_current.resize(nq, na);
    for (Eigen::Index iq = 0; iq < nq; ++iq) {
        for (Eigen::Index k = 0; k < na; ++k) {
            const double g = joint.value(static_cast<std::size_t>(iq), static_cast<std::size_t>(k));
            out.current_given_activity(iq, k) = g - ia.values[static_cast<std::size_t>(k)];
            out.activity_given_current(iq, k) = g - fq.values[static_cast<std::size_t>(iq)];
        }
    }
    return out;
}

double GeometryReport::maxwell_p(double q) const {
    if (q_S == 0.0) throw DegenerateSectors("symmetric current vanishes");
    if (std::abs(q) > std::abs(q_S)) {
        throw InvalidParameter("maxwell_p is defined for |q| <= |q_S|");
    }
    return std::abs(q / q_S);
}

GeometryReport geometry_report(const SectorAverages& avg, const ModelParams& p) {
    if (!p.symmetric()) throw BrokenSymmetry("geometry report needs gamma_dephase = 0");
    if (!(p.n_bath > 0.0)) throw InvalidParameter("kappa needs n_bath > 0");
    const double da = avg.a_S - avg.a_A;
    if (std::abs(da) <= 1e-12 * std::max(1.0, std::abs(avg.a_S))) {
        throw DegenerateSectors("a_S and a_A coincide; the kink line slope is undefined");
    }
    GeometryReport g;
    g.q_S = avg.q_S;
    g.a_c = std::abs(avg.q_S);
    g.u0 = -(avg.q_S - avg.q_A) / da;
    g.kappa = p.kappa();
    g.delta = std::log((p.n_bath + 1.0) / p.n_bath);
    return g;
}

double fitted_kink_line_slope(const TiltedGenerator& gen, double half_width) {
    const auto gap = [&](double lambda, double eps) {
        return gen.leading(Sector::S, {lambda, eps}).value.real() -
               gen.leading(Sector::A, {lambda, eps}).value.real();
    };
    double sxy = 0.0;
    double sxx = 0.0;
    int used = 0;
    for (int k = -4; k <= 4; ++k) {
        if (k == 0) continue;
        const double lambda = half_width * k / 5.0;
        const auto f = [&](double eps) { return gap(lambda, eps); };
        const double lo = -20.0 * half_width;
        const double hi = 20.0 * half_width;
        if (f(lo) * f(hi) > 0.0) continue;
        boost::uintmax_t iterations = 200;
        const auto [a, b] = boost::math::tools::toms748_solve(
            f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
        const double eps = 0.5 * (a + b);
        if (std::abs(eps) > half_width) continue;
        sxy += lambda * eps;
        sxx += lambda * lambda;
        ++used;
    }
    if (used < 2) {
        throw GridTooNarrow("fewer than two S/A crossings found near the origin");
    }
    return sxy / sxx;
}

std::vector<double> symmetric_lambda_grid(double kappa, double half_width, double step) {
    if (!(step > 0.0) || !(half_width > 0.0) || !std::isfinite(kappa) || kappa >= 0.0) {
        throw InvalidParameter("symmetric_lambda_grid needs step, half_width > 0 and kappa < 0");
    }
    const double centre = 0.5 * kappa;
    const double m = std::max(1.0, std::round(-centre / step));
    const double h = -centre / m;
    const auto j_max = static_cast<long>(std::ceil(half_width / h - 1e-9));
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(2 * j_max + 1));
    // centre + j h and centre - j h are exact mirrors
    for (long j = -j_max; j <= j_max; ++j) g.push_back(centre + static_cast<double>(j) * h);
    return g;
}

} // namespace symldf
