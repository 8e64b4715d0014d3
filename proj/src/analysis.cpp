#include "symldf/analysis.hpp"

#include "symldf/errors.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace symldf {

const char* to_string(SweepAxis a) { return a == SweepAxis::n ? "n" : "b_z"; }

InteriorMax locate_maximum(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) {
        throw DimensionMismatch("locate_maximum: x and y must be non-empty and equal length");
    }
    const auto i = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    InteriorMax m;
    m.index = i;
    m.location = x[i];
    if (i == 0 || i + 1 == x.size()) {
        m.uncertainty = x.size() > 1 ? 0.5 * std::abs(x[i == 0 ? 1 : i] - x[i == 0 ? 0 : i - 1]) : 0.0;
        return m;
    }
    m.interior = true;
    const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    if (curvature < 0.0) {
        m.location = 0.5 * (x0 + x1) + (0.0 - d01) / (2.0 * curvature);
        m.location = std::clamp(m.location, x0, x2);
    }
    m.uncertainty = 0.25 * (x2 - x0);
    return m;
}

double theta_crossing(const TiltedGenerator& gen) {
    const ModelParams& p = gen.params();
    if (!p.symmetric()) throw BrokenSymmetry("sector crossings need gamma_dephase = 0");
    const double kappa = p.kappa();
    if (!std::isfinite(kappa)) throw InvalidParameter("theta_crossing needs n_bath > 0");
    const auto gap = [&](double lambda) {
        return gen.leading(Sector::S, {lambda, 0.0}).value.real() -
               gen.leading(Sector::A, {lambda, 0.0}).value.real();
    };
    double lo = 1.5 * kappa;
    const double hi = 0.5 * kappa;
    while (gap(lo) * gap(hi) > 0.0) {
        lo *= 2.0;
        if (lo < -1e3) throw Error("no S/A crossing of theta found");
    }
    boost::uintmax_t iterations = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        gap, lo, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
    return 0.5 * (a + b);
}

namespace {

double jump_nearest_zero(const std::vector<Kink>& kinks) {
    if (kinks.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto it = std::min_element(kinks.begin(), kinks.end(), [](const Kink& a, const Kink& b) {
        return std::abs(a.position) < std::abs(b.position);
    });
    return std::abs(it->jump);
}

} // namespace

SweepPoint analyse_point(const ModelParams& p, double param, const SweepOptions& options) {
    const TiltedGenerator gen(p);
    SweepPoint pt;
    pt.param = param;
    pt.averages = sector_averages(p);
    const LdfCurve theta = scan_curve(gen, Axis::lambda, options.lambda_grid, overlap_both());
    const LdfCurve zeta = scan_curve(gen, Axis::epsilon, options.epsilon_grid, overlap_both());
    pt.theta_kinks = detect_kinks(theta.grid, theta.values, options.kinks);
    pt.zeta_kinks = detect_kinks(zeta.grid, zeta.values, options.kinks);
    pt.delta = -theta_crossing(gen);
    pt.delta_kinks = pt.theta_kinks.size() == 2
                         ? pt.theta_kinks[1].position - pt.theta_kinks[0].position
                         : std::numeric_limits<double>::quiet_NaN();
    pt.jump_q = jump_nearest_zero(pt.theta_kinks);
    pt.jump_a = jump_nearest_zero(pt.zeta_kinks);
    return pt;
}

namespace {

SweepResult sweep(SweepAxis axis, const ModelParams& base, const std::vector<double>& values,
                  const SweepOptions& options) {
    if (values.empty()) throw InvalidParameter("empty sweep list");
    SweepResult r;
    r.swept = axis;
    std::vector<double> dq, da;
    for (double v : values) {
        ModelParams p = base;
        (axis == SweepAxis::n ? p.n_bath : p.b_z) = v;
        if (axis == SweepAxis::n && !(v > 0.0)) throw InvalidParameter("n values must be > 0");
        p.validate();
        r.points.push_back(analyse_point(p, v, options));
        const SectorAverages& a = r.points.back().averages;
        dq.push_back(std::abs(a.q_S) - std::abs(a.q_A));
        da.push_back(a.a_S - a.a_A);
    }
    r.q_difference_max = locate_maximum(values, dq);
    r.a_difference_max = locate_maximum(values, da);
    return r;
}

} // namespace

SweepResult sweep_n(const ModelParams& base, const std::vector<double>& n_list,
                    const SweepOptions& options) {
    return sweep(SweepAxis::n, base, n_list, options);
}

SweepResult sweep_bz(const ModelParams& base, const std::vector<double>& bz_list,
                     const SweepOptions& options) {
    return sweep(SweepAxis::b_z, base, bz_list, options);
}

std::vector<SliceResult> dephasing_comparison(const ModelParams& p,
                                              const std::vector<double>& gamma_list,
                                              const std::vector<Slice>& slices,
                                              const KinkOptions& kinks) {
    std::vector<SliceResult> out;
    for (double g : gamma_list) {
        ModelParams q = p;
        q.gamma_dephase = g;
        q.validate();
        const TiltedGenerator gen(q);
        for (const Slice& s : slices) {
            SliceResult r;
            r.gamma = g;
            r.slice = s;
            r.curve = scan_curve(gen, s.axis, s.grid, overlap_both(), s.fixed);
            r.kinks = detect_kinks(r.curve.grid, r.curve.values, kinks);
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<Slice> default_slices() {
    std::vector<Slice> s;
    for (double eps : {-0.5, 0.0, 0.5}) s.push_back({Axis::lambda, eps, linspace(-4.0, 2.0, 601)});
    for (double lambda : {-0.5, 0.5}) s.push_back({Axis::epsilon, lambda, linspace(-2.0, 4.0, 601)});
    return s;
}

} // namespace symldf
