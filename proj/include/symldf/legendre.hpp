// legendre.hpp: rate functions F(q), I(a), G(q,a) from sampled SCGFs by the
// Legendre–Fenchel transform, conditional LDFs and the lockdown geometry.

#pragma once

#include "symldf/spectral.hpp"

#include <vector>

namespace symldf {

struct InversionOptions {
    // Grid minimizers within this of the optimum count as ties.
    double tie_tolerance{1e-9};
    // Throw GridTooNarrow when an optimum sits on the edge of the dual grid.
    // Otherwise the cell is flagged `clipped` and its value is an upper bound.
    bool strict{true};
    KinkOptions kinks{};
};

struct RateFunctionCurve {
    Observable observable{Observable::current};
    std::vector<double> grid;
    std::vector<double> values;        // <= 0
    std::vector<double> dual;          // optimal lambda (or eps) per sample
    std::vector<char> affine_flags;    // optimum sits on a kink of the SCGF
    std::vector<char> clipped;
};

// F(q) = min_lambda [theta(lambda) + lambda q] over the sampled grid, and
// I(a) likewise from zeta. With an empty `target`, the q (or a) grid spans the
// slopes the curve attains away from its ends, with as many points as the curve.
RateFunctionCurve invert_curve(const LdfCurve& curve, std::vector<double> target = {},
                               const InversionOptions& options = {});

struct JointRateSurface {
    std::vector<double> q_grid;
    std::vector<double> a_grid;
    RealMatrix values;               // (q index, a index); meaningless where infeasible
    std::vector<char> infeasible;    // |q| > a: G = -inf
    std::vector<char> affine_flags;
    std::vector<char> clipped;
    std::vector<double> lambda_star;
    std::vector<double> epsilon_star;

    std::size_t index(std::size_t iq, std::size_t ia) const { return iq * a_grid.size() + ia; }
    bool is_infeasible(std::size_t iq, std::size_t ia) const { return infeasible[index(iq, ia)]; }
    double value(std::size_t iq, std::size_t ia) const;  // -inf when infeasible
};

// G(q,a) = min_{lambda,eps} [mu + lambda q + eps a]. The minimum over eps is
// taken first for every lambda row, so the cost is linear in each grid.
// Surfaces are usually clipped near the edge of the triangle |q| <= a, hence
// strict defaults to false here.
JointRateSurface invert_surface(const LdfSurface& surface, const std::vector<double>& q_grid,
                                const std::vector<double>& a_grid,
                                InversionOptions options = {.strict = false});

struct ConditionalLdfs {
    std::vector<double> q_grid;
    std::vector<double> a_grid;
    RealMatrix current_given_activity;  // G_Q(q|a) = G(q,a) - I(a)
    RealMatrix activity_given_current;  // G_A(a|q) = G(q,a) - F(q)
    std::vector<char> infeasible;       // shared with the joint surface
};

// Infeasible cells carry -inf in both tables.
ConditionalLdfs conditional_ldfs(const JointRateSurface& joint, const RateFunctionCurve& fq,
                                 const RateFunctionCurve& ia);

struct GeometryReport {
    double a_c{0.0};
    double u0{0.0};
    double kappa{0.0};
    double delta{0.0};
    double q_S{0.0};

    // Fraction of time in the symmetric phase needed to realise the current q
    // by mixing the two sector typical values.
    double maxwell_p(double q) const;
};

GeometryReport geometry_report(const SectorAverages& avg, const ModelParams& p);

// Slope d eps / d lambda of the S/A crossing line near the origin, fitted
// through the origin to crossings located by root finding at a few small lambda.
double fitted_kink_line_slope(const TiltedGenerator& gen, double half_width = 0.05);

// Dual grid for lambda symmetric under lambda -> kappa - lambda, so fluctuation
// relations survive the discrete transform exactly. The spacing is the nearest
// divisor of |kappa|/2 to `step`, which puts both 0 and kappa on the grid.
std::vector<double> symmetric_lambda_grid(double kappa, double half_width, double step);

} // namespace symldf
