// analysis.hpp: parameter sweeps over n and B_z, twin-kink gap extraction and
// dephasing comparisons along slices of mu(lambda, eps).

#pragma once

#include "symldf/spectral.hpp"

#include <optional>
#include <vector>

namespace symldf {

enum class SweepAxis { n, b_z };

const char* to_string(SweepAxis a);

struct SweepOptions {
    std::vector<double> lambda_grid = linspace(-4.0, 2.0, 601);
    std::vector<double> epsilon_grid = linspace(-2.0, 4.0, 601);
    KinkOptions kinks{};
};

struct SweepPoint {
    double param{0.0};
    SectorAverages averages;
    std::vector<Kink> theta_kinks;
    std::vector<Kink> zeta_kinks;
    double delta{0.0};        // lambda distance between the two S/A crossings of theta
    double delta_kinks{0.0};  // same from detected kink positions; NaN unless exactly two
    double jump_q{0.0};       // jump of q_lambda = -theta' at the kink nearest 0
    double jump_a{0.0};       // jump of a_eps = -zeta' at the kink nearest 0
};

struct InteriorMax {
    double location{0.0};
    double uncertainty{0.0};  // half a grid cell
    std::size_t index{0};
    bool interior{false};
};

struct SweepResult {
    SweepAxis swept{SweepAxis::n};
    std::vector<SweepPoint> points;
    InteriorMax q_difference_max;  // of |q_S| - |q_A|
    InteriorMax a_difference_max;  // of a_S - a_A
};

// Parabola through the grid argmax and its neighbours; an edge argmax is
// reported as is with interior = false.
InteriorMax locate_maximum(const std::vector<double>& x, const std::vector<double>& y);

// The nonzero S/A crossing of theta: mu_S(lambda, 0) = mu_A(lambda, 0) with
// lambda < 0, by bracketed root finding.
double theta_crossing(const TiltedGenerator& gen);

SweepPoint analyse_point(const ModelParams& p, double param, const SweepOptions& options = {});

SweepResult sweep_n(const ModelParams& base, const std::vector<double>& n_list,
                    const SweepOptions& options = {});
SweepResult sweep_bz(const ModelParams& base, const std::vector<double>& bz_list,
                     const SweepOptions& options = {});

struct Slice {
    Axis axis{Axis::lambda};  // the varied field
    double fixed{0.0};        // value of the other field
    std::vector<double> grid;
};

struct SliceResult {
    double gamma{0.0};
    Slice slice;
    LdfCurve curve;
    std::vector<Kink> kinks;
};

// mu along each slice for each dephasing strength; the initial state overlaps
// both sectors. Ordered by gamma, then slice.
std::vector<SliceResult> dephasing_comparison(const ModelParams& p,
                                              const std::vector<double>& gamma_list,
                                              const std::vector<Slice>& slices,
                                              const KinkOptions& kinks = {});

// Constant-eps lambda slices and constant-lambda eps slices used by default.
std::vector<Slice> default_slices();

} // namespace symldf
