// spectral.hpp: leading eigenvalues of the tilted generator and the scaled
// cumulant generating functions mu(lambda, eps), theta(lambda), zeta(eps).

#pragma once

#include "symldf/liouville.hpp"
#include "symldf/symmetry.hpp"

#include <array>
#include <string>
#include <vector>

namespace symldf {

struct SectorEigenvalue {
    Sector sector;
    cplx value;
    CountingFields fields;
    bool imag_flag{false}; // |Im value| > 1e-9
};

// Which symmetry sector supplies mu at a point; `none` once dephasing breaks the
// symmetry and a single full-space eigenvalue is used.
enum class DominantSector { S, A, none };

const char* to_string(DominantSector s);

struct MuValue {
    double value;
    DominantSector sector;
};

// Tilted generator of one parameter set, pre-projected onto the Hermitian bases
// of the S and A blocks (gamma = 0) or the full space, so that each evaluation
// is a small real eigenproblem.
class TiltedGenerator {
public:
    explicit TiltedGenerator(const ModelParams& p, TiltConvention convention = {});

    const ModelParams& params() const { return params_; }

    RealMatrix generator(Sector s, CountingFields f) const;

    SectorEigenvalue leading(Sector s, CountingFields f) const;

    // Max over sectors flagged in `overlap` (ties go to S). With dephasing the
    // overlap is ignored and the full-space eigenvalue is returned.
    MuValue mu(CountingFields f, const SectorOverlap& overlap) const;

private:
    struct Parts {
        RealMatrix base;
        RealMatrix plus;
        RealMatrix minus;
    };

    const Parts& parts(Sector s) const;

    ModelParams params_;
    LiouvillianParts full_;
    std::array<Parts, 3> parts_; // S, A, full
};

SectorEigenvalue sector_leading_eigenvalue(const ModelParams& p, CountingFields f, Sector s);

MuValue mu(const ModelParams& p, CountingFields f, const SectorOverlap& overlap);

enum class Axis { lambda, epsilon };

const char* to_string(Axis a);

struct LdfCurve {
    Axis axis{Axis::lambda};
    double fixed_other{0.0}; // value of the other counting field
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<DominantSector> dominant_sector;
    std::vector<double> derivative; // central differences, one-sided at the ends
};

struct LdfSurface {
    std::vector<double> lambda_grid;
    std::vector<double> epsilon_grid;
    RealMatrix mu; // mu(i, j) at (lambda_grid[i], epsilon_grid[j])
    std::vector<DominantSector> dominant_sector; // row-major, i * n_eps + j

    DominantSector sector_at(std::size_t i, std::size_t j) const {
        return dominant_sector[i * epsilon_grid.size() + j];
    }
};

// Uniform grid of n points on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

LdfCurve scan_curve(const TiltedGenerator& gen, Axis axis, const std::vector<double>& grid,
                    const SectorOverlap& overlap, double fixed_other = 0.0);
LdfCurve scan_curve(const ModelParams& p, Axis axis, const std::vector<double>& grid,
                    const SectorOverlap& overlap, double fixed_other = 0.0);

LdfSurface scan_surface(const TiltedGenerator& gen, const std::vector<double>& lambda_grid,
                        const std::vector<double>& epsilon_grid, const SectorOverlap& overlap);
LdfSurface scan_surface(const ModelParams& p, const std::vector<double>& lambda_grid,
                        const std::vector<double>& epsilon_grid, const SectorOverlap& overlap);

struct SectorAverages {
    double q_S{0.0};
    double q_A{0.0};
    double a_S{0.0};
    double a_A{0.0};
};

// q = -d mu/d lambda and a = -d mu/d eps of each sector's leading eigenvalue at
// the origin (Richardson-extrapolated central differences). Needs gamma = 0.
SectorAverages sector_averages(const ModelParams& p, double h = 1e-4);

enum class Observable { current, activity };

// k-th cumulant (k = 1..3) of the current or activity in a sector's steady state,
// (-1)^k d^k mu / d field^k at 0. Sector::full needs a unique steady state.
// Throws StepTooSmall when the Richardson error estimate exceeds `tolerance`.
double cumulant(const ModelParams& p, Observable obs, int order, Sector sector,
                double tolerance = 1e-6);

struct KinkOptions {
    // A kink's slope jump must exceed `relative` times the largest jump found two
    // to three nodes away on either side, and `absolute`.
    double relative{10.0};
    double absolute{1e-8};
};

struct Kink {
    double position; // intersection of the left and right tangent lines
    double jump;     // right derivative minus left derivative at `position`
    std::size_t node;
};

// Derivative discontinuities of sampled data on a sorted grid.
std::vector<Kink> detect_kinks(const std::vector<double>& grid, const std::vector<double>& values,
                               const KinkOptions& options = {});

} // namespace symldf
