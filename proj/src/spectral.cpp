#include "symldf/spectral.hpp"

#include "symldf/errors.hpp"
#include "symldf/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace symldf {

const char* to_string(DominantSector s) {
    switch (s) {
    case DominantSector::S: return "S";
    case DominantSector::A: return "A";
    case DominantSector::none: return "none";
    }
    return "?";
}

const char* to_string(Axis a) { return a == Axis::lambda ? "lambda" : "epsilon"; }

namespace {

std::size_t slot(Sector s) { return static_cast<std::size_t>(s); }

RealMatrix project(const Matrix& m, const Matrix& basis) {
    return (basis.adjoint() * m * basis).real();
}

} // namespace

TiltedGenerator::TiltedGenerator(const ModelParams& p, TiltConvention convention)
    : params_(p), full_(liouvillian_parts(p, convention)) {
    const Matrix& fb = full_hermitian_basis();
    parts_[slot(Sector::full)] = {project(full_.base, fb), project(full_.jump_plus, fb),
                                  project(full_.jump_minus, fb)};
    if (p.symmetric()) {
        for (Sector s : {Sector::S, Sector::A}) {
            const Block b = diagonal_block(s);
            parts_[slot(s)] = {restrict_superop_real(full_.base, b),
                               restrict_superop_real(full_.jump_plus, b),
                               restrict_superop_real(full_.jump_minus, b)};
        }
    }
}

const TiltedGenerator::Parts& TiltedGenerator::parts(Sector s) const {
    if (s != Sector::full && !params_.symmetric()) {
        throw BrokenSymmetry(std::string("sector ") + to_string(s) +
                             " is not invariant when gamma_dephase > 0");
    }
    return parts_[slot(s)];
}

RealMatrix TiltedGenerator::generator(Sector s, CountingFields f) const {
    const Parts& p = parts(s);
    return p.base + full_.plus_factor(f) * p.plus + full_.minus_factor(f) * p.minus;
}

SectorEigenvalue TiltedGenerator::leading(Sector s, CountingFields f) const {
    const RealMatrix g = generator(s, f);
    Eigen::EigenSolver<RealMatrix> solver(g, false);
    if (solver.info() != Eigen::Success) {
        throw Error("eigenvalue solver failed");
    }
    const auto& ev = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < ev.size(); ++i) {
        if (ev(i).real() > ev(best).real()) best = i;
    }
    const cplx value = ev(best);
    return {s, value, f, std::abs(value.imag()) > 1e-9};
}

MuValue TiltedGenerator::mu(CountingFields f, const SectorOverlap& overlap) const {
    if (!params_.symmetric()) {
        return {leading(Sector::full, f).value.real(), DominantSector::none};
    }
    if (!overlap.has_S && !overlap.has_A) {
        throw EmptyOverlap("initial state has no weight in either symmetry sector");
    }
    if (!overlap.has_A) return {leading(Sector::S, f).value.real(), DominantSector::S};
    if (!overlap.has_S) return {leading(Sector::A, f).value.real(), DominantSector::A};
    const double vs = leading(Sector::S, f).value.real();
    const double va = leading(Sector::A, f).value.real();
    return vs >= va ? MuValue{vs, DominantSector::S} : MuValue{va, DominantSector::A};
}

SectorEigenvalue sector_leading_eigenvalue(const ModelParams& p, CountingFields f, Sector s) {
    if (s != Sector::full && !p.symmetric()) {
        // Surface the leakage of the actual tilted generator.
        restrict_superop(build_tilted_liouvillian(p, f).matrix, diagonal_block(s));
    }
    return TiltedGenerator(p).leading(s, f);
}

MuValue mu(const ModelParams& p, CountingFields f, const SectorOverlap& overlap) {
    return TiltedGenerator(p).mu(f, overlap);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

namespace {

void check_grid(const std::vector<double>& g, const char* what) {
    if (g.empty()) throw InvalidParameter(std::string(what) + " grid is empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i])) throw InvalidParameter(std::string(what) + " grid not finite");
        if (i > 0 && !(g[i] > g[i - 1])) {
            throw InvalidParameter(std::string(what) + " grid must be strictly increasing");
        }
    }
}

std::vector<double> central_derivative(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d[0] = (y[1] - y[0]) / (x[1] - x[0]);
    d[n - 1] = (y[n - 1] - y[n - 2]) / (x[n - 1] - x[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
    }
    return d;
}

} // namespace

LdfCurve scan_curve(const TiltedGenerator& gen, Axis axis, const std::vector<double>& grid,
                    const SectorOverlap& overlap, double fixed_other) {
    check_grid(grid, to_string(axis));
    LdfCurve c;
    c.axis = axis;
    c.fixed_other = fixed_other;
    c.grid = grid;
    c.values.resize(grid.size());
    c.dominant_sector.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const CountingFields f = axis == Axis::lambda ? CountingFields{grid[i], fixed_other}
                                                      : CountingFields{fixed_other, grid[i]};
        const MuValue m = gen.mu(f, overlap);
        c.values[i] = m.value;
        c.dominant_sector[i] = m.sector;
    });
    c.derivative = central_derivative(c.grid, c.values);
    return c;
}

LdfCurve scan_curve(const ModelParams& p, Axis axis, const std::vector<double>& grid,
                    const SectorOverlap& overlap, double fixed_other) {
    return scan_curve(TiltedGenerator(p), axis, grid, overlap, fixed_other);
}

LdfSurface scan_surface(const TiltedGenerator& gen, const std::vector<double>& lambda_grid,
                        const std::vector<double>& epsilon_grid, const SectorOverlap& overlap) {
    check_grid(lambda_grid, "lambda");
    check_grid(epsilon_grid, "epsilon");
    LdfSurface s;
    s.lambda_grid = lambda_grid;
    s.epsilon_grid = epsilon_grid;
    const std::size_t nl = lambda_grid.size();
    const std::size_t ne = epsilon_grid.size();
    s.mu.resize(static_cast<Eigen::Index>(nl), static_cast<Eigen::Index>(ne));
    s.dominant_sector.resize(nl * ne);
    parallel_for(nl * ne, [&](std::size_t k) {
        const std::size_t i = k / ne;
        const std::size_t j = k % ne;
        const MuValue m = gen.mu({lambda_grid[i], epsilon_grid[j]}, overlap);
        s.mu(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.value;
        s.dominant_sector[k] = m.sector;
    });
    return s;
}

LdfSurface scan_surface(const ModelParams& p, const std::vector<double>& lambda_grid,
                        const std::vector<double>& epsilon_grid, const SectorOverlap& overlap) {
    return scan_surface(TiltedGenerator(p), lambda_grid, epsilon_grid, overlap);
}

namespace {

struct Difference {
    double value;
    double error;
};

// Stencils with an even error series, combined by one Richardson step.
Difference derivative(const std::function<double(double)>& f, int order, double h) {
    const auto stencil = [&](double s) {
        switch (order) {
        case 1: return (f(s) - f(-s)) / (2.0 * s);
        case 2: return (f(s) - 2.0 * f(0.0) + f(-s)) / (s * s);
        case 3: return (f(2.0 * s) - 2.0 * f(s) + 2.0 * f(-s) - f(-2.0 * s)) / (2.0 * s * s * s);
        default: break;
        }
        throw InvalidParameter("derivative order must be 1, 2 or 3");
    };
    const double coarse = stencil(h);
    const double fine = stencil(0.5 * h);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    return {extrapolated, std::abs(extrapolated - fine)};
}

} // namespace

SectorAverages sector_averages(const ModelParams& p, double h) {
    if (!p.symmetric()) {
        throw BrokenSymmetry("sector averages need gamma_dephase = 0");
    }
    const TiltedGenerator gen(p);
    const auto along = [&](Sector s, Axis axis) {
        return [&gen, s, axis](double x) {
            const CountingFields f = axis == Axis::lambda ? CountingFields{x, 0.0}
                                                          : CountingFields{0.0, x};
            return gen.leading(s, f).value.real();
        };
    };
    SectorAverages avg;
    avg.q_S = -derivative(along(Sector::S, Axis::lambda), 1, h).value;
    avg.q_A = -derivative(along(Sector::A, Axis::lambda), 1, h).value;
    avg.a_S = -derivative(along(Sector::S, Axis::epsilon), 1, h).value;
    avg.a_A = -derivative(along(Sector::A, Axis::epsilon), 1, h).value;
    return avg;
}

double cumulant(const ModelParams& p, Observable obs, int order, Sector sector,
                double tolerance) {
    if (order < 1 || order > 3) {
        throw InvalidParameter("cumulant order must be 1, 2 or 3");
    }
    if (sector == Sector::full && p.symmetric()) {
        throw NonUniqueSteadyState(
            "full-space cumulants need a unique steady state (gamma_dephase > 0)");
    }
    const TiltedGenerator gen(p);
    const auto f = [&](double x) {
        const CountingFields cf = obs == Observable::current ? CountingFields{x, 0.0}
                                                             : CountingFields{0.0, x};
        return gen.leading(sector, cf).value.real();
    };
    static constexpr double steps[] = {1e-4, 1e-3, 2e-3};
    const Difference d = derivative(f, order, steps[order - 1]);
    if (d.error > tolerance) {
        throw StepTooSmall("finite-difference error estimate " + std::to_string(d.error) +
                           " exceeds tolerance " + std::to_string(tolerance));
    }
    return (order % 2 == 0 ? 1.0 : -1.0) * d.value;
}

namespace {

// Derivative at x of the quadratic through three samples.
double quadratic_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t a,
                       std::size_t b, std::size_t c, double at) {
    const double x0 = x[a], x1 = x[b], x2 = x[c];
    const double y0 = y[a], y1 = y[b], y2 = y[c];
    const double l0 = ((at - x1) + (at - x2)) / ((x0 - x1) * (x0 - x2));
    const double l1 = ((at - x0) + (at - x2)) / ((x1 - x0) * (x1 - x2));
    const double l2 = ((at - x0) + (at - x1)) / ((x2 - x0) * (x2 - x1));
    return y0 * l0 + y1 * l1 + y2 * l2;
}

} // namespace

std::vector<Kink> detect_kinks(const std::vector<double>& grid, const std::vector<double>& values,
                               const KinkOptions& options) {
    if (grid.size() != values.size()) {
        throw DimensionMismatch("detect_kinks: grid and values differ in length");
    }
    check_grid(grid, "kink");
    const std::size_t n = grid.size();
    std::vector<Kink> kinks;
    if (n < 4) return kinks;

    std::vector<double> slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        slope[i] = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
    }
    // jump[i] lives on interior node i (1..n-2)
    std::vector<double> jump(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) jump[i] = slope[i] - slope[i - 1];

    const auto mag = [&](std::ptrdiff_t i) {
        return (i >= 1 && i <= static_cast<std::ptrdiff_t>(n) - 2) ? std::abs(jump[i]) : 0.0;
    };

    std::size_t last_used = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const auto si = static_cast<std::ptrdiff_t>(i);
        if (!(mag(si) >= mag(si - 1) && mag(si) > mag(si + 1))) continue;
        // Pair the node with its larger neighbour: an off-grid kink splits its
        // slope change over two nodes.
        std::ptrdiff_t c0 = si;
        std::ptrdiff_t c1 = si + 1;
        if (mag(si - 1) > mag(si + 1)) {
            c0 = si - 1;
            c1 = si;
        }
        if (c0 < 1 || c1 > static_cast<std::ptrdiff_t>(n) - 2) continue;
        if (!kinks.empty() && static_cast<std::size_t>(c0) <= last_used) continue;

        const double total = jump[c0] + jump[c1];
        const double background =
            std::max({mag(c0 - 2), mag(c0 - 1), mag(c1 + 1), mag(c1 + 2)});
        if (std::abs(total) <= options.absolute || std::abs(total) <= options.relative * background) {
            continue;
        }

        const double sl = slope[c0 - 1];
        const double sr = slope[c1];
        const double x0 = grid[c0], x1 = grid[c1];
        double pos = x0;
        if (sl != sr) {
            pos = (values[c1] - values[c0] - sr * x1 + sl * x0) / (sl - sr);
        }
        pos = std::clamp(pos, grid[c0 - 1], grid[c1 + 1]);

        double left = sl;
        double right = sr;
        if (c0 >= 2) left = quadratic_slope(grid, values, c0 - 2, c0 - 1, c0, pos);
        if (c1 + 2 <= static_cast<std::ptrdiff_t>(n) - 1) {
            right = quadratic_slope(grid, values, c1, c1 + 1, c1 + 2, pos);
        }
        kinks.push_back({pos, right - left, static_cast<std::size_t>(c0)});
        last_used = static_cast<std::size_t>(c1);
    }
    return kinks;
}

} // namespace symldf
