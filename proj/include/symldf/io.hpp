// io.hpp: CSV tables for every exported quantity, and the run manifest.

#pragma once

#include "symldf/analysis.hpp"
#include "symldf/legendre.hpp"
#include "symldf/symmetry.hpp"
#include "symldf/trajectories.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace symldf {

// Shortest decimal text that round-trips; "INF"/"-INF"/"NAN" otherwise.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void add_row(std::vector<std::string> cells);
    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }
    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

CsvTable operator_table(const Matrix& m);                                  // i,j,re,im
CsvTable spectrum_table(const Vector& eigenvalues, const std::string& sector);  // re,im,sector
void append_spectrum(CsvTable& table, const Vector& eigenvalues, const std::string& sector);
CsvTable block_map_table(const SymmetryBlockMap& map);
CsvTable curve_table(const LdfCurve& curve);                               // x,mu,dmu,sector
CsvTable surface_table(const LdfSurface& surface);                         // lambda,epsilon,mu,sector
CsvTable rate_curve_table(const RateFunctionCurve& curve);                 // q,F,affine | a,I,affine
CsvTable joint_table(const JointRateSurface& joint);                       // q,a,G_or_INF,affine
CsvTable conditional_table(const ConditionalLdfs& c);                      // q,a,G_Q_or_INF,G_A_or_INF
CsvTable kink_table(const std::vector<Kink>& kinks, const std::string& curve);
CsvTable events_table(const TrajectoryRecord& record);                     // time,channel
CsvTable xi_table(const TrajectoryRecord& record);                         // time,xi
CsvTable ensemble_table(const EnsembleStats& stats);                       // time,mean_xi,stderr
CsvTable order_parameter_table(const OrderParameterEvents& events);        // time,kind
CsvTable sweep_table(const SweepResult& sweep);
CsvTable slices_table(const std::vector<SliceResult>& slices);

std::string key_value_text(const std::vector<std::pair<std::string, std::string>>& entries);

// Writes files into one directory and records (file, rows, config hash) for
// each; `finish` emits run_manifest.txt.
class Manifest {
public:
    Manifest(std::filesystem::path dir, std::uint64_t config_hash);

    std::filesystem::path write(const std::string& name, const CsvTable& table);
    std::filesystem::path write_text(const std::string& name, const std::string& text);
    std::filesystem::path finish();

    const std::filesystem::path& dir() const { return dir_; }
    std::vector<std::filesystem::path> files() const;

private:
    struct Entry {
        std::string file;
        std::size_t rows;
    };
    std::filesystem::path dir_;
    std::uint64_t hash_;
    std::vector<Entry> entries_;
};

std::string hex64(std::uint64_t v);

} // namespace symldf
