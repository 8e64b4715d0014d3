#include "symldf/io.hpp"

#include "symldf/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace symldf {

std::string format_number(double v) {
    if (std::isnan(v)) return "NAN";
    if (std::isinf(v)) return v > 0 ? "INF" : "-INF";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) {
        throw DimensionMismatch("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                                std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::ostringstream os;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
    return os.str();
}

namespace {

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

} // namespace

CsvTable operator_table(const Matrix& m) {
    CsvTable t({"i", "j", "re", "im"});
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            t.add_row({num(static_cast<std::size_t>(i)), num(static_cast<std::size_t>(j)),
                       num(m(i, j).real()), num(m(i, j).imag())});
        }
    }
    return t;
}

void append_spectrum(CsvTable& table, const Vector& eigenvalues, const std::string& sector) {
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        table.add_row({num(eigenvalues(i).real()), num(eigenvalues(i).imag()), sector});
    }
}

CsvTable spectrum_table(const Vector& eigenvalues, const std::string& sector) {
    CsvTable t({"re", "im", "sector"});
    append_spectrum(t, eigenvalues, sector);
    return t;
}

CsvTable block_map_table(const SymmetryBlockMap& map) {
    CsvTable t({"block_label", "vector_index", "component_index", "re", "im"});
    for (Block b : kAllBlocks) {
        const Matrix& v = map[b];
        for (Eigen::Index c = 0; c < v.cols(); ++c) {
            for (Eigen::Index r = 0; r < v.rows(); ++r) {
                if (v(r, c) == cplx(0.0, 0.0)) continue;
                t.add_row({to_string(b), num(static_cast<std::size_t>(c)),
                           num(static_cast<std::size_t>(r)), num(v(r, c).real()),
                           num(v(r, c).imag())});
            }
        }
    }
    return t;
}

CsvTable curve_table(const LdfCurve& curve) {
    CsvTable t({"x", "mu", "dmu", "sector"});
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        t.add_row({num(curve.grid[i]), num(curve.values[i]), num(curve.derivative[i]),
                   to_string(curve.dominant_sector[i])});
    }
    return t;
}

CsvTable surface_table(const LdfSurface& s) {
    CsvTable t({"lambda", "epsilon", "mu", "sector"});
    for (std::size_t i = 0; i < s.lambda_grid.size(); ++i) {
        for (std::size_t j = 0; j < s.epsilon_grid.size(); ++j) {
            t.add_row({num(s.lambda_grid[i]), num(s.epsilon_grid[j]),
                       num(s.mu(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))),
                       to_string(s.sector_at(i, j))});
        }
    }
    return t;
}

CsvTable rate_curve_table(const RateFunctionCurve& c) {
    const bool current = c.observable == Observable::current;
    CsvTable t({current ? "q" : "a", current ? "F" : "I", "affine"});
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
        t.add_row({num(c.grid[i]), num(c.values[i]), flag(c.affine_flags[i])});
    }
    return t;
}

CsvTable joint_table(const JointRateSurface& g) {
    CsvTable t({"q", "a", "G_or_INF", "affine"});
    for (std::size_t iq = 0; iq < g.q_grid.size(); ++iq) {
        for (std::size_t ia = 0; ia < g.a_grid.size(); ++ia) {
            const std::size_t k = g.index(iq, ia);
            t.add_row({num(g.q_grid[iq]), num(g.a_grid[ia]),
                       g.infeasible[k] ? std::string("INFEASIBLE") : num(g.value(iq, ia)),
                       flag(g.affine_flags[k])});
        }
    }
    return t;
}

CsvTable conditional_table(const ConditionalLdfs& c) {
    CsvTable t({"q", "a", "G_Q_or_INF", "G_A_or_INF"});
    const std::size_t na = c.a_grid.size();
    for (std::size_t iq = 0; iq < c.q_grid.size(); ++iq) {
        for (std::size_t ia = 0; ia < na; ++ia) {
            const bool inf = c.infeasible[iq * na + ia];
            const auto r = static_cast<Eigen::Index>(iq);
            const auto k = static_cast<Eigen::Index>(ia);
            t.add_row({num(c.q_grid[iq]), num(c.a_grid[ia]),
                       inf ? std::string("INFEASIBLE") : num(c.current_given_activity(r, k)),
                       inf ? std::string("INFEASIBLE") : num(c.activity_given_current(r, k))});
        }
    }
    return t;
}

CsvTable kink_table(const std::vector<Kink>& kinks, const std::string& curve) {
    CsvTable t({"curve", "position", "jump"});
    for (const Kink& k : kinks) t.add_row({curve, num(k.position), num(k.jump)});
    return t;
}

CsvTable events_table(const TrajectoryRecord& record) {
    CsvTable t({"time", "channel"});
    for (const JumpEvent& e : record.jump_events) t.add_row({num(e.time), to_string(e.channel)});
    return t;
}

CsvTable xi_table(const TrajectoryRecord& record) {
    CsvTable t({"time", "xi"});
    for (std::size_t i = 0; i < record.xi.size(); ++i) {
        t.add_row({num(record.sample_times[i]), num(record.xi[i])});
    }
    return t;
}

CsvTable ensemble_table(const EnsembleStats& stats) {
    CsvTable t({"time", "mean_xi", "stderr"});
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        t.add_row({num(stats.times[i]), num(stats.mean_xi[i]), num(stats.stderr_xi[i])});
    }
    return t;
}

CsvTable order_parameter_table(const OrderParameterEvents& events) {
    CsvTable t({"time", "kind"});
    std::size_t i = 0, j = 0;
    while (i < events.c_plus.size() || j < events.c_minus.size()) {
        const bool take_plus = j >= events.c_minus.size() ||
                               (i < events.c_plus.size() && events.c_plus[i] <= events.c_minus[j]);
        if (take_plus) t.add_row({num(events.c_plus[i++]), "C+"});
        else t.add_row({num(events.c_minus[j++]), "C-"});
    }
    return t;
}

CsvTable sweep_table(const SweepResult& sweep) {
    CsvTable t({"param", "abs_qS", "abs_qA", "aS", "aA", "delta", "jump_q", "jump_a"});
    for (const SweepPoint& p : sweep.points) {
        const SectorAverages& a = p.averages;
        t.add_row({num(p.param), num(std::abs(a.q_S)), num(std::abs(a.q_A)), num(a.a_S),
                   num(a.a_A), num(p.delta), num(p.jump_q), num(p.jump_a)});
    }
    return t;
}

CsvTable slices_table(const std::vector<SliceResult>& slices) {
    CsvTable t({"gamma", "axis", "fixed", "x", "mu", "dmu", "sector"});
    for (const SliceResult& s : slices) {
        for (std::size_t i = 0; i < s.curve.grid.size(); ++i) {
            t.add_row({num(s.gamma), to_string(s.slice.axis), num(s.slice.fixed),
                       num(s.curve.grid[i]), num(s.curve.values[i]), num(s.curve.derivative[i]),
                       to_string(s.curve.dominant_sector[i])});
        }
    }
    return t;
}

std::string key_value_text(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::string out;
    for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
    return out;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

Manifest::Manifest(std::filesystem::path dir, std::uint64_t config_hash)
    : dir_(std::move(dir)), hash_(config_hash) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) {
        throw ConfigError("output directory '" + dir_.string() + "' is not writable");
    }
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Error("failed to write " + path.string());
}

} // namespace

std::filesystem::path Manifest::write(const std::string& name, const CsvTable& table) {
    const auto path = dir_ / name;
    write_file(path, table.str());
    entries_.push_back({name, table.rows()});
    return path;
}

std::filesystem::path Manifest::write_text(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    write_file(path, text);
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    entries_.push_back({name, lines});
    return path;
}

std::vector<std::filesystem::path> Manifest::files() const {
    std::vector<std::filesystem::path> out;
    for (const Entry& e : entries_) out.push_back(dir_ / e.file);
    return out;
}

std::filesystem::path Manifest::finish() {
    std::string text = "file,rows,config_hash\n";
    for (const Entry& e : entries_) {
        text += e.file + "," + std::to_string(e.rows) + "," + hex64(hash_) + "\n";
    }
    const auto path = dir_ / "run_manifest.txt";
    write_file(path, text);
    return path;
}

} // namespace symldf
