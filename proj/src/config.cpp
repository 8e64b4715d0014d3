#include "symldf/config.hpp"

#include "config_text.hpp"
#include "symldf/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace symldf {

const char* to_string(InitialKind k) {
    switch (k) {
    case InitialKind::mixed: return "mixed";
    case InitialKind::symmetric: return "symmetric";
    case InitialKind::antisymmetric: return "antisymmetric";
    }
    return "?";
}

RunConfig::RunConfig() {
    for (int i = 1; i <= 50; ++i) sweep.bz_values.push_back(0.01 * i);
}

namespace {

std::string format_real(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string format_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_real(v[i]);
    }
    return out;
}

struct Field {
    std::string name;
    std::function<void(const std::string&, int)> set;
    std::function<std::string()> get;
};

Field real_field(std::string name, double& slot) {
    return {name, [&slot, name](const std::string& v, int line) { slot = detail::parse_real(v, name, line); },
            [&slot] { return format_real(slot); }};
}

Field count_field(std::string name, std::size_t& slot, long long min_value) {
    return {name,
            [&slot, name, min_value](const std::string& v, int line) {
                const long long x = detail::parse_integer(v, name, line);
                if (x < min_value) {
                    throw ConfigError("key '" + name + "' must be >= " + std::to_string(min_value) +
                                          " (line " + std::to_string(line) + ")",
                                      line);
                }
                slot = static_cast<std::size_t>(x);
            },
            [&slot] { return std::to_string(slot); }};
}

Field list_field(std::string name, std::vector<double>& slot) {
    return {name, [&slot, name](const std::string& v, int line) { slot = detail::parse_real_list(v, name, line); },
            [&slot] { return format_list(slot); }};
}

using Schema = std::vector<std::pair<std::string, std::vector<Field>>>;

Schema schema(RunConfig& c) {
    Schema s;
    s.push_back({"",
                 {{"schema_version",
                   [&c](const std::string& v, int line) {
                       const long long x = detail::parse_integer(v, "schema_version", line);
                       if (x != kSchemaVersion) {
                           throw ConfigError("unsupported schema_version " + v, line);
                       }
                       c.schema_version = static_cast<int>(x);
                   },
                   [&c] { return std::to_string(c.schema_version); }},
                  {"seed",
                   [&c](const std::string& v, int line) {
                       const long long x = detail::parse_integer(v, "seed", line);
                       if (x < 0) throw ConfigError("seed must be non-negative", line);
                       c.seed = static_cast<std::uint64_t>(x);
                   },
                   [&c] { return std::to_string(c.seed); }},
                  {"threads",
                   [&c](const std::string& v, int line) {
                       const long long x = detail::parse_integer(v, "threads", line);
                       if (x < 0) throw ConfigError("threads must be non-negative", line);
                       c.threads = static_cast<unsigned>(x);
                   },
                   [&c] { return std::to_string(c.threads); }}}});
    s.push_back({"model",
                 {real_field("b_z", c.model.b_z), real_field("gamma_bath", c.model.gamma_bath),
                  real_field("n_bath", c.model.n_bath),
                  real_field("gamma_dephase", c.model.gamma_dephase)}});
    LdfConfig& l = c.ldf;
    s.push_back({"ldf",
                 {real_field("lambda_half_width", l.lambda_half_width),
                  real_field("lambda_step", l.lambda_step), real_field("epsilon_min", l.epsilon_min),
                  real_field("epsilon_max", l.epsilon_max), real_field("epsilon_step", l.epsilon_step),
                  real_field("surface_lambda_step", l.surface_lambda_step),
                  real_field("surface_epsilon_step", l.surface_epsilon_step),
                  real_field("q_max", l.q_max), count_field("q_points", l.q_points, 2),
                  real_field("a_min", l.a_min), real_field("a_max", l.a_max),
                  count_field("a_points", l.a_points, 2)}});
    TrajectoryConfig& t = c.trajectories;
    s.push_back({"trajectories",
                 {real_field("duration", t.duration), count_field("n_traj", t.n_traj, 1),
                  count_field("xi_samples", t.xi_samples, 2), list_field("gammas", t.gammas),
                  {"initial",
                   [&t](const std::string& v, int line) {
                       if (v == "mixed") t.initial = InitialKind::mixed;
                       else if (v == "symmetric") t.initial = InitialKind::symmetric;
                       else if (v == "antisymmetric") t.initial = InitialKind::antisymmetric;
                       else
                           throw ConfigError("initial must be mixed, symmetric or antisymmetric (line " +
                                                 std::to_string(line) + ")",
                                             line);
                   },
                   [&t] { return std::string(to_string(t.initial)); }},
                  count_field("records", t.records, 0), real_field("window", t.window),
                  real_field("freeze_tol", t.freeze_tol)}});
    SweepConfig& w = c.sweep;
    s.push_back({"sweep",
                 {list_field("n_values", w.n_values), real_field("n_sweep_b_z", w.n_sweep_b_z),
                  list_field("bz_values", w.bz_values), real_field("bz_sweep_n", w.bz_sweep_n)}});
    DephasingConfig& d = c.dephasing;
    s.push_back({"dephasing",
                 {list_field("gammas", d.gammas), list_field("epsilon_fixed", d.epsilon_fixed),
                  list_field("lambda_fixed", d.lambda_fixed)}});
    s.push_back({"output",
                 {{"dir",
                   [&c](const std::string& v, int line) {
                       if (v.empty()) throw ConfigError("output dir must not be empty", line);
                       c.output_dir = v;
                   },
                   [&c] { return c.output_dir; }}}});
    return s;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

void validate(const RunConfig& c) {
    try {
        c.model.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("[model] ") + e.what());
    }
    const LdfConfig& l = c.ldf;
    check(l.lambda_half_width > 0.0 && l.lambda_step > 0.0, "[ldf] lambda grid must be positive");
    check(l.epsilon_max > l.epsilon_min && l.epsilon_step > 0.0, "[ldf] bad epsilon grid");
    check(l.surface_lambda_step > 0.0 && l.surface_epsilon_step > 0.0, "[ldf] bad surface steps");
    check(l.q_max > 0.0 && l.a_max > l.a_min && l.a_min >= 0.0, "[ldf] bad q/a ranges");
    const TrajectoryConfig& t = c.trajectories;
    check(t.duration > 0.0 && t.window > 0.0 && t.window <= t.duration,
          "[trajectories] need 0 < window <= duration");
    check(t.freeze_tol > 0.0 && t.freeze_tol < 0.5, "[trajectories] freeze_tol must lie in (0, 0.5)");
    for (double g : t.gammas) check(g >= 0.0, "[trajectories] gammas must be >= 0");
    for (double g : c.dephasing.gammas) check(g >= 0.0, "[dephasing] gammas must be >= 0");
    for (double n : c.sweep.n_values) check(n > 0.0, "[sweep] n_values must be > 0");
    check(c.sweep.bz_sweep_n > 0.0, "[sweep] bz_sweep_n must be > 0");
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
    RunConfig c;
    Schema s = schema(c);
    std::vector<std::string> section_names;
    for (const auto& [name, fields] : s) {
        if (!name.empty()) section_names.push_back(name);
    }
    for (const auto& kv : detail::parse_lines(text)) {
        auto sec = std::find_if(s.begin(), s.end(), [&](const auto& e) { return e.first == kv.section; });
        if (sec == s.end()) {
            std::string msg = detail::unknown_key_message(kv.section, section_names);
            msg.replace(0, 11, "unknown section");
            throw ConfigError(msg + " (line " + std::to_string(kv.line) + ")", kv.line);
        }
        auto& fields = sec->second;
        auto f = std::find_if(fields.begin(), fields.end(), [&](const Field& x) { return x.name == kv.key; });
        if (f == fields.end()) {
            std::vector<std::string> names;
            for (const auto& x : fields) names.push_back(x.name);
            const std::string where = kv.section.empty() ? "" : " in [" + kv.section + "]";
            throw ConfigError(detail::unknown_key_message(kv.key, names) + where + " (line " +
                                  std::to_string(kv.line) + ")",
                              kv.line);
        }
        f->set(kv.value, kv.line);
    }
    validate(c);
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::string to_text(const RunConfig& config) {
    RunConfig copy = config;
    std::ostringstream os;
    for (const auto& [name, fields] : schema(copy)) {
        if (!name.empty()) os << "\n[" << name << "]\n";
        for (const auto& f : fields) os << f.name << " = " << f.get() << '\n';
    }
    return os.str();
}

std::uint64_t config_hash(const RunConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : to_text(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace symldf
