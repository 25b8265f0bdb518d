#include "qfc/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qfc/error.hpp"

namespace qfc {

double RunConfig::register_wavelength_nm() const {
    return register_wavelength(medium.pump_wavelength_nm, medium.signal_wavelength_nm);
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"fringe_scan",   "peak_ce_matrix",      "delay_scan_widths",
                                                "skew_vs_power", "tradeoff_comparison", "schmidt_modes"};
    return names;
}

namespace {

bool is_delay_experiment(const std::string& name) {
    return name == "delay_scan_widths" || name == "skew_vs_power";
}

// One mapping of the config with the keys read so far; leftover keys are
// reported as unknown.
class Section {
public:
    Section(YAML::Node node, std::string path, const std::string* source)
        : node_(std::move(node)), path_(std::move(path)), source_(source) {
        if (node_ && !node_.IsNull() && !node_.IsMap()) fail(node_, "'" + path_ + "' must be a mapping");
    }

    bool has(const std::string& key) const { return node_ && node_.IsMap() && node_[key]; }

    Section child(const std::string& key) {
        seen_.insert(key);
        return Section(has(key) ? node_[key] : YAML::Node(), qualified(key), source_);
    }

    template <typename T>
    bool read(const std::string& key, T& out) {
        seen_.insert(key);
        if (!has(key)) return false;
        const YAML::Node v = node_[key];
        try {
            if constexpr (std::is_same_v<T, std::vector<double>>) {
                if (!v.IsSequence()) fail(v, qualified(key) + " must be a list of numbers");
                out.clear();
                for (const auto& item : v) out.push_back(item.as<double>());
            } else {
                if (!v.IsScalar()) fail(v, qualified(key) + " must be a scalar");
                out = v.as<T>();
            }
        } catch (const YAML::BadConversion&) {
            fail(v, qualified(key) + " has the wrong type");
        }
        return true;
    }

    // Non-negative integer read through a signed type so "-1" is rejected.
    bool read_count(const std::string& key, std::size_t& out) {
        long long v = 0;
        if (!read(key, v)) return false;
        if (v < 0) fail(node_[key], qualified(key) + " must be non-negative");
        out = static_cast<std::size_t>(v);
        return true;
    }

    void finish() const {
        if (!node_ || !node_.IsMap()) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!seen_.count(key)) fail(kv.first, "unknown key '" + qualified(key) + "'");
        }
    }

    [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
        std::ostringstream out;
        out << *source_;
        if (at && at.Mark().line >= 0) out << ":" << at.Mark().line + 1;
        out << ": " << msg;
        throw ConfigError(out.str());
    }

    [[noreturn]] void fail_key(const std::string& key, const std::string& msg) const {
        fail(has(key) ? node_[key] : node_, msg);
    }

    std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    YAML::Node node_;
    std::string path_;
    const std::string* source_;
    std::set<std::string> seen_;
};

void check(bool ok, Section& sec, const std::string& key, const std::string& msg) {
    if (!ok) sec.fail_key(key, sec.qualified(key) + " " + msg);
}

ShapeFamily read_shape(Section& sec, const std::string& key, ShapeFamily fallback) {
    std::string name;
    if (!sec.read(key, name)) return fallback;
    try {
        return shape_family_from_string(name);
    } catch (const InvalidArgument& e) {
        sec.fail_key(key, sec.qualified(key) + ": " + e.what());
    }
}

void read_delay(Section& sec, const std::string& key, std::optional<double>& out) {
    std::string text;
    if (!sec.has(key)) {
        sec.read(key, text);  // marks the key as seen
        return;
    }
    sec.read(key, text);
    if (text == "auto") {
        out.reset();
        return;
    }
    double v = 0.0;
    sec.read(key, v);
    check(std::isfinite(v), sec, key, "must be a finite delay in fs or 'auto'");
    out = v;
}

// Exactly one of two spellings; names both keys when both are given.
void exclusive(Section& sec, const std::vector<std::string>& a, const std::vector<std::string>& b) {
    for (const auto& ka : a) {
        for (const auto& kb : b) {
            if (sec.has(ka) && sec.has(kb)) {
                sec.fail_key(kb, sec.qualified(ka) + " and " + sec.qualified(kb) + " are mutually exclusive");
            }
        }
    }
}

// Walk-off form: slownesses relative to a fixed pump value.
void resolve_slownesses(RunConfig::Medium& m) {
    if (m.form != RunConfig::MediumForm::walk_off) return;
    m.beta_p = kReferenceBetaP;
    m.beta_s = m.beta_p + m.pump_signal_walk_off_fs / m.length_mm;
    m.beta_r = m.beta_s + m.zeta * m.tau_p_fs / m.length_mm;
}

void parse_grid(Section sec, RunConfig& c, bool has_span) {
    sec.read_count("n_points", c.grid.n_points);
    check(c.grid.n_points >= 8, sec, "n_points", "must be at least 8");
    if (has_span) {
        sec.read("span_fs", c.grid.span_fs);
        check(c.grid.span_fs > 0.0 && std::isfinite(c.grid.span_fs), sec, "span_fs", "must be positive");
    } else {
        sec.read("span_fs", c.grid.span_fs);
    }
    sec.finish();
}

void parse_medium(Section sec, RunConfig& c) {
    auto& m = c.medium;
    const std::vector<std::string> walk{"zeta", "tau_p_fs", "pump_signal_walkoff_fs"};
    const std::vector<std::string> slow{"beta_p", "beta_s", "beta_r"};
    exclusive(sec, walk, slow);
    const bool slowness = std::any_of(slow.begin(), slow.end(), [&](const auto& k) { return sec.has(k); });
    sec.read("length_mm", m.length_mm);
    check(m.length_mm > 0.0 && std::isfinite(m.length_mm), sec, "length_mm", "must be positive");
    if (slowness) {
        m.form = RunConfig::MediumForm::slowness;
        for (const auto& k : slow) {
            if (!sec.has(k)) sec.fail_key(k, "medium needs all of beta_p, beta_s, beta_r (missing " + k + ")");
        }
        sec.read("beta_p", m.beta_p);
        sec.read("beta_s", m.beta_s);
        sec.read("beta_r", m.beta_r);
        const double db = std::abs(m.beta_r - m.beta_s) * m.length_mm;
        m.zeta = (m.beta_r >= m.beta_s ? 1.0 : -1.0) * db / m.tau_p_fs;
        m.pump_signal_walk_off_fs = (m.beta_s - m.beta_p) * m.length_mm;
    } else {
        m.form = RunConfig::MediumForm::walk_off;
        sec.read("zeta", m.zeta);
        sec.read("tau_p_fs", m.tau_p_fs);
        sec.read("pump_signal_walkoff_fs", m.pump_signal_walk_off_fs);
        check(std::isfinite(m.zeta) && m.zeta != 0.0, sec, "zeta", "must be finite and nonzero");
        check(m.tau_p_fs > 0.0, sec, "tau_p_fs", "must be positive");
        check(std::isfinite(m.pump_signal_walk_off_fs), sec, "pump_signal_walkoff_fs", "must be finite");
        resolve_slownesses(m);
    }
    sec.read("n_z_steps", m.n_z_steps);
    check(m.n_z_steps >= 16, sec, "n_z_steps", "must be at least 16");
    sec.read("pump_wavelength_nm", m.pump_wavelength_nm);
    sec.read("signal_wavelength_nm", m.signal_wavelength_nm);
    check(m.pump_wavelength_nm > 0.0, sec, "pump_wavelength_nm", "must be positive");
    check(m.signal_wavelength_nm > 0.0, sec, "signal_wavelength_nm", "must be positive");
    sec.finish();
}

void parse_pump(Section sec, RunConfig& c) {
    auto& p = c.pump;
    exclusive(sec, {"effective_strength"}, {"ce_target"});
    p.shape = read_shape(sec, "shape", p.shape);
    sec.read("order", p.order);
    p.bandwidth = 1.0 / c.medium.tau_p_fs;
    sec.read("bandwidth_rad_per_fs", p.bandwidth);
    check(p.bandwidth > 0.0, sec, "bandwidth_rad_per_fs", "must be positive");
    check(p.order >= 0, sec, "order", "must be non-negative");
    if (sec.read("effective_strength", p.effective_strength)) {
        p.form = RunConfig::StrengthForm::effective_strength;
        check(p.effective_strength >= 0.0 && std::isfinite(p.effective_strength), sec, "effective_strength",
              "must be finite and >= 0");
    } else {
        p.form = RunConfig::StrengthForm::ce_target;
        sec.read("ce_target", p.ce_target);
        check(p.ce_target >= 0.0 && p.ce_target < 1.0, sec, "ce_target", "must lie in [0, 1)");
    }
    sec.read("phase_rad", p.phase);
    check(std::isfinite(p.phase), sec, "phase_rad", "must be finite");
    sec.finish();
}

void parse_signal(Section sec, RunConfig& c) {
    auto& s = c.signal;
    s.shape = read_shape(sec, "shape", s.shape);
    sec.read("order", s.order);
    s.bandwidth = c.pump.bandwidth;
    sec.read("bandwidth_rad_per_fs", s.bandwidth);
    check(s.bandwidth > 0.0, sec, "bandwidth_rad_per_fs", "must be positive");
    check(s.order >= 0, sec, "order", "must be non-negative");
    sec.finish();
}

void parse_cascade(Section sec, RunConfig& c) {
    auto& ops = c.cascade.ops;
    sec.read("phase_s_rad", ops.phase_s);
    sec.read("phase_r_rad", ops.phase_r);
    sec.read("pump2_phase_rad", ops.pump2_phase);
    read_delay(sec, "delay_s_fs", ops.delay_s);
    read_delay(sec, "delay_r_fs", ops.delay_r);
    read_delay(sec, "pump2_delay_fs", ops.pump2_delay);
    sec.read("transmission_s", ops.transmission_s);
    sec.read("transmission_r", ops.transmission_r);
    sec.read("pump2_strength_ratio", c.cascade.pump2_strength_ratio);
    check(ops.transmission_s >= 0.0 && ops.transmission_s <= 1.0, sec, "transmission_s", "must lie in [0, 1]");
    check(ops.transmission_r >= 0.0 && ops.transmission_r <= 1.0, sec, "transmission_r", "must lie in [0, 1]");
    check(c.cascade.pump2_strength_ratio >= 0.0, sec, "pump2_strength_ratio", "must be >= 0");
    check(std::isfinite(ops.phase_s), sec, "phase_s_rad", "must be finite");
    check(std::isfinite(ops.phase_r), sec, "phase_r_rad", "must be finite");
    check(std::isfinite(ops.pump2_phase), sec, "pump2_phase_rad", "must be finite");
    sec.finish();
}

void parse_numerics(Section sec, RunConfig& c) {
    sec.read_count("n_eff", c.numerics.n_eff);
    sec.read_count("n_kept", c.numerics.n_kept);
    check(c.numerics.n_eff >= 8 && c.numerics.n_eff <= c.grid.n_points, sec, "n_eff",
          "must lie between 8 and grid.n_points");
    check(c.numerics.n_kept >= 1 && c.numerics.n_kept <= c.numerics.n_eff, sec, "n_kept",
          "must lie between 1 and n_eff");
    sec.finish();
}

void parse_experiment(Section sec, RunConfig& c) {
    auto& e = c.experiment;
    sec.read("name", e.name);
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), e.name) == names.end()) {
        std::string all;
        for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
        sec.fail_key("name", "unknown experiment '" + e.name + "' (expected one of " + all + ")");
    }
    if (e.name == "fringe_scan") {
        std::string mirror = to_string(e.mirror);
        sec.read("mirror", mirror);
        try {
            e.mirror = mirror_from_string(mirror);
        } catch (const InvalidArgument& err) {
            sec.fail_key("mirror", err.what());
        }
        sec.read("start_nm", e.start_nm);
        sec.read("stop_nm", e.stop_nm);
        sec.read_count("points", e.points);
        sec.read("s_to_r_step_ratio", e.s_to_r_step_ratio);
        check(e.points >= 2, sec, "points", "must be at least 2");
        check(std::isfinite(e.start_nm) && std::isfinite(e.stop_nm) && e.stop_nm > e.start_nm, sec, "stop_nm",
              "must exceed start_nm");
        check(std::isfinite(e.s_to_r_step_ratio), sec, "s_to_r_step_ratio", "must be finite");
    } else if (e.name == "peak_ce_matrix") {
        sec.read("min_strength", e.min_strength);
        sec.read("max_strength", e.max_strength);
        check(e.min_strength > 0.0 && e.max_strength > e.min_strength, sec, "max_strength",
              "must exceed min_strength > 0");
    } else if (is_delay_experiment(e.name)) {
        e.points = 161;
        sec.read_count("points", e.points);
        sec.read("s_range_fs", e.s_range_fs);
        check(e.points >= 3, sec, "points", "must be at least 3");
        check(e.s_range_fs > 0.0, sec, "s_range_fs", "must be positive");
        if (e.name == "delay_scan_widths") {
            sec.read("probe_ratio", e.probe_ratio);
            sec.read("r_range_fs", e.r_range_fs);
            check(e.probe_ratio > 0.0 && e.probe_ratio <= 0.1, sec, "probe_ratio", "must lie in (0, 0.1]");
            check(e.r_range_fs > 0.0, sec, "r_range_fs", "must be positive");
        } else {
            sec.read("strengths", e.strengths);
            sec.read("probe_strength", e.probe_strength);
            check(!e.strengths.empty(), sec, "strengths", "must not be empty");
            const double lo = *std::min_element(e.strengths.begin(), e.strengths.end());
            check(lo > 0.0, sec, "strengths", "must be positive");
            check(e.probe_strength > 0.0 && e.probe_strength <= 0.1 * lo, sec, "probe_strength",
                  "must be positive and at most 0.1 x the smallest strength");
        }
    } else if (e.name == "tradeoff_comparison") {
        sec.read("single_strengths", e.single_strengths);
        sec.read("cascade_strengths", e.cascade_strengths);
        sec.read("matched_ce", e.matched_ce);
        check(std::is_sorted(e.single_strengths.begin(), e.single_strengths.end()), sec, "single_strengths",
              "must be ascending");
        check(std::is_sorted(e.cascade_strengths.begin(), e.cascade_strengths.end()), sec, "cascade_strengths",
              "must be ascending");
        check(e.matched_ce > 0.0 && e.matched_ce < 1.0, sec, "matched_ce", "must lie in (0, 1)");
    }
    sec.finish();
}

void parse_output(Section sec, RunConfig& c) {
    sec.read("directory", c.output.directory);
    sec.read("format", c.output.format);
    check(!c.output.directory.empty(), sec, "directory", "must not be empty");
    check(c.output.format == "csv", sec, "format", "must be 'csv'");
    sec.finish();
}

RunConfig parse_node(const YAML::Node& root, const std::string& source) {
    Section top(root, "", &source);
    RunConfig c;
    // The medium fixes tau_p, which sets the default grid span and bandwidths.
    parse_medium(top.child("medium"), c);
    c.grid.span_fs = 40.0 * c.medium.tau_p_fs;
    Section grid = top.child("grid");
    parse_grid(grid, c, grid.has("span_fs"));
    parse_pump(top.child("pump"), c);
    parse_signal(top.child("signal"), c);
    parse_cascade(top.child("cascade"), c);
    parse_numerics(top.child("numerics"), c);
    parse_experiment(top.child("experiment"), c);
    parse_output(top.child("output"), c);
    top.finish();
    return c;
}

std::string number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void emit_delay(YAML::Emitter& out, const char* key, const std::optional<double>& d) {
    out << YAML::Key << key << YAML::Value << (d ? number(*d) : std::string("auto"));
}

}  // namespace

RunConfig parse_config_string(const std::string& text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        std::ostringstream msg;
        msg << source << ":" << e.mark.line + 1 << ": malformed YAML: " << e.msg;
        throw ConfigError(msg.str());
    }
    if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    return parse_node(root, source);
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad()) throw IoError("error reading config file '" + path.string() + "'");
    return parse_config_string(text.str(), path.string());
}

std::string emit_config(const RunConfig& c) {
    YAML::Emitter out;
    out << YAML::BeginMap;

    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n_points" << YAML::Value << c.grid.n_points;
    out << YAML::Key << "span_fs" << YAML::Value << number(c.grid.span_fs);
    out << YAML::EndMap;

    const auto& m = c.medium;
    out << YAML::Key << "medium" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "length_mm" << YAML::Value << number(m.length_mm);
    if (m.form == RunConfig::MediumForm::walk_off) {
        out << YAML::Key << "zeta" << YAML::Value << number(m.zeta);
        out << YAML::Key << "tau_p_fs" << YAML::Value << number(m.tau_p_fs);
        out << YAML::Key << "pump_signal_walkoff_fs" << YAML::Value << number(m.pump_signal_walk_off_fs);
    } else {
        out << YAML::Key << "beta_p" << YAML::Value << number(m.beta_p);
        out << YAML::Key << "beta_s" << YAML::Value << number(m.beta_s);
        out << YAML::Key << "beta_r" << YAML::Value << number(m.beta_r);
    }
    out << YAML::Key << "n_z_steps" << YAML::Value << m.n_z_steps;
    out << YAML::Key << "pump_wavelength_nm" << YAML::Value << number(m.pump_wavelength_nm);
    out << YAML::Key << "signal_wavelength_nm" << YAML::Value << number(m.signal_wavelength_nm);
    out << YAML::Comment("register_wavelength_nm: " + number(c.register_wavelength_nm()));
    out << YAML::EndMap;

    const auto& p = c.pump;
    out << YAML::Key << "pump" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "shape" << YAML::Value << to_string(p.shape);
    out << YAML::Key << "order" << YAML::Value << p.order;
    out << YAML::Key << "bandwidth_rad_per_fs" << YAML::Value << number(p.bandwidth);
    if (p.form == RunConfig::StrengthForm::effective_strength) {
        out << YAML::Key << "effective_strength" << YAML::Value << number(p.effective_strength);
    } else {
        out << YAML::Key << "ce_target" << YAML::Value << number(p.ce_target);
    }
    out << YAML::Key << "phase_rad" << YAML::Value << number(p.phase);
    out << YAML::EndMap;

    out << YAML::Key << "signal" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "shape" << YAML::Value << to_string(c.signal.shape);
    out << YAML::Key << "order" << YAML::Value << c.signal.order;
    out << YAML::Key << "bandwidth_rad_per_fs" << YAML::Value << number(c.signal.bandwidth);
    out << YAML::EndMap;

    const auto& ops = c.cascade.ops;
    out << YAML::Key << "cascade" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "phase_s_rad" << YAML::Value << number(ops.phase_s);
    out << YAML::Key << "phase_r_rad" << YAML::Value << number(ops.phase_r);
    out << YAML::Key << "pump2_phase_rad" << YAML::Value << number(ops.pump2_phase);
    emit_delay(out, "delay_s_fs", ops.delay_s);
    emit_delay(out, "delay_r_fs", ops.delay_r);
    emit_delay(out, "pump2_delay_fs", ops.pump2_delay);
    out << YAML::Key << "transmission_s" << YAML::Value << number(ops.transmission_s);
    out << YAML::Key << "transmission_r" << YAML::Value << number(ops.transmission_r);
    out << YAML::Key << "pump2_strength_ratio" << YAML::Value << number(c.cascade.pump2_strength_ratio);
    out << YAML::EndMap;

    out << YAML::Key << "numerics" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n_eff" << YAML::Value << c.numerics.n_eff;
    out << YAML::Key << "n_kept" << YAML::Value << c.numerics.n_kept;
    out << YAML::EndMap;

    const auto& e = c.experiment;
    auto list = [&](const char* key, const std::vector<double>& v) {
        out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (double x : v) out << number(x);
        out << YAML::EndSeq;
    };
    out << YAML::Key << "experiment" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << e.name;
    if (e.name == "fringe_scan") {
        out << YAML::Key << "mirror" << YAML::Value << to_string(e.mirror);
        out << YAML::Key << "start_nm" << YAML::Value << number(e.start_nm);
        out << YAML::Key << "stop_nm" << YAML::Value << number(e.stop_nm);
        out << YAML::Key << "points" << YAML::Value << e.points;
        out << YAML::Key << "s_to_r_step_ratio" << YAML::Value << number(e.s_to_r_step_ratio);
    } else if (e.name == "peak_ce_matrix") {
        out << YAML::Key << "min_strength" << YAML::Value << number(e.min_strength);
        out << YAML::Key << "max_strength" << YAML::Value << number(e.max_strength);
    } else if (is_delay_experiment(e.name)) {
        out << YAML::Key << "points" << YAML::Value << e.points;
        out << YAML::Key << "s_range_fs" << YAML::Value << number(e.s_range_fs);
        if (e.name == "delay_scan_widths") {
            out << YAML::Key << "probe_ratio" << YAML::Value << number(e.probe_ratio);
            out << YAML::Key << "r_range_fs" << YAML::Value << number(e.r_range_fs);
        } else {
            list("strengths", e.strengths);
            out << YAML::Key << "probe_strength" << YAML::Value << number(e.probe_strength);
        }
    } else if (e.name == "tradeoff_comparison") {
        list("single_strengths", e.single_strengths);
        list("cascade_strengths", e.cascade_strengths);
        out << YAML::Key << "matched_ce" << YAML::Value << number(e.matched_ce);
    }
    out << YAML::EndMap;

    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "directory" << YAML::Value << c.output.directory;
    out << YAML::Key << "format" << YAML::Value << c.output.format;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

StageSpec build_stage(const RunConfig& c) {
    const auto grid = TemporalGrid::centered(c.grid.n_points, c.grid.span_fs);
    RunConfig::Medium m = c.medium;
    resolve_slownesses(m);
    const ShapeSpec pump_shape{c.pump.shape, c.pump.order, c.pump.bandwidth};
    const auto pump = make_shape_temporal(pump_shape, grid, Band::pump, c.medium.pump_wavelength_nm);
    StageSpec stage{m.length_mm, m.beta_p, m.beta_s, m.beta_r, 0.0, pump, m.n_z_steps, c.pump.phase,
                    m.signal_wavelength_nm};
    stage.validate();
    if (c.pump.form == RunConfig::StrengthForm::effective_strength) {
        stage.gamma = gamma_for_effective_strength(stage, c.pump.effective_strength);
    } else {
        stage.gamma = calibrate_gamma(stage, build_signal(c, stage), c.pump.ce_target);
    }
    return stage;
}

Envelope build_signal(const RunConfig& c, const StageSpec& stage) {
    const ShapeSpec shape{c.signal.shape, c.signal.order, c.signal.bandwidth};
    return make_shape_temporal(shape, stage.grid(), Band::signal, c.medium.signal_wavelength_nm);
}

CascadeSpec build_cascade(const RunConfig& c, const StageSpec& stage) {
    CascadeSpec spec = make_cascade(stage, c.cascade.ops);
    spec.stage2.gamma = stage.gamma * c.cascade.pump2_strength_ratio;
    return spec;
}

}  // namespace qfc
