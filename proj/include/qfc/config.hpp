#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "qfc/cascade.hpp"
#include "qfc/mode_shapes.hpp"
#include "qfc/stage.hpp"

namespace qfc {

inline constexpr double kDefaultTauPFs = 500.0;
inline constexpr double kDefaultZeta = 10.0;
inline constexpr double kDefaultPumpSignalWalkOffFs = 40.0;
inline constexpr double kReferenceBetaP = 7330.0;  // fs/mm; only differences matter

// Fully resolved run configuration. Every field holds a concrete value after
// parse_config(); the *_form flags remember which of the mutually exclusive
// spellings was used so the snapshot re-parses to the same config.
struct RunConfig {
    struct Grid {
        std::size_t n_points = 2048;
        double span_fs = 40.0 * kDefaultTauPFs;
    } grid;

    enum class MediumForm { walk_off, slowness };
    struct Medium {
        MediumForm form = MediumForm::walk_off;
        double length_mm = 5.0;
        double zeta = kDefaultZeta;  // signed: negative puts the register ahead
        double tau_p_fs = kDefaultTauPFs;
        double pump_signal_walk_off_fs = kDefaultPumpSignalWalkOffFs;
        double beta_p = 0.0;  // walk-off form: derived when the stage is built
        double beta_s = 0.0;
        double beta_r = 0.0;
        int n_z_steps = 512;
        double pump_wavelength_nm = kPumpWavelengthNm;
        double signal_wavelength_nm = kSignalWavelengthNm;
    } medium;

    enum class StrengthForm { effective_strength, ce_target };
    struct Pump {
        ShapeFamily shape = ShapeFamily::hg0;
        int order = 0;
        double bandwidth = 1.0 / kDefaultTauPFs;
        StrengthForm form = StrengthForm::ce_target;
        double effective_strength = 0.0;
        double ce_target = 0.5;
        double phase = 0.0;
    } pump;

    struct Signal {
        ShapeFamily shape = ShapeFamily::hg0;
        int order = 0;
        double bandwidth = 1.0 / kDefaultTauPFs;
    } signal;

    struct Cascade {
        InterstageOps ops;
        double pump2_strength_ratio = 1.0;
    } cascade;

    struct Numerics {
        std::size_t n_eff = 512;
        std::size_t n_kept = 32;
    } numerics;

    struct Experiment {
        std::string name = "fringe_scan";
        // fringe_scan
        Mirror mirror = Mirror::s;
        double start_nm = 0.0;
        double stop_nm = 800.0;
        double s_to_r_step_ratio = 1.0;
        // fringe_scan and the delay scans
        std::size_t points = 81;
        // peak_ce_matrix
        double min_strength = 0.05;
        double max_strength = 1.5;
        // delay_scan_widths and skew_vs_power
        double probe_ratio = 0.1;
        double s_range_fs = 3000.0;
        double r_range_fs = 7000.0;
        std::vector<double> strengths{0.6, 0.9, 1.2, 1.5};
        double probe_strength = 0.02;
        // tradeoff_comparison
        std::vector<double> single_strengths;
        std::vector<double> cascade_strengths;
        double matched_ce = 0.9;
    } experiment;

    struct Output {
        std::string directory = "out";
        std::string format = "csv";
    } output;

    double register_wavelength_nm() const;
};

const std::vector<std::string>& experiment_names();

// Reads and validates a YAML config. Throws ConfigError with the file name,
// line and key path for schema problems, IoError if the file cannot be read.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_string(const std::string& text, const std::string& source = "<string>");

// YAML text of the resolved config; parse_config_string(emit_config(c))
// reproduces c.
std::string emit_config(const RunConfig& config);

// Stage built from the config. The pump strength is calibrated against the
// configured signal when the config gives a CE target.
StageSpec build_stage(const RunConfig& config);
Envelope build_signal(const RunConfig& config, const StageSpec& stage);
CascadeSpec build_cascade(const RunConfig& config, const StageSpec& stage);

}  // namespace qfc
