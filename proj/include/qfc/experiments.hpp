#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfc/cascade.hpp"
#include "qfc/mode_shapes.hpp"
#include "qfc/stage.hpp"

namespace qfc {

// A result table plus the headline scalars of one experiment. Rows are in
// the order the experiment defines; every row has one value per column.
struct ExperimentResult {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> scalars;

    void add_row(std::vector<double> row);
    double scalar(const std::string& key) const;
};

// Statistics of a sampled non-negative curve y(x).
struct CurveStats {
    double peak;
    double peak_x;
    double centroid;
    double rms_width;
    double fwhm;      // linear interpolation at half maximum
    double kurtosis;  // 3 for a Gaussian
};

CurveStats curve_stats(std::span<const double> x, std::span<const double> y);

// Period of a sinusoidal fringe y(x), from the least-squares sinusoid fit
// with the best frequency. Needs at least one full period in the scan.
double fit_fringe_period(std::span<const double> x, std::span<const double> y);

// CE against net phase is an exact sinusoid for fixed delays, so three
// second passes give its extremes.
struct FringeExtrema {
    double ce_max;
    double ce_min;
    double bright_phase;  // value of phase_s offset at the maximum, (-pi, pi]
    double visibility() const;
};

FringeExtrema fringe_extrema(const CascadeSpec& spec, const Envelope& signal_in);

// Fresh normalized signal envelope of the given shape on the stage grid.
Envelope signal_envelope(const StageSpec& stage, const ShapeSpec& shape);
Envelope pump_envelope(const TemporalGrid& grid, const ShapeSpec& shape);

struct SweepOptions {
    unsigned threads = 1;
    std::size_t n_eff = 512;  // reduced basis for Green-function work
};

// Fringe scan with visibility and fitted period (in displacement units).
ExperimentResult fringe_experiment(const CascadeSpec& spec, Mirror mirror, std::span<const double> displacements_nm,
                                   const Envelope& signal_in, const FringeScanOptions& options = {});

struct PeakCeOptions {
    double min_strength = 0.05;  // search range of the per-stage effective strength
    double max_strength = 1.5;
    SweepOptions sweep;
};

// Bright-fringe CE for every pump/signal pair of shapes. Both passes of each
// pump shape use the strength that maximizes the matched-shape bright CE.
// The baseline column is the single-stage CE of the leading Schmidt mode at
// the same total pump energy (strength sqrt(2) times the per-stage value).
ExperimentResult peak_ce_matrix(const StageSpec& stage_template, std::span<const ShapeSpec> pump_shapes,
                                std::span<const ShapeSpec> signal_shapes, const PeakCeOptions& options = {});

enum class ScanArm { s, r };

struct DelayScanOptions {
    double s_range_fs = 3000.0;
    double r_range_fs = 7000.0;
    std::size_t points = 161;
    unsigned threads = 1;
};

// Second-pass-only CE against the scanned arm's extra delay with the other
// arm blocked. s scan: |r_out|^2 / |s_mid|^2; r scan: |s_out|^2 / |r_mid|^2.
struct DelayScan {
    std::vector<double> delay_fs;
    std::vector<double> ce;
    CurveStats stats;
};

DelayScan delay_scan(const CascadeSpec& spec, ScanArm arm, const Envelope& signal_in,
                     const DelayScanOptions& options = {});

// Both scans plus the walk-off estimate zeta = W / tau_p. tau_p comes from the
// s curve, a Gaussian cross correlation of FWHM 2 sqrt(2 ln 2) tau_p. The r
// curve is close to a squared triangle of half-base W, rounded at the apex by
// the pulse widths; W is the window whose perturbative model curve has the
// measured FWHM. width_ratio is the bare FWHM ratio.
ExperimentResult delay_scan_widths(const CascadeSpec& spec, const Envelope& signal_in,
                                   const DelayScanOptions& options = {});
double zeta_from_widths(double fwhm_s, double fwhm_r);

// Probe of the first-pass signal output. For each first-pass strength, the
// s-arm delay scan with the register arm blocked and a weak second pump;
// reports the curve's centroid and RMS width in signal time (the negated
// delay, so negative values mean the signal moved earlier).
ExperimentResult skew_vs_power(const StageSpec& stage_template, const Envelope& signal_in,
                               std::span<const double> strengths, double probe_strength,
                               const DelayScanOptions& options = {});

struct TradeoffComparisonOptions {
    std::vector<double> single_strengths;  // defaults when empty
    std::vector<double> cascade_strengths;
    double matched_ce = 0.9;
    SweepOptions sweep;
};

// Selectivity against target CE for one stage and for the bright-fringe
// cascade (same strength in both passes, auto delays). Rows carry the
// configuration (1 or 2 passes); scalars hold the refined maxima and the
// selectivities at matched_ce.
ExperimentResult tradeoff_comparison(const StageSpec& stage_template,
                                     const TradeoffComparisonOptions& options = {});

}  // namespace qfc
