#include "qfc/experiments.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qfc/error.hpp"
#include "qfc/green.hpp"
#include "qfc/parallel.hpp"
#include "qfc/schmidt.hpp"

namespace qfc {

void ExperimentResult::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw InvalidArgument(name + ": row width does not match the columns");
    rows.push_back(std::move(row));
}

double ExperimentResult::scalar(const std::string& key) const {
    for (const auto& [k, v] : scalars) {
        if (k == key) return v;
    }
    throw InvalidArgument(name + ": no scalar named '" + key + "'");
}

CurveStats curve_stats(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) throw InvalidArgument("curve_stats needs matching axes of >= 3 points");
    const auto peak_it = std::max_element(y.begin(), y.end());
    const auto ip = static_cast<std::size_t>(peak_it - y.begin());
    const double peak = *peak_it;
    if (!(peak > 0.0)) throw NumericalError("curve is identically zero");

    const auto m = profile_moments(x, y);
    double m2 = 0.0, m4 = 0.0, w = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - m.centroid;
        w += y[k];
        m2 += y[k] * d * d;
        m4 += y[k] * d * d * d * d;
    }
    m2 /= w;
    m4 /= w;

    const double half = 0.5 * peak;
    auto crossing = [&](std::size_t from, int step) {
        std::size_t k = from;
        while (true) {
            if ((step < 0 && k == 0) || (step > 0 && k + 1 == x.size())) {
                throw NumericalError("curve does not fall to half maximum inside the scan range");
            }
            const std::size_t next = step < 0 ? k - 1 : k + 1;
            if (y[next] < half) {
                const double f = (y[k] - half) / (y[k] - y[next]);
                return x[k] + f * (x[next] - x[k]);
            }
            k = next;
        }
    };
    const double left = crossing(ip, -1);
    const double right = crossing(ip, +1);
    return {peak, x[ip], m.centroid, m.rms_width, right - left, m4 / (m2 * m2)};
}

namespace {

// Residual sum of squares of the best a + b cos(2 pi f x) + c sin(2 pi f x).
double sinusoid_residual(std::span<const double> x, std::span<const double> y, double f) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 3);
    Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
    for (std::size_t k = 0; k < x.size(); ++k) {
        const auto r = static_cast<Eigen::Index>(k);
        const double arg = 2.0 * std::numbers::pi * f * x[k];
        a(r, 0) = 1.0;
        a(r, 1) = std::cos(arg);
        a(r, 2) = std::sin(arg);
        b(r) = y[k];
    }
    const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
    return (a * c - b).squaredNorm();
}

template <typename F>
double golden_minimize(F&& f, double lo, double hi, double tol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    double fa = f(a), fb = f(b);
    while (hi - lo > tol) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double fit_fringe_period(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 8) throw InvalidArgument("fringe fit needs >= 8 matching points");
    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    const double range = *xmax - *xmin;
    if (!(range > 0.0)) throw InvalidArgument("fringe fit needs a nonzero scan range");
    const double df = 0.02 / range;
    const double f_lo = 0.9 / range;  // at least about one period in the scan
    const double f_hi = 0.5 * static_cast<double>(x.size() - 1) / range;
    if (!(f_hi > f_lo)) throw InvalidArgument("fringe fit: too few points for the scan range");
    double best_f = f_lo, best = sinusoid_residual(x, y, f_lo);
    for (double f = f_lo + df; f <= f_hi; f += df) {
        const double r = sinusoid_residual(x, y, f);
        if (r < best) {
            best = r;
            best_f = f;
        }
    }
    const double f = golden_minimize([&](double v) { return sinusoid_residual(x, y, v); },
                                     std::max(f_lo, best_f - df), best_f + df, 1e-10 * best_f);
    return 1.0 / f;
}

double FringeExtrema::visibility() const { return ce_max + ce_min > 0.0 ? (ce_max - ce_min) / (ce_max + ce_min) : 0.0; }

FringeExtrema fringe_extrema(const CascadeSpec& spec, const Envelope& signal_in) {
    spec.validate();
    const double norm = squared_norm(signal_in);
    const auto first = first_pass(spec, signal_in);
    const auto stage2 = effective_second_stage(spec);
    const auto delays = resolve_delays(spec.stage1, spec.ops);
    // ce(phi) = a + b cos(phi) + c sin(phi) over an offset phi of phase_s.
    double ce[3];
    for (int k = 0; k < 3; ++k) {
        CascadeSpec point = spec;
        point.ops.phase_s += 2.0 * std::numbers::pi * k / 3.0;
        ce[k] = second_pass(point, stage2, first, delays, norm).ce;
    }
    const double a = (ce[0] + ce[1] + ce[2]) / 3.0;
    const double b = (2.0 * ce[0] - ce[1] - ce[2]) / 3.0;
    const double c = (ce[1] - ce[2]) / std::sqrt(3.0);
    const double amp = std::hypot(b, c);
    return {a + amp, a - amp, wrap_phase(std::atan2(c, b))};
}

Envelope signal_envelope(const StageSpec& stage, const ShapeSpec& shape) {
    return make_shape_temporal(shape, stage.grid(), Band::signal, stage.signal_wavelength_nm);
}

Envelope pump_envelope(const TemporalGrid& grid, const ShapeSpec& shape) {
    return make_shape_temporal(shape, grid, Band::pump, kPumpWavelengthNm);
}

ExperimentResult fringe_experiment(const CascadeSpec& spec, Mirror mirror, std::span<const double> displacements_nm,
                                   const Envelope& signal_in, const FringeScanOptions& options) {
    const auto points = fringe_scan(spec, mirror, displacements_nm, signal_in, options);
    ExperimentResult res{"fringe_scan", {"displacement_nm", "net_phase_rad", "ce"}, {}, {}};
    std::vector<double> x, y;
    for (const auto& p : points) {
        res.add_row({p.displacement_nm, p.net_phase, p.ce});
        x.push_back(p.displacement_nm);
        y.push_back(p.ce);
    }
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    res.scalars = {{"ce_max", *hi}, {"ce_min", *lo}, {"visibility", fringe_visibility(y)}};
    if (x.size() >= 8) {
        try {
            res.scalars.emplace_back("period_nm", fit_fringe_period(x, y));
        } catch (const InvalidArgument&) {
            // scan too short for a period estimate; the table is still valid
        }
    }
    return res;
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return v;
}

// Coarse scan followed by golden-section refinement of the maximum.
template <typename F>
std::pair<double, double> maximize(F&& f, std::span<const double> coarse, double tol) {
    std::vector<double> vals(coarse.size());
    for (std::size_t k = 0; k < coarse.size(); ++k) vals[k] = f(coarse[k]);
    const auto best = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    const double lo = coarse[best == 0 ? 0 : best - 1];
    const double hi = coarse[best + 1 == coarse.size() ? best : best + 1];
    if (!(hi > lo)) return {coarse[best], vals[best]};
    const double x = golden_minimize([&](double v) { return -f(v); }, lo, hi, tol);
    const double fx = f(x);
    return fx >= vals[best] ? std::pair{x, fx} : std::pair{coarse[best], vals[best]};
}

// Root of f(x) = target between lo and hi (f(lo) < target < f(hi) or the
// reverse) by the Illinois variant of regula falsi.
template <typename F>
double solve_for(F&& f, double lo, double f_lo, double hi, double f_hi, double target, double tol) {
    double a = lo, fa = f_lo - target, b = hi, fb = f_hi - target;
    if (fa * fb > 0.0) throw NumericalError("solve_for: target is not bracketed");
    int side = 0;
    for (int it = 0; it < 100; ++it) {
        const double c = (a * fb - b * fa) / (fb - fa);
        const double fc = f(c) - target;
        if (std::abs(fc) <= tol) return c;
        if (fc * fb > 0.0) {
            b = c;
            fb = fc;
            if (side == -1) fa *= 0.5;
            side = -1;
        } else {
            a = c;
            fa = fc;
            if (side == +1) fb *= 0.5;
            side = +1;
        }
    }
    return 0.5 * (a + b);
}

SelectivityReport green_selectivity(const GreenFunction& g) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(g.rs);
    const auto& sv = svd.singularValues();
    return selectivity(std::span<const double>(sv.data(), static_cast<std::size_t>(sv.size())));
}

StageSpec with_strength(const StageSpec& stage, double effective) {
    StageSpec s = stage;
    s.gamma = gamma_for_effective_strength(stage, effective);
    return s;
}

}  // namespace

ExperimentResult peak_ce_matrix(const StageSpec& stage_template, std::span<const ShapeSpec> pump_shapes,
                                std::span<const ShapeSpec> signal_shapes, const PeakCeOptions& options) {
    if (pump_shapes.size() != signal_shapes.size()) {
        throw InvalidArgument("peak_ce_matrix needs one matched signal shape per pump shape");
    }
    ExperimentResult res{"peak_ce_matrix", {"pump_index", "effective_strength"}, {}, {}};
    for (const auto& s : signal_shapes) res.columns.push_back("ce_" + to_string(s.family));
    res.columns.push_back("baseline_schmidt_ce");

    std::vector<Envelope> signals;
    for (const auto& s : signal_shapes) signals.push_back(signal_envelope(stage_template, s));

    const auto coarse = linspace(options.min_strength, options.max_strength, 15);
    std::vector<std::vector<double>> rows(pump_shapes.size());
    parallel_for(pump_shapes.size(), options.sweep.threads, [&](std::size_t j) {
        StageSpec stage = stage_template;
        stage.pump = pump_envelope(stage.grid(), pump_shapes[j]);
        auto bright = [&](const Envelope& sig, double eff) {
            return fringe_extrema(make_cascade(with_strength(stage, eff)), sig).ce_max;
        };
        const auto [eff, matched] = maximize([&](double e) { return bright(signals[j], e); }, coarse, 1e-4);
        std::vector<double> row{static_cast<double>(j), eff};
        for (std::size_t k = 0; k < signals.size(); ++k) row.push_back(k == j ? matched : bright(signals[k], eff));

        // Equal total pump energy in one pass: gamma^2 doubles.
        const auto single = restrict_stage(with_strength(stage, std::sqrt(2.0) * eff), options.sweep.n_eff);
        row.push_back(green_selectivity(assemble(single)).ce_target);
        rows[j] = std::move(row);
    });
    for (auto& r : rows) res.add_row(std::move(r));

    double worst_margin = 1.0;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto& r = res.rows[j];
        for (std::size_t k = 0; k < signals.size(); ++k) {
            if (k != j) worst_margin = std::min(worst_margin, r[2 + j] - r[2 + k]);
        }
    }
    res.scalars = {{"min_diagonal_margin", worst_margin}};
    return res;
}

DelayScan delay_scan(const CascadeSpec& spec, ScanArm arm, const Envelope& signal_in, const DelayScanOptions& options) {
    spec.validate();
    if (!(spec.stage2.gamma <= 0.1 * spec.stage1.gamma * (1.0 + 1e-12))) {
        throw InvalidArgument("delay scans need a weak second pump (gamma2 <= 0.1 gamma1)");
    }
    if (options.points < 3) throw InvalidArgument("delay scan needs at least 3 points");
    const auto first = first_pass(spec, signal_in);
    const auto stage2 = effective_second_stage(spec);
    const auto base = resolve_delays(spec.stage1, spec.ops);
    const double range = arm == ScanArm::s ? options.s_range_fs : options.r_range_fs;

    DelayScan scan;
    scan.delay_fs = linspace(-range, range, options.points);
    scan.ce.resize(options.points);
    const auto zero_s = Envelope::zeros(stage2.grid(), Band::signal, stage2.signal_wavelength_nm);
    const auto zero_r = Envelope::zeros(stage2.grid(), Band::register_, register_wavelength(stage2));
    parallel_for(options.points, options.threads, [&](std::size_t i) {
        const double x = scan.delay_fs[i];
        if (arm == ScanArm::s) {
            const auto s_mid = apply_delay(first.signal_out, base.signal + x);
            const auto out = propagate(stage2, s_mid, zero_r);
            scan.ce[i] = squared_norm(out.register_out) / squared_norm(s_mid);
        } else {
            const auto r_mid = apply_delay(first.register_out, base.reg + x);
            const auto out = propagate(stage2, zero_s, r_mid);
            scan.ce[i] = squared_norm(out.signal_out) / squared_norm(r_mid);
        }
    });
    scan.stats = curve_stats(scan.delay_fs, scan.ce);
    return scan;
}

namespace {

// Antiderivative of erf.
double erf_integral(double t) { return t * std::erf(t) + std::exp(-t * t) / std::sqrt(std::numbers::pi); }

// Perturbative r-scan curve in units of tau_p for Gaussian pump and signal
// amplitudes exp(-t^2/2). The register leaving the first pass is the pump x
// signal product smeared over the walk-off window w; the second pass smears
// it once more and gates it with the pump intensity.
double r_scan_model(double x, double w) {
    auto h = [w](double y) {
        return 0.5 * std::sqrt(std::numbers::pi) *
               (erf_integral(y) - 2.0 * erf_integral(y - w) + erf_integral(y - 2.0 * w));
    };
    constexpr double step = 0.02;
    double acc = 0.0;
    for (double t = -7.0; t <= 7.0; t += step) {
        const double v = h(t + x);
        acc += std::exp(-t * t) * v * v;
    }
    return acc * step;
}

// FWHM of r_scan_model; the curve is symmetric about x = w.
double r_scan_model_fwhm(double w) {
    const double half = 0.5 * r_scan_model(w, w);
    double lo = w, hi = 2.0 * w + 10.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (r_scan_model(mid, w) > half ? lo : hi) = mid;
    }
    return 2.0 * (0.5 * (lo + hi) - w);
}

}  // namespace

double zeta_from_widths(double fwhm_s, double fwhm_r) {
    if (!(fwhm_s > 0.0) || !(fwhm_r > 0.0)) throw InvalidArgument("widths must be positive");
    // s curve: Gaussian cross correlation, FWHM 2 sqrt(2 ln 2) tau_p.
    const double tau_p = fwhm_s / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const double target = fwhm_r / tau_p;
    double lo = 0.05, hi = 200.0;
    if (r_scan_model_fwhm(lo) > target) return lo;
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (r_scan_model_fwhm(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ExperimentResult delay_scan_widths(const CascadeSpec& spec, const Envelope& signal_in, const DelayScanOptions& options) {
    CascadeSpec s_spec = spec;
    s_spec.ops.transmission_r = 0.0;
    CascadeSpec r_spec = spec;
    r_spec.ops.transmission_s = 0.0;
    const auto s = delay_scan(s_spec, ScanArm::s, signal_in, options);
    const auto r = delay_scan(r_spec, ScanArm::r, signal_in, options);

    ExperimentResult res{"delay_scan_widths", {"arm", "delay_fs", "ce"}, {}, {}};
    for (std::size_t k = 0; k < s.delay_fs.size(); ++k) res.add_row({0.0, s.delay_fs[k], s.ce[k]});
    for (std::size_t k = 0; k < r.delay_fs.size(); ++k) res.add_row({1.0, r.delay_fs[k], r.ce[k]});
    res.scalars = {{"fwhm_s_fs", s.stats.fwhm},
                   {"fwhm_r_fs", r.stats.fwhm},
                   {"width_ratio", r.stats.fwhm / s.stats.fwhm},
                   {"zeta_estimate", zeta_from_widths(s.stats.fwhm, r.stats.fwhm)},
                   {"kurtosis_s", s.stats.kurtosis},
                   {"kurtosis_r", r.stats.kurtosis}};
    return res;
}

ExperimentResult skew_vs_power(const StageSpec& stage_template, const Envelope& signal_in,
                               std::span<const double> strengths, double probe_strength,
                               const DelayScanOptions& options) {
    ExperimentResult res{"skew_vs_power", {"effective_strength", "stage1_ce", "centroid_fs", "rms_width_fs"}, {}, {}};
    for (double eff : strengths) {
        if (!(probe_strength <= 0.1 * eff)) {
            std::ostringstream msg;
            msg << "probe strength " << probe_strength << " is not weak against first-pass strength " << eff;
            throw InvalidArgument(msg.str());
        }
        CascadeSpec spec = make_cascade(with_strength(stage_template, eff));
        spec.stage2 = with_strength(stage_template, probe_strength);
        spec.ops.transmission_r = 0.0;
        const auto scan = delay_scan(spec, ScanArm::s, signal_in, options);
        const double ce1 = conversion_efficiency(spec.stage1, signal_in);
        res.add_row({eff, ce1, -scan.stats.centroid, scan.stats.rms_width});
    }
    return res;
}

ExperimentResult tradeoff_comparison(const StageSpec& stage_template, const TradeoffComparisonOptions& options) {
    const auto single_grid =
        options.single_strengths.empty() ? linspace(0.2, 2.4, 23) : options.single_strengths;
    const auto cascade_grid =
        options.cascade_strengths.empty() ? linspace(0.2, 1.4, 13) : options.cascade_strengths;
    const auto& sw = options.sweep;
    const StageSpec reduced = restrict_stage(stage_template, sw.n_eff);
    const auto probe = make_shape_temporal(ShapeSpec{ShapeFamily::hg0, 0, 1.0 / pulse_duration(stage_template.pump)},
                                           stage_template.grid(), Band::signal, stage_template.signal_wavelength_nm);

    auto single = [&](double eff) { return green_selectivity(assemble(with_strength(reduced, eff), sw.threads)); };
    // Bright fringe for a pump-shaped input, then the Schmidt analysis there.
    auto cascade = [&](double eff) {
        auto spec = make_cascade(with_strength(stage_template, eff));
        spec.ops.phase_s = fringe_extrema(spec, probe).bright_phase;
        return green_selectivity(cascade_green(spec, sw.threads, sw.n_eff));
    };

    ExperimentResult res{"tradeoff_comparison",
                         {"passes", "effective_strength", "ce_target", "purity", "selectivity"}, {}, {}};
    auto sweep = [&](auto&& eval, std::span<const double> grid, double passes) {
        std::vector<SelectivityReport> reps;
        for (double eff : grid) {
            reps.push_back(eval(eff));
            res.add_row({passes, eff, reps.back().ce_target, reps.back().purity, reps.back().selectivity});
        }
        return reps;
    };
    const auto single_reps = sweep(single, single_grid, 1.0);
    const auto cascade_reps = sweep(cascade, cascade_grid, 2.0);

    auto refine_max = [&](auto&& eval, std::span<const double> grid) {
        return maximize([&](double e) { return eval(e).selectivity; }, grid, 1e-3).second;
    };
    // Selectivity where the target CE first reaches matched_ce.
    auto at_ce = [&](auto&& eval, std::span<const double> grid, const std::vector<SelectivityReport>& reps) {
        for (std::size_t k = 1; k < reps.size(); ++k) {
            if (reps[k - 1].ce_target < options.matched_ce && reps[k].ce_target >= options.matched_ce) {
                const double eff = solve_for([&](double e) { return eval(e).ce_target; }, grid[k - 1],
                                             reps[k - 1].ce_target, grid[k], reps[k].ce_target, options.matched_ce,
                                             1e-6);
                return eval(eff).selectivity;
            }
        }
        throw NumericalError("tradeoff sweep never reaches the matched CE; extend the strength grid");
    };
    res.scalars = {{"max_selectivity_single", refine_max(single, single_grid)},
                   {"max_selectivity_two_stage", refine_max(cascade, cascade_grid)},
                   {"selectivity_single_at_matched_ce", at_ce(single, single_grid, single_reps)},
                   {"selectivity_two_stage_at_matched_ce", at_ce(cascade, cascade_grid, cascade_reps)}};
    return res;
}

}  // namespace qfc
