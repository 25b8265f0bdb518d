#include "qfc/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qfc/error.hpp"
#include "qfc/parallel.hpp"

namespace qfc {

void InterstageOps::validate() const {
    auto unit = [](double t, const char* name) {
        if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
    };
    unit(transmission_s, "transmission_s");
    unit(transmission_r, "transmission_r");
    for (double phi : {phase_s, phase_r, pump2_phase}) {
        if (!std::isfinite(phi)) throw InvalidArgument("interstage phases must be finite");
    }
}

double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(phi, two_pi);  // [-pi, pi]
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

double net_phase(const InterstageOps& ops) { return wrap_phase(ops.pump2_phase + ops.phase_s - ops.phase_r); }

ResolvedDelays auto_delays(const StageSpec& stage) {
    const double w = walk_off(stage);
    const double signal_shift = (stage.beta_s - stage.beta_p) * stage.length_mm;
    return {0.5 * w - signal_shift, -0.5 * w - signal_shift, 0.5 * w};
}

ResolvedDelays resolve_delays(const StageSpec& stage, const InterstageOps& ops) {
    const auto a = auto_delays(stage);
    const ResolvedDelays d{ops.delay_s.value_or(a.signal), ops.delay_r.value_or(a.reg),
                           ops.pump2_delay.value_or(a.pump2)};
    const double guard = kDelayGuardFraction * stage.grid().span();
    for (auto [value, name] : {std::pair{d.signal, "delay_s"}, {d.reg, "delay_r"}, {d.pump2, "pump2_delay"}}) {
        if (!(std::abs(value) < guard)) {
            std::ostringstream msg;
            msg << name << " = " << value << " fs exceeds the delay guard of " << guard
                << " fs; widen the grid span";
            throw InvalidArgument(msg.str());
        }
    }
    return d;
}

void CascadeSpec::validate() const {
    stage1.validate();
    stage2.validate();
    ops.validate();
    if (!(stage1.grid() == stage2.grid())) throw InvalidArgument("cascade stages must share one grid");
    if (!allow_medium_mismatch) {
        const bool same = stage1.length_mm == stage2.length_mm && stage1.beta_p == stage2.beta_p &&
                          stage1.beta_s == stage2.beta_s && stage1.beta_r == stage2.beta_r;
        if (!same) throw InvalidArgument("cascade stages must use the same medium (length and slownesses)");
    }
    resolve_delays(stage1, ops);
}

CascadeSpec make_cascade(const StageSpec& stage, const InterstageOps& ops) { return {stage, stage, ops, false}; }

StageSpec effective_second_stage(const CascadeSpec& spec) {
    const auto d = resolve_delays(spec.stage1, spec.ops);
    StageSpec s2 = spec.stage2;
    s2.pump = apply_delay(spec.stage2.pump, d.pump2);
    s2.pump_phase += spec.ops.pump2_phase;
    return s2;
}

namespace {

Envelope interstage_arm(const Envelope& e, double delay, double phase, double transmission) {
    return scaled(apply_delay(e, delay), std::polar(transmission, phase));
}

Envelope zero_register(const StageSpec& stage) {
    return Envelope::zeros(stage.grid(), Band::register_, register_wavelength(stage));
}

}  // namespace

StageOutput first_pass(const CascadeSpec& spec, const Envelope& signal_in) {
    return propagate(spec.stage1, signal_in, zero_register(spec.stage1));
}

CascadeOutput second_pass(const CascadeSpec& spec, const StageSpec& stage2, const StageOutput& first,
                          const ResolvedDelays& d, double input_norm) {
    const auto& ops = spec.ops;
    auto s_mid = interstage_arm(first.signal_out, d.signal, ops.phase_s, ops.transmission_s);
    auto r_mid = interstage_arm(first.register_out, d.reg, ops.phase_r, ops.transmission_r);
    auto second = propagate(stage2, s_mid, r_mid);
    const double reference = ops.transmission_s * ops.transmission_s * input_norm;
    const double ce = reference > 0.0 ? squared_norm(second.register_out) / reference
                                      : std::numeric_limits<double>::quiet_NaN();
    return {std::move(s_mid), std::move(r_mid), std::move(second.signal_out), std::move(second.register_out),
            ce};
}

CascadeOutput run_cascade(const CascadeSpec& spec, const Envelope& signal_in) {
    spec.validate();
    const double norm = squared_norm(signal_in);
    if (!(norm > 0.0)) throw InvalidArgument("cascade input signal is zero");
    const auto d = resolve_delays(spec.stage1, spec.ops);
    return second_pass(spec, effective_second_stage(spec), first_pass(spec, signal_in), d, norm);
}

namespace {

void transform_columns(Eigen::MatrixXcd& m, const TemporalGrid& grid, double delay, cplx factor) {
    std::vector<cplx> col(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) col[static_cast<std::size_t>(r)] = m(r, c);
        delay_samples(col, grid, delay);
        for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = col[static_cast<std::size_t>(r)] * factor;
    }
}

}  // namespace

GreenFunction interstage_green(const CascadeSpec& spec, const TemporalGrid& grid) {
    const auto d = resolve_delays(spec.stage1, spec.ops);
    auto g = GreenFunction::identity(grid, spec.stage1.signal_wavelength_nm, register_wavelength(spec.stage1));
    transform_columns(g.ss, grid, d.signal, std::polar(spec.ops.transmission_s, spec.ops.phase_s));
    transform_columns(g.rr, grid, d.reg, std::polar(spec.ops.transmission_r, spec.ops.phase_r));
    return g;
}

GreenFunction cascade_green(const CascadeSpec& spec, unsigned threads, std::size_t n_eff) {
    spec.validate();
    const auto d = resolve_delays(spec.stage1, spec.ops);
    StageSpec s1 = spec.stage1;
    StageSpec s2 = effective_second_stage(spec);
    if (n_eff > 0) {
        s1 = restrict_stage(s1, n_eff);
        s2 = restrict_stage(s2, n_eff);
    }
    auto g = assemble(s1, threads);
    const auto& grid = s1.grid();
    // D * G1: the interstage operator acts on the output rows of each band.
    const cplx fs = std::polar(spec.ops.transmission_s, spec.ops.phase_s);
    const cplx fr = std::polar(spec.ops.transmission_r, spec.ops.phase_r);
    transform_columns(g.ss, grid, d.signal, fs);
    transform_columns(g.sr, grid, d.signal, fs);
    transform_columns(g.rs, grid, d.reg, fr);
    transform_columns(g.rr, grid, d.reg, fr);
    return compose(assemble(s2, threads), g);
}

std::string to_string(Mirror mirror) {
    switch (mirror) {
        case Mirror::s: return "s";
        case Mirror::r: return "r";
        case Mirror::both_same: return "both_same";
        case Mirror::both_opposite: return "both_opposite";
    }
    return "?";
}

Mirror mirror_from_string(const std::string& name) {
    if (name == "s") return Mirror::s;
    if (name == "r") return Mirror::r;
    if (name == "both_same") return Mirror::both_same;
    if (name == "both_opposite") return Mirror::both_opposite;
    throw InvalidArgument("unknown mirror '" + name + "' (expected s, r, both_same or both_opposite)");
}

std::vector<FringePoint> fringe_scan(const CascadeSpec& spec, Mirror mirror,
                                     std::span<const double> displacements_nm, const Envelope& signal_in,
                                     const FringeScanOptions& options) {
    spec.validate();
    const double norm = squared_norm(signal_in);
    if (!(norm > 0.0)) throw InvalidArgument("fringe scan input signal is zero");
    const auto base = resolve_delays(spec.stage1, spec.ops);
    const auto first = first_pass(spec, signal_in);
    const StageSpec stage2 = effective_second_stage(spec);
    const double lambda_s = spec.stage1.signal_wavelength_nm;
    const double lambda_r = register_wavelength(spec.stage1);

    std::vector<FringePoint> out(displacements_nm.size());
    parallel_for(out.size(), options.threads, [&](std::size_t i) {
        const double x = displacements_nm[i];
        double dl_s = 0.0, dl_r = 0.0;
        switch (mirror) {
            case Mirror::s: dl_s = x; break;
            case Mirror::r: dl_r = x; break;
            case Mirror::both_same: dl_r = x; dl_s = options.s_to_r_step_ratio * x; break;
            case Mirror::both_opposite: dl_r = x; dl_s = -options.s_to_r_step_ratio * x; break;
        }
        CascadeSpec point = spec;
        point.ops.phase_s += mirror_displacement_to_phase(dl_s, lambda_s);
        point.ops.phase_r += mirror_displacement_to_phase(dl_r, lambda_r);
        ResolvedDelays d = base;
        // Positive displacement shortens the arm, so the pulse arrives earlier.
        d.signal -= 2.0 * dl_s / kSpeedOfLightNmPerFs;
        d.reg -= 2.0 * dl_r / kSpeedOfLightNmPerFs;
        const auto res = second_pass(point, stage2, first, d, norm);
        out[i] = {x, net_phase(point.ops), res.ce};
    });
    return out;
}

double fringe_visibility(std::span<const double> ce) {
    if (ce.empty()) throw InvalidArgument("visibility of an empty scan");
    const auto [lo, hi] = std::minmax_element(ce.begin(), ce.end());
    if (!(*hi + *lo > 0.0)) return 0.0;
    return (*hi - *lo) / (*hi + *lo);
}

}  // namespace qfc
