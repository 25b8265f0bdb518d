#include "qfc/stage.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfc/error.hpp"
#include "qfc/fft.hpp"
#include "qfc/mode_shapes.hpp"

namespace qfc {

void StageSpec::validate() const {
    if (!(length_mm > 0.0)) throw InvalidArgument("stage length must be positive");
    if (n_z_steps < 16) throw InvalidArgument("stage needs at least 16 z steps");
    if (!std::isfinite(beta_p) || !std::isfinite(beta_s) || !std::isfinite(beta_r)) {
        throw InvalidArgument("group slownesses must be finite");
    }
    if (!std::isfinite(gamma) || gamma < 0.0) throw InvalidArgument("gamma must be finite and >= 0");
    if (pump.band() != Band::pump) throw InvalidArgument("stage pump envelope must be in the pump band");
    if (std::abs(squared_norm(pump) - 1.0) > 1e-9) throw InvalidArgument("stage pump must be normalized");
    if (!(signal_wavelength_nm > 0.0)) throw InvalidArgument("signal wavelength must be positive");
}

double register_wavelength(double pump_wavelength_nm, double signal_wavelength_nm) {
    if (!(pump_wavelength_nm > 0.0) || !(signal_wavelength_nm > 0.0)) {
        throw InvalidArgument("wavelengths must be positive");
    }
    return 1.0 / (1.0 / pump_wavelength_nm + 1.0 / signal_wavelength_nm);
}

double register_wavelength(const StageSpec& stage) {
    return register_wavelength(stage.pump.carrier_wavelength_nm(), stage.signal_wavelength_nm);
}

double walk_off(const StageSpec& stage) { return (stage.beta_r - stage.beta_s) * stage.length_mm; }

double effective_strength(const StageSpec& stage) {
    const double db = std::abs(stage.beta_r - stage.beta_s);
    if (!(db > 0.0)) throw InvalidArgument("effective strength needs beta_r != beta_s");
    return stage.gamma * std::sqrt(stage.length_mm / db);
}

double gamma_for_effective_strength(const StageSpec& stage, double effective) {
    const double db = std::abs(stage.beta_r - stage.beta_s);
    if (!(db > 0.0)) throw InvalidArgument("effective strength needs beta_r != beta_s");
    return effective * std::sqrt(db / stage.length_mm);
}

double zeta(const StageSpec& stage) {
    return std::abs(walk_off(stage)) / pulse_duration(stage.pump);
}

Propagator::Propagator(const StageSpec& stage)
    : grid_(stage.grid()), fft_(stage.grid().n_points()), n_steps_(stage.n_z_steps) {
    stage.validate();
    const std::size_t n = grid_.n_points();
    const double dz = stage.length_mm / stage.n_z_steps;
    const double v_s = stage.beta_s - stage.beta_p;
    const double v_r = stage.beta_r - stage.beta_p;
    move_signal_ = v_s != 0.0;
    move_register_ = v_r != 0.0;

    // A(t) -> A(t - v dz): multiply the spectrum by exp(-i w v dz). The 1/n of
    // the unnormalized inverse FFT is folded in.
    const auto w = grid_.angular_frequencies();
    const double inv_n = 1.0 / static_cast<double>(n);
    auto table = [&](double shift) {
        std::vector<cplx> t(n);
        for (std::size_t m = 0; m < n; ++m) t[m] = std::polar(inv_n, -w[m] * shift);
        return t;
    };
    signal_half_ = table(0.5 * v_s * dz);
    signal_full_ = table(v_s * dz);
    register_half_ = table(0.5 * v_r * dz);
    register_full_ = table(v_r * dz);

    cos_theta_.resize(n);
    to_signal_.resize(n);
    to_register_.resize(n);
    const cplx i{0.0, 1.0};
    for (std::size_t k = 0; k < n; ++k) {
        const cplx p = stage.pump.samples()[k];
        const double theta = stage.gamma * std::abs(p) * dz;
        const double phi = std::arg(p) + stage.pump_phase;
        cos_theta_[k] = std::cos(theta);
        const double s = std::sin(theta);
        to_signal_[k] = i * std::polar(s, -phi);
        to_register_[k] = i * std::polar(s, phi);
    }
}

void Propagator::advect(std::span<cplx> field, const std::vector<cplx>& phase) const {
    fft_.forward(field);
    for (std::size_t m = 0; m < field.size(); ++m) field[m] *= phase[m];
    fft_.backward(field);
}

void Propagator::run(std::span<cplx> signal, std::span<cplx> reg) const {
    const std::size_t n = grid_.n_points();
    if (signal.size() != n || reg.size() != n) throw InvalidArgument("propagator: sample count mismatch");

    // Work in FFT-aligned copies so every transform takes the same code path.
    AlignedVector sig(signal.begin(), signal.end());
    AlignedVector reg_buf(reg.begin(), reg.end());
    std::span<cplx> a(sig), b(reg_buf);

    if (move_signal_) advect(a, signal_half_);
    if (move_register_) advect(b, register_half_);
    for (int step = 0; step < n_steps_; ++step) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx s = a[k];
            const cplx r = b[k];
            a[k] = cos_theta_[k] * s + to_signal_[k] * r;
            b[k] = to_register_[k] * s + cos_theta_[k] * r;
        }
        const bool last = step + 1 == n_steps_;
        if (move_signal_) advect(a, last ? signal_half_ : signal_full_);
        if (move_register_) advect(b, last ? register_half_ : register_full_);
    }
    std::copy(sig.begin(), sig.end(), signal.begin());
    std::copy(reg_buf.begin(), reg_buf.end(), reg.begin());
}

namespace {

void check_input(const StageSpec& stage, const Envelope& e, Band band) {
    if (!(e.grid() == stage.grid())) {
        throw InvalidArgument(to_string(band) + " input grid does not match the pump grid");
    }
    const double ratio = edge_to_peak(e.samples());
    if (ratio > kInputTailLimit) {
        std::ostringstream msg;
        msg << to_string(band) << " input reaches the grid edge (edge/peak intensity " << ratio
            << " > " << kInputTailLimit << ")";
        throw InvalidArgument(msg.str());
    }
}

}  // namespace

StageOutput propagate(const StageSpec& stage, const Envelope& signal_in, const Envelope& register_in) {
    check_input(stage, signal_in, Band::signal);
    check_input(stage, register_in, Band::register_);

    std::vector<cplx> s(signal_in.samples());
    std::vector<cplx> r(register_in.samples());
    Propagator(stage).run(s, r);

    const double total = squared_norm(signal_in) + squared_norm(register_in);
    double leak = 0.0;
    if (total > 0.0) {
        const std::size_t n = s.size();
        const std::size_t m = edge_points(n);
        double edge = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k < m || k >= n - m) edge += std::norm(s[k]) + std::norm(r[k]);
        }
        leak = edge * stage.grid().dt() / total;
    }
    if (leak > kLeakageLimit) {
        std::ostringstream msg;
        msg << "boundary leakage " << leak << " exceeds " << kLeakageLimit
            << "; the grid is too small for the walk-off";
        throw NumericalError(msg.str());
    }
    const double lambda_r = register_wavelength(stage);
    return {Envelope(stage.grid(), Band::signal, signal_in.carrier_wavelength_nm(), std::move(s)),
            Envelope(stage.grid(), Band::register_, lambda_r, std::move(r)), leak};
}

double conversion_efficiency(const StageSpec& stage, const Envelope& signal_in) {
    const auto zero = Envelope::zeros(stage.grid(), Band::register_, register_wavelength(stage));
    const auto out = propagate(stage, signal_in, zero);
    return squared_norm(out.register_out) / squared_norm(signal_in);
}

double calibrate_gamma(const StageSpec& stage_template, const Envelope& signal_in, double target_ce,
                       double ce_tolerance) {
    if (!(target_ce >= 0.0 && target_ce < 1.0)) throw InvalidArgument("target CE must lie in [0, 1)");
    if (target_ce == 0.0) return 0.0;

    StageSpec stage = stage_template;
    auto ce_at = [&](double g) {
        stage.gamma = g;
        return conversion_efficiency(stage, signal_in);
    };

    // Initial scale: the coupling that gives a pi/2 rotation at the pump peak.
    double peak = 0.0;
    for (const auto& p : stage.pump.samples()) peak = std::max(peak, std::abs(p));
    if (!(peak > 0.0)) throw NumericalError("pump is identically zero; no conversion possible");
    double lo = 0.0, ce_lo = 0.0;
    double hi = 0.05 / (peak * stage.length_mm);
    double ce_hi = ce_at(hi);

    constexpr double kGrowth = 1.5;
    constexpr int kMaxExpansions = 80;
    int expansions = 0;
    while (ce_hi < target_ce) {
        if (ce_hi <= ce_lo + 1e-14 || ++expansions > kMaxExpansions) {
            std::ostringstream msg;
            msg << "target CE " << target_ce << " is unreachable below the first CE maximum (reached "
                << std::max(ce_hi, ce_lo) << ")";
            throw NumericalError(msg.str());
        }
        lo = hi;
        ce_lo = ce_hi;
        hi *= kGrowth;
        ce_hi = ce_at(hi);
    }

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double ce = ce_at(mid);
        if (std::abs(ce - target_ce) <= ce_tolerance) return mid;
        if (ce < target_ce) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qfc
