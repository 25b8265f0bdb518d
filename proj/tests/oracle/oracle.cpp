#include "oracle.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

namespace qfc::oracle {

namespace {

using cvec = std::vector<std::complex<double>>;

struct Model {
    Eigen::FFT<double> fft;
    std::vector<double> w;
    double v_s, v_r, gamma;
    cvec pump;  // with the stage phase folded in

    // Right-hand side of the interaction-picture equations at depth z.
    void rhs(double z, const cvec& as, const cvec& ar, cvec& ds, cvec& dr) {
        const std::size_t n = w.size();
        cvec spec_s(n), spec_r(n), ts, tr;
        for (std::size_t m = 0; m < n; ++m) {
            spec_s[m] = std::polar(1.0, -w[m] * v_s * z) * as[m];
            spec_r[m] = std::polar(1.0, -w[m] * v_r * z) * ar[m];
        }
        fft.inv(ts, spec_s);
        fft.inv(tr, spec_r);
        const std::complex<double> i{0.0, 1.0};
        cvec cs(n), cr(n);
        for (std::size_t k = 0; k < n; ++k) {
            cs[k] = i * gamma * std::conj(pump[k]) * tr[k];
            cr[k] = i * gamma * pump[k] * ts[k];
        }
        fft.fwd(ds, cs);
        fft.fwd(dr, cr);
        for (std::size_t m = 0; m < n; ++m) {
            ds[m] *= std::polar(1.0, w[m] * v_s * z);
            dr[m] *= std::polar(1.0, w[m] * v_r * z);
        }
    }
};

}  // namespace

Fields integrate(const StageSpec& stage, const cvec& signal_in, const cvec& register_in, int n_steps) {
    const std::size_t n = signal_in.size();
    const double dt = stage.grid().dt();
    Model m;
    m.w.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double idx = k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
        m.w[k] = 2.0 * std::numbers::pi * idx / (static_cast<double>(n) * dt);
    }
    m.v_s = stage.beta_s - stage.beta_p;
    m.v_r = stage.beta_r - stage.beta_p;
    m.gamma = stage.gamma;
    m.pump.resize(n);
    for (std::size_t k = 0; k < n; ++k) m.pump[k] = stage.pump.samples()[k] * std::polar(1.0, stage.pump_phase);

    cvec as, ar;
    m.fft.fwd(as, signal_in);
    m.fft.fwd(ar, register_in);
    const double h = stage.length_mm / n_steps;
    cvec k1s(n), k1r(n), k2s(n), k2r(n), k3s(n), k3r(n), k4s(n), k4r(n), ts(n), tr(n);
    auto axpy = [&](const cvec& a, const cvec& k, double c, cvec& out) {
        for (std::size_t j = 0; j < n; ++j) out[j] = a[j] + c * k[j];
    };
    for (int step = 0; step < n_steps; ++step) {
        const double z = step * h;
        m.rhs(z, as, ar, k1s, k1r);
        axpy(as, k1s, 0.5 * h, ts);
        axpy(ar, k1r, 0.5 * h, tr);
        m.rhs(z + 0.5 * h, ts, tr, k2s, k2r);
        axpy(as, k2s, 0.5 * h, ts);
        axpy(ar, k2r, 0.5 * h, tr);
        m.rhs(z + 0.5 * h, ts, tr, k3s, k3r);
        axpy(as, k3s, h, ts);
        axpy(ar, k3r, h, tr);
        m.rhs(z + h, ts, tr, k4s, k4r);
        for (std::size_t j = 0; j < n; ++j) {
            as[j] += h / 6.0 * (k1s[j] + 2.0 * k2s[j] + 2.0 * k3s[j] + k4s[j]);
            ar[j] += h / 6.0 * (k1r[j] + 2.0 * k2r[j] + 2.0 * k3r[j] + k4r[j]);
        }
    }
    const double L = stage.length_mm;
    for (std::size_t j = 0; j < n; ++j) {
        as[j] *= std::polar(1.0, -m.w[j] * m.v_s * L);
        ar[j] *= std::polar(1.0, -m.w[j] * m.v_r * L);
    }
    Fields out;
    m.fft.inv(out.signal, as);
    m.fft.inv(out.reg, ar);
    return out;
}

}  // namespace qfc::oracle
