#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "qfc/error.hpp"
#include "qfc/green.hpp"
#include "qfc/schmidt.hpp"
#include "qfc/stage.hpp"
#include "support.hpp"

using namespace qfc;
using namespace qfc::test;

TEST(Stage, RegisterWavelengthFromEnergyConservation) {
    EXPECT_NEAR(register_wavelength(821.0, 812.2), 1.0 / (1.0 / 821.0 + 1.0 / 812.2), 1e-12);
    EXPECT_NEAR(register_wavelength(821.0, 812.2), 408.29, 0.01);
    EXPECT_THROW(register_wavelength(0.0, 812.2), InvalidArgument);
}

TEST(Stage, EffectiveStrengthRoundTrip) {
    auto s = walkoff_stage(512, 20000.0, 10.0, 0.7);
    EXPECT_NEAR(effective_strength(s), 0.7, 1e-14);
    EXPECT_NEAR(walk_off(s), 5000.0, 1e-9);
    EXPECT_NEAR(zeta(s), 10.0, 0.01);
    const auto m = matched_stage(512, 20000.0, 3000.0);
    EXPECT_THROW(effective_strength(m), InvalidArgument);
}

TEST(Propagate, ZeroCouplingWithMatchedSlownessesIsExactIdentity) {
    auto s = matched_stage(512, 20000.0, 3000.0);
    s.gamma = 0.0;
    const auto sig = shape(s, ShapeFamily::hg0);
    const auto out = propagate(s, sig, zero_register(s));
    EXPECT_EQ(out.signal_out.samples(), sig.samples());
    EXPECT_EQ(squared_norm(out.register_out), 0.0);
}

TEST(Propagate, ZeroCouplingOnlyAdvects) {
    auto s = walkoff_stage(1024, 20000.0, 10.0, 0.0);
    const auto sig = shape(s, ShapeFamily::hg1);
    const auto out = propagate(s, sig, zero_register(s));
    const auto expected = apply_delay(sig, (s.beta_s - s.beta_p) * s.length_mm);
    EXPECT_LT(max_abs_difference(out.signal_out, expected), 1e-12);
    EXPECT_EQ(squared_norm(out.register_out), 0.0);
}

TEST(Propagate, GroupMatchedRabiRotation) {
    // Flat pump over the signal: every slot rotates by the same angle, so
    // doubling the 50 % coupling gives a full pi/2 * 2 rotation.
    auto s = matched_stage(1024, 20000.0, 3000.0);
    const auto sig = make_shape_temporal(ShapeSpec{ShapeFamily::hg0, 0, 1.0 / 300.0}, s.grid(), Band::signal, 812.2);
    s.gamma = calibrate_gamma(s, sig, 0.5);
    EXPECT_NEAR(conversion_efficiency(s, sig), 0.5, 1e-9);
    s.gamma *= 2.0;
    EXPECT_NEAR(conversion_efficiency(s, sig), 1.0, 1e-6);
}

TEST(Propagate, ConservesNorm) {
    auto s = walkoff_stage(1024, 20000.0, 10.0, 1.3);
    std::mt19937_64 rng(7);
    const auto sig = random_signal(s, rng);
    const auto reg = Envelope(s.grid(), Band::register_, register_wavelength(s), random_signal(s, rng).samples());
    const auto out = propagate(s, sig, reg);
    EXPECT_NEAR(squared_norm(out.signal_out) + squared_norm(out.register_out), 2.0, 1e-9);
}

TEST(Propagate, RegisterIsStretchedByWalkOff) {
    // Reference: the interaction-picture RK4 integrator at 16x the z steps.
    auto s = walkoff_stage(1024, 20000.0, 10.0, 1.0);
    const auto sig = shape(s, ShapeFamily::hg0);
    s.gamma = calibrate_gamma(s, sig, 0.5);
    const auto out = propagate(s, sig, zero_register(s));
    const auto ref = oracle::integrate(s, sig.samples(), zero_register(s).samples(), 16 * s.n_z_steps);
    EXPECT_LT(max_abs(out.register_out.samples(), ref.reg), 1e-5);

    const Envelope ref_reg(s.grid(), Band::register_, register_wavelength(s), ref.reg);
    const double w_sig = centroid_and_width(sig).rms_width;
    const double w_reg = centroid_and_width(out.register_out).rms_width;
    EXPECT_NEAR(w_reg, centroid_and_width(ref_reg).rms_width, 1e-3 * w_reg);
    // Near-rectangular stretch over the walk-off window zeta * tau_p.
    EXPECT_GT(w_reg, 2.5 * w_sig);
    EXPECT_NEAR(w_reg, 10.0 * kTauP / std::sqrt(12.0), 0.25 * 10.0 * kTauP / std::sqrt(12.0));
}

TEST(Propagate, RejectsTailsAndGridMismatch) {
    const auto s = walkoff_stage(512, 20000.0, 10.0, 0.5);
    const auto wide = make_shape_temporal(ShapeSpec{ShapeFamily::hg0, 0, 1.0 / 500.0},
                                          TemporalGrid::centered(1024, 20000.0), Band::signal, 812.2);
    EXPECT_THROW(propagate(s, wide, zero_register(s)), InvalidArgument);
    std::vector<cplx> flat(s.grid().n_points(), cplx{0.01, 0.0});
    const Envelope tail(s.grid(), Band::signal, 812.2, flat);
    EXPECT_THROW(propagate(s, tail, zero_register(s)), InvalidArgument);
}

TEST(Propagate, LeakageOnTooSmallWindow) {
    // 5000 fs of walk-off does not fit a 6000 fs window.
    const auto s = walkoff_stage(256, 6000.0, 10.0, 1.0);
    EXPECT_THROW(propagate(s, shape(s, ShapeFamily::hg0), zero_register(s)), NumericalError);
}

TEST(ConversionEfficiency, ZeroCoupling) {
    const auto s = walkoff_stage(512, 20000.0, 10.0, 0.0);
    EXPECT_EQ(conversion_efficiency(s, shape(s, ShapeFamily::hg0)), 0.0);
}

TEST(ConversionEfficiency, MismatchedSignalMatchesSchmidtSum) {
    auto s = walkoff_stage(512, 20000.0, 10.0, 1.0);
    const auto s0 = shape(s, ShapeFamily::hg0);
    const auto s1 = shape(s, ShapeFamily::hg1);
    s.gamma = calibrate_gamma(s, s0, 0.5);
    const double ce1 = conversion_efficiency(s, s1);
    EXPECT_LT(ce1, 0.5);
    const auto sd = schmidt_decompose(assemble(s), s.grid().n_points());
    EXPECT_NEAR(ce_of_input(sd, s1), ce1, 1e-9);
}

TEST(Calibrate, TargetsAndSelfConsistency) {
    auto s = walkoff_stage(1024, 20000.0, 10.0, 1.0);
    const auto sig = shape(s, ShapeFamily::hg0);
    EXPECT_EQ(calibrate_gamma(s, sig, 0.0), 0.0);
    s.gamma = calibrate_gamma(s, sig, 0.5);
    EXPECT_NEAR(conversion_efficiency(s, sig), 0.5, 1e-4);
    EXPECT_NEAR(conversion_efficiency(s, sig), 0.5, 1e-3);
    EXPECT_THROW(calibrate_gamma(s, sig, 1.0), InvalidArgument);
}

TEST(Calibrate, UnreachableWithoutOverlap) {
    // Signal parked far from the pump and moving away from it.
    const auto s = walkoff_stage(2048, 40000.0, 10.0, 1.0);
    const auto far = apply_delay(shape(s, ShapeFamily::hg0), -9000.0);
    EXPECT_THROW(calibrate_gamma(s, far, 0.5), NumericalError);
}

TEST(Propagator, ThreadSafeRepeatedRuns) {
    const auto s = walkoff_stage(512, 20000.0, 10.0, 0.8);
    const Propagator p(s);
    const auto sig = shape(s, ShapeFamily::hg2);
    std::vector<cplx> a1(sig.samples()), b1(sig.size()), a2(sig.samples()), b2(sig.size());
    p.run(a1, b1);
    p.run(a2, b2);
    EXPECT_EQ(a1, a2);
    EXPECT_EQ(b1, b2);
}
