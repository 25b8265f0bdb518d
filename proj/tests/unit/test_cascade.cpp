#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfc/cascade.hpp"
#include "qfc/error.hpp"
#include "qfc/experiments.hpp"
#include "qfc/green.hpp"
#include "support.hpp"

using namespace qfc;
using namespace qfc::test;

namespace {

constexpr double kPi = std::numbers::pi;

// Group-matched stage calibrated to 50 % for a short signal under a flat pump.
std::pair<StageSpec, Envelope> balanced_matched_stage() {
    auto s = matched_stage(1024, 20000.0, 3000.0);
    auto sig = make_shape_temporal(ShapeSpec{ShapeFamily::hg0, 0, 1.0 / 300.0}, s.grid(), Band::signal, 812.2);
    s.gamma = calibrate_gamma(s, sig, 0.5);
    return {s, sig};
}

std::vector<double> axis(double lo, double hi, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return x;
}

}  // namespace

TEST(NetPhase, SignsOfTheThreeTerms) {
    EXPECT_EQ(net_phase({}), 0.0);
    InterstageOps ops;
    ops.phase_s = 0.4;
    ops.phase_r = 0.4;
    EXPECT_NEAR(net_phase(ops), 0.0, 1e-15);
    ops.phase_r = -0.4;
    EXPECT_NEAR(net_phase(ops), 0.8, 1e-15);
    ops.pump2_phase = 0.3;
    EXPECT_NEAR(net_phase(ops), 1.1, 1e-15);
}

TEST(NetPhase, WrapsIntoHalfOpenInterval) {
    EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
    EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
    EXPECT_NEAR(wrap_phase(3.0 * kPi + 0.1), -kPi + 0.1, 1e-12);
    EXPECT_NEAR(wrap_phase(-0.25), -0.25, 1e-15);
}

TEST(AutoDelays, SymmetricAboutTheSecondPump) {
    const auto s = walkoff_stage(1024, 40000.0, 10.0, 1.0);
    const auto d = auto_delays(s);
    const double w = walk_off(s);
    const double shift = (s.beta_s - s.beta_p) * s.length_mm;
    EXPECT_NEAR(d.signal + shift - d.pump2, 0.0, 1e-9);
    EXPECT_NEAR(d.pump2, 0.5 * w, 1e-9);
    EXPECT_NEAR(d.reg + shift, -0.5 * w, 1e-9);
}

TEST(Cascade, ZeroCouplingPassesSignalThrough) {
    auto s = walkoff_stage(1024, 20000.0, 10.0, 0.0);
    const auto sig = shape(s, ShapeFamily::hg0);
    const auto spec = make_cascade(s);
    const auto out = run_cascade(spec, sig);
    EXPECT_EQ(out.ce, 0.0);
    const double shift = (s.beta_s - s.beta_p) * s.length_mm;
    const auto expected = apply_delay(sig, 2.0 * shift + resolve_delays(s, spec.ops).signal);
    EXPECT_LT(max_abs_difference(out.signal_out, expected), 1e-9);
}

TEST(Cascade, RamseyBrightAndDarkFringe) {
    const auto [s, sig] = balanced_matched_stage();
    auto spec = make_cascade(s);
    EXPECT_NEAR(run_cascade(spec, sig).ce, 1.0, 1e-6);
    spec.ops.phase_s = kPi;
    EXPECT_NEAR(net_phase(spec.ops), kPi, 1e-15);
    EXPECT_NEAR(run_cascade(spec, sig).ce, 0.0, 1e-6);
}

TEST(Cascade, LossyCeIsNormalizedToTransmittedSignal) {
    const auto [s, sig] = balanced_matched_stage();
    InterstageOps ops;
    ops.transmission_s = 0.8;
    ops.transmission_r = 0.8;
    // Equal losses scale both arms alike: the fringe is still fully bright.
    EXPECT_NEAR(run_cascade(make_cascade(s, ops), sig).ce, 1.0, 1e-6);
    ops.transmission_s = 0.0;
    EXPECT_TRUE(std::isnan(run_cascade(make_cascade(s, ops), sig).ce));
}

TEST(CascadeGreen, IdentityStagesGiveTheInterstageOperator) {
    auto s = matched_stage(128, 20000.0, 3000.0);
    InterstageOps ops;
    ops.phase_s = 0.3;
    ops.phase_r = -1.1;
    ops.delay_s = 120.0;
    ops.delay_r = -300.0;
    ops.transmission_r = 0.9;
    const auto spec = make_cascade(s, ops);
    const auto g = cascade_green(spec, 1, 0);
    const auto d = interstage_green(spec, s.grid());
    EXPECT_LT((g.stacked() - d.stacked()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CascadeGreen, LosslessIsUnitary) {
    const auto s = walkoff_stage(1024, 20000.0, 10.0, 0.8);
    InterstageOps ops;
    ops.phase_s = 0.7;
    EXPECT_LT(unitarity_defect(cascade_green(make_cascade(s, ops), 1, 128)), 1e-6);
}

TEST(CascadeGreen, MatchesRunCascadeOnRandomInputs) {
    const auto s = walkoff_stage(256, 20000.0, 10.0, 0.9);
    InterstageOps ops;
    ops.phase_s = 0.4;
    ops.phase_r = -0.2;
    ops.transmission_s = 0.9;
    const auto spec = make_cascade(s, ops);
    const auto g = cascade_green(spec, 1, 0);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = random_signal(s, rng);
        const auto out = run_cascade(spec, x);
        const auto [gs, gr] = apply(g, x, zero_register(s));
        EXPECT_LT(max_abs_difference(gs, out.signal_out), 1e-8);
        EXPECT_LT(max_abs_difference(gr, out.register_out), 1e-8);
    }
}

TEST(CascadeSpec, Validation) {
    const auto s = walkoff_stage(256, 20000.0, 10.0, 0.9);
    auto spec = make_cascade(s);
    spec.ops.transmission_r = 1.2;
    EXPECT_THROW(spec.validate(), InvalidArgument);
    spec = make_cascade(s);
    spec.stage2 = walkoff_stage(256, 20000.0, 8.0, 0.9);
    EXPECT_THROW(spec.validate(), InvalidArgument);
    spec.allow_medium_mismatch = true;
    EXPECT_NO_THROW(spec.validate());
    spec = make_cascade(s);
    spec.stage2 = walkoff_stage(512, 20000.0, 10.0, 0.9);
    EXPECT_THROW(spec.validate(), InvalidArgument);
    spec = make_cascade(s);
    spec.ops.delay_s = 6000.0;
    EXPECT_THROW(spec.validate(), InvalidArgument);
}

TEST(Mirror, Names) {
    for (auto m : {Mirror::s, Mirror::r, Mirror::both_same, Mirror::both_opposite}) {
        EXPECT_EQ(mirror_from_string(to_string(m)), m);
    }
    EXPECT_THROW(mirror_from_string("left"), InvalidArgument);
}

class FringePeriods : public ::testing::Test {
protected:
    void SetUp() override {
        auto s = walkoff_stage(1024, 20000.0, 10.0, 1.0);
        signal_ = std::make_unique<Envelope>(shape(s, ShapeFamily::hg0));
        s.gamma = calibrate_gamma(s, *signal_, 0.5);
        spec_ = std::make_unique<CascadeSpec>(make_cascade(s));
    }
    double period(Mirror m, double stop) {
        const auto x = axis(0.0, stop, 81);
        const auto res = fringe_experiment(*spec_, m, x, *signal_);
        return res.scalar("period_nm");
    }
    std::unique_ptr<CascadeSpec> spec_;
    std::unique_ptr<Envelope> signal_;
};

TEST_F(FringePeriods, SignalMirrorHalfSignalWavelength) {
    EXPECT_NEAR(period(Mirror::s, 1000.0), 812.2 / 2.0, 0.02 * 406.1);
}

TEST_F(FringePeriods, RegisterMirrorHalfRegisterWavelength) {
    EXPECT_NEAR(period(Mirror::r, 500.0), register_wavelength(821.0, 812.2) / 2.0, 0.02 * 204.1);
}

TEST_F(FringePeriods, CombinedMoves) {
    // Equal moves: rate |2/lambda_s - 2/lambda_r|, about lambda_s / 2 here
    // since lambda_r is close to lambda_s / 2. Opposite moves add the rates.
    const double ls = 812.2, lr = register_wavelength(821.0, 812.2);
    const double same = period(Mirror::both_same, 1000.0);
    const double opposite = period(Mirror::both_opposite, 400.0);
    EXPECT_NEAR(same, 1.0 / std::abs(2.0 / ls - 2.0 / lr), 0.02 * same);
    EXPECT_NEAR(opposite, 1.0 / (2.0 / ls + 2.0 / lr), 0.02 * opposite);
    EXPECT_GT(same, period(Mirror::r, 500.0));
}

TEST(FringeScan, CeDependsOnlyOnNetPhase) {
    const auto [s, sig] = balanced_matched_stage();
    auto spec = make_cascade(s);
    spec.ops.phase_s = 0.9;
    const double ce = run_cascade(spec, sig).ce;
    spec.ops.phase_s = 1.4;
    spec.ops.phase_r = 0.2;
    spec.ops.pump2_phase = -0.3;
    EXPECT_NEAR(run_cascade(spec, sig).ce, ce, 1e-9);
}
