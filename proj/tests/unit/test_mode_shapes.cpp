#include <gtest/gtest.h>

#include <cmath>

#include "qfc/error.hpp"
#include "qfc/mode_shapes.hpp"

using namespace qfc;

TEST(ShapeSpectral, Hg0IsTheGaussianOfTheBandwidth) {
    const double bw = 0.002;
    const auto axis = detuning_axis(TemporalGrid::centered(1024, 20000.0));
    const auto s = make_shape_spectral(ShapeSpec{ShapeFamily::hg0, 0, bw}, axis);
    const std::size_t mid = axis.size() / 2;
    ASSERT_EQ(axis[mid], 0.0);
    for (std::size_t m = 0; m < axis.size(); ++m) {
        const double expected = std::exp(-axis[m] * axis[m] / (2.0 * bw * bw));
        if (expected < 1e-250) continue;
        EXPECT_NEAR(s[m] / s[mid] / expected, 1.0, 1e-12) << axis[m];
    }
}

TEST(ShapeSpectral, Hg1VanishesAtZero) {
    EXPECT_EQ(shape_amplitude(ShapeSpec{ShapeFamily::hg1, 0, 0.002}, 0.0), 0.0);
}

TEST(ShapeSpectral, Hg0Hg2NearlyOrthogonal) {
    // Dense symmetric axis; the exact overlap is about -3e-3.
    const auto axis = detuning_axis(TemporalGrid::centered(8192, 80000.0));
    const auto a = make_shape_spectral(ShapeSpec{ShapeFamily::hg0, 0, 0.002}, axis);
    const auto b = make_shape_spectral(ShapeSpec{ShapeFamily::hg2, 0, 0.002}, axis);
    double v = 0.0;
    for (std::size_t m = 0; m < axis.size(); ++m) v += a[m] * b[m] * (axis[1] - axis[0]);
    EXPECT_LT(std::abs(v), 0.01);
    EXPECT_LT(v, -1e-3);
}

TEST(ShapeTemporal, Hg0DurationFromBandwidth) {
    const auto g = TemporalGrid::centered(4096, 20000.0);
    const auto e = make_shape_temporal(ShapeSpec{ShapeFamily::hg0, 0, 0.002}, g, Band::pump, 821.0);
    const auto m = centroid_and_width(e);
    EXPECT_NEAR(m.centroid, 0.0, 1e-9);
    EXPECT_NEAR(m.rms_width, 353.6, 0.5);
    EXPECT_NEAR(pulse_duration(e), 500.0, 0.5);
}

TEST(ShapeTemporal, Hg1IsOddAndOrthogonalToHg0) {
    const auto g = TemporalGrid::centered(2048, 20000.0);
    const auto e0 = make_shape_temporal(ShapeSpec{ShapeFamily::hg0, 0, 0.002}, g, Band::signal, 812.2);
    const auto e1 = make_shape_temporal(ShapeSpec{ShapeFamily::hg1, 0, 0.002}, g, Band::signal, 812.2);
    EXPECT_LT(std::abs(inner_product(e0, e1)), 1e-10);
    // Odd about t = 0, which is sample n/2.
    const std::size_t n = g.n_points();
    for (std::size_t k = 1; k < n / 2; ++k) {
        EXPECT_NEAR(std::abs(e1.samples()[n / 2 + k] + e1.samples()[n / 2 - k]), 0.0, 1e-12);
    }
}

TEST(ShapeTemporal, EveryFamilyIsNormalized) {
    const auto g = TemporalGrid::centered(2048, 30000.0);
    for (auto f : {ShapeFamily::hg0, ShapeFamily::hg1, ShapeFamily::hg2, ShapeFamily::gaussian}) {
        const auto e = make_shape_temporal(ShapeSpec{f, 0, 0.002}, g, Band::signal, 812.2);
        EXPECT_NEAR(squared_norm(e), 1.0, 1e-12) << to_string(f);
    }
    for (int order = 0; order < 5; ++order) {
        const auto e = make_shape_temporal(ShapeSpec{ShapeFamily::hermite_gauss, order, 0.002}, g, Band::signal, 812.2);
        EXPECT_NEAR(squared_norm(e), 1.0, 1e-12) << order;
    }
}

TEST(ShapeTemporal, HermiteGaussOrdersAreOrthonormal) {
    const auto g = TemporalGrid::centered(2048, 30000.0);
    std::vector<Envelope> modes;
    for (int order = 0; order < 4; ++order) {
        modes.push_back(make_shape_temporal(ShapeSpec{ShapeFamily::hermite_gauss, order, 0.002}, g, Band::signal, 812.2));
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
        for (std::size_t j = i + 1; j < modes.size(); ++j) {
            EXPECT_LT(std::abs(inner_product(modes[i], modes[j])), 1e-10);
        }
    }
}

TEST(ShapeTemporal, TooNarrowGridIsRejected) {
    const auto g = TemporalGrid::centered(256, 2000.0);
    EXPECT_THROW(make_shape_temporal(ShapeSpec{ShapeFamily::hg0, 0, 0.002}, g, Band::signal, 812.2), InvalidArgument);
}

TEST(ShapeSpec, Validation) {
    EXPECT_THROW(ShapeSpec({ShapeFamily::hg0, 0, 0.0}).validate(), InvalidArgument);
    EXPECT_THROW(ShapeSpec({ShapeFamily::hermite_gauss, -1, 0.002}).validate(), InvalidArgument);
    EXPECT_EQ(shape_family_from_string("hg2"), ShapeFamily::hg2);
    EXPECT_EQ(shape_family_from_string(to_string(ShapeFamily::hermite_gauss)), ShapeFamily::hermite_gauss);
    EXPECT_THROW(shape_family_from_string("hg3"), InvalidArgument);
}
