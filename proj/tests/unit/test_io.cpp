#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qfc/error.hpp"
#include "qfc/io.hpp"

using namespace qfc;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "qfc_test_io";
    std::filesystem::create_directories(dir);
    return dir / name;
}

GreenFunction toy(std::size_t n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> d;
    GreenFunction g{TemporalGrid::centered(n, 1234.5), 812.2, 408.288, {}, {}, {}, {}};
    for (auto* b : {&g.ss, &g.sr, &g.rs, &g.rr}) {
        b->resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < b->size(); ++i) (*b)(i) = {d(rng), d(rng)};
    }
    return g;
}

std::string load_error(const std::filesystem::path& p) {
    try {
        load_matrix(p);
    } catch (const IoError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(GreenDump, RoundTripIsBitExact) {
    const auto g = toy(64);
    const auto p = temp_path("toy.bin");
    dump_matrix(g, p);
    const auto back = load_matrix(p);
    EXPECT_TRUE(back.grid == g.grid);
    EXPECT_EQ(back.signal_wavelength_nm, g.signal_wavelength_nm);
    EXPECT_EQ(back.register_wavelength_nm, g.register_wavelength_nm);
    EXPECT_TRUE(back.ss == g.ss);
    EXPECT_TRUE(back.sr == g.sr);
    EXPECT_TRUE(back.rs == g.rs);
    EXPECT_TRUE(back.rr == g.rr);
    EXPECT_EQ(std::filesystem::file_size(p), 8u + 4u + 8u + 32u + 4u * 64u * 64u * 16u);
}

TEST(GreenDump, VersionMismatchNamesBothVersions) {
    const auto p = temp_path("v2.bin");
    dump_matrix(toy(8), p);
    {
        std::fstream f(p, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(8);
        const std::uint32_t v = 2;
        f.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
    const auto msg = load_error(p);
    EXPECT_NE(msg.find("version 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("version 1"), std::string::npos) << msg;
}

TEST(GreenDump, TruncatedAndCorruptFiles) {
    const auto p = temp_path("cut.bin");
    dump_matrix(toy(8), p);
    std::filesystem::resize_file(p, std::filesystem::file_size(p) - 5);
    EXPECT_NE(load_error(p).find("truncated"), std::string::npos);
    std::filesystem::resize_file(p, 20);
    EXPECT_NE(load_error(p).find("truncated"), std::string::npos);

    const auto q = temp_path("magic.bin");
    dump_matrix(toy(8), q);
    {
        std::fstream f(q, std::ios::binary | std::ios::in | std::ios::out);
        f.write("XXXX", 4);
    }
    EXPECT_NE(load_error(q).find("magic"), std::string::npos);
    EXPECT_NE(load_error(temp_path("absent.bin")).find("cannot open"), std::string::npos);
}

TEST(FormatNumber, SeventeenDigitsRoundTrip) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(-3.0), "-3");
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
}

TEST(Csv, HeaderRowsAndLineEndings) {
    ExperimentResult r{"t", {"x", "y"}, {}, {{"peak", 0.25}}};
    r.add_row({1.0, 0.5});
    r.add_row({2.0, 1e-20});
    std::ostringstream out;
    write_csv(out, r);
    EXPECT_EQ(out.str(), "x,y\n1,0.5\n2,9.9999999999999995e-21\n");
    std::ostringstream s;
    write_scalars_csv(s, r);
    EXPECT_EQ(s.str(), "key,value\npeak,0.25\n");
}
