#include "qfc/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "qfc/error.hpp"

static_assert(std::endian::native == std::endian::little, "the Green dump format assumes a little-endian host");

namespace qfc {

namespace {

constexpr std::size_t kHeaderBytes = 8 + 4 + 8 + 4 * 8;

template <typename T>
void put(std::vector<char>& buf, T v) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, &v, sizeof(T));
    buf.insert(buf.end(), bytes, bytes + sizeof(T));
}

template <typename T>
T get(const char*& p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    p += sizeof(T);
    return v;
}

void put_block(std::vector<char>& buf, const Eigen::MatrixXcd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            put(buf, m(r, c).real());
            put(buf, m(r, c).imag());
        }
    }
}

Eigen::MatrixXcd get_block(const char*& p, std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd m(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
        for (Eigen::Index c = 0; c < k; ++c) {
            const double re = get<double>(p);
            const double im = get<double>(p);
            m(r, c) = {re, im};
        }
    }
    return m;
}

}  // namespace

void dump_matrix(const GreenFunction& g, const std::filesystem::path& path) {
    const std::size_t n = g.n();
    for (const auto* b : {&g.ss, &g.sr, &g.rs, &g.rr}) {
        if (b->rows() != static_cast<Eigen::Index>(n) || b->cols() != static_cast<Eigen::Index>(n)) {
            throw InvalidArgument("Green function blocks do not match the grid size");
        }
    }
    std::vector<char> buf;
    buf.reserve(kHeaderBytes + 4 * n * n * 16);
    buf.insert(buf.end(), kGreenMagic.begin(), kGreenMagic.end());
    put(buf, kGreenFormatVersion);
    put(buf, static_cast<std::uint64_t>(n));
    put(buf, g.grid.dt());
    put(buf, g.grid.t_start());
    put(buf, g.signal_wavelength_nm);
    put(buf, g.register_wavelength_nm);
    for (const auto* b : {&g.ss, &g.sr, &g.rs, &g.rr}) put_block(buf, *b);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

GreenFunction load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    const std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    const std::string name = "'" + path.string() + "'";

    if (buf.size() < kHeaderBytes) throw IoError(name + " is truncated (incomplete header)");
    if (std::string_view(buf.data(), kGreenMagic.size()) != kGreenMagic) {
        throw IoError(name + " is not a Green-function dump (bad magic)");
    }
    const char* p = buf.data() + kGreenMagic.size();
    const auto version = get<std::uint32_t>(p);
    if (version != kGreenFormatVersion) {
        throw IoError(name + " has format version " + std::to_string(version) + ", expected version " +
                      std::to_string(kGreenFormatVersion));
    }
    const auto n = get<std::uint64_t>(p);
    const double dt = get<double>(p);
    const double t_start = get<double>(p);
    const double lambda_s = get<double>(p);
    const double lambda_r = get<double>(p);
    if (n == 0 || n > (std::uint64_t{1} << 20)) throw IoError(name + " has an implausible size n = " + std::to_string(n));
    const std::uint64_t payload = 4 * n * n * 16;
    if (buf.size() - kHeaderBytes < payload) throw IoError(name + " is truncated (matrix data incomplete)");
    if (buf.size() - kHeaderBytes > payload) throw IoError(name + " has trailing bytes after the matrix data");
    if (!(dt > 0.0) || !std::isfinite(t_start)) throw IoError(name + " has a corrupt grid header");

    GreenFunction g{TemporalGrid(n, t_start, dt), lambda_s, lambda_r, {}, {}, {}, {}};
    g.ss = get_block(p, n);
    g.sr = get_block(p, n);
    g.rs = get_block(p, n);
    g.rr = get_block(p, n);
    return g;
}

std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
    for (std::size_t c = 0; c < result.columns.size(); ++c) out << (c ? "," : "") << result.columns[c];
    out << '\n';
    for (const auto& row : result.rows) {
        if (row.size() != result.columns.size()) throw InvalidArgument("result row width does not match the header");
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
}

void write_scalars_csv(std::ostream& out, const ExperimentResult& result) {
    out << "key,value\n";
    for (const auto& [key, value] : result.scalars) out << key << ',' << format_number(value) << '\n';
}

}  // namespace qfc
