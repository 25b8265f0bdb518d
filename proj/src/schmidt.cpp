#include "qfc/schmidt.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "qfc/error.hpp"

namespace qfc {

double SchmidtData::discarded_weight() const {
    double acc = 0.0;
    for (std::size_t k = n_kept; k < singulars.size(); ++k) acc += singulars[k] * singulars[k];
    return acc;
}

namespace {

Envelope column_envelope(const Eigen::MatrixXcd& m, Eigen::Index col, cplx phase, const TemporalGrid& grid,
                         Band band, double wavelength_nm) {
    const double scale = 1.0 / std::sqrt(grid.dt());
    std::vector<cplx> samples(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) samples[static_cast<std::size_t>(r)] = m(r, col) * phase * scale;
    return Envelope(grid, band, wavelength_nm, std::move(samples));
}

}  // namespace

SchmidtData schmidt_decompose(const GreenFunction& g, std::size_t n_kept) {
    if (n_kept > g.n()) throw InvalidArgument("n_kept exceeds the number of modes");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(g.rs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const Eigen::MatrixXcd& u = svd.matrixU();
    const Eigen::MatrixXcd& v = svd.matrixV();

    SchmidtData sd;
    sd.n_kept = n_kept;
    sd.singulars.assign(sv.data(), sv.data() + sv.size());
    sd.input_modes.reserve(n_kept);
    sd.output_modes.reserve(n_kept);
    for (std::size_t k = 0; k < n_kept; ++k) {
        const auto c = static_cast<Eigen::Index>(k);
        Eigen::Index peak = 0;
        v.col(c).cwiseAbs().maxCoeff(&peak);
        const cplx phase = std::abs(v(peak, c)) > 0.0 ? std::conj(v(peak, c)) / std::abs(v(peak, c)) : 1.0;
        sd.input_modes.push_back(column_envelope(v, c, phase, g.grid, Band::signal, g.signal_wavelength_nm));
        sd.output_modes.push_back(
            column_envelope(u, c, phase, g.grid, Band::register_, g.register_wavelength_nm));
    }
    return sd;
}

double ce_of_input(const SchmidtData& sd, const Envelope& signal_in) {
    double ce = 0.0;
    for (std::size_t k = 0; k < sd.n_kept; ++k) {
        ce += sd.singulars[k] * sd.singulars[k] * std::norm(inner_product(sd.input_modes[k], signal_in));
    }
    return ce;
}

SelectivityReport selectivity(std::span<const double> singulars) {
    if (singulars.empty()) throw InvalidArgument("selectivity of an empty spectrum");
    double total = 0.0;
    for (double t : singulars) total += t * t;
    if (!(total > 0.0)) throw InvalidArgument("selectivity undefined: all singular values are zero");
    const double lead = *std::max_element(singulars.begin(), singulars.end());
    const double ce = lead * lead;
    const double purity = ce / total;
    return {ce, purity, ce * purity};
}

SelectivityReport selectivity(const SchmidtData& sd) { return selectivity(sd.singulars); }

std::vector<TradeoffRow> ce_selectivity_tradeoff(const StageSpec& stage_template,
                                                 std::span<const double> effective_strengths,
                                                 const TradeoffOptions& options) {
    if (!std::is_sorted(effective_strengths.begin(), effective_strengths.end())) {
        throw InvalidArgument("effective strength grid must be ascending");
    }
    std::vector<TradeoffRow> rows;
    rows.reserve(effective_strengths.size());
    StageSpec stage = options.n_eff ? restrict_stage(stage_template, options.n_eff) : stage_template;
    for (double eff : effective_strengths) {
        stage.gamma = gamma_for_effective_strength(stage, eff);
        const auto g = assemble(stage, options.threads);
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(g.rs);
        const auto& sv = svd.singularValues();
        const auto rep = selectivity(std::span<const double>(sv.data(), static_cast<std::size_t>(sv.size())));
        rows.push_back({eff, stage.gamma, rep.ce_target, rep.purity, rep.selectivity});
    }
    return rows;
}

}  // namespace qfc
