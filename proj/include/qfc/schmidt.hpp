#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qfc/green.hpp"
#include "qfc/grid.hpp"
#include "qfc/stage.hpp"

namespace qfc {

// Singular-value decomposition of the signal->register block, G_rs = sum_n
// tau_n |phi_n><psi_n|. All singular values are kept; only the leading n_kept
// mode pairs are stored as envelopes.
struct SchmidtData {
    std::vector<double> singulars;       // descending, all n of them
    std::vector<Envelope> input_modes;   // psi_n, signal band
    std::vector<Envelope> output_modes;  // phi_n, register band
    std::size_t n_kept = 0;

    // sum of tau_n^2 over the modes that were not stored
    double discarded_weight() const;
};

inline constexpr std::size_t kDefaultKeptModes = 32;

// Each mode pair's phase is fixed so the largest sample of psi_n is real and
// positive; this keeps the stored modes reproducible.
SchmidtData schmidt_decompose(const GreenFunction& g, std::size_t n_kept = kDefaultKeptModes);

// sum_n tau_n^2 |<psi_n, x>|^2 over the stored modes.
double ce_of_input(const SchmidtData& sd, const Envelope& signal_in);

struct SelectivityReport {
    double ce_target;   // tau_1^2
    double purity;      // tau_1^2 / sum tau_n^2
    double selectivity; // ce_target * purity
};

// Throws InvalidArgument if every singular value is zero.
SelectivityReport selectivity(const SchmidtData& sd);
SelectivityReport selectivity(std::span<const double> singulars);

struct TradeoffRow {
    double effective_strength;
    double gamma;
    double ce_target;
    double purity;
    double selectivity;
};

struct TradeoffOptions {
    std::size_t n_eff = 0;  // 0: full grid; otherwise reduced basis size
    unsigned threads = 1;
};

// One assembled stage per entry of the ascending effective-strength list.
std::vector<TradeoffRow> ce_selectivity_tradeoff(const StageSpec& stage_template,
                                                 std::span<const double> effective_strengths,
                                                 const TradeoffOptions& options = {});

}  // namespace qfc
