#pragma once

#include <Eigen/Dense>

#include <utility>

#include "qfc/grid.hpp"
#include "qfc/stage.hpp"

namespace qfc {

// Discretized input->output scattering matrix of a stage or cascade.
//
// Blocks act on sample vectors; because both sides use the orthonormal
// delta basis e_k = delta_k / sqrt(dt), they are also the matrix elements in
// that basis, and the stacked 2n x 2n matrix of a lossless stage is unitary.
// Output band first: rs maps signal input to register output.
struct GreenFunction {
    TemporalGrid grid;
    double signal_wavelength_nm;
    double register_wavelength_nm;
    Eigen::MatrixXcd ss, sr, rs, rr;

    std::size_t n() const { return grid.n_points(); }
    Eigen::MatrixXcd stacked() const;

    static GreenFunction identity(const TemporalGrid& grid, double signal_wavelength_nm,
                                  double register_wavelength_nm);
};

// Column k of the stacked matrix is the stage response to a unit sample in
// input slot k. Columns are independent and may be computed on several
// threads; the result does not depend on the thread count.
GreenFunction assemble(const StageSpec& stage, unsigned threads = 1);

// The same stage on the Fourier-restricted basis of the n_eff lowest
// frequencies, realized as an n_eff-point grid with the same span. Inputs are
// moved onto that grid with resample().
TemporalGrid reduced_grid(const TemporalGrid& grid, std::size_t n_eff);
StageSpec restrict_stage(const StageSpec& stage, std::size_t n_eff);
GreenFunction assemble_reduced(const StageSpec& stage, std::size_t n_eff, unsigned threads = 1);

// (signal_out, register_out) = G (signal_in, register_in).
std::pair<Envelope, Envelope> apply(const GreenFunction& g, const Envelope& signal_in,
                                    const Envelope& register_in);

// second * first, block by block.
GreenFunction compose(const GreenFunction& second, const GreenFunction& first);

// max |(G^dagger G - I)_ij| of the stacked matrix.
double unitarity_defect(const GreenFunction& g);

// First-order (time-ordering-free) signal->register conversion kernel.
//
// A signal impulse entering at t_in travels along its characteristic and
// seeds register amplitude i gamma A_p wherever it crosses the register
// characteristic that exits at t_out; the z integral along that path is done
// exactly in the Fourier domain on the stage grid. Linear in gamma.
Eigen::MatrixXcd first_order_kernel(const StageSpec& stage);

}  // namespace qfc
