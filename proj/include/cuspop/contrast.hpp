#pragma once

#include "cuspop/spectrum.hpp"

#include <vector>

namespace cuspop {

// C_chi on H^2(D) compressed to polynomials of degree <= spec.max_degree,
// assembled with the one-variable FFT rule on the shifted Q-point grid.
// tail_bound = sqrt(HS^2 - ||matrix||_F^2) on the same rule.
SingularSpectrum one_dim_contrast(const TruncationSpec& spec, const DiskSymbol& s = cusp_disk_symbol());
Eigen::MatrixXcd assemble_one_dim(const DiskSymbol& s, int degree, int Q);

// Column-complete route: singular values of the L^2 sample matrix
// sqrt(w_j) chi(t_j)^m on a graded rule, i.e. of C P_degree exactly in the
// row direction.  tail_bound = ||C (I - P_degree)||_HS on the same rule.
SingularSpectrum one_dim_contrast_graded(int degree, const GradedMesh& mesh, const DiskSymbol& s = cusp_disk_symbol());

// Taylor coefficients of chi at 0 (real), computed in extended precision and
// rounded to double.  Used by the shrunken-symbol route and as a test handle.
std::vector<double> cusp_taylor_coefficients(int count);

// Shrunken symbol chi(r z), r < 1: exact Taylor matrix r^b [z^b] chi^m with
// rows b <= rows, columns m <= degree, decomposed in 120-digit arithmetic.
// tail_bound adds the discarded-row bound to the discarded-column HS bound.
SingularSpectrum shrunk_contrast_taylor(double r, int degree, int rows);

} // namespace cuspop
