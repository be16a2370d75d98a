#ifndef PHASEQ_DFT_HPP
#define PHASEQ_DFT_HPP

#include <vector>

#include "phaseq/grid.hpp"

namespace phaseq {

// Minimal dense complex matrix, row-major.  All transforms in this project
// are explicit phase-matrix products: exact for arbitrary hbar and any even
// n, and bit-deterministic (fixed loop order, parallelism only across
// independent output rows).
struct CMat {
    int rows = 0, cols = 0;
    std::vector<cplx> a;
    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    cplx& at(int r, int c) { return a[size_t(r) * cols + c]; }
    cplx at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

// M[r,c] = exp(i coeff rowc[r] colc[c])
CMat phase_matrix(const std::vector<double>& rowc, const std::vector<double>& colc, double coeff);

CMat mat_mul(const CMat& A, const CMat& B);
CMat transpose(const CMat& M);

// out[a,b] = sum_{j,k} X[a,k] M[j,k] Y[b,j]  (two GEMMs)
CMat bilinear(const CMat& M, const CMat& X, const CMat& Y);

CMat field_matrix(const PhaseField& f);
PhaseField matrix_field(const PhaseGrid& g, const CMat& m);

std::vector<double> grid_coords(const PhaseGrid& g);      // cell centers
std::vector<double> node_coords(const PhaseGrid& g);      // -L + m h (integer nodes)
std::vector<double> mode_freqs(const PhaseGrid& g);       // pi m / L, m = -n/2 .. n/2-1

// Density Fourier transform on the mode lattice:
//   fhat[m1,m2] = h^2/(2 pi)^2 sum_z f(z) exp(-i k.z)
CMat mode_transform(const PhaseField& f);
// Inverse: f(z) = (pi/L)^2 sum_modes fhat exp(+i k.z)
PhaseField mode_inverse(const PhaseGrid& g, const CMat& fhat);

// Resample a field from cell centers to the integer-node lattice via local
// polynomial interpolation (12-point stencils, shifted one-sided near the
// edges).  Local interpolation is used instead of trigonometric resampling
// because sections carry chirped phases that are not periodic over the box.
// Node value index m corresponds to coordinate -L + m h, so differences of
// cell centers land exactly on it: x_j - x_k = coordinate of node
// (j - k + n/2).
CMat resample_to_nodes(const PhaseField& f);

// Local interpolation of a sampled field at an arbitrary point (zero outside
// the box).
cplx eval_local(const PhaseField& f, double q, double p);

} // namespace phaseq

#endif
