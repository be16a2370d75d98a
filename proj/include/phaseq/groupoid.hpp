#ifndef PHASEQ_GROUPOID_HPP
#define PHASEQ_GROUPOID_HPP

#include <string>

#include "phaseq/grid.hpp"

namespace phaseq {

// Kernel on the pair groupoid in the geodesic trivialization, stored over
// difference coordinates: the full kernel is K(u,v) = samples(v - u).
struct PairKernel {
    PhaseGrid grid; // difference coordinates (dq, dp)
    std::vector<cplx> samples;
    static constexpr const char* trivialization = "geodesic";

    PairKernel() = default;
    explicit PairKernel(const PhaseGrid& g) : grid(g), samples(size_t(g.n) * g.n) {}
    cplx& at(int iq, int ip) { return samples[size_t(iq) * grid.n + ip]; }
    cplx at(int iq, int ip) const { return samples[size_t(iq) * grid.n + ip]; }
};

PairKernel operator+(const PairKernel& a, const PairKernel& b);
PairKernel operator*(cplx s, const PairKernel& a);
PairKernel operator-(const PairKernel& a, const PairKernel& b);
double sup_norm(const PairKernel& k);

// Quantization map (symplectic Fourier transform):
//   K(D) = 1/(4 pi hbar) int f(z) exp[(i/2 hbar) cross(D, z)] dz
PairKernel quantize(const PhaseField& f, Hbar hbar);

// Inverse transform with matching normalization.
PhaseField dequantize(const PairKernel& k, Hbar hbar);

// Twisted convolution of difference-coordinate kernels:
//   (K1 * K2)(D) = 1/(4 pi hbar) int K1(D - e) K2(e)
//                  exp[-(i/(4 hbar)) cross(D, e)] de
// The cocycle coefficient is frozen by the requirement that quantize be an
// algebra morphism onto the star product (see README conventions note).
enum class TwistMode { cocycle, none };
PairKernel twisted_convolve(const PairKernel& k1, const PairKernel& k2, Hbar hbar,
                            TwistMode mode = TwistMode::cocycle);

// conj-reflected involution K*(D) = conj(K(-D)); needs the resampling trick
// only in tests, so here it is the exact lattice reflection D -> -D, which
// maps cell centers to cell centers.
PairKernel kernel_involution(const PairKernel& k);

// CSV with header "dq,dp,re,im"
std::string kernel_to_csv(const PairKernel& k);
PairKernel kernel_from_csv(const std::string& text);

} // namespace phaseq

#endif
