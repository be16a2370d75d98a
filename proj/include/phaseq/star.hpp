#ifndef PHASEQ_STAR_HPP
#define PHASEQ_STAR_HPP

#include <vector>

#include "phaseq/grid.hpp"

namespace phaseq {

// Star-product method selector.  All methods realize the same product,
// normalized so that 1*1 = 1 and q*p - p*q = 2i hbar.
struct StarMethod {
    enum class Kind { direct, fast, series };
    Kind kind = Kind::fast;
    int series_order = 1; // only for series; <= 8
};

// Targets for the pointwise (direct) evaluators.  The full-grid factory is
// rejected above n = 32 to keep desk-scale runtimes.
struct EvaluationSet {
    std::vector<PhasePoint> points;

    static EvaluationSet of(std::vector<PhasePoint> pts, const PhaseGrid& g);
    static EvaluationSet full_grid(const PhaseGrid& g);
};

// Oscillatory-integral quadrature of the star product at chosen targets:
//   (f*g)(m) = (1/(2 pi hbar))^2 int f(m1) g(m2)
//              exp[(2i/hbar) area(m, m1, m2)] dm1 dm2
std::vector<cplx> moyal_direct(const PhaseField& f, const PhaseField& g, Hbar hbar,
                               const EvaluationSet& targets);

// Full-grid star product via composition in the Weyl algebra at effective
// Planck constant 2*hbar, evaluated as the exact mode-space twisted
// convolution of the two trigonometric interpolants:
//   C(k) = sum_a fhat(a) ghat(k-a) exp(-i hbar cross(a, k))
PhaseField moyal_fast(const PhaseField& f, const PhaseField& g, Hbar hbar);

// Truncated power series sum_{k<=order} (i hbar)^k / k! B_k(f,g) with
// B_0 = fg, B_1 = poisson_bracket, and B_k the k-th constant-coefficient
// bidifferential power via finite-difference stencils.  order <= 8.
PhaseField moyal_series(const PhaseField& f, const PhaseField& g, Hbar hbar, int order);

// Classical-limit scan: interior sup-norm of (fast - series(order)) per hbar
// plus the fitted log-log slope.
struct ScanRow {
    double hbar;
    double sup_err;
};
struct ScanResult {
    std::vector<ScanRow> rows;
    double slope;
    int order;
    double required_slope() const { return order + 0.7; }
    bool slope_ok() const { return slope >= required_slope(); }
};
ScanResult hbar_scan(const PhaseField& f, const PhaseField& g,
                     const std::vector<double>& hbar_list, int order);

} // namespace phaseq

#endif
