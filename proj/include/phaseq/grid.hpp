#ifndef PHASEQ_GRID_HPP
#define PHASEQ_GRID_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "phaseq/geometry.hpp"

namespace phaseq {

using cplx = std::complex<double>;

// Uniform cell-centered grid on [-L, L]^2.  Points x_j = -L + (j + 1/2) h;
// no sample sits exactly at the origin (n is even).
struct PhaseGrid {
    double extent = 8.0; // L
    int n = 128;         // samples per axis, even

    PhaseGrid() = default;
    PhaseGrid(double L, int n_);

    double spacing() const { return 2.0 * extent / n; }
    double coord(int j) const { return -extent + (j + 0.5) * spacing(); }
    bool operator==(const PhaseGrid& o) const { return extent == o.extent && n == o.n; }
    bool operator!=(const PhaseGrid& o) const { return !(*this == o); }
};

// Complex field sampled on a PhaseGrid.  Row index = q, column index = p,
// stored row-major.  Immutable by convention once built; all operations
// return fresh fields.
struct PhaseField {
    PhaseGrid grid;
    std::vector<cplx> samples; // size n*n

    PhaseField() = default;
    explicit PhaseField(const PhaseGrid& g) : grid(g), samples(size_t(g.n) * g.n) {}

    cplx& at(int iq, int ip) { return samples[size_t(iq) * grid.n + ip]; }
    cplx at(int iq, int ip) const { return samples[size_t(iq) * grid.n + ip]; }
    PhasePoint point(int iq, int ip) const { return {grid.coord(iq), grid.coord(ip)}; }
};

PhaseField make_field(const PhaseGrid& g, const std::function<cplx(double, double)>& f);

PhaseField operator+(const PhaseField& a, const PhaseField& b);
PhaseField operator-(const PhaseField& a, const PhaseField& b);
PhaseField operator*(cplx s, const PhaseField& a);
PhaseField pointwise_product(const PhaseField& a, const PhaseField& b);
PhaseField conj(const PhaseField& a);

void require_same_grid(const PhaseGrid& a, const PhaseGrid& b, const char* who);

// Quadrature weights over the grid; weights sum to (2L)^2.
struct QuadratureWeights {
    enum class Rule { midpoint, trapezoid };
    Rule rule = Rule::midpoint;
    PhaseGrid grid;

    static QuadratureWeights midpoint(const PhaseGrid& g) { return {Rule::midpoint, g}; }
    static QuadratureWeights trapezoid(const PhaseGrid& g) { return {Rule::trapezoid, g}; }
    double axis_weight(int j) const;
    double weight(int iq, int ip) const { return axis_weight(iq) * axis_weight(ip); }
};

// Weighted sum with a deterministic pairwise reduction order (identical
// across thread counts).
cplx integrate(const PhaseField& f, const QuadratureWeights& w);
cplx pairwise_sum(const std::vector<cplx>& v);

// Interior assertion region |q|,|p| <= L/2.
bool in_interior(const PhaseGrid& g, int iq, int ip);
double sup_norm_interior(const PhaseField& f);
double sup_norm(const PhaseField& f);
// sup of |a-b| over the interior divided by sup of |b| over the interior
double rel_interior_error(const PhaseField& a, const PhaseField& b);

// ---------------------------------------------------------------------------
// windows and named test fields
// ---------------------------------------------------------------------------

// Per-axis flat-top window: 1 on |x| <= plateau, C^4 smootherstep taper down
// to 0 at |x| >= support.  plateau = (11/15) * support; support defaults to
// 0.75 L.  Polynomial observables in tests are always multiplied by this.
double window_axis(double x, double support);
double window2d(double q, double p, double support);

// Registry: gaussian, hermite-<k>, coordinate-q-windowed,
// coordinate-p-windowed, bump.  Throws std::invalid_argument for unknown
// names.
PhaseField named_field(const std::string& name, const PhaseGrid& g);
bool is_named_field(const std::string& name);

double hermite_phys(int k, double x); // physicists' H_k

// ---------------------------------------------------------------------------
// CSV (header "q,p,re,im", row-major over the grid)
// ---------------------------------------------------------------------------

std::string field_to_csv(const PhaseField& f);
PhaseField field_from_csv(const std::string& text);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace phaseq

#endif
