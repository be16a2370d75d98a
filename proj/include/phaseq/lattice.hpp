#ifndef PHASEQ_LATTICE_HPP
#define PHASEQ_LATTICE_HPP

#include <array>
#include <stdexcept>
#include <vector>

#include "phaseq/star.hpp"

namespace phaseq {

// Oriented triangulated disk with three marked boundary vertices labeled
// (0, 1, inf).  The stored boundary cycle lists the marked vertices in the
// cyclic order 0, 1, inf; the consistent triangle orientation induces the
// reverse traversal, so the single triangle at refinement 0 contributes the
// signed area of (m0, m, m1).
struct DiskTriangulation {
    int refinement = 0;
    int vertex_count = 0;
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> boundary;    // stored cyclic order 0 -> 1 -> inf
    std::array<int, 3> marked{};  // vertex ids labeled 0, 1, inf
    std::vector<int> boundary_arc; // per boundary position: arc id 0,1,2 (source-marked label)

    int edge_count() const;
    int euler_characteristic() const;
    bool is_interior(int vertex) const;
    std::vector<int> interior_vertices() const;
};

DiskTriangulation triangulate_disk(int refinement);

// Discrete field: images of the triangulation vertices in the phase plane.
struct VertexAssignment {
    std::vector<PhasePoint> image; // indexed by vertex id
};

// Sum over oriented triangles of the signed area of the image triangle.
double discrete_action(const DiskTriangulation& t, const VertexAssignment& x);

// Signed area of the image boundary polygon traversed in the orientation
// induced by the triangles.  Telescoping makes this equal discrete_action.
double boundary_polygon_area(const DiskTriangulation& t, const VertexAssignment& x);

struct LatticeConfig {
    double hbar = 0.5;
    int refinement = 0;
    enum class Integration { fresnel, quadrature } integration = Integration::fresnel;
    int n_per_vertex = 10; // quadrature mode only
};

// Boundary-pinned vertex assignment realizing the boundary conditions: the
// marked vertices map to (m0, m1, m), unmarked boundary vertices carry their
// arc's source value, interior vertices get `interior_value` (the action is
// exactly independent of it).
VertexAssignment pinned_assignment(const DiskTriangulation& t, PhasePoint m0, PhasePoint m1,
                                   PhasePoint m, PhasePoint interior_value);

// Normalized three-point kernel: exp[(i/hbar) * discrete_action] of the
// pinned assignment.  Pure phase, independent of refinement (telescoping)
// and equal to exp[(i/hbar) area(m, m1, m0)].
cplx kernel_fresnel(const DiskTriangulation& t, PhasePoint m0, PhasePoint m1, PhasePoint m,
                    Hbar hbar);

// Validation mode: regulated quadrature over the decoupled interior vertex
// images (allowed for <= 3 free vertices), extrapolated over the regulator
// strengths.  Returns the normalized kernel per epsilon.
std::vector<cplx> kernel_quadrature(const DiskTriangulation& t, PhasePoint m0, PhasePoint m1,
                                    PhasePoint m, Hbar hbar, const std::vector<double>& eps_list,
                                    int n_per_vertex);

// Exact Fresnel (complex Gaussian) integral
//   int exp[i (x^T A x / 2 + b.x)] d^d x
//     = (2 pi)^{d/2} |det A|^{-1/2} exp[i pi/4 sig(A)] exp[-i b^T A^{-1} b / 2]
// with the quarter-phase convention.  Throws FresnelDegenerate if A has a
// (near-)null direction, which cannot be regularized away.
struct FresnelDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};
cplx fresnel_gaussian(const std::vector<double>& A_rowmajor, const std::vector<double>& b);

// Lattice star product at chosen targets:
//   (f*g)(m) = (1/(2 pi hbar))^2 int f(m1) g(m0) K(m0, m1, m) dm0 dm1
// where K is the three-point kernel evaluated at hbar/2 (the effective-
// Planck-constant bridge; see README conventions note).  Refinement
// invariance of the kernel is verified on a subsample and reported.
struct LatticeStarResult {
    std::vector<cplx> values;
    double refinement_invariance_delta; // max |K_ref - K_ref0| over the subsample
};
LatticeStarResult lattice_star(const PhaseField& f, const PhaseField& g, Hbar hbar,
                               const LatticeConfig& cfg, const EvaluationSet& targets);

} // namespace phaseq

#endif
