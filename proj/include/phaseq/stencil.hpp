#ifndef PHASEQ_STENCIL_HPP
#define PHASEQ_STENCIL_HPP

#include <vector>

#include "phaseq/grid.hpp"

namespace phaseq {

// Fornberg finite-difference weights: for sample offsets `nodes` (in units of
// the grid spacing) around evaluation offset x0, returns weights for the
// m-th derivative.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

enum class Axis { q, p };

// m-th partial derivative along one axis with order-`acc` stencils; the
// stencil window shifts one-sided near the boundary rows.
PhaseField derivative(const PhaseField& f, Axis axis, int m, int acc);

// {f,g} = df/dq dg/dp - df/dp dg/dq with 4th-order central differences
// (one-sided at the boundary cells).
PhaseField poisson_bracket(const PhaseField& f, const PhaseField& g);

} // namespace phaseq

#endif
