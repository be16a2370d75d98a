#ifndef PHASEQ_GEOMETRY_HPP
#define PHASEQ_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>

namespace phaseq {

// Planck constant carrier. Positive by construction; classical-limit scans
// pass a decreasing sequence of these.
struct Hbar {
    double value;
    explicit Hbar(double v) : value(v) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Hbar must be positive and finite");
    }
};

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

inline PhasePoint operator+(PhasePoint a, PhasePoint b) { return {a.q + b.q, a.p + b.p}; }
inline PhasePoint operator-(PhasePoint a, PhasePoint b) { return {a.q - b.q, a.p - b.p}; }
inline PhasePoint operator*(double s, PhasePoint a) { return {s * a.q, s * a.p}; }

// Symplectic pairing cross(a,b) = a_q b_p - a_p b_q.  Every phase convention
// in this library is written in terms of this one bilinear form.
inline double cross(PhasePoint a, PhasePoint b) { return a.q * b.p - a.p * b.q; }

// Signed area of the triangle (u, v, z); antisymmetric in all arguments,
// translation invariant, SL(2)-invariant.
inline double signed_area_triangle(PhasePoint u, PhasePoint v, PhasePoint z) {
    return 0.5 * cross(v - u, z - u);
}

// Signed area of the polygon (base, u, v, z) by fan decomposition.
inline double polygon_area(PhasePoint base, PhasePoint u, PhasePoint v, PhasePoint z) {
    return signed_area_triangle(base, u, v) + signed_area_triangle(base, v, z);
}

// Poisson bracket sign convention: {f,g} = df/dq dg/dp - df/dp dg/dq, so
// {q,p} = +1.  Calibrated once against the O(hbar) term of the star product;
// see conventions note in the README.
inline constexpr double poisson_sign = 1.0;

} // namespace phaseq

#endif
