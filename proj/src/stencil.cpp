#include "phaseq/stencil.hpp"

#include <cmath>
#include <stdexcept>

namespace phaseq {

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
    // B. Fornberg, "Generation of finite difference formulas on arbitrarily
    // spaced grids", Math. Comp. 51 (1988)
    const int nn = int(nodes.size());
    if (m >= nn) throw std::invalid_argument("fd_weights: need more nodes than derivative order");
    std::vector<std::vector<double>> c(nn, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < nn; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nn);
    for (int i = 0; i < nn; ++i) w[i] = c[i][m];
    return w;
}

namespace {

// Stencil windows of fixed width, shifted near the edges.  Weight sets are
// cached per (left-offset) pattern.
struct AxisStencil {
    int width;
    std::vector<std::vector<double>> weights; // by evaluation position within window
    std::vector<int> left;                    // window start per row index

    AxisStencil(int n, double h, int m, int acc) {
        width = m + acc;
        if (width % 2 == 0) width += 1; // symmetric interior window
        if (width > n) throw std::invalid_argument("derivative: grid too small for stencil");
        left.resize(n);
        weights.assign(width, {});
        for (int i = 0; i < n; ++i) {
            int lo = i - width / 2;
            lo = std::max(0, std::min(lo, n - width));
            left[i] = lo;
            const int pos = i - lo;
            if (weights[pos].empty()) {
                std::vector<double> nodes(width);
                for (int k = 0; k < width; ++k) nodes[k] = (k - pos) * h;
                weights[pos] = fd_weights(0.0, nodes, m);
            }
        }
    }
};

} // namespace

PhaseField derivative(const PhaseField& f, Axis axis, int m, int acc) {
    if (m == 0) return f;
    const int n = f.grid.n;
    const AxisStencil st(n, f.grid.spacing(), m, acc);
    PhaseField out(f.grid);
    for (int iq = 0; iq < n; ++iq) {
        for (int ip = 0; ip < n; ++ip) {
            const int i = (axis == Axis::q) ? iq : ip;
            const int lo = st.left[i];
            const auto& w = st.weights[i - lo];
            cplx acc_v = 0.0;
            for (int k = 0; k < st.width; ++k) {
                const int j = lo + k;
                acc_v += w[k] * ((axis == Axis::q) ? f.at(j, ip) : f.at(iq, j));
            }
            out.at(iq, ip) = acc_v;
        }
    }
    return out;
}

PhaseField poisson_bracket(const PhaseField& f, const PhaseField& g) {
    require_same_grid(f.grid, g.grid, "poisson_bracket");
    const PhaseField fq = derivative(f, Axis::q, 1, 4);
    const PhaseField fp = derivative(f, Axis::p, 1, 4);
    const PhaseField gq = derivative(g, Axis::q, 1, 4);
    const PhaseField gp = derivative(g, Axis::p, 1, 4);
    PhaseField out(f.grid);
    for (size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] =
            poisson_sign * (fq.samples[i] * gp.samples[i] - fp.samples[i] * gq.samples[i]);
    return out;
}

} // namespace phaseq
