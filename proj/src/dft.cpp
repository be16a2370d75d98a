#include "phaseq/dft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phaseq {

CMat phase_matrix(const std::vector<double>& rowc, const std::vector<double>& colc, double coeff) {
    CMat m(int(rowc.size()), int(colc.size()));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) {
            const double ph = coeff * rowc[r] * colc[c];
            m.at(r, c) = cplx(std::cos(ph), std::sin(ph));
        }
    return m;
}

CMat mat_mul(const CMat& A, const CMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    CMat C(A.rows, B.cols);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < A.rows; ++r) {
        cplx* crow = &C.a[size_t(r) * C.cols];
        for (int k = 0; k < A.cols; ++k) {
            const cplx arc = A.at(r, k);
            const cplx* brow = &B.a[size_t(k) * B.cols];
            for (int c = 0; c < B.cols; ++c) crow[c] += arc * brow[c];
        }
    }
    return C;
}

CMat transpose(const CMat& M) {
    CMat T(M.cols, M.rows);
    for (int r = 0; r < M.rows; ++r)
        for (int c = 0; c < M.cols; ++c) T.at(c, r) = M.at(r, c);
    return T;
}

CMat bilinear(const CMat& M, const CMat& X, const CMat& Y) {
    // out = X * M^T * Y^T
    return mat_mul(mat_mul(X, transpose(M)), transpose(Y));
}

CMat field_matrix(const PhaseField& f) {
    CMat m(f.grid.n, f.grid.n);
    m.a = f.samples;
    return m;
}

PhaseField matrix_field(const PhaseGrid& g, const CMat& m) {
    if (m.rows != g.n || m.cols != g.n) throw std::invalid_argument("matrix_field: shape");
    PhaseField f(g);
    f.samples = m.a;
    return f;
}

std::vector<double> grid_coords(const PhaseGrid& g) {
    std::vector<double> x(g.n);
    for (int j = 0; j < g.n; ++j) x[j] = g.coord(j);
    return x;
}

std::vector<double> node_coords(const PhaseGrid& g) {
    std::vector<double> x(g.n);
    for (int j = 0; j < g.n; ++j) x[j] = -g.extent + j * g.spacing();
    return x;
}

std::vector<double> mode_freqs(const PhaseGrid& g) {
    std::vector<double> k(g.n);
    for (int j = 0; j < g.n; ++j) k[j] = M_PI * (j - g.n / 2) / g.extent;
    return k;
}

CMat mode_transform(const PhaseField& f) {
    const auto x = grid_coords(f.grid);
    const auto k = mode_freqs(f.grid);
    const CMat F = phase_matrix(k, x, -1.0); // F[m,j] = e^{-i k_m x_j}
    const double h = f.grid.spacing();
    CMat out = mat_mul(mat_mul(F, field_matrix(f)), transpose(F));
    const double scale = h * h / (4.0 * M_PI * M_PI);
    for (auto& v : out.a) v *= scale;
    return out;
}

PhaseField mode_inverse(const PhaseGrid& g, const CMat& fhat) {
    const auto x = grid_coords(g);
    const auto k = mode_freqs(g);
    const CMat Fi = phase_matrix(x, k, +1.0); // Fi[j,m] = e^{+i k_m x_j}
    CMat out = mat_mul(mat_mul(Fi, fhat), transpose(Fi));
    const double dk = M_PI / g.extent;
    const double scale = dk * dk;
    for (auto& v : out.a) v *= scale;
    return matrix_field(g, out);
}

namespace {

constexpr int kInterpPoints = 12;

// interpolation weights for the half-sample shift: node y_m = x_m - h/2,
// cached per clamped window offset
struct HalfShiftWeights {
    int n;
    std::vector<int> left;                     // window start per node index
    std::vector<std::vector<double>> weights;  // per (node - left) pattern

    explicit HalfShiftWeights(int n_, double h) : n(n_) {
        const int w = std::min(kInterpPoints, n);
        left.resize(n);
        weights.assign(w + 1, {});
        for (int m = 0; m < n; ++m) {
            int lo = m - w / 2;
            lo = std::max(0, std::min(lo, n - w));
            left[m] = lo;
            const int pos = m - lo;
            if (weights[pos].empty()) {
                std::vector<double> nodes(w);
                for (int k = 0; k < w; ++k) nodes[k] = (lo + k - m) * h + 0.5 * h;
                // interpolate (0th derivative) at the node, half a cell left
                weights[pos] = fd_weights_interp(nodes);
            }
        }
    }

    static std::vector<double> fd_weights_interp(const std::vector<double>& nodes);
};

// Lagrange interpolation weights at x = 0 for the given sample offsets.
std::vector<double> HalfShiftWeights::fd_weights_interp(const std::vector<double>& nodes) {
    const int w = int(nodes.size());
    std::vector<double> out(w, 1.0);
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < w; ++j) {
            if (j == i) continue;
            out[i] *= (0.0 - nodes[j]) / (nodes[i] - nodes[j]);
        }
    return out;
}

} // namespace

CMat resample_to_nodes(const PhaseField& f) {
    const int n = f.grid.n;
    const double h = f.grid.spacing();
    const HalfShiftWeights hw(n, h);
    // shift along q (rows), then along p (columns)
    CMat tmp(n, n);
    for (int m = 0; m < n; ++m) {
        const int lo = hw.left[m];
        const auto& wv = hw.weights[m - lo];
        for (int ip = 0; ip < n; ++ip) {
            cplx acc = 0.0;
            for (size_t k = 0; k < wv.size(); ++k) acc += wv[k] * f.at(lo + int(k), ip);
            tmp.at(m, ip) = acc;
        }
    }
    CMat out(n, n);
    for (int m = 0; m < n; ++m) {
        const int lo = hw.left[m];
        const auto& wv = hw.weights[m - lo];
        for (int iq = 0; iq < n; ++iq) {
            cplx acc = 0.0;
            for (size_t k = 0; k < wv.size(); ++k) acc += wv[k] * tmp.at(iq, lo + int(k));
            out.at(iq, m) = acc;
        }
    }
    return out;
}

cplx eval_local(const PhaseField& f, double q, double p) {
    const int n = f.grid.n;
    const double h = f.grid.spacing();
    if (std::abs(q) > f.grid.extent || std::abs(p) > f.grid.extent) return 0.0;
    const int w = std::min(kInterpPoints, n);
    auto window = [&](double x, int& lo, std::vector<double>& nodes) {
        const double s = (x + f.grid.extent) / h - 0.5; // fractional cell index
        lo = int(std::floor(s)) - w / 2 + 1;
        lo = std::max(0, std::min(lo, n - w));
        nodes.resize(w);
        for (int k = 0; k < w; ++k) nodes[k] = f.grid.coord(lo + k) - x;
    };
    int loq, lop;
    std::vector<double> nq, np;
    window(q, loq, nq);
    window(p, lop, np);
    const auto wq = HalfShiftWeights::fd_weights_interp(nq);
    const auto wp = HalfShiftWeights::fd_weights_interp(np);
    cplx acc = 0.0;
    for (int a = 0; a < w; ++a) {
        cplx row = 0.0;
        for (int b = 0; b < w; ++b) row += wp[b] * f.at(loq + a, lop + b);
        acc += wq[a] * row;
    }
    return acc;
}

} // namespace phaseq
