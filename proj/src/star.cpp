#include "phaseq/star.hpp"

#include <cmath>
#include <stdexcept>

#include "phaseq/dft.hpp"
#include "phaseq/stencil.hpp"

namespace phaseq {

EvaluationSet EvaluationSet::of(std::vector<PhasePoint> pts, const PhaseGrid& g) {
    if (pts.empty()) throw std::invalid_argument("EvaluationSet: empty target list");
    for (const auto& m : pts)
        if (std::abs(m.q) > g.extent || std::abs(m.p) > g.extent)
            throw std::invalid_argument("EvaluationSet: target outside grid extent");
    return EvaluationSet{std::move(pts)};
}

EvaluationSet EvaluationSet::full_grid(const PhaseGrid& g) {
    if (g.n > 32)
        throw std::invalid_argument(
            "EvaluationSet::full_grid: direct evaluation over a full grid is limited to n <= 32");
    std::vector<PhasePoint> pts;
    pts.reserve(size_t(g.n) * g.n);
    for (int iq = 0; iq < g.n; ++iq)
        for (int ip = 0; ip < g.n; ++ip) pts.push_back({g.coord(iq), g.coord(ip)});
    return EvaluationSet{std::move(pts)};
}

std::vector<cplx> moyal_direct(const PhaseField& f, const PhaseField& g, Hbar hbar,
                               const EvaluationSet& targets) {
    require_same_grid(f.grid, g.grid, "moyal_direct");
    for (const auto& m : targets.points)
        if (std::abs(m.q) > f.grid.extent || std::abs(m.p) > f.grid.extent)
            throw std::invalid_argument("moyal_direct: target outside extent");
    const double lam = 1.0 / hbar.value; // kernel e^{i lam cross(m1-m, m2-m)}
    const double h = f.grid.spacing();
    const double pref = (lam / (2.0 * M_PI)) * (lam / (2.0 * M_PI)) * h * h * h * h;
    const auto x = grid_coords(f.grid);
    const CMat gm = field_matrix(g);

    std::vector<cplx> out(targets.points.size());
    for (size_t t = 0; t < targets.points.size(); ++t) {
        const PhasePoint m = targets.points[t];
        std::vector<double> uq(x), up(x);
        for (auto& v : uq) v -= m.q;
        for (auto& v : up) v -= m.p;
        // inner[u] = sum_v g(v) e^{i lam (uq vp - up vq)}
        const CMat A = phase_matrix(uq, up, lam);   // A[uq, vp]
        const CMat B = phase_matrix(up, uq, -lam);  // B[up, vq]
        const CMat inner = bilinear(gm, A, B);
        std::vector<cplx> terms(f.samples.size());
        for (int iq = 0; iq < f.grid.n; ++iq)
            for (int ip = 0; ip < f.grid.n; ++ip)
                terms[size_t(iq) * f.grid.n + ip] = f.at(iq, ip) * inner.at(iq, ip);
        out[t] = pref * pairwise_sum(terms);
    }
    return out;
}

PhaseField moyal_fast(const PhaseField& f, const PhaseField& g, Hbar hbar) {
    require_same_grid(f.grid, g.grid, "moyal_fast");
    const int n = f.grid.n;
    const auto k = mode_freqs(f.grid);
    const CMat fh = mode_transform(f);
    const CMat gh = mode_transform(g);

    // zero-padded ghat for difference-mode lookup
    CMat gp(2 * n, 2 * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) gp.at(a + n / 2, b + n / 2) = gh.at(a, b);

    // twist phase tables: T1[a][s] = e^{-i hbar k_a k_s}, T2[b][r] = conj of it
    const CMat T1 = phase_matrix(k, k, -hbar.value);
    const CMat T2 = phase_matrix(k, k, +hbar.value);

    CMat C(n, n);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) {
        std::vector<cplx> W(size_t(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) W[size_t(a) * n + b] = fh.at(a, b) * T2.at(b, r);
        cplx* crow = &C.a[size_t(r) * n];
        std::vector<cplx> acc(n);
        for (int a = 0; a < n; ++a) {
            const int grow_idx = r - a + n;
            if (grow_idx < 0 || grow_idx >= 2 * n) continue;
            const cplx* grow = &gp.a[size_t(grow_idx) * 2 * n];
            const cplx* wrow = &W[size_t(a) * n];
            for (int s = 0; s < n; ++s) {
                // sum over b of wrow[b] * gp[grow_idx][s - b + n]
                cplx sum = 0.0;
                const cplx* gbase = grow + (s + n);
                for (int b = 0; b < n; ++b) sum += wrow[b] * gbase[-b];
                acc[s] = sum;
            }
            const cplx* t1row = &T1.a[size_t(a) * n];
            for (int s = 0; s < n; ++s) crow[s] += t1row[s] * acc[s];
        }
    }
    const double dk = M_PI / f.grid.extent;
    for (auto& v : C.a) v *= dk * dk;
    return mode_inverse(f.grid, C);
}

namespace {

double binom(int k, int j) {
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r = r * (k - j + i) / i;
    return r;
}

} // namespace

PhaseField moyal_series(const PhaseField& f, const PhaseField& g, Hbar hbar, int order) {
    require_same_grid(f.grid, g.grid, "moyal_series");
    if (order < 0) throw std::invalid_argument("moyal_series: order must be >= 0");
    if (order > 8) throw std::invalid_argument("moyal_series: order > 8 exceeds stencil accuracy");

    PhaseField acc = pointwise_product(f, g);
    if (order == 0) return acc;

    {
        const PhaseField b1 = poisson_bracket(f, g);
        const cplx c1 = cplx(0.0, hbar.value);
        for (size_t i = 0; i < acc.samples.size(); ++i) acc.samples[i] += c1 * b1.samples[i];
    }
    if (order == 1) return acc;

    // all mixed derivatives up to the requested order, 8th-order stencils
    const int acc_ord = 8;
    std::vector<std::vector<PhaseField>> Df(order + 1), Dg(order + 1);
    for (int a = 0; a <= order; ++a) {
        Df[a].resize(order - a + 1);
        Dg[a].resize(order - a + 1);
        const PhaseField fa = derivative(f, Axis::q, a, acc_ord);
        const PhaseField ga = derivative(g, Axis::q, a, acc_ord);
        for (int b = 0; b + a <= order; ++b) {
            Df[a][b] = derivative(fa, Axis::p, b, acc_ord);
            Dg[a][b] = derivative(ga, Axis::p, b, acc_ord);
        }
    }

    double kfact = 1.0;
    cplx ih_pow = cplx(0.0, hbar.value);
    for (int kk = 2; kk <= order; ++kk) {
        kfact *= kk;
        ih_pow *= cplx(0.0, hbar.value);
        const cplx coeff = ih_pow / kfact;
        // B_k = sum_j C(k,j)(-1)^j d_q^{k-j} d_p^j f * d_p^{k-j} d_q^j g
        for (int j = 0; j <= kk; ++j) {
            const double cj = binom(kk, j) * ((j % 2 == 0) ? 1.0 : -1.0);
            const PhaseField& df = Df[kk - j][j];
            const PhaseField& dg = Dg[j][kk - j];
            for (size_t i = 0; i < acc.samples.size(); ++i)
                acc.samples[i] += coeff * cj * df.samples[i] * dg.samples[i];
        }
    }
    return acc;
}

ScanResult hbar_scan(const PhaseField& f, const PhaseField& g,
                     const std::vector<double>& hbar_list, int order) {
    if (hbar_list.size() < 4) throw std::invalid_argument("hbar_scan: need at least 4 scan points");
    for (size_t i = 1; i < hbar_list.size(); ++i)
        if (!(hbar_list[i] < hbar_list[i - 1]))
            throw std::invalid_argument("hbar_scan: hbar list must be strictly decreasing");

    ScanResult res;
    res.order = order;
    for (double hb : hbar_list) {
        const PhaseField fast = moyal_fast(f, g, Hbar(hb));
        const PhaseField ser = moyal_series(f, g, Hbar(hb), order);
        res.rows.push_back({hb, sup_norm_interior(fast - ser)});
    }
    // least-squares slope of log(err) against log(hbar)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(res.rows.size());
    for (const auto& r : res.rows) {
        const double lx = std::log(r.hbar), ly = std::log(std::max(r.sup_err, 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    res.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return res;
}

} // namespace phaseq
