#include "phaseq/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "phaseq/dft.hpp"

namespace phaseq {

int DiskTriangulation::edge_count() const {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t[e], b = t[(e + 1) % 3];
            edges.insert({std::min(a, b), std::max(a, b)});
        }
    return int(edges.size());
}

int DiskTriangulation::euler_characteristic() const {
    return vertex_count - edge_count() + int(triangles.size());
}

bool DiskTriangulation::is_interior(int vertex) const {
    return std::find(boundary.begin(), boundary.end(), vertex) == boundary.end();
}

std::vector<int> DiskTriangulation::interior_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < vertex_count; ++v)
        if (is_interior(v)) out.push_back(v);
    return out;
}

DiskTriangulation triangulate_disk(int refinement) {
    if (refinement < 0) throw std::invalid_argument("triangulate_disk: refinement must be >= 0");
    DiskTriangulation t;
    t.refinement = 0;
    t.vertex_count = 3;
    t.marked = {0, 1, 2};
    t.boundary = {0, 1, 2}; // cyclic order 0, 1, inf
    // orientation chosen so that the induced boundary traversal is the
    // reverse of the stored cycle: the image action is area(m0, m, m1)
    t.triangles = {{0, 2, 1}};

    for (int r = 0; r < refinement; ++r) {
        DiskTriangulation s;
        s.refinement = t.refinement + 1;
        s.marked = t.marked;
        s.vertex_count = t.vertex_count;
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const int v = s.vertex_count++;
            midpoint.emplace(key, v);
            return v;
        };
        for (const auto& tri : t.triangles) {
            const int a = tri[0], b = tri[1], c = tri[2];
            const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
            s.triangles.push_back({a, ab, ca});
            s.triangles.push_back({ab, b, bc});
            s.triangles.push_back({ca, bc, c});
            s.triangles.push_back({ab, bc, ca});
        }
        for (size_t i = 0; i < t.boundary.size(); ++i) {
            const int a = t.boundary[i];
            const int b = t.boundary[(i + 1) % t.boundary.size()];
            s.boundary.push_back(a);
            s.boundary.push_back(mid(a, b));
        }
        t = std::move(s);
    }

    // arc labels: positions after marked 0 up to marked 1 belong to arc 0, etc.
    t.boundary_arc.assign(t.boundary.size(), -1);
    int arc = -1;
    // boundary starts at the marked 0 vertex by construction
    for (size_t i = 0; i < t.boundary.size(); ++i) {
        const int v = t.boundary[i];
        if (v == t.marked[0]) arc = 0;
        else if (v == t.marked[1]) arc = 1;
        else if (v == t.marked[2]) arc = 2;
        t.boundary_arc[i] = arc;
    }
    return t;
}

namespace {

double pairwise_sum_real(const std::vector<double>& v, size_t lo, size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum_real(v, lo, mid) + pairwise_sum_real(v, mid, hi);
}

} // namespace

double discrete_action(const DiskTriangulation& t, const VertexAssignment& x) {
    if (x.image.size() < size_t(t.vertex_count))
        throw std::invalid_argument("discrete_action: assignment missing vertex images");
    std::vector<double> terms(t.triangles.size());
    for (size_t i = 0; i < t.triangles.size(); ++i) {
        const auto& tri = t.triangles[i];
        terms[i] = signed_area_triangle(x.image[tri[0]], x.image[tri[1]], x.image[tri[2]]);
    }
    return terms.empty() ? 0.0 : pairwise_sum_real(terms, 0, terms.size());
}

double boundary_polygon_area(const DiskTriangulation& t, const VertexAssignment& x) {
    // induced orientation = reverse of the stored cycle
    const size_t m = t.boundary.size();
    std::vector<double> terms(m);
    for (size_t i = 0; i < m; ++i) {
        const PhasePoint a = x.image[t.boundary[(i + 1) % m]];
        const PhasePoint b = x.image[t.boundary[i]];
        terms[i] = 0.5 * cross(a, b);
    }
    return pairwise_sum_real(terms, 0, m);
}

VertexAssignment pinned_assignment(const DiskTriangulation& t, PhasePoint m0, PhasePoint m1,
                                   PhasePoint m, PhasePoint interior_value) {
    VertexAssignment x;
    x.image.assign(t.vertex_count, interior_value);
    const PhasePoint arc_value[3] = {m0, m1, m};
    for (size_t i = 0; i < t.boundary.size(); ++i)
        x.image[t.boundary[i]] = arc_value[t.boundary_arc[i]];
    x.image[t.marked[0]] = m0;
    x.image[t.marked[1]] = m1;
    x.image[t.marked[2]] = m;
    return x;
}

cplx kernel_fresnel(const DiskTriangulation& t, PhasePoint m0, PhasePoint m1, PhasePoint m,
                    Hbar hbar) {
    const VertexAssignment x = pinned_assignment(t, m0, m1, m, {0.0, 0.0});
    const double action = discrete_action(t, x);
    return std::exp(cplx(0.0, action / hbar.value));
}

std::vector<cplx> kernel_quadrature(const DiskTriangulation& t, PhasePoint m0, PhasePoint m1,
                                    PhasePoint m, Hbar hbar, const std::vector<double>& eps_list,
                                    int n_per_vertex) {
    const auto interior = t.interior_vertices();
    if (interior.size() > 3)
        throw std::invalid_argument("kernel_quadrature: more than 3 free vertices");
    const PhasePoint centroid = (1.0 / 3.0) * (m0 + m1 + m);

    std::vector<cplx> out;
    for (double eps : eps_list) {
        const double span = 3.0 / std::sqrt(eps);
        const double step = 2.0 * span / n_per_vertex;
        // integrate over all free images on a tensor grid around the centroid
        std::vector<int> idx(interior.size(), 0);
        const int cells_per_vertex = n_per_vertex * n_per_vertex;
        long total = 1;
        for (size_t v = 0; v < interior.size(); ++v) total *= cells_per_vertex;
        cplx acc = 0.0;
        VertexAssignment x = pinned_assignment(t, m0, m1, m, centroid);
        for (long c = 0; c < total; ++c) {
            long rem = c;
            double weight = 1.0;
            for (size_t v = 0; v < interior.size(); ++v) {
                const int cell = int(rem % cells_per_vertex);
                rem /= cells_per_vertex;
                const int iq = cell % n_per_vertex, ip = cell / n_per_vertex;
                const double dq = -span + (iq + 0.5) * step;
                const double dp = -span + (ip + 0.5) * step;
                x.image[interior[v]] = centroid + PhasePoint{dq, dp};
                weight *= std::exp(-eps * (dq * dq + dp * dp)) * step * step;
            }
            acc += weight * std::exp(cplx(0.0, discrete_action(t, x) / hbar.value));
        }
        out.push_back(interior.empty() ? acc : acc / std::abs(acc));
    }
    return out;
}

cplx fresnel_gaussian(const std::vector<double>& A_rowmajor, const std::vector<double>& b) {
    const int d = int(b.size());
    if (A_rowmajor.size() != size_t(d) * d)
        throw std::invalid_argument("fresnel_gaussian: shape mismatch");
    // Jacobi eigen-decomposition of the symmetric matrix A
    std::vector<double> A(A_rowmajor);
    std::vector<double> V(size_t(d) * d, 0.0);
    for (int i = 0; i < d; ++i) V[size_t(i) * d + i] = 1.0;
    auto at = [&](std::vector<double>& M, int r, int c) -> double& { return M[size_t(r) * d + c]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int r = 0; r < d; ++r)
            for (int c = r + 1; c < d; ++c) off += std::abs(at(A, r, c));
        if (off < 1e-15) break;
        for (int r = 0; r < d; ++r)
            for (int c = r + 1; c < d; ++c) {
                const double arc = at(A, r, c);
                if (std::abs(arc) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * arc, at(A, c, c) - at(A, r, r));
                const double co = std::cos(theta), si = std::sin(theta);
                for (int k = 0; k < d; ++k) {
                    const double arK = at(A, r, k), acK = at(A, c, k);
                    at(A, r, k) = co * arK - si * acK;
                    at(A, c, k) = si * arK + co * acK;
                }
                for (int k = 0; k < d; ++k) {
                    const double aKr = at(A, k, r), aKc = at(A, k, c);
                    at(A, k, r) = co * aKr - si * aKc;
                    at(A, k, c) = si * aKr + co * aKc;
                    const double vKr = at(V, k, r), vKc = at(V, k, c);
                    at(V, k, r) = co * vKr - si * vKc;
                    at(V, k, c) = si * vKr + co * vKc;
                }
            }
    }
    double scale = 0.0;
    for (int i = 0; i < d; ++i) scale = std::max(scale, std::abs(at(A, i, i)));
    if (scale == 0.0) scale = 1.0;

    double logdet = 0.0;
    int signature = 0;
    std::vector<double> bv(d, 0.0); // b in the eigenbasis
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) bv[i] += V[size_t(k) * d + i] * b[k];
    cplx quad = 0.0;
    for (int i = 0; i < d; ++i) {
        const double lam = at(A, i, i);
        if (std::abs(lam) < 1e-12 * scale) {
            if (std::abs(bv[i]) > 1e-12)
                throw FresnelDegenerate(
                    "fresnel_gaussian: quadratic form degenerate along a sourced direction");
            throw FresnelDegenerate("fresnel_gaussian: quadratic form degenerate (flat direction)");
        }
        logdet += std::log(std::abs(lam));
        signature += (lam > 0.0) ? 1 : -1;
        quad += cplx(0.0, -0.5) * bv[i] * bv[i] / lam;
    }
    const double amp = std::pow(2.0 * M_PI, 0.5 * d) * std::exp(-0.5 * logdet);
    const cplx phase = std::exp(cplx(0.0, 0.25 * M_PI * signature));
    return amp * phase * std::exp(quad);
}

LatticeStarResult lattice_star(const PhaseField& f, const PhaseField& g, Hbar hbar,
                               const LatticeConfig& cfg, const EvaluationSet& targets) {
    require_same_grid(f.grid, g.grid, "lattice_star");
    for (const auto& m : targets.points)
        if (std::abs(m.q) > f.grid.extent || std::abs(m.p) > f.grid.extent)
            throw std::invalid_argument("lattice_star: target outside extent");

    const DiskTriangulation tri = triangulate_disk(cfg.refinement);
    const DiskTriangulation tri0 = triangulate_disk(0);
    const Hbar heff(hbar.value / 2.0); // effective-Planck-constant bridge

    // refinement invariance of the kernel, verified on a coordinate subsample
    double delta = 0.0;
    const int n = f.grid.n;
    const int stride = std::max(1, n / 8);
    for (const auto& m : targets.points)
        for (int i0 = 0; i0 < n; i0 += stride)
            for (int i1 = 0; i1 < n; i1 += stride) {
                const PhasePoint a{f.grid.coord(i0), f.grid.coord(i1)};
                const PhasePoint b{f.grid.coord(i1), f.grid.coord(i0)};
                delta = std::max(delta, std::abs(kernel_fresnel(tri, a, b, m, heff) -
                                                 kernel_fresnel(tri0, a, b, m, heff)));
            }

    // quadrature of f(m1) g(m0) K(m0, m1, m); the kernel factorizes over the
    // two arguments, so evaluate as a phase-matrix sandwich like moyal_direct
    const double lam = 0.5 / heff.value; // e^{(i/heff) area(m, m1, m0)} = e^{i lam cross(m1-m, m0-m)}
    const double h = f.grid.spacing();
    const double pref = std::pow(1.0 / (2.0 * M_PI * hbar.value), 2) * h * h * h * h;
    const auto x = grid_coords(f.grid);
    const CMat gm = field_matrix(g);

    LatticeStarResult res;
    res.refinement_invariance_delta = delta;
    for (const auto& m : targets.points) {
        std::vector<double> uq(x), up(x);
        for (auto& v : uq) v -= m.q;
        for (auto& v : up) v -= m.p;
        const CMat A = phase_matrix(uq, up, lam);   // [m1.q, m0.p]
        const CMat B = phase_matrix(up, uq, -lam);  // [m1.p, m0.q]
        const CMat inner = bilinear(gm, A, B);
        std::vector<cplx> terms(f.samples.size());
        for (int iq = 0; iq < n; ++iq)
            for (int ip = 0; ip < n; ++ip)
                terms[size_t(iq) * n + ip] = f.at(iq, ip) * inner.at(iq, ip);
        res.values.push_back(pref * pairwise_sum(terms));
    }
    return res;
}

} // namespace phaseq
