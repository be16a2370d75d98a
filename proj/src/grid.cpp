#include "phaseq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phaseq {

PhaseGrid::PhaseGrid(double L, int n_) : extent(L), n(n_) {
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("PhaseGrid: extent must be positive");
    if (n <= 0 || n % 2 != 0)
        throw std::invalid_argument("PhaseGrid: n must be even and positive");
}

PhaseField make_field(const PhaseGrid& g, const std::function<cplx(double, double)>& f) {
    PhaseField out(g);
    for (int iq = 0; iq < g.n; ++iq) {
        const double q = g.coord(iq);
        for (int ip = 0; ip < g.n; ++ip) out.at(iq, ip) = f(q, g.coord(ip));
    }
    return out;
}

void require_same_grid(const PhaseGrid& a, const PhaseGrid& b, const char* who) {
    if (a != b) throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

PhaseField operator+(const PhaseField& a, const PhaseField& b) {
    require_same_grid(a.grid, b.grid, "operator+");
    PhaseField out(a.grid);
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = a.samples[i] + b.samples[i];
    return out;
}

PhaseField operator-(const PhaseField& a, const PhaseField& b) {
    require_same_grid(a.grid, b.grid, "operator-");
    PhaseField out(a.grid);
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = a.samples[i] - b.samples[i];
    return out;
}

PhaseField operator*(cplx s, const PhaseField& a) {
    PhaseField out(a.grid);
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = s * a.samples[i];
    return out;
}

PhaseField pointwise_product(const PhaseField& a, const PhaseField& b) {
    require_same_grid(a.grid, b.grid, "pointwise_product");
    PhaseField out(a.grid);
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = a.samples[i] * b.samples[i];
    return out;
}

PhaseField conj(const PhaseField& a) {
    PhaseField out(a.grid);
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = std::conj(a.samples[i]);
    return out;
}

double QuadratureWeights::axis_weight(int j) const {
    const double h = grid.spacing();
    if (rule == Rule::midpoint) return h;
    // trapezoid on cell-centered samples, rescaled so the weights still sum
    // to 2L (kept for convergence cross-checks)
    const double base = (j == 0 || j == grid.n - 1) ? 0.5 * h : h;
    const double raw_total = h * (grid.n - 1);
    return base * (2.0 * grid.extent / raw_total);
}

cplx pairwise_sum(const std::vector<cplx>& v) {
    // fixed divide-and-conquer order, independent of threading
    std::function<cplx(size_t, size_t)> rec = [&](size_t lo, size_t hi) -> cplx {
        if (hi - lo <= 8) {
            cplx s = 0.0;
            for (size_t i = lo; i < hi; ++i) s += v[i];
            return s;
        }
        const size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return v.empty() ? cplx(0.0) : rec(0, v.size());
}

cplx integrate(const PhaseField& f, const QuadratureWeights& w) {
    require_same_grid(f.grid, w.grid, "integrate");
    std::vector<cplx> terms(f.samples.size());
    const int n = f.grid.n;
    for (int iq = 0; iq < n; ++iq)
        for (int ip = 0; ip < n; ++ip)
            terms[size_t(iq) * n + ip] = f.at(iq, ip) * w.weight(iq, ip);
    return pairwise_sum(terms);
}

bool in_interior(const PhaseGrid& g, int iq, int ip) {
    const double half = 0.5 * g.extent;
    return std::abs(g.coord(iq)) <= half && std::abs(g.coord(ip)) <= half;
}

double sup_norm_interior(const PhaseField& f) {
    double m = 0.0;
    for (int iq = 0; iq < f.grid.n; ++iq)
        for (int ip = 0; ip < f.grid.n; ++ip)
            if (in_interior(f.grid, iq, ip)) m = std::max(m, std::abs(f.at(iq, ip)));
    return m;
}

double sup_norm(const PhaseField& f) {
    double m = 0.0;
    for (const cplx& v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

double rel_interior_error(const PhaseField& a, const PhaseField& b) {
    require_same_grid(a.grid, b.grid, "rel_interior_error");
    return sup_norm_interior(a - b) / sup_norm_interior(b);
}

// ---------------------------------------------------------------------------

static double smootherstep_down(double u) {
    // C^4 taper from 1 at u=0 to 0 at u=1 (all derivatives through 4th vanish
    // at both ends)
    const double u5 = u * u * u * u * u;
    return 1.0 - u5 * (126.0 + u * (-420.0 + u * (540.0 + u * (-315.0 + u * 70.0))));
}

double window_axis(double x, double support) {
    const double plateau = support * (11.0 / 15.0);
    const double ax = std::abs(x);
    if (ax <= plateau) return 1.0;
    if (ax >= support) return 0.0;
    return smootherstep_down((ax - plateau) / (support - plateau));
}

double window2d(double q, double p, double support) {
    return window_axis(q, support) * window_axis(p, support);
}

double hermite_phys(int k, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    if (k == 0) return h0;
    if (k == 1) return h1;
    for (int m = 2; m <= k; ++m) {
        const double h2 = 2.0 * x * h1 - 2.0 * (m - 1) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

static double hermite_norm(int k) {
    // L^2 normalization of H_k(x) e^{-x^2/2}
    double fact = 1.0;
    for (int m = 2; m <= k; ++m) fact *= m;
    return 1.0 / std::sqrt(std::pow(2.0, k) * fact * std::sqrt(M_PI));
}

bool is_named_field(const std::string& name) {
    if (name == "gaussian" || name == "bump" || name == "coordinate-q-windowed" ||
        name == "coordinate-p-windowed")
        return true;
    return name.rfind("hermite-", 0) == 0;
}

PhaseField named_field(const std::string& name, const PhaseGrid& g) {
    const double support = 0.75 * g.extent;
    if (name == "gaussian")
        return make_field(g, [](double q, double p) { return std::exp(-(q * q + p * p) / 2.0); });
    if (name == "bump")
        return make_field(g, [=](double q, double p) { return window2d(q, p, support); });
    if (name == "coordinate-q-windowed")
        return make_field(g, [=](double q, double p) { return q * window2d(q, p, support); });
    if (name == "coordinate-p-windowed")
        return make_field(g, [=](double q, double p) { return p * window2d(q, p, support); });
    if (name.rfind("hermite-", 0) == 0) {
        const int k = std::stoi(name.substr(8));
        if (k < 0 || k > 12) throw std::invalid_argument("hermite-k: k out of range [0,12]");
        const double nk = hermite_norm(k);
        return make_field(g, [=](double q, double p) {
            return nk * nk * hermite_phys(k, q) * hermite_phys(k, p) *
                   std::exp(-(q * q + p * p) / 2.0);
        });
    }
    throw std::invalid_argument("unknown field name: " + name);
}

// ---------------------------------------------------------------------------

static std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string field_to_csv(const PhaseField& f) {
    std::string out = "q,p,re,im\n";
    for (int iq = 0; iq < f.grid.n; ++iq)
        for (int ip = 0; ip < f.grid.n; ++ip) {
            const cplx v = f.at(iq, ip);
            out += format_g17(f.grid.coord(iq)) + "," + format_g17(f.grid.coord(ip)) + "," +
                   format_g17(v.real()) + "," + format_g17(v.imag()) + "\n";
        }
    return out;
}

PhaseField field_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "q,p,re,im")
        throw std::invalid_argument("field CSV: expected header q,p,re,im");
    std::vector<double> qs, ps;
    std::vector<cplx> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double q, p, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &q, &p, &re, &im) != 4)
            throw std::invalid_argument("field CSV: malformed row: " + line);
        qs.push_back(q);
        ps.push_back(p);
        vals.push_back(cplx(re, im));
    }
    const size_t total = vals.size();
    const int n = int(std::llround(std::sqrt(double(total))));
    if (size_t(n) * n != total || n < 2 || n % 2 != 0)
        throw std::invalid_argument("field CSV: row count is not an even perfect square");
    const double h = qs[size_t(n)] - qs[0]; // q advances every n rows
    const double L = -(qs[0] - 0.5 * h);
    PhaseGrid g(L, n);
    const double tol = 1e-9 * std::max(1.0, L);
    for (int iq = 0; iq < n; ++iq)
        for (int ip = 0; ip < n; ++ip) {
            const size_t r = size_t(iq) * n + ip;
            if (std::abs(qs[r] - g.coord(iq)) > tol || std::abs(ps[r] - g.coord(ip)) > tol)
                throw std::invalid_argument("field CSV: samples are not a row-major uniform grid");
        }
    PhaseField f(g);
    f.samples = std::move(vals);
    return f;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace phaseq
