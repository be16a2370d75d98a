#include "phaseq/groupoid.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "phaseq/dft.hpp"

namespace phaseq {

PairKernel operator+(const PairKernel& a, const PairKernel& b) {
    require_same_grid(a.grid, b.grid, "PairKernel operator+");
    PairKernel out(a.grid);
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = a.samples[i] + b.samples[i];
    return out;
}

PairKernel operator-(const PairKernel& a, const PairKernel& b) {
    require_same_grid(a.grid, b.grid, "PairKernel operator-");
    PairKernel out(a.grid);
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = a.samples[i] - b.samples[i];
    return out;
}

PairKernel operator*(cplx s, const PairKernel& a) {
    PairKernel out(a.grid);
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = s * a.samples[i];
    return out;
}

double sup_norm(const PairKernel& k) {
    double m = 0.0;
    for (const cplx& v : k.samples) m = std::max(m, std::abs(v));
    return m;
}

PairKernel quantize(const PhaseField& f, Hbar hbar) {
    const auto x = grid_coords(f.grid);
    const double c = 0.5 / hbar.value;
    const CMat A = phase_matrix(x, x, +c);  // [dq, zp]
    const CMat B = phase_matrix(x, x, -c);  // [dp, zq]
    CMat out = bilinear(field_matrix(f), A, B);
    const double h = f.grid.spacing();
    const double scale = h * h / (4.0 * M_PI * hbar.value);
    PairKernel k(f.grid);
    for (size_t i = 0; i < k.samples.size(); ++i) k.samples[i] = scale * out.a[i];
    return k;
}

PhaseField dequantize(const PairKernel& k, Hbar hbar) {
    const auto x = grid_coords(k.grid);
    const double c = 0.5 / hbar.value;
    const CMat X = phase_matrix(x, x, +c);  // [zq, dp]
    const CMat Y = phase_matrix(x, x, -c);  // [zp, dq]
    CMat m(k.grid.n, k.grid.n);
    m.a = k.samples;
    CMat out = bilinear(m, X, Y);
    const double h = k.grid.spacing();
    const double scale = h * h / (4.0 * M_PI * hbar.value);
    PhaseField f(k.grid);
    for (size_t i = 0; i < f.samples.size(); ++i) f.samples[i] = scale * out.a[i];
    return f;
}

PairKernel twisted_convolve(const PairKernel& k1, const PairKernel& k2, Hbar hbar,
                            TwistMode mode) {
    require_same_grid(k1.grid, k2.grid, "twisted_convolve");
    const int n = k1.grid.n;
    const auto x = grid_coords(k1.grid);

    PhaseField k1f(k1.grid);
    k1f.samples = k1.samples;
    const CMat k1n = resample_to_nodes(k1f); // value at node m <-> coordinate -L + m h

    const double tc = (mode == TwistMode::cocycle) ? 0.25 / hbar.value : 0.0;
    const CMat E1 = phase_matrix(x, x, -tc); // [r, k2]: e^{-i/(4h) Dq.ep}
    const CMat E2 = phase_matrix(x, x, +tc); // [s, k1]: e^{+i/(4h) Dp.eq}

    const double h = k1.grid.spacing();
    const double pref = h * h / (4.0 * M_PI * hbar.value);

    PairKernel out(k1.grid);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            cplx acc = 0.0;
            const int qlo = std::max(0, r - n / 2 + 1), qhi = std::min(n, r + n / 2 + 1);
            for (int a = qlo; a < qhi; ++a) {
                const int iq = r - a + n / 2;
                const cplx* k1row = &k1n.a[size_t(iq) * n];
                const cplx* k2row = &k2.samples[size_t(a) * n];
                const cplx e2 = E2.at(s, a);
                cplx inner = 0.0;
                const int plo = std::max(0, s - n / 2 + 1), phi = std::min(n, s + n / 2 + 1);
                for (int b = plo; b < phi; ++b)
                    inner += k1row[s - b + n / 2] * k2row[b] * E1.at(r, b);
                acc += e2 * inner;
            }
            out.at(r, s) = pref * acc;
        }
    }
    return out;
}

PairKernel kernel_involution(const PairKernel& k) {
    const int n = k.grid.n;
    PairKernel out(k.grid);
    for (int iq = 0; iq < n; ++iq)
        for (int ip = 0; ip < n; ++ip) out.at(iq, ip) = std::conj(k.at(n - 1 - iq, n - 1 - ip));
    return out;
}

static std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string kernel_to_csv(const PairKernel& k) {
    std::string out = "dq,dp,re,im\n";
    for (int iq = 0; iq < k.grid.n; ++iq)
        for (int ip = 0; ip < k.grid.n; ++ip) {
            const cplx v = k.at(iq, ip);
            out += fmt17(k.grid.coord(iq)) + "," + fmt17(k.grid.coord(ip)) + "," +
                   fmt17(v.real()) + "," + fmt17(v.imag()) + "\n";
        }
    return out;
}

PairKernel kernel_from_csv(const std::string& text) {
    std::string patched = text;
    const std::string want = "dq,dp,re,im";
    if (patched.rfind(want, 0) != 0)
        throw std::invalid_argument("kernel CSV: expected header dq,dp,re,im");
    patched.replace(0, want.size(), "q,p,re,im");
    const PhaseField f = field_from_csv(patched);
    PairKernel k(f.grid);
    k.samples = f.samples;
    return k;
}

} // namespace phaseq
