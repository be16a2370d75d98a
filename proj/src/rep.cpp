#include "phaseq/rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "phaseq/dft.hpp"
#include "phaseq/stencil.hpp"

namespace phaseq {

Polarization::Polarization(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
    if (std::abs(c) == 0.0 && std::abs(d) == 0.0)
        throw std::invalid_argument("Polarization: (c,d) must not both vanish");
    if (std::abs(a * d - b * c - 1.0) > 1e-12)
        throw std::invalid_argument("Polarization: determinant a d - b c must equal 1");
}

Polarization Polarization::from_real_direction(double c, double d) {
    const double nrm2 = c * c + d * d;
    if (nrm2 <= 0.0) throw std::invalid_argument("Polarization: zero direction");
    // (a,b) = (d,-c)/(c^2+d^2) satisfies a d - b c = 1
    return {d / nrm2, -c / nrm2, c, d};
}

bool Polarization::is_real() const {
    return a.imag() == 0.0 && b.imag() == 0.0 && c.imag() == 0.0 && d.imag() == 0.0;
}
bool Polarization::is_axis_q() const { return is_real() && d.real() == 0.0; }
bool Polarization::is_axis_p() const { return is_real() && c.real() == 0.0; }

cplx Polarization::form_factor(double q, double p, double hbar) const {
    const cplx arg = cplx(0.0, 0.5 / hbar) * conjugate_coordinate(q, p) * coordinate(q, p);
    return std::exp(arg);
}

cplx Profile1D::eval(double t) const {
    // Catmull-Rom cubic through the samples; zero outside the grid
    const double h = spacing();
    const double s = (t + radius) / h - 0.5;
    const int j = int(std::floor(s));
    if (j < -1 || j > n - 1) return 0.0;
    const double u = s - j;
    auto get = [&](int i) -> cplx { return (i < 0 || i >= n) ? cplx(0.0) : samples[i]; };
    const cplx pm1 = get(j - 1), p0 = get(j), p1 = get(j + 1), p2 = get(j + 2);
    const cplx a0 = p0;
    const cplx a1 = 0.5 * (p1 - pm1);
    const cplx a2 = pm1 - 2.5 * p0 + 2.0 * p1 - 0.5 * p2;
    const cplx a3 = 0.5 * (p2 - pm1) + 1.5 * (p0 - p1);
    return a0 + u * (a1 + u * (a2 + u * a3));
}

Profile1D Profile1D::derivative() const {
    Profile1D out(radius, n);
    const int acc = 6, m = 1;
    int width = m + acc;
    if (width % 2 == 0) width += 1;
    width = std::min(width, n);
    const double h = spacing();
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, std::min(i - width / 2, n - width));
        std::vector<double> nodes(width);
        for (int k = 0; k < width; ++k) nodes[k] = (lo + k - i) * h;
        const auto w = fd_weights(0.0, nodes, 1);
        cplx acc_v = 0.0;
        for (int k = 0; k < width; ++k) acc_v += w[k] * samples[lo + k];
        out.samples[i] = acc_v;
    }
    return out;
}

Profile1D Profile1D::sample(double R, int n, const std::function<cplx(double)>& psi) {
    Profile1D p(R, n);
    for (int j = 0; j < n; ++j) p.samples[j] = psi(p.coord(j));
    return p;
}

std::string profile_to_csv(const Profile1D& p) {
    char buf[128];
    std::string out = "t,re,im\n";
    for (int j = 0; j < p.n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.coord(j), p.samples[j].real(),
                      p.samples[j].imag());
        out += buf;
    }
    return out;
}

cplx transport_phase(PhasePoint from, PhasePoint to, Hbar hbar) {
    const double ph = 0.5 / hbar.value * cross(from, to);
    return cplx(std::cos(ph), std::sin(ph));
}

Section act_kernel(const PairKernel& k, const Section& psi, Hbar hbar) {
    require_same_grid(k.grid, psi.grid, "act_kernel");
    const int n = k.grid.n;
    const auto x = grid_coords(k.grid);

    PhaseField kf(k.grid);
    kf.samples = k.samples;
    const CMat kn = resample_to_nodes(kf);

    // transport(m0 -> m) = e^{(i/2h)(p q0 - q p0)}; separable tables
    const double c = 0.5 / hbar.value;
    const CMat U1 = phase_matrix(x, x, +c); // [s=p of m, k1=q0]
    const CMat U2 = phase_matrix(x, x, -c); // [r=q of m, k2=p0]

    const double h = k.grid.spacing();
    const double pref = h * h / (4.0 * M_PI * hbar.value);

    Section out(k.grid);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            cplx acc = 0.0;
            const int qlo = std::max(0, r - n / 2 + 1), qhi = std::min(n, r + n / 2 + 1);
            for (int a = qlo; a < qhi; ++a) {
                const cplx* krow = &kn.a[size_t(r - a + n / 2) * n];
                const cplx* prow = &psi.samples[size_t(a) * n];
                const cplx u1 = U1.at(s, a);
                cplx inner = 0.0;
                const int plo = std::max(0, s - n / 2 + 1), phi = std::min(n, s + n / 2 + 1);
                for (int b = plo; b < phi; ++b)
                    inner += krow[s - b + n / 2] * prow[b] * U2.at(r, b);
                acc += u1 * inner;
            }
            out.at(r, s) = pref * acc;
        }
    }
    return out;
}

std::vector<cplx> act_triangle(const PhaseField& f, const Section& psi, Hbar hbar,
                               const EvaluationSet& targets) {
    require_same_grid(f.grid, psi.grid, "act_triangle");
    for (const auto& m : targets.points)
        if (std::abs(m.q) > f.grid.extent || std::abs(m.p) > f.grid.extent)
            throw std::invalid_argument("act_triangle: target outside extent");
    const double lam = 0.5 / hbar.value; // kernel e^{(i/hbar) area} = e^{i lam cross(v-u, w-u)}
    const double h = f.grid.spacing();
    const double c = 1.0 / (4.0 * M_PI * hbar.value);
    const double pref = c * c * h * h * h * h;
    const auto x = grid_coords(f.grid);
    const CMat pm = field_matrix(psi);

    std::vector<cplx> out(targets.points.size());
    for (size_t t = 0; t < targets.points.size(); ++t) {
        const PhasePoint u = targets.points[t];
        std::vector<double> vq(x), vp(x);
        for (auto& v : vq) v -= u.q;
        for (auto& v : vp) v -= u.p;
        const CMat A = phase_matrix(vq, vp, lam);   // [vq, wp]
        const CMat B = phase_matrix(vp, vq, -lam);  // [vp, wq]
        const CMat inner = bilinear(pm, A, B);
        std::vector<cplx> terms(f.samples.size());
        for (int iq = 0; iq < f.grid.n; ++iq)
            for (int ip = 0; ip < f.grid.n; ++ip)
                terms[size_t(iq) * f.grid.n + ip] = f.at(iq, ip) * inner.at(iq, ip);
        out[t] = pref * pairwise_sum(terms);
    }
    return out;
}

Section act_polarized(const PhaseField& f, const Section& psi, Hbar hbar) {
    require_same_grid(f.grid, psi.grid, "act_polarized");
    const int n = f.grid.n;
    const auto x = grid_coords(f.grid);
    const CMat pn = resample_to_nodes(psi);

    const double c = 0.5 / hbar.value;
    const CMat V1 = phase_matrix(x, x, +c); // [r=q, k2=p']
    const CMat V2 = phase_matrix(x, x, -c); // [s=p, k1=q']

    const double h = f.grid.spacing();
    const double pref = h * h / (4.0 * M_PI * hbar.value);

    Section out(f.grid);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            cplx acc = 0.0;
            const int qlo = std::max(0, r - n / 2 + 1), qhi = std::min(n, r + n / 2 + 1);
            for (int a = qlo; a < qhi; ++a) { // a = q' index; need a - r + n/2 in range
                const int iq = a - r + n / 2;
                if (iq < 0 || iq >= n) continue;
                const cplx* prow = &pn.a[size_t(iq) * n];
                const cplx* frow = &f.samples[size_t(a) * n];
                const cplx v2 = V2.at(s, a);
                cplx inner = 0.0;
                const int plo = std::max(0, s - n / 2 + 1), phi = std::min(n, s + n / 2 + 1);
                for (int b = plo; b < phi; ++b)
                    inner += frow[b] * prow[b - s + n / 2] * V1.at(r, b);
                acc += v2 * inner;
            }
            out.at(r, s) = pref * acc;
        }
    }
    return out;
}

Section make_polarized(const PhaseGrid& g, const Polarization& pol,
                       const std::function<cplx(cplx)>& psi, Hbar hbar) {
    return make_field(g, [&](double q, double p) {
        return pol.form_factor(q, p, hbar.value) * psi(pol.coordinate(q, p));
    });
}

Section make_polarized(const PhaseGrid& g, const Polarization& pol, const Profile1D& psi,
                       Hbar hbar) {
    if (!pol.is_real())
        throw std::invalid_argument(
            "make_polarized(Profile1D): sampled profiles need a real polarization; "
            "use a callable profile for complex presets");
    return make_field(g, [&](double q, double p) {
        const double s = (pol.c * q + pol.d * p).real();
        return pol.form_factor(q, p, hbar.value) * psi.eval(s);
    });
}

namespace {

// RMS over the interior region
double rms_interior(const PhaseField& f) {
    double acc = 0.0;
    size_t cnt = 0;
    for (int iq = 0; iq < f.grid.n; ++iq)
        for (int ip = 0; ip < f.grid.n; ++ip)
            if (in_interior(f.grid, iq, ip)) {
                acc += std::norm(f.at(iq, ip));
                ++cnt;
            }
    return std::sqrt(acc / double(cnt));
}

} // namespace

ResidualReport polarization_residual(const Section& psi, const Polarization& pol, Hbar hbar,
                                     int bargmann_fit_degree) {
    const PhaseGrid& g = psi.grid;
    const int n = g.n;
    const double R = g.extent * std::sqrt(2.0);
    const int np = 2 * n;

    // Kahler-type polarization: fit holomorphic monomials against the form
    if (!pol.is_real()) {
        const int deg = bargmann_fit_degree;
        std::vector<PhaseField> basis;
        for (int m = 0; m <= deg; ++m) {
            basis.push_back(make_field(g, [&](double q, double p) {
                return pol.form_factor(q, p, hbar.value) * std::pow(pol.coordinate(q, p), m);
            }));
        }
        // normal equations on the interior region
        const int nb = deg + 1;
        std::vector<cplx> G(size_t(nb) * nb, 0.0), rhs(nb, 0.0);
        for (int iq = 0; iq < n; ++iq)
            for (int ip = 0; ip < n; ++ip) {
                if (!in_interior(g, iq, ip)) continue;
                for (int r = 0; r < nb; ++r) {
                    const cplx br = std::conj(basis[r].at(iq, ip));
                    rhs[r] += br * psi.at(iq, ip);
                    for (int c = 0; c <= r; ++c) G[size_t(r) * nb + c] += br * basis[c].at(iq, ip);
                }
            }
        for (int r = 0; r < nb; ++r)
            for (int c = r + 1; c < nb; ++c) G[size_t(r) * nb + c] = std::conj(G[size_t(c) * nb + r]);
        // Gaussian elimination with partial pivoting
        std::vector<cplx> A(G);
        std::vector<cplx> sol(rhs);
        std::vector<int> piv(nb);
        for (int i = 0; i < nb; ++i) piv[i] = i;
        for (int col = 0; col < nb; ++col) {
            int best = col;
            for (int r = col + 1; r < nb; ++r)
                if (std::abs(A[size_t(r) * nb + col]) > std::abs(A[size_t(best) * nb + col]))
                    best = r;
            for (int c = 0; c < nb; ++c) std::swap(A[size_t(col) * nb + c], A[size_t(best) * nb + c]);
            std::swap(sol[col], sol[best]);
            const cplx pivot = A[size_t(col) * nb + col];
            if (std::abs(pivot) < 1e-300) continue;
            for (int r = col + 1; r < nb; ++r) {
                const cplx fct = A[size_t(r) * nb + col] / pivot;
                for (int c = col; c < nb; ++c) A[size_t(r) * nb + c] -= fct * A[size_t(col) * nb + c];
                sol[r] -= fct * sol[col];
            }
        }
        std::vector<cplx> coef(nb, 0.0);
        for (int r = nb - 1; r >= 0; --r) {
            cplx acc = sol[r];
            for (int c = r + 1; c < nb; ++c) acc -= A[size_t(r) * nb + c] * coef[c];
            const cplx pivot = A[size_t(r) * nb + r];
            coef[r] = (std::abs(pivot) < 1e-300) ? 0.0 : acc / pivot;
        }
        PhaseField recon(g);
        for (int m = 0; m <= deg; ++m) {
            for (size_t i = 0; i < recon.samples.size(); ++i)
                recon.samples[i] += coef[m] * basis[m].samples[i];
        }
        ResidualReport rep;
        rep.residual = rms_interior(psi - recon) / rms_interior(psi);
        rep.profile = Profile1D(R, np);
        for (int j = 0; j < np; ++j) {
            const cplx t = rep.profile.coord(j);
            cplx v = 0.0, tp = 1.0;
            for (int m = 0; m <= deg; ++m) {
                v += coef[m] * tp;
                tp *= t;
            }
            rep.profile.samples[j] = v;
        }
        return rep;
    }

    // axis-aligned presets: exact row/column averaging of Psi / form
    if (pol.is_axis_q() || pol.is_axis_p()) {
        const bool along_q = pol.is_axis_q(); // s = c q
        const double scale = along_q ? pol.c.real() : pol.d.real();
        PhaseField recon(g);
        std::vector<cplx> avg(n, 0.0);
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> terms(n);
            for (int j = 0; j < n; ++j) {
                const int iq = along_q ? i : j;
                const int ip = along_q ? j : i;
                const cplx form =
                    pol.form_factor(g.coord(iq), g.coord(ip), hbar.value);
                terms[j] = psi.at(iq, ip) / form;
            }
            avg[i] = pairwise_sum(terms) / double(n);
        }
        for (int iq = 0; iq < n; ++iq)
            for (int ip = 0; ip < n; ++ip) {
                const int i = along_q ? iq : ip;
                recon.at(iq, ip) =
                    pol.form_factor(g.coord(iq), g.coord(ip), hbar.value) * avg[i];
            }
        ResidualReport rep;
        rep.residual = rms_interior(psi - recon) / rms_interior(psi);
        rep.profile = Profile1D(R, np);
        Profile1D axis_prof(g.extent, n); // averaged values viewed on [-L, L]
        axis_prof.samples = avg;
        for (int j = 0; j < np; ++j)
            rep.profile.samples[j] = axis_prof.eval(rep.profile.coord(j) / scale);
        return rep;
    }

    // general real polarization: average along the polarization direction
    const double cr = pol.c.real(), dr = pol.d.real();
    const double nrm2 = cr * cr + dr * dr;
    const PhasePoint u_dir{cr / nrm2, dr / nrm2};        // s(u_dir) = 1
    const double vn = std::sqrt(nrm2);
    const PhasePoint v_dir{dr / vn, -cr / vn};           // s(v_dir) = 0

    Profile1D prof(R, np);
    const int ntau = 9;
    const double taumax = 0.35 * g.extent;
    for (int j = 0; j < np; ++j) {
        const double s = prof.coord(j);
        std::vector<cplx> vals;
        for (int it = 0; it < ntau; ++it) {
            const double tau = -taumax + 2.0 * taumax * it / (ntau - 1);
            const PhasePoint z = s * u_dir + tau * v_dir;
            if (std::abs(z.q) > 0.95 * g.extent || std::abs(z.p) > 0.95 * g.extent) continue;
            const cplx form = pol.form_factor(z.q, z.p, hbar.value);
            vals.push_back(eval_local(psi, z.q, z.p) / form);
        }
        prof.samples[j] = vals.empty() ? cplx(0.0) : pairwise_sum(vals) / double(vals.size());
    }
    Section recon = make_polarized(g, pol, prof, hbar);
    ResidualReport rep;
    rep.profile = std::move(prof);
    rep.residual = rms_interior(psi - recon) / rms_interior(psi);
    return rep;
}

LadderReport ladder_check(const Polarization& pol, const Profile1D& psi, Hbar hbar) {
    // build the section and the windowed linear observables on a grid sized
    // to the profile
    const double L = psi.radius / std::sqrt(2.0);
    PhaseGrid g(L, std::max(64, psi.n / 2));
    const Section sec = make_polarized(g, pol, psi, hbar);
    const double support = 0.75 * L;

    const PhaseField f_conj = make_field(g, [&](double q, double p) {
        return pol.conjugate_coordinate(q, p) * window2d(q, p, support);
    });
    const PhaseField f_coord = make_field(g, [&](double q, double p) {
        return pol.coordinate(q, p) * window2d(q, p, support);
    });

    const Section out_d = act_polarized(f_conj, sec, hbar);
    const Section out_m = act_polarized(f_coord, sec, hbar);

    const Profile1D dpsi = psi.derivative();
    const cplx hi = cplx(0.0, -hbar.value); // hbar / i
    const Section exp_d = make_field(g, [&](double q, double p) {
        const double s = (pol.c * q + pol.d * p).real();
        return pol.form_factor(q, p, hbar.value) * hi * dpsi.eval(s);
    });
    const Section exp_m = make_field(g, [&](double q, double p) {
        const double s = (pol.c * q + pol.d * p).real();
        return pol.form_factor(q, p, hbar.value) * s * psi.eval(s);
    });

    LadderReport rep{};
    rep.err_deriv_display = sup_norm_interior(out_d - exp_d);
    rep.err_mult_display = sup_norm_interior(out_m - exp_m);
    rep.err_deriv_doubled = sup_norm_interior(out_d - (cplx(-2.0) * exp_d));
    rep.err_mult_doubled = sup_norm_interior(out_m - (cplx(2.0) * exp_m));

    // profile-level scaling: (h/i)(x psi' )' ... commutator [x, d/dx] = -1:
    // (h/i)(x psi)' - x (h/i) psi' = (h/i) psi
    double scal = 0.0;
    Profile1D xpsi(psi.radius, psi.n);
    for (int j = 0; j < psi.n; ++j) xpsi.samples[j] = psi.coord(j) * psi.samples[j];
    const Profile1D dxpsi = xpsi.derivative();
    for (int j = psi.n / 4; j < 3 * psi.n / 4; ++j) {
        const cplx lhs = hi * dxpsi.samples[j] - psi.coord(j) * hi * dpsi.samples[j];
        scal = std::max(scal, std::abs(lhs - hi * psi.samples[j]));
    }
    rep.profile_scaling_err = scal;
    return rep;
}

Section fourier_intertwiner(const Section& psi, Hbar hbar, double residual_threshold) {
    const auto rep = polarization_residual(psi, Polarization::position(), hbar);
    if (rep.residual > residual_threshold)
        throw std::invalid_argument("fourier_intertwiner: input is not position-polarized "
                                    "(residual above threshold)");
    const PhaseGrid& g = psi.grid;
    const int n = g.n;
    const auto x = grid_coords(g);
    // exact row-average extraction of psi(q)
    std::vector<cplx> prof(n);
    for (int iq = 0; iq < n; ++iq) {
        std::vector<cplx> terms(n);
        for (int ip = 0; ip < n; ++ip) {
            const cplx form = Polarization::position().form_factor(x[iq], x[ip], hbar.value);
            terms[ip] = psi.at(iq, ip) / form;
        }
        prof[iq] = pairwise_sum(terms) / double(n);
    }
    // Phi(p) = h sum_j e^{-(i/hbar) p q_j} psi(q_j)
    const double h = g.spacing();
    std::vector<cplx> Phi(n);
    for (int s = 0; s < n; ++s) {
        std::vector<cplx> terms(n);
        for (int j = 0; j < n; ++j)
            terms[j] = std::exp(cplx(0.0, -x[s] * x[j] / hbar.value)) * prof[j];
        Phi[s] = h * pairwise_sum(terms);
    }
    Section out(g);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            out.at(r, s) = std::exp(cplx(0.0, 0.5 / hbar.value * x[r] * x[s])) * Phi[s];
    return out;
}

} // namespace phaseq
