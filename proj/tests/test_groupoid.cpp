#include "doctest.h"

#include <cmath>
#include <random>

#include "phaseq/groupoid.hpp"
#include "phaseq/star.hpp"

using namespace phaseq;

TEST_CASE("quantize: gaussian image matches the analytic transform") {
    const PhaseGrid g(8.0, 256);
    const Hbar hb(0.5);
    const PairKernel k = quantize(named_field("gaussian", g), hb);
    double err = 0.0;
    for (int iq = 0; iq < g.n; ++iq)
        for (int ip = 0; ip < g.n; ++ip) {
            const double dq = g.coord(iq), dp = g.coord(ip);
            const double oracle =
                std::exp(-(dq * dq + dp * dp) / (8 * hb.value * hb.value)) / (2 * hb.value);
            err = std::max(err, std::abs(k.at(iq, ip) - oracle));
        }
    CHECK(err < 1e-5);
}

TEST_CASE("quantize: real even fields give real even kernels") {
    const PhaseGrid g(8.0, 64);
    const Hbar hb(0.5);
    const PairKernel k = quantize(named_field("gaussian", g), hb);
    double imag_max = 0.0, asym = 0.0;
    for (int iq = 0; iq < g.n; ++iq)
        for (int ip = 0; ip < g.n; ++ip) {
            imag_max = std::max(imag_max, std::abs(k.at(iq, ip).imag()));
            asym = std::max(asym,
                            std::abs(k.at(iq, ip) - k.at(g.n - 1 - iq, g.n - 1 - ip)));
        }
    CHECK(imag_max < 1e-12);
    CHECK(asym < 1e-12);
}

TEST_CASE("round trip dequantize(quantize(f)) = f") {
    const PhaseGrid g(8.0, 128);
    const Hbar hb(0.5);
    const PhaseField f = make_field(g, [](double q, double p) {
        return std::exp(-((q - 0.3) * (q - 0.3) + p * p) / 2.0) * cplx(1.0, 0.2);
    });
    CHECK(sup_norm(dequantize(quantize(f, hb), hb) - f) < 1e-8);

    const PhaseField one = named_field("bump", g);
    const PhaseField back = dequantize(quantize(one, hb), hb);
    CHECK(rel_interior_error(back, one) < 2e-2);
}

TEST_CASE("dequantize is linear") {
    const PhaseGrid g(8.0, 48);
    const Hbar hb(0.5);
    const PairKernel k1 = quantize(named_field("gaussian", g), hb);
    const PairKernel k2 = quantize(named_field("hermite-1", g), hb);
    const cplx a(0.7, -0.1), b(0.2, 0.4);
    const PhaseField lhs = dequantize(a * k1 + b * k2, hb);
    const PhaseField rhs = a * dequantize(k1, hb) + b * dequantize(k2, hb);
    CHECK(sup_norm(lhs - rhs) < 1e-12);
}

TEST_CASE("morphism property: quantize intertwines star and twisted convolution") {
    const PhaseGrid g(8.0, 128);
    const Hbar hb(0.5);
    const PhaseField f = named_field("gaussian", g);
    const PhaseField gg = make_field(g, [](double q, double p) {
        return std::exp(-((q - 0.4) * (q - 0.4) + (p + 0.3) * (p + 0.3)) / 2.0);
    });
    const PairKernel lhs = quantize(moyal_fast(f, gg, hb), hb);
    const PairKernel rhs = twisted_convolve(quantize(f, hb), quantize(gg, hb), hb);
    CHECK(sup_norm(lhs - rhs) / sup_norm(lhs) < 1e-3);

    // and through dequantize back onto the base
    const PhaseField base = dequantize(rhs, hb);
    CHECK(rel_interior_error(base, moyal_fast(f, gg, hb)) < 1e-3);
}

TEST_CASE("twisted convolution with the quantized unit is the identity") {
    const PhaseGrid g(8.0, 96);
    const Hbar hb(0.5);
    const PairKernel k = quantize(named_field("gaussian", g), hb);
    const PairKernel unit = quantize(named_field("bump", g), hb);
    const PairKernel conv = twisted_convolve(k, unit, hb);
    CHECK(sup_norm(conv - k) / sup_norm(k) < 2e-2);
}

TEST_CASE("untwisted limit: plain convolution commutes for even real kernels") {
    const PhaseGrid g(8.0, 48);
    const Hbar hb(0.5);
    const PairKernel k1 = quantize(named_field("gaussian", g), hb);
    const PairKernel k2 = quantize(named_field("hermite-2", g), hb);
    const PairKernel ab = twisted_convolve(k1, k2, hb, TwistMode::none);
    const PairKernel ba = twisted_convolve(k2, k1, hb, TwistMode::none);
    CHECK(sup_norm(ab - ba) / sup_norm(ab) < 1e-10);
    // with the cocycle the factors do not commute
    const PhaseGrid g2(8.0, 48);
    const PhaseField fq = named_field("coordinate-q-windowed", g2);
    const PhaseField fp = named_field("coordinate-p-windowed", g2);
    const PairKernel tq = quantize(fq, hb), tp = quantize(fp, hb);
    const PairKernel c1 = twisted_convolve(tq, tp, hb), c2 = twisted_convolve(tp, tq, hb);
    CHECK(sup_norm(c1 - c2) / sup_norm(c1) > 1e-3);
}

TEST_CASE("involution: conjugate field maps to conjugate-reflected kernel") {
    const PhaseGrid g(8.0, 64);
    const Hbar hb(0.5);
    const PhaseField f = make_field(g, [](double q, double p) {
        return cplx(std::exp(-(q * q + p * p) / 2), 0.4 * q * std::exp(-(q * q + p * p) / 2));
    });
    const PairKernel lhs = quantize(conj(f), hb);
    const PairKernel rhs = kernel_involution(quantize(f, hb));
    CHECK(sup_norm(lhs - rhs) < 1e-12);

    // positivity witness at the identity: (K* . K)(0) real and nonnegative
    const PairKernel k = quantize(f, hb);
    const PairKernel prod = twisted_convolve(kernel_involution(k), k, hb);
    // evaluate at the difference-lattice point closest to 0
    cplx near0 = 0.0;
    double best = 1e300;
    for (int iq = 0; iq < g.n; ++iq)
        for (int ip = 0; ip < g.n; ++ip) {
            const double r = std::hypot(g.coord(iq), g.coord(ip));
            if (r < best) {
                best = r;
                near0 = prod.at(iq, ip);
            }
        }
    CHECK(near0.real() > 0.0);
    CHECK(std::abs(near0.imag()) < 1e-3 * near0.real());
}

TEST_CASE("equivariance under the quarter rotation, exact on the lattice") {
    // R(q,p) = (-p, q) maps cell centers to cell centers, so the statement
    // quantize(f . R^{-1})(D) = quantize(f)(R^{-1} D) is exactly testable
    const PhaseGrid g(8.0, 64);
    const Hbar hb(0.5);
    const PhaseField f = make_field(g, [](double q, double p) {
        return std::exp(-((q - 0.5) * (q - 0.5) + 2.0 * p * p) / 2.0);
    });
    // (f . R^{-1})(q,p) = f(p, -q)
    const PhaseField frot = make_field(g, [&](double q, double p) {
        return std::exp(-((p - 0.5) * (p - 0.5) + 2.0 * q * q) / 2.0);
    });
    const PairKernel k = quantize(f, hb);
    const PairKernel krot = quantize(frot, hb);
    double err = 0.0;
    for (int iq = 0; iq < g.n; ++iq)
        for (int ip = 0; ip < g.n; ++ip) {
            // R^{-1}(dq, dp) = (dp, -dq): index (ip, n-1-iq)
            err = std::max(err, std::abs(krot.at(iq, ip) - k.at(ip, g.n - 1 - iq)));
        }
    CHECK(err < 1e-10);
}

TEST_CASE("kernel CSV round trip") {
    const PhaseGrid g(4.0, 16);
    const Hbar hb(0.5);
    const PairKernel k = quantize(named_field("gaussian", g), hb);
    const PairKernel back = kernel_from_csv(kernel_to_csv(k));
    CHECK(back.grid == g);
    CHECK(sup_norm(back - k) < 1e-14);
    CHECK_THROWS_AS(kernel_from_csv("q,p,re,im\n"), std::invalid_argument);
}
