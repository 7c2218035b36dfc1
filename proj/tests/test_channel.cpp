#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irsim/channel.hpp"
#include "irsim/numerics.hpp"
#include "irsim/rng.hpp"

using irsim::ComplexMatrix;
using irsim::ComplexVector;
using cplx = std::complex<double>;

namespace {

// Unit-geometry config: all link gains exactly 1, M = 1. The single-tap
// user link is pure LoS (kappa at the default pure-LoS limit), so its total
// gain is the full unit gain.
irsim::SystemConfig unit_geometry() {
    irsim::SystemConfig cfg;
    cfg.M = 1;
    cfg.M0 = 4;  // mu = 4
    cfg.N = 16;
    cfg.I0 = 2;
    cfg.gamma0 = 1.0;
    cfg.D1 = cfg.D2 = cfg.D3 = 1.0;
    return cfg;
}

}  // namespace

TEST_CASE("validate rejects broken configs") {
    irsim::SystemConfig cfg;
    CHECK_NOTHROW(irsim::validate(cfg));

    auto bad = cfg;
    bad.M0 = 134;  // not a multiple of M = 15
    CHECK_THROWS_AS(irsim::validate(bad), irsim::ParameterError);

    bad = cfg;
    bad.omega = 2;  // shares a factor with N = 128
    CHECK_THROWS_AS(irsim::validate(bad), irsim::ParameterError);

    bad = cfg;
    bad.N = 120;  // < L(M+1)
    CHECK_THROWS_AS(irsim::validate(bad), irsim::ParameterError);

    bad = cfg;
    bad.L = 9;  // != max(Ld, L1+L2-1)
    CHECK_THROWS_AS(irsim::validate(bad), irsim::ParameterError);

    bad = cfg;
    bad.L_cp = 7;
    CHECK_THROWS_AS(irsim::validate(bad), irsim::ParameterError);

    bad = cfg;
    bad.I0 = 15;
    CHECK_THROWS_AS(irsim::validate(bad), irsim::ParameterError);
}

TEST_CASE("path_gain") {
    CHECK(irsim::path_gain(0.37, 1.0, 2.9) == doctest::Approx(0.37).epsilon(1e-15));
    // 1e-3 * 50^-2.4, checked against an independent calculation.
    CHECK(irsim::path_gain(1e-3, 50.0, 2.4) ==
          doctest::Approx(8.365116420730189e-08).epsilon(1e-12));
    // Reference geometry: user 1.5 m from the surface, gamma0 = -30 dB.
    CHECK(irsim::path_gain(1e-3, 1.5, 2.2) ==
          doctest::Approx(0.00040982573843632343).epsilon(1e-12));
    CHECK_THROWS_AS(irsim::path_gain(0.0, 1.0, 1.0), irsim::ParameterError);
    CHECK_THROWS_AS(irsim::path_gain(1.0, -2.0, 1.0), irsim::ParameterError);
}

TEST_CASE("exp_pdp") {
    const auto single = irsim::exp_pdp(1, 2.0);
    CHECK(single.size() == 1);
    CHECK(single(0) == doctest::Approx(1.0).epsilon(1e-15));

    const double e = std::exp(-0.5);
    const auto two = irsim::exp_pdp(2, 2.0);
    CHECK(two(0) == doctest::Approx(1.0 / (1.0 + e)).epsilon(1e-14));
    CHECK(two(1) == doctest::Approx(e / (1.0 + e)).epsilon(1e-14));

    const auto eight = irsim::exp_pdp(8, 2.0);
    CHECK(eight.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eight.minCoeff() > 0.0);
    for (int l = 1; l < 8; ++l)
        CHECK(eight(l) < eight(l - 1));

    CHECK_THROWS_AS(irsim::exp_pdp(0, 2.0), irsim::ParameterError);
}

TEST_CASE("sample_rayleigh_link moments") {
    auto eng = irsim::make_stream({100});
    const auto profile = irsim::exp_pdp(8, 2.0);
    const long draws = 100000;
    double total = 0.0;
    double p0 = 0.0, p1 = 0.0;
    for (long t = 0; t < draws; ++t) {
        const ComplexVector h = irsim::sample_rayleigh_link(profile, 1.0, eng);
        total += h.squaredNorm();
        p0 += std::norm(h(0));
        p1 += std::norm(h(1));
    }
    CHECK(total / draws == doctest::Approx(1.0).epsilon(0.02));
    CHECK(p1 / p0 == doctest::Approx(std::exp(-0.5)).epsilon(0.05));
}

TEST_CASE("sample_rician_link moments and limits") {
    const auto profile2 = irsim::exp_pdp(2, 2.0);

    // Pure-LoS limit: the norm becomes deterministic.
    auto eng = irsim::make_stream({101});
    for (int t = 0; t < 100; ++t) {
        const ComplexVector h = irsim::sample_rician_link(profile2, 3.0, 1e12, eng);
        CHECK(h.squaredNorm() == doctest::Approx(3.0).epsilon(1e-6));
    }

    // kappa = 0: all-Rayleigh, total power preserved.
    eng = irsim::make_stream({102});
    double total = 0.0;
    const long draws = 100000;
    for (long t = 0; t < draws; ++t)
        total += irsim::sample_rician_link(profile2, 2.0, 0.0, eng).squaredNorm();
    CHECK(total / draws == doctest::Approx(2.0).epsilon(0.02));

    // kappa = 1: the LoS tap carries half the power, deterministically.
    eng = irsim::make_stream({103});
    double tap0 = 0.0;
    for (long t = 0; t < draws; ++t)
        tap0 += std::norm(irsim::sample_rician_link(profile2, 2.0, 1.0, eng)(0));
    CHECK(tap0 / draws == doctest::Approx(1.0).epsilon(0.02));

    auto throwaway = irsim::make_stream({1});
    CHECK_THROWS_AS(irsim::sample_rician_link(profile2, 1.0, -0.5, throwaway),
                    irsim::ParameterError);
}

TEST_CASE("sample_link_set moments") {
    const irsim::SystemConfig cfg = unit_geometry();
    const long draws = 100000;

    auto eng = irsim::make_stream({104});
    double q_pow = 0.0, d_pow = 0.0;
    for (long t = 0; t < draws; ++t) {
        const auto links = irsim::sample_link_set(cfg, eng);
        d_pow += links.d.squaredNorm();
        q_pow += irsim::linear_convolve(links.g[0], links.u[0]).squaredNorm();
    }
    // E|q|^2 = E|g|^2 E|u|^2 = mu for independent links at unit gains.
    CHECK(q_pow / draws == doctest::Approx(cfg.mu()).epsilon(0.03));
    CHECK(d_pow / draws == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("received-power moment matches the closed form at defaults") {
    const irsim::SystemConfig cfg;  // reference setup, L2 = 1
    const double want = cfg.M0 * cfg.gamma0 * cfg.gamma0 * std::pow(cfg.D1, -cfg.alpha1) *
                            std::pow(cfg.D2, -cfg.alpha2) +
                        cfg.gamma0 * std::pow(cfg.D3, -cfg.alpha3);

    auto eng = irsim::make_stream({105});
    const ComplexVector theta = ComplexVector::Ones(cfg.M);
    double total = 0.0;
    const long draws = 100000;
    for (long t = 0; t < draws; ++t) {
        const auto real = irsim::cascade(irsim::sample_link_set(cfg, eng), cfg.L);
        total += irsim::effective_cir(real, theta).squaredNorm();
    }
    CHECK(total / draws == doctest::Approx(want).epsilon(0.03));
}

TEST_CASE("cascade") {
    irsim::LinkSet links;
    auto eng = irsim::make_stream({106});

    // Identity convolution: u = [1].
    links.d = ComplexVector::Zero(3);
    links.g = {ComplexVector(3)};
    for (int i = 0; i < 3; ++i)
        links.g[0](i) = irsim::complex_gaussian(eng, 1.0);
    links.u = {ComplexVector::Ones(1)};
    auto real = irsim::cascade(links, 4);
    CHECK((real.Q.col(0).head(3) - links.g[0]).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(real.Q(3, 0)) == 0.0);

    // Hand-expanded case.
    links.g[0] = ComplexVector(2);
    links.g[0] << cplx(1, 0), cplx(2, 0);
    links.u[0] = ComplexVector(2);
    links.u[0] << cplx(3, 0), cplx(4, 0);
    real = irsim::cascade(links, 4);
    ComplexVector want(4);
    want << cplx(3, 0), cplx(10, 0), cplx(8, 0), cplx(0, 0);
    CHECK((real.Q.col(0) - want).cwiseAbs().maxCoeff() < 1e-15);

    // Random L1 = 7, L2 = 2 agrees with linear_convolve; trailing zeros exact.
    links.g[0] = ComplexVector(7);
    links.u[0] = ComplexVector(2);
    for (int i = 0; i < 7; ++i)
        links.g[0](i) = irsim::complex_gaussian(eng, 1.0);
    for (int i = 0; i < 2; ++i)
        links.u[0](i) = irsim::complex_gaussian(eng, 1.0);
    links.d = ComplexVector::Zero(8);
    real = irsim::cascade(links, 8);
    CHECK((real.Q.col(0) - irsim::linear_convolve(links.g[0], links.u[0]))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(real.Q.rows() == 8);

    CHECK_THROWS_AS(irsim::cascade(links, 7), irsim::DimensionError);
}

TEST_CASE("single-tap user links reduce cascading to a scalar product") {
    irsim::SystemConfig cfg;  // L2 = 1
    auto eng = irsim::make_stream({108});
    for (int rep = 0; rep < 20; ++rep) {
        const auto links = irsim::sample_link_set(cfg, eng);
        const auto real = irsim::cascade(links, cfg.L);
        for (int m = 0; m < cfg.M; ++m) {
            irsim::ComplexVector want = irsim::ComplexVector::Zero(cfg.L);
            want.head(links.g[m].size()) = links.u[m](0) * links.g[m];
            CHECK((real.Q.col(m) - want).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("effective_cir") {
    auto eng = irsim::make_stream({107});
    irsim::ChannelRealization real;
    real.d = ComplexVector(4);
    for (int i = 0; i < 4; ++i)
        real.d(i) = irsim::complex_gaussian(eng, 1.0);

    // No surface contribution.
    real.Q = ComplexMatrix::Zero(4, 2);
    ComplexVector theta = ComplexVector::Ones(2);
    CHECK((irsim::effective_cir(real, theta) - real.d).cwiseAbs().maxCoeff() == 0.0);

    // Single sub-surface, theta = [1].
    irsim::ChannelRealization one;
    one.d = real.d;
    one.Q = ComplexMatrix(4, 1);
    for (int i = 0; i < 4; ++i)
        one.Q(i, 0) = irsim::complex_gaussian(eng, 1.0);
    CHECK((irsim::effective_cir(one, ComplexVector::Ones(1)) - (one.d + one.Q.col(0)))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    // Random realization against the direct product.
    irsim::ChannelRealization rnd;
    rnd.d = real.d;
    rnd.Q = ComplexMatrix(4, 3);
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < 3; ++m)
            rnd.Q(i, m) = irsim::complex_gaussian(eng, 1.0);
    ComplexVector phases(3);
    for (int m = 0; m < 3; ++m)
        phases(m) = std::polar(1.0, -2.0 * std::numbers::pi * m / 3.0);
    CHECK((irsim::effective_cir(rnd, phases) - (rnd.d + rnd.Q * phases))
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    ComplexVector bad = phases;
    bad(1) *= 1.5;
    CHECK_THROWS_AS(irsim::effective_cir(rnd, bad), irsim::ReflectionError);
}
