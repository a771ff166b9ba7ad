#include <doctest.h>

#include <cmath>

#include "ucp/errors.hpp"
#include "ucp/geometry.hpp"
#include "ucp/scattering.hpp"
#include "ucp/spp.hpp"
#include "test_util.hpp"

using namespace ucp;

TEST_CASE("chebyshev closed forms against the recurrence") {
    CHECK(chebyshev_u(0, 0.3) == 1.0);
    CHECK(chebyshev_u(1, 0.3) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(chebyshev_u(3, 2.0) == doctest::Approx(56.0).epsilon(1e-13));
    CHECK(chebyshev_u(4, 1.0) == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(chebyshev_u(4, -1.0) == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(chebyshev_u(3, -1.0) == doctest::Approx(-4.0).epsilon(1e-13));

    testutil::SpecSampler gen(61);
    for (int trial = 0; trial < 300; ++trial) {
        const double x = gen.uniform(-10.0, 10.0);
        double um1 = 1.0, u0 = 2.0 * x; // U_0, U_1
        CHECK(std::fabs(chebyshev_u(0, x) - um1) <= 1e-10);
        CHECK(std::fabs(chebyshev_u(1, x) - u0) <= 1e-10 * std::max(1.0, std::fabs(u0)));
        for (int n = 2; n <= 64; ++n) {
            const double un = 2.0 * x * u0 - um1;
            um1 = u0;
            u0 = un;
            if (!std::isfinite(un)) break;
            const double got = chebyshev_u(n, x);
            CHECK(std::fabs(got - un) <= 1e-10 * std::max(1.0, std::fabs(un)));
        }
    }
}

TEST_CASE("chi1 and chi2") {
    PotentialSpec s{2, 3.0, 1.0, 0.0, 2, 1.0, 25.0};
    // q=1: -(b_S + d_S) = -r_1
    CHECK(chi1(s, 1) == doctest::Approx(-super_period(s, 1)).epsilon(1e-14));
    // q=2: -(b_2 + d_1) = -(1/9 + 1/3)
    CHECK(chi1(s, 2) == doctest::Approx(-4.0 / 9.0).epsilon(1e-14));
    // chi2(2,1) = d_2 - d_1 = -2/9
    CHECK(chi2(s, 2, 1) == doctest::Approx(-2.0 / 9.0).epsilon(1e-14));
    CHECK(chi2(s, 2, 1) == doctest::Approx(chi1(s, 2) - chi1(s, 1)).epsilon(1e-14));

    CHECK_THROWS_AS(chi1(s, 0), std::out_of_range);
    CHECK_THROWS_AS(chi1(s, 3), std::out_of_range);
    CHECK_THROWS_AS(chi2(s, 2, 2), std::out_of_range);
    CHECK_THROWS_AS(chi2(s, 1, 2), std::out_of_range);

    // signs: chi1 < 0 always; chi2(q,h) < 0 for h < q
    testutil::SpecSampler gen(67, 6);
    for (int trial = 0; trial < 60; ++trial) {
        PotentialSpec t = gen.next();
        for (int q = 1; q <= t.S; ++q) {
            CHECK(chi1(t, q) < 0.0);
            for (int h = 1; h < q; ++h) CHECK(chi2(t, q, h) < 0.0);
        }
    }
}

TEST_CASE("Gamma_1 is the Kronig-Penney Bloch phase") {
    PotentialSpec s{4, 4.2, 0.8, 0.3, 1, 3.0, 12.0};
    for (double k : {0.9, 2.1, 3.9, 6.0}) {
        const BlochArgs ba = bloch_args(s, k);
        REQUIRE(ba.gamma.size() == 1);
        const WaveContext ctx = make_wave_context(k, s.V);
        const double bS = segment_width(s, 1);
        const double dS = gap_width(s, 1);
        const BarrierFactors f = barrier_factors(ctx, bS);
        // |m22| cos(tau + k r_1) expanded by hand:
        const double expect = std::cos(k * dS) * f.cos_ktb - f.sig_plus_sin * std::sin(k * dS);
        CHECK(ba.gamma[0] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("frozen Bloch arguments") {
    // anchored by the oracle-equivalence suite before freezing
    PotentialSpec s{2, 3.0, 1.0, 0.0, 2, 1.0, 25.0};
    const BlochArgs ba = bloch_args(s, 7.0);
    REQUIRE(ba.gamma.size() == 2);
    CHECK(ba.gamma[0] == doctest::Approx(0.22274487446400318).epsilon(1e-12));
    CHECK(ba.gamma[1] == doctest::Approx(-0.45604010929499955).epsilon(1e-12));
    CHECK(!ba.log_scale);
}

TEST_CASE("closed form: S=0 single barrier formula") {
    PotentialSpec s{2, 3.0, 1.0, 0.0, 0, 1.8, 14.0};
    for (double k : {0.4, 1.5, 3.742, 8.0}) {
        const Transmission tr = transmission_closed_form(s, k);
        const Transmission direct =
            transmission_from_matrix(barrier_matrix(make_wave_context(k, s.V), s.L));
        CHECK(tr.T == doctest::Approx(direct.T).epsilon(1e-12));
        CHECK(tr.T + tr.R == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("closed form: V=0 transmits everything") {
    PotentialSpec s{3, 2.5, 0.6, 0.9, 3, 5.0, 0.0};
    for (double k : {0.3, 1.0, 7.7}) {
        const Transmission tr = transmission_closed_form(s, k);
        CHECK(tr.T == 1.0);
        CHECK(tr.R == 0.0);
    }
}

TEST_CASE("closed form: barrier resonance gives exact T=1") {
    // ktilde * b_S = pi => sigma_- sin = 0
    PotentialSpec s{2, 3.0, 1.0, 0.0, 1, 1.0, 20.0};
    const double bS = segment_width(s, 1);
    const double kt = M_PI / bS;
    const double k = std::sqrt(kt * kt + s.V);
    const Transmission tr = transmission_closed_form(s, k);
    CHECK(tr.T == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed form agrees with the oracle (randomized)") {
    testutil::SpecSampler gen(71, 5);
    int tested = 0;
    double worst = 0.0;
    while (tested < 60) {
        PotentialSpec s = gen.next();
        std::int64_t n = 1;
        for (int i = 0; i < s.S; ++i) n *= s.N;
        if (n > 3000) continue;
        ++tested;
        for (int j = 0; j < 8; ++j) {
            const double k = gen.next_k(s);
            const double tc = transmission_closed_form(s, k).T;
            const double tb = brute_force_transmission(s, k).T;
            worst = std::max(worst, std::fabs(tc - tb));
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("closed form stays finite in the deep band-gap regime") {
    // a wide, deeply evanescent stack overflows the plain recursion; the
    // log-magnitude path must take over and still agree with the oracle
    PotentialSpec s{6, 50.0, 1.0, 0.0, 5, 1e5, 50.0};
    const double k = 0.5;
    const BlochArgs ba = bloch_args(s, k);
    CHECK(ba.log_scale);
    for (double lg : ba.log_abs_u) CHECK(std::isfinite(lg));
    const Transmission tr = transmission_closed_form(s, k);
    CHECK(std::isfinite(tr.T));
    CHECK(tr.T >= 0.0);
    CHECK(tr.T <= 1e-100);
    CHECK(tr.R == doctest::Approx(1.0).epsilon(1e-9));

    const Transmission tb = brute_force_transmission(s, k, 10000);
    CHECK(std::fabs(tr.T - tb.T) <= 1e-8);
    CHECK(std::fabs(tr.R - tb.R) <= 1e-9);
}

TEST_CASE("area preserving height") {
    PotentialSpec s0{2, 3.0, 1.0, 0.0, 0, 1.0, 0.0};
    CHECK(area_preserving_height(s0, 10.0) == 10.0);

    PotentialSpec s1{2, 3.0, 1.0, 0.0, 1, 1.0, 0.0};
    CHECK(area_preserving_height(s1, 10.0) == doctest::Approx(15.0).epsilon(1e-14));

    testutil::SpecSampler gen(83, 6);
    for (int trial = 0; trial < 100; ++trial) {
        PotentialSpec s = gen.next();
        const double V0 = gen.uniform(1.0, 40.0);
        const double VS = area_preserving_height(s, V0);
        CHECK(VS >= V0);
        double nS = 1.0;
        for (int i = 0; i < s.S; ++i) nS *= s.N;
        const double area = nS * segment_width(s, s.S) * VS;
        CHECK(area == doctest::Approx(s.L * V0).epsilon(1e-12));
    }
}

TEST_CASE("reflection asymptotic: S=0 Born-like tail") {
    PotentialSpec s{2, 3.0, 1.0, 0.0, 0, 1.0, 0.0};
    const double V0 = 10.0, k = 200.0;
    const ReflectionAsymptotic ra = reflection_asymptotic(s, V0, k);
    CHECK(ra.estimate == doctest::Approx(std::pow(V0 * s.L / (2.0 * k), 2)).epsilon(1e-12));
    CHECK(ra.k_valid);
    CHECK(reflection_asymptotic(s, V0, 1.0).k_valid == false);
}

TEST_CASE("reflection asymptotic tracks the exact value where k b_S << 1") {
    // thin-segment regime: the delta-like approximation is quantitative
    PotentialSpec s{8, 3.5, 0.5, 1.5, 4, 1.0, 0.0};
    const double V0 = 10.0;
    const ReflectionAsymptotic probe = reflection_asymptotic(s, V0, 100.0);
    const double k = 100.0 * std::sqrt(probe.height); // k^2 = 1e4 V_S
    const ReflectionAsymptotic ra = reflection_asymptotic(s, V0, k);
    CHECK(ra.k_valid);
    REQUIRE(ra.exact_reflection > 1e-12);
    CHECK(std::fabs(ra.estimate - ra.exact_reflection) / ra.exact_reflection <= 0.05);
}

TEST_CASE("laue function") {
    CHECK(laue(1e-12, 3) == doctest::Approx(9.0));
    CHECK(laue(M_PI, 5) == doctest::Approx(25.0)); // m*pi limit
    CHECK(laue(M_PI / 2, 2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(laue(M_PI / 3, 3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(laue(0.5, 0), DomainError);
}

TEST_CASE("scaling function: Laue product equals the Chebyshev square") {
    PotentialSpec s{3, 4.0, 1.0, 0.0, 2, 5.0, 25.0};
    int in_band = 0, in_gap = 0;
    for (double k = 5.2; k < 9.0; k += 0.05) {
        const BlochArgs ba = bloch_args(s, k);
        const ScalingFunction w = scaling_function(s, k);
        double prod = 1.0;
        for (double u : ba.u) prod *= u;
        if (!w.gap_regime) {
            ++in_band;
            CHECK(w.value == doctest::Approx(prod * prod).epsilon(1e-10));
        } else {
            ++in_gap;
            CHECK(w.value == doctest::Approx(prod * prod).epsilon(1e-10));
            bool some_out = false;
            for (double g : ba.gamma)
                if (std::fabs(g) > 1.0) some_out = true;
            CHECK(some_out);
        }
    }
    CHECK(in_band > 0);
    CHECK(in_gap > 0);

    PotentialSpec s0{2, 3.0, 1.0, 0.0, 0, 1.0, 25.0};
    CHECK(scaling_function(s0, 2.0).value == 1.0); // empty product
}

TEST_CASE("transmission bounds across the randomized suite") {
    testutil::SpecSampler gen(89, 5);
    for (int trial = 0; trial < 150; ++trial) {
        PotentialSpec s = gen.next();
        const double k = gen.next_k(s);
        const Transmission tr = transmission_closed_form(s, k);
        CHECK(tr.T > 0.0);
        CHECK(tr.T <= 1.0);
        CHECK(std::fabs(tr.T + tr.R - 1.0) <= 1e-10);
    }
}
