#include <doctest.h>

#include <cmath>

#include "ucp/errors.hpp"
#include "ucp/fractal.hpp"
#include "ucp/geometry.hpp"
#include "test_util.hpp"

using namespace ucp;

TEST_CASE("fractal dimension reference values") {
    CHECK(fractal_dimension(2, 3.0) == doctest::Approx(0.6309).epsilon(5e-4));
    CHECK(fractal_dimension(2, 4.0) == doctest::Approx(0.50).epsilon(5e-4));
    CHECK(fractal_dimension(2, 4.5) == doctest::Approx(0.4607).epsilon(5e-4));
    CHECK(fractal_dimension(2, 5.0) == doctest::Approx(0.4302).epsilon(2e-3));
    CHECK(fractal_dimension(3, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(fractal_dimension(2, 1.0), DomainError);
    CHECK_THROWS_AS(fractal_dimension(1, 3.0), DomainError);
}

TEST_CASE("alternative dimension definition") {
    CHECK(fractal_dimension_alt(1.0 / 3.0) == doctest::Approx(0.6309).epsilon(5e-4));
    CHECK(fractal_dimension_alt(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    // the two definitions meet exactly at rho = 3
    CHECK(fractal_dimension_alt(1.0 / 3.0) ==
          doctest::Approx(fractal_dimension(2, 3.0)).epsilon(1e-13));
    CHECK(fractal_dimension_alt(0.25) != doctest::Approx(fractal_dimension(2, 4.0)).epsilon(1e-3));
    CHECK_THROWS_AS(fractal_dimension_alt(0.0), DomainError);
    CHECK_THROWS_AS(fractal_dimension_alt(1.0), DomainError);
}

TEST_CASE("lacunarity parameters") {
    const Descriptors even = lacunarity_parameters(4, 0.2);
    CHECK(even.g_c == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(even.eps_min == 0.0);
    CHECK(even.eps_reg == doctest::Approx(0.2 / 3.0).epsilon(1e-14));
    REQUIRE(even.eps_max.has_value());
    CHECK(*even.eps_max == doctest::Approx(0.1).epsilon(1e-14));

    const Descriptors odd = lacunarity_parameters(5, 0.1);
    CHECK(odd.g_c == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(odd.eps_reg == doctest::Approx(0.125).epsilon(1e-14));
    REQUIRE(odd.eps_max.has_value());
    CHECK(*odd.eps_max == doctest::Approx(0.25).epsilon(1e-14));

    // the N=2 even and N=3 odd denominators vanish
    CHECK(!lacunarity_parameters(2, 0.3).eps_max.has_value());
    CHECK(!lacunarity_parameters(3, 0.2).eps_max.has_value());

    CHECK_THROWS_AS(lacunarity_parameters(4, 0.25), DomainError); // zeta = 1/N
    CHECK_THROWS_AS(lacunarity_parameters(4, 0.0), DomainError);
    CHECK_THROWS_AS(lacunarity_parameters(1, 0.1), DomainError);
}

TEST_CASE("lacunarity ordering 0 = eps_min < eps_reg < eps_max") {
    testutil::SpecSampler gen(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int N = gen.uniform_int(4, 12);
        const double zeta = gen.uniform(1e-4, 1.0 / N - 1e-4);
        const Descriptors d = lacunarity_parameters(N, zeta);
        CHECK(d.eps_min == 0.0);
        CHECK(d.eps_reg > 0.0);
        REQUIRE(d.eps_max.has_value());
        CHECK(d.eps_reg < *d.eps_max);
    }
}

TEST_CASE("ucp epsilon is the stage-1 gap") {
    PotentialSpec a{2, 3.0, 1.0, 0.0, 1, 1.0, 0.0};
    CHECK(ucp_epsilon(a) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    PotentialSpec b{2, 2.0, 1.0, 1.0, 1, 1.0, 0.0};
    CHECK(ucp_epsilon(b) == doctest::Approx(0.25).epsilon(1e-15));

    // nu=0, L=1: epsilon = zeta^mu
    PotentialSpec c{3, 4.0, 1.5, 0.0, 2, 1.0, 0.0};
    CHECK(ucp_epsilon(c) == doctest::Approx(std::pow(0.25, 1.5)).epsilon(1e-14));

    PotentialSpec s0{2, 3.0, 1.0, 0.0, 0, 1.0, 0.0};
    CHECK_THROWS_AS(ucp_epsilon(s0), DomainError);
}

TEST_CASE("nu=0 layout is the minimum-lacunarity arrangement: all gaps equal") {
    // stage-1 gaps of the fractal case all equal d_1, matching eps_reg geometry
    PotentialSpec s{5, 8.0, 1.0, 0.0, 1, 1.0, 0.0};
    const SegmentLayout lay = build_layout(s);
    REQUIRE(lay.segments.size() == 5);
    const double d1 = gap_width(s, 1);
    for (std::size_t i = 0; i + 1 < lay.segments.size(); ++i) {
        const double gap = lay.segments[i + 1].start - lay.segments[i].end;
        CHECK(gap == doctest::Approx(d1).epsilon(1e-12));
    }
}
