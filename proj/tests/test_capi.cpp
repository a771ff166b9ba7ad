#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "ucp.h"

namespace {

struct SpecGuard {
    ucp_spec* h = nullptr;
    ~SpecGuard() { ucp_spec_free(h); }
};

} // namespace

TEST_CASE("c api: create, validate, free") {
    SpecGuard g;
    REQUIRE(ucp_spec_create(2, 3.0, 1.0, 0.0, 1, 1.0, 25.0, &g.h) == UCP_OK);
    int ok = -1;
    char report[512];
    REQUIRE(ucp_spec_validate(g.h, &ok, report, sizeof(report)) == UCP_OK);
    CHECK(ok == 1);
    CHECK(report[0] == '\0');

    SpecGuard bad;
    REQUIRE(ucp_spec_create(2, 3.0, 0.0, 0.0, 1, 1.0, 25.0, &bad.h) == UCP_OK);
    REQUIRE(ucp_spec_validate(bad.h, &ok, report, sizeof(report)) == UCP_OK);
    CHECK(ok == 0);
    CHECK(std::strstr(report, "simultaneously zero") != nullptr);
}

TEST_CASE("c api: null arguments and error text") {
    CHECK(ucp_spec_create(2, 3.0, 1.0, 0.0, 1, 1.0, 25.0, nullptr) == UCP_ERR_BAD_ARGUMENT);
    double out = 0.0;
    CHECK(ucp_fractal_dimension(1, 3.0, &out) == UCP_ERR_DOMAIN);
    char msg[256];
    REQUIRE(ucp_last_error(msg, sizeof(msg)) == UCP_OK);
    CHECK(std::strlen(msg) > 0);
    CHECK(std::string(ucp_status_name(UCP_ERR_DOMAIN)) == "domain error");
}

TEST_CASE("c api: geometry surface") {
    SpecGuard g;
    REQUIRE(ucp_spec_create(2, 3.0, 1.0, 0.0, 1, 1.0, 0.0, &g.h) == UCP_OK);

    double v = 0.0;
    REQUIRE(ucp_segment_width(g.h, 1, &v) == UCP_OK);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    REQUIRE(ucp_gap_width(g.h, 1, &v) == UCP_OK);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    REQUIRE(ucp_q_pochhammer(0.25, 0.5, 3, &v) == UCP_OK);
    CHECK(v == doctest::Approx(0.615234375).epsilon(1e-15));

    long long count = 0;
    REQUIRE(ucp_layout_count(g.h, 0, &count) == UCP_OK);
    CHECK(count == 2);
    std::vector<double> starts(count), ends(count);
    long long written = 0;
    REQUIRE(ucp_layout_build(g.h, 0, starts.data(), ends.data(), count, &written) == UCP_OK);
    CHECK(written == 2);
    CHECK(starts[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(ucp_layout_build(g.h, 0, starts.data(), ends.data(), 1, &written) ==
          UCP_ERR_BUFFER_TOO_SMALL);

    SpecGuard big;
    REQUIRE(ucp_spec_create(6, 7.0, 1.0, 0.0, 10, 1.0, 0.0, &big.h) == UCP_OK);
    CHECK(ucp_layout_count(big.h, 0, &count) == UCP_ERR_LAYOUT_TOO_LARGE);
}

TEST_CASE("c api: descriptors") {
    double D = 0.0;
    REQUIRE(ucp_fractal_dimension(2, 3.0, &D) == UCP_OK);
    CHECK(D == doctest::Approx(0.6309).epsilon(5e-4));
    REQUIRE(ucp_fractal_dimension_alt(1.0 / 3.0, &D) == UCP_OK);
    CHECK(D == doctest::Approx(0.6309).epsilon(5e-4));

    double gc, emin, ereg, emax;
    int defined = -1;
    REQUIRE(ucp_lacunarity(4, 0.2, &gc, &emin, &ereg, &emax, &defined) == UCP_OK);
    CHECK(gc == doctest::Approx(0.2));
    CHECK(defined == 1);
    CHECK(emax == doctest::Approx(0.1));
    REQUIRE(ucp_lacunarity(2, 0.3, &gc, &emin, &ereg, &emax, &defined) == UCP_OK);
    CHECK(defined == 0);
    CHECK(std::isnan(emax));
    CHECK(ucp_lacunarity(4, 0.3, &gc, &emin, &ereg, &emax, &defined) == UCP_ERR_DOMAIN);

    SpecGuard g;
    REQUIRE(ucp_spec_create(2, 3.0, 1.0, 0.0, 1, 1.0, 0.0, &g.h) == UCP_OK);
    double eps = 0.0;
    REQUIRE(ucp_lacunarity_epsilon(g.h, &eps) == UCP_OK);
    CHECK(eps == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("c api: transmission and sweep") {
    SpecGuard g;
    REQUIRE(ucp_spec_create(2, 3.0, 1.0, 0.0, 3, 1.0, 25.0, &g.h) == UCP_OK);

    double T = 0.0, R = 0.0, disc = 0.0;
    int warn = -1;
    REQUIRE(ucp_transmission(g.h, 7.0, UCP_METHOD_BOTH, &T, &R, &disc, &warn) == UCP_OK);
    CHECK(T == doctest::Approx(0.99947838281724377).epsilon(1e-10));
    CHECK(disc <= 1e-10);
    CHECK(warn == 0);
    REQUIRE(ucp_transmission(g.h, 5.0, UCP_METHOD_CLOSED, &T, &R, &disc, &warn) == UCP_OK);
    CHECK(warn == 1); // k^2 = V exactly: degenerate band, series branch
    CHECK(std::isfinite(T));

    CHECK(ucp_transmission(g.h, -1.0, UCP_METHOD_CLOSED, &T, &R, nullptr, nullptr) ==
          UCP_ERR_DOMAIN);

    const long long n = 33;
    std::vector<double> k(n), t(n), r(n), t2(n), r2(n);
    double maxdisc = 0.0;
    REQUIRE(ucp_sweep(g.h, 0.5, 10.0, n, UCP_METHOD_BOTH, 3, k.data(), t.data(), r.data(),
                      t2.data(), r2.data(), &maxdisc) == UCP_OK);
    CHECK(maxdisc <= 1e-8);
    CHECK(ucp_sweep(g.h, 0.5, 10.0, n, UCP_METHOD_BOTH, 3, k.data(), t.data(), r.data(),
                    nullptr, nullptr, &maxdisc) == UCP_ERR_BAD_ARGUMENT);
}

TEST_CASE("c api: analysis surface") {
    SpecGuard g;
    REQUIRE(ucp_spec_create(3, 2.0, 0.5, 1.0, 0, 25.0, 25.0, &g.h) == UCP_OK);

    const int stages[2] = {2, 4};
    double dist[4] = {0, 0, 0, 0};
    REQUIRE(ucp_saturation(g.h, stages, 2, 0.05, 4.0, 100, 2, dist) == UCP_OK);
    CHECK(dist[0] == 0.0);
    CHECK(dist[1] == dist[2]);
    CHECK(dist[1] > 0.0);

    SpecGuard sc;
    REQUIRE(ucp_spec_create(2, 3.0, 1.0, 0.0, 0, 5e-5, 10.0, &sc.h) == UCP_OK);
    double slope, intercept, rms, height;
    long long used, excluded;
    REQUIRE(ucp_scaling_fit(sc.h, 10.0, 100.0, 1e4, 300, UCP_FIT_EXACT, &slope, &intercept,
                            &rms, &used, &excluded, &height) == UCP_OK);
    CHECK(slope == doctest::Approx(-2.0).epsilon(0.025));

    SpecGuard res;
    REQUIRE(ucp_spec_create(2, 3.0, 1.0, 0.0, 0, 2.0, 25.0, &res.h) == UCP_OK);
    double kstar[64], tstar[64], width[64];
    long long count = 0;
    int plateau = -1;
    REQUIRE(ucp_find_resonances(res.h, 5.05, 9.0, 2000, 0.999, kstar, tstar, width, 64, &count,
                                &plateau) == UCP_OK);
    CHECK(plateau == 0);
    CHECK(count >= 1);

    double VS = 0.0;
    REQUIRE(ucp_area_preserving_height(res.h, 10.0, &VS) == UCP_OK);
    CHECK(VS == 10.0); // S = 0

    double est, exact;
    int kvalid;
    SpecGuard thin;
    REQUIRE(ucp_spec_create(8, 3.5, 0.5, 1.5, 4, 1.0, 0.0, &thin.h) == UCP_OK);
    REQUIRE(ucp_area_preserving_height(thin.h, 10.0, &VS) == UCP_OK);
    REQUIRE(ucp_reflection_asymptotic(thin.h, 10.0, 100.0 * std::sqrt(VS), &est, &exact, &VS,
                                      &kvalid) == UCP_OK);
    CHECK(kvalid == 1);
    CHECK(std::fabs(est - exact) / exact <= 0.05);
}

TEST_CASE("c api: grid surface") {
    SpecGuard g;
    REQUIRE(ucp_spec_create(3, 2.0, 0.5, 0.0, 2, 25.0, 25.0, &g.h) == UCP_OK);
    const long long nr = 3, nk = 5;
    std::vector<double> rho(nr), k(nk), t(nr * nk);
    std::vector<unsigned char> valid(nr);
    REQUIRE(ucp_grid(g.h, 3.5, 4.5, nr, 6.0, 8.0, nk, 2, rho.data(), k.data(), t.data(),
                     valid.data()) == UCP_OK);
    CHECK(valid[0] == 0);
    CHECK(valid[2] == 1);
    CHECK(std::isnan(t[0]));
    CHECK(!std::isnan(t[2 * nk]));
}
