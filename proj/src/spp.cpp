#include "ucp/spp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucp/errors.hpp"
#include "ucp/geometry.hpp"

namespace ucp {

namespace {

constexpr double kPlainLimit = 1e150; // beyond this the recursion goes logarithmic

// log(sinh(z)) for z > 0 without overflow
double log_sinh(double z) {
    if (z < 20.0) return std::log(std::sinh(z));
    return z - M_LN2 + std::log1p(-std::exp(-2.0 * z));
}

// sign * e^{lg}; sgn = 0 encodes exact zero
struct LogSigned {
    double lg = -std::numeric_limits<double>::infinity();
    int sgn = 0;

    static LogSigned from(double v) {
        if (v == 0.0) return {};
        return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
    }
    double value() const {
        if (sgn == 0) return 0.0;
        return sgn * std::exp(lg); // may overflow to +-inf
    }
    LogSigned times(const LogSigned& o) const {
        if (sgn == 0 || o.sgn == 0) return {};
        return {lg + o.lg, sgn * o.sgn};
    }
};

LogSigned log_signed_sum(const std::vector<LogSigned>& terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sgn != 0) m = std::max(m, t.lg);
    if (!std::isfinite(m)) return {};
    double acc = 0.0;
    for (const auto& t : terms)
        if (t.sgn != 0) acc += t.sgn * std::exp(t.lg - m);
    if (acc == 0.0) return {};
    return {m + std::log(std::fabs(acc)), acc > 0.0 ? 1 : -1};
}

// U_n on a log-signed argument; exact for |x| <= 1, logarithmic above
LogSigned chebyshev_u_log(int n, const LogSigned& x) {
    if (n == 0) return LogSigned::from(1.0);
    if (x.sgn == 0) {
        // U_n(0) cycles 1, 0, -1, 0
        switch (n % 4) {
            case 0: return LogSigned::from(1.0);
            case 2: return LogSigned::from(-1.0);
            default: return {};
        }
    }
    if (x.lg <= 0.0) return LogSigned::from(chebyshev_u(n, x.value()));

    const double theta = x.lg < 700.0 ? std::acosh(std::exp(x.lg)) : x.lg + M_LN2;
    const double lg = log_sinh((n + 1) * theta) - log_sinh(theta);
    const int sgn = (n % 2 == 1 && x.sgn < 0) ? -1 : 1;
    return {lg, sgn};
}

struct UnitCell {
    double abs_m22, tau, sig_minus_sin, b_S;
    std::vector<double> x; // x[q] = -chi1(q) = b_S + d_{S-q+1}, q = 1..S
};

UnitCell unit_cell(const PotentialSpec& spec, double k) {
    require_valid(spec);
    const WaveContext ctx = make_wave_context(k, spec.V);
    const StageMetrics m = stage_metrics(spec);
    const BarrierFactors f = barrier_factors(ctx, m.b[spec.S]);
    UnitCell c{f.abs_m22, f.tau, f.sig_minus_sin, m.b[spec.S], {}};
    c.x.resize(spec.S + 1, 0.0);
    for (int q = 1; q <= spec.S; ++q) c.x[q] = m.b[spec.S] + m.d[spec.S - q + 1];
    return c;
}

// plain-double recursion; returns false on overflow past kPlainLimit
bool bloch_plain(const PotentialSpec& spec, double k, const UnitCell& c, BlochArgs& out) {
    const int S = spec.S;
    std::vector<double> gamma(S + 1), u(S + 1), ulow(S + 1);
    double prefix = 1.0; // prod_{p<q} U_{N-1}(Gamma_p)
    for (int q = 1; q <= S; ++q) {
        double g = c.abs_m22 * std::cos(c.tau + k * c.x[q]) * prefix;
        double tail = 1.0; // prod_{p=h+1}^{q-1} u_p
        for (int h = q - 1; h >= 1; --h) {
            g -= std::cos(k * (c.x[q] - c.x[h])) * ulow[h] * tail;
            tail *= u[h];
        }
        if (!std::isfinite(g) || std::fabs(g) > kPlainLimit) return false;
        gamma[q] = g;
        u[q] = chebyshev_u(spec.N - 1, g);
        ulow[q] = chebyshev_u(spec.N - 2, g);
        if (!std::isfinite(u[q]) || std::fabs(u[q]) > kPlainLimit) return false;
        prefix *= u[q];
        if (!std::isfinite(prefix) || std::fabs(prefix) > kPlainLimit) return false;
    }
    out.gamma.assign(gamma.begin() + 1, gamma.end());
    out.u.assign(u.begin() + 1, u.end());
    out.log_abs_u.resize(S);
    out.sign_u.resize(S);
    for (int q = 0; q < S; ++q) {
        const LogSigned ls = LogSigned::from(out.u[q]);
        out.log_abs_u[q] = ls.lg;
        out.sign_u[q] = ls.sgn;
    }
    out.log_scale = false;
    return true;
}

// same recursion in log-signed arithmetic; immune to overflow
void bloch_log(const PotentialSpec& spec, double k, const UnitCell& c, BlochArgs& out) {
    const int S = spec.S;
    std::vector<LogSigned> gamma(S + 1), u(S + 1), ulow(S + 1);
    LogSigned prefix = LogSigned::from(1.0);
    std::vector<LogSigned> terms;
    for (int q = 1; q <= S; ++q) {
        terms.clear();
        terms.push_back(LogSigned::from(c.abs_m22 * std::cos(c.tau + k * c.x[q])).times(prefix));
        LogSigned tail = LogSigned::from(1.0);
        for (int h = q - 1; h >= 1; --h) {
            terms.push_back(
                LogSigned::from(-std::cos(k * (c.x[q] - c.x[h]))).times(ulow[h]).times(tail));
            tail = tail.times(u[h]);
        }
        gamma[q] = log_signed_sum(terms);
        u[q] = chebyshev_u_log(spec.N - 1, gamma[q]);
        ulow[q] = chebyshev_u_log(spec.N - 2, gamma[q]);
        prefix = prefix.times(u[q]);
    }
    out.gamma.resize(S);
    out.u.resize(S);
    out.log_abs_u.resize(S);
    out.sign_u.resize(S);
    for (int q = 1; q <= S; ++q) {
        out.gamma[q - 1] = gamma[q].value();
        out.u[q - 1] = u[q].value();
        out.log_abs_u[q - 1] = u[q].lg;
        out.sign_u[q - 1] = u[q].sgn;
    }
    out.log_scale = true;
}

Transmission from_log_strength(double log_x) {
    // T = 1/(1 + e^{log_x}), R = x/(1+x)
    Transmission tr;
    if (log_x > 709.0) {
        tr.T = std::exp(-log_x);
        tr.R = 1.0 - tr.T;
        return tr;
    }
    const double x = std::exp(log_x);
    tr.T = 1.0 / (1.0 + x);
    tr.R = x / (1.0 + x);
    return tr;
}

} // namespace

double chebyshev_u(int n, double x) {
    if (n < 0) throw DomainError("chebyshev_u: n must be >= 0");
    if (n == 0) return 1.0;
    const double ax = std::fabs(x);
    if (ax <= 1.0) {
        const double g = std::acos(x);
        const double s = std::sin(g);
        if (s < 1e-14) {
            const double limit = n + 1.0; // U_n(+-1) = (+-1)^n (n+1)
            return (x > 0.0 || n % 2 == 0) ? limit : -limit;
        }
        return std::sin((n + 1) * g) / s;
    }
    const double theta = std::acosh(ax);
    double v;
    if ((n + 1) * theta < 700.0) {
        v = std::sinh((n + 1) * theta) / std::sinh(theta);
    } else {
        v = std::exp(log_sinh((n + 1) * theta) - log_sinh(theta)); // may -> inf
    }
    return (x < 0.0 && n % 2 == 1) ? -v : v;
}

double chi1(const PotentialSpec& spec, int q) {
    if (q < 1 || q > spec.S) throw std::out_of_range("chi1: q outside [1, S]");
    return -(segment_width(spec, spec.S) + gap_width(spec, spec.S - q + 1));
}

double chi2(const PotentialSpec& spec, int q, int h) {
    if (!(1 <= h && h < q && q <= spec.S)) throw std::out_of_range("chi2: need 1 <= h < q <= S");
    return chi1(spec, q) - chi1(spec, h);
}

BlochArgs bloch_args(const PotentialSpec& spec, double k) {
    const UnitCell c = unit_cell(spec, k);
    BlochArgs out;
    if (!bloch_plain(spec, k, c, out)) bloch_log(spec, k, c, out);
    return out;
}

Transmission transmission_closed_form(const PotentialSpec& spec, double k) {
    const UnitCell c = unit_cell(spec, k);
    const double w = c.sig_minus_sin;
    if (w == 0.0) return {1.0, 0.0}; // V = 0 or a barrier resonance

    if (spec.S == 0) {
        if (std::fabs(w) < kPlainLimit) {
            const double x = w * w;
            return {1.0 / (1.0 + x), x / (1.0 + x)};
        }
        return from_log_strength(2.0 * std::log(std::fabs(w)));
    }

    BlochArgs ba;
    if (bloch_plain(spec, k, c, ba)) {
        double prod = 1.0;
        for (double uq : ba.u) prod *= uq;
        const double wp = w * prod;
        if (std::isfinite(wp) && std::fabs(wp) < kPlainLimit) {
            const double x = wp * wp;
            return {1.0 / (1.0 + x), x / (1.0 + x)};
        }
    } else {
        bloch_log(spec, k, c, ba);
    }
    double log_sum = std::log(std::fabs(w));
    for (int q = 0; q < spec.S; ++q) {
        if (ba.sign_u[q] == 0) return {1.0, 0.0}; // exact Chebyshev zero
        log_sum += ba.log_abs_u[q];
    }
    return from_log_strength(2.0 * log_sum);
}

double area_preserving_height(const PotentialSpec& spec, double V0) {
    require_valid(spec);
    double prod = 1.0;
    for (int j = 1; j <= spec.S; ++j)
        prod *= 1.0 - (spec.N - 1) / std::pow(spec.rho, spec.mu + spec.nu * j);
    return V0 / prod;
}

ReflectionAsymptotic reflection_asymptotic(const PotentialSpec& spec, double V0, double k) {
    require_valid(spec);
    if (!(k > 0.0)) throw DomainError("reflection_asymptotic: k must be > 0");
    if (!(V0 > 0.0)) throw DomainError("reflection_asymptotic: V0 must be > 0");

    ReflectionAsymptotic out;
    out.height = area_preserving_height(spec, V0);
    out.k_valid = k * k >= 100.0 * out.height;

    PotentialSpec scaled = spec;
    scaled.V = out.height;

    double log_est = 2.0 * (std::log(V0 * spec.L / (2.0 * k)) -
                            spec.S * std::log(static_cast<double>(spec.N)));
    bool exact_zero = false;
    if (spec.S > 0) {
        const BlochArgs ba = bloch_args(scaled, k);
        for (int q = 0; q < spec.S; ++q) {
            if (ba.sign_u[q] == 0) exact_zero = true;
            log_est += 2.0 * ba.log_abs_u[q];
        }
    }
    out.estimate = exact_zero ? 0.0 : std::exp(log_est);
    out.exact_reflection = transmission_closed_form(scaled, k).R;
    return out;
}

double laue(double x, int N) {
    if (N < 1) throw DomainError("laue: N must be >= 1");
    const double s = std::sin(x);
    if (std::fabs(s) < 1e-8) return static_cast<double>(N) * N;
    const double sn = std::sin(N * x);
    return sn * sn / (s * s);
}

ScalingFunction scaling_function(const PotentialSpec& spec, double k) {
    require_valid(spec);
    ScalingFunction out;
    if (spec.S == 0) return out;

    const BlochArgs ba = bloch_args(spec, k);
    bool in_band = true;
    for (double g : ba.gamma)
        if (!(std::fabs(g) <= 1.0)) in_band = false;

    if (in_band) {
        double prod = 1.0;
        for (double g : ba.gamma) prod *= laue(std::acos(g), spec.N);
        out.value = prod;
        out.gap_regime = false;
        return out;
    }
    double log_sum = 0.0;
    for (int q = 0; q < spec.S; ++q) {
        if (ba.sign_u[q] == 0) {
            out.value = 0.0;
            out.gap_regime = true;
            return out;
        }
        log_sum += 2.0 * ba.log_abs_u[q];
    }
    out.value = std::exp(log_sum);
    out.gap_regime = true;
    return out;
}

} // namespace ucp
