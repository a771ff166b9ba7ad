#include "ucp.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "ucp/analysis.hpp"
#include "ucp/errors.hpp"
#include "ucp/fractal.hpp"
#include "ucp/geometry.hpp"
#include "ucp/scattering.hpp"
#include "ucp/spec.hpp"
#include "ucp/spp.hpp"

struct ucp_spec {
    ucp::PotentialSpec spec;
};

namespace {

thread_local std::string g_last_error;

void copy_string(const std::string& s, char* buf, size_t cap) {
    if (!buf || cap == 0) return;
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
}

ucp_status fail(ucp_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

// maps C++ exceptions from the core onto status codes
template <typename Fn>
ucp_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ucp::InvalidSpec& e) {
        return fail(UCP_ERR_INVALID_SPEC, e.what());
    } catch (const ucp::LayoutTooLarge& e) {
        return fail(UCP_ERR_LAYOUT_TOO_LARGE, e.what());
    } catch (const ucp::DegenerateEnergy& e) {
        return fail(UCP_ERR_DEGENERATE_ENERGY, e.what());
    } catch (const ucp::NonPhysicalMatrix& e) {
        return fail(UCP_ERR_NONPHYSICAL, e.what());
    } catch (const ucp::InsufficientPoints& e) {
        return fail(UCP_ERR_INSUFFICIENT_POINTS, e.what());
    } catch (const ucp::DomainError& e) {
        return fail(UCP_ERR_DOMAIN, e.what());
    } catch (const std::out_of_range& e) {
        return fail(UCP_ERR_DOMAIN, e.what());
    } catch (const std::bad_alloc&) {
        return fail(UCP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(UCP_ERR_INTERNAL, e.what());
    }
}

} // namespace

extern "C" {

const char* ucp_version(void) { return "1.0.0"; }

const char* ucp_status_name(ucp_status status) {
    switch (status) {
        case UCP_OK: return "ok";
        case UCP_ERR_BAD_ARGUMENT: return "bad argument";
        case UCP_ERR_INVALID_SPEC: return "invalid spec";
        case UCP_ERR_DOMAIN: return "domain error";
        case UCP_ERR_LAYOUT_TOO_LARGE: return "layout too large";
        case UCP_ERR_DEGENERATE_ENERGY: return "degenerate energy";
        case UCP_ERR_NONPHYSICAL: return "non-physical matrix";
        case UCP_ERR_INSUFFICIENT_POINTS: return "insufficient points";
        case UCP_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case UCP_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

ucp_status ucp_last_error(char* buf, size_t cap) {
    if (!buf || cap == 0) return UCP_ERR_BAD_ARGUMENT;
    copy_string(g_last_error, buf, cap);
    return UCP_OK;
}

ucp_status ucp_spec_create(int N, double rho, double mu, double nu, int S,
                           double L, double V, ucp_spec** out) {
    if (!out) return fail(UCP_ERR_BAD_ARGUMENT, "out is null");
    *out = nullptr;
    return guarded([&]() -> ucp_status {
        auto* handle = new ucp_spec{ucp::PotentialSpec{N, rho, mu, nu, S, L, V}};
        *out = handle;
        return UCP_OK;
    });
}

void ucp_spec_free(ucp_spec* spec) { delete spec; }

ucp_status ucp_spec_validate(const ucp_spec* spec, int* ok, char* report, size_t report_cap) {
    if (!spec || !ok) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        const ucp::ValidationReport rep = ucp::validate_spec(spec->spec);
        *ok = rep.ok ? 1 : 0;
        copy_string(rep.joined(), report, report_cap);
        return UCP_OK;
    });
}

ucp_status ucp_segment_width(const ucp_spec* spec, int s, double* out) {
    if (!spec || !out) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        ucp::require_valid(spec->spec);
        *out = ucp::segment_width(spec->spec, s);
        return UCP_OK;
    });
}

ucp_status ucp_gap_width(const ucp_spec* spec, int s, double* out) {
    if (!spec || !out) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        ucp::require_valid(spec->spec);
        *out = ucp::gap_width(spec->spec, s);
        return UCP_OK;
    });
}

ucp_status ucp_super_period(const ucp_spec* spec, int q, double* out) {
    if (!spec || !out) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        ucp::require_valid(spec->spec);
        *out = ucp::super_period(spec->spec, q);
        return UCP_OK;
    });
}

ucp_status ucp_q_pochhammer(double alpha, double beta, int p, double* out) {
    if (!out) return fail(UCP_ERR_BAD_ARGUMENT, "out is null");
    return guarded([&]() -> ucp_status {
        *out = ucp::q_pochhammer(alpha, beta, p);
        return UCP_OK;
    });
}

ucp_status ucp_layout_count(const ucp_spec* spec, long long cap, long long* count) {
    if (!spec || !count) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        ucp::require_valid(spec->spec);
        *count = ucp::layout_count(spec->spec, cap > 0 ? cap : ucp::kDefaultSegmentCap);
        return UCP_OK;
    });
}

ucp_status ucp_layout_build(const ucp_spec* spec, long long cap,
                            double* starts, double* ends, long long buf_len,
                            long long* written) {
    if (!spec || !starts || !ends || !written)
        return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        const ucp::SegmentLayout layout =
            ucp::build_layout(spec->spec, cap > 0 ? cap : ucp::kDefaultSegmentCap);
        const long long n = static_cast<long long>(layout.segments.size());
        if (n > buf_len) return fail(UCP_ERR_BUFFER_TOO_SMALL, "layout buffer too small");
        for (long long i = 0; i < n; ++i) {
            starts[i] = layout.segments[i].start;
            ends[i] = layout.segments[i].end;
        }
        *written = n;
        return UCP_OK;
    });
}

ucp_status ucp_fractal_dimension(int N, double rho, double* out) {
    if (!out) return fail(UCP_ERR_BAD_ARGUMENT, "out is null");
    return guarded([&]() -> ucp_status {
        *out = ucp::fractal_dimension(N, rho);
        return UCP_OK;
    });
}

ucp_status ucp_fractal_dimension_alt(double zeta, double* out) {
    if (!out) return fail(UCP_ERR_BAD_ARGUMENT, "out is null");
    return guarded([&]() -> ucp_status {
        *out = ucp::fractal_dimension_alt(zeta);
        return UCP_OK;
    });
}

ucp_status ucp_lacunarity(int N, double zeta, double* g_c, double* eps_min,
                          double* eps_reg, double* eps_max, int* eps_max_defined) {
    if (!g_c || !eps_min || !eps_reg || !eps_max || !eps_max_defined)
        return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        const ucp::Descriptors d = ucp::lacunarity_parameters(N, zeta);
        *g_c = d.g_c;
        *eps_min = d.eps_min;
        *eps_reg = d.eps_reg;
        *eps_max_defined = d.eps_max.has_value() ? 1 : 0;
        *eps_max = d.eps_max.value_or(std::numeric_limits<double>::quiet_NaN());
        return UCP_OK;
    });
}

ucp_status ucp_lacunarity_epsilon(const ucp_spec* spec, double* out) {
    if (!spec || !out) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        *out = ucp::ucp_epsilon(spec->spec);
        return UCP_OK;
    });
}

ucp_status ucp_transmission(const ucp_spec* spec, double k, ucp_method method,
                            double* T, double* R, double* discrepancy,
                            int* degenerate_warn) {
    if (!spec || !T || !R) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    if (method != UCP_METHOD_CLOSED && method != UCP_METHOD_ORACLE && method != UCP_METHOD_BOTH)
        return fail(UCP_ERR_BAD_ARGUMENT, "bad method");
    return guarded([&]() -> ucp_status {
        ucp::require_valid(spec->spec);
        if (degenerate_warn)
            *degenerate_warn =
                std::fabs(k * k - spec->spec.V) < ucp::kDegenerateEnergyEps ? 1 : 0;
        ucp::Transmission closed{}, oracle{};
        if (method != UCP_METHOD_ORACLE) closed = ucp::transmission_closed_form(spec->spec, k);
        if (method != UCP_METHOD_CLOSED) oracle = ucp::brute_force_transmission(spec->spec, k);
        const ucp::Transmission& main = (method == UCP_METHOD_ORACLE) ? oracle : closed;
        *T = main.T;
        *R = main.R;
        if (discrepancy)
            *discrepancy = (method == UCP_METHOD_BOTH)
                               ? std::fabs(closed.T - oracle.T)
                               : std::numeric_limits<double>::quiet_NaN();
        return UCP_OK;
    });
}

ucp_status ucp_sweep(const ucp_spec* spec, double k_min, double k_max,
                     long long n, ucp_method method, int workers,
                     double* k, double* t, double* r,
                     double* t_oracle, double* r_oracle, double* max_discrepancy) {
    if (!spec || !k || !t || !r) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    if (method == UCP_METHOD_BOTH && (!t_oracle || !r_oracle))
        return fail(UCP_ERR_BAD_ARGUMENT, "oracle buffers required for method=both");
    return guarded([&]() -> ucp_status {
        const ucp::SweepTable table = ucp::k_sweep(
            spec->spec, k_min, k_max, n,
            method == UCP_METHOD_CLOSED   ? ucp::Method::Closed
            : method == UCP_METHOD_ORACLE ? ucp::Method::Oracle
                                          : ucp::Method::Both,
            workers);
        for (long long i = 0; i < n; ++i) {
            k[i] = table.k[i];
            t[i] = table.t[i];
            r[i] = table.r[i];
            if (method == UCP_METHOD_BOTH) {
                t_oracle[i] = table.t_oracle[i];
                r_oracle[i] = table.r_oracle[i];
            }
        }
        if (max_discrepancy) *max_discrepancy = table.max_discrepancy;
        return UCP_OK;
    });
}

ucp_status ucp_grid(const ucp_spec* template_spec,
                    double rho_min, double rho_max, long long n_rho,
                    double k_min, double k_max, long long n_k, int workers,
                    double* rho_axis, double* k_axis, double* t,
                    unsigned char* row_valid) {
    if (!template_spec || !rho_axis || !k_axis || !t || !row_valid)
        return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        const ucp::GridTable g = ucp::rho_k_grid(template_spec->spec, rho_min, rho_max,
                                                 n_rho, k_min, k_max, n_k, workers);
        for (long long i = 0; i < n_rho; ++i) rho_axis[i] = g.rho_axis[i];
        for (long long i = 0; i < n_k; ++i) k_axis[i] = g.k_axis[i];
        for (long long i = 0; i < n_rho * n_k; ++i) t[i] = g.t[i];
        for (long long i = 0; i < n_rho; ++i) row_valid[i] = g.row_valid[i];
        return UCP_OK;
    });
}

ucp_status ucp_saturation(const ucp_spec* family, const int* stages, int n_stages,
                          double k_min, double k_max, long long n_points,
                          int workers, double* dist) {
    if (!family || !stages || !dist || n_stages < 1)
        return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        const ucp::SaturationTable table = ucp::saturation_metric(
            family->spec, std::vector<int>(stages, stages + n_stages), k_min, k_max,
            n_points, workers);
        for (int a = 0; a < n_stages; ++a)
            for (int b = 0; b < n_stages; ++b) dist[a * n_stages + b] = table.dist[a][b];
        return UCP_OK;
    });
}

ucp_status ucp_scaling_fit(const ucp_spec* spec, double V0, double k_lo, double k_hi,
                           long long n_points, ucp_fit_method method,
                           double* slope, double* intercept, double* residual_rms,
                           long long* n_used, long long* n_excluded, double* height) {
    if (!spec || !slope || !intercept) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    if (method != UCP_FIT_EXACT && method != UCP_FIT_ASYMPTOTIC)
        return fail(UCP_ERR_BAD_ARGUMENT, "bad fit method");
    return guarded([&]() -> ucp_status {
        const ucp::ScalingFit fit = ucp::scaling_fit(
            spec->spec, V0, k_lo, k_hi, n_points,
            method == UCP_FIT_EXACT ? ucp::FitMethod::ExactReflection
                                    : ucp::FitMethod::AsymptoticReflection);
        *slope = fit.slope;
        *intercept = fit.intercept;
        if (residual_rms) *residual_rms = fit.residual_rms;
        if (n_used) *n_used = fit.n_used;
        if (n_excluded) *n_excluded = fit.n_excluded;
        if (height) *height = fit.height;
        return UCP_OK;
    });
}

ucp_status ucp_find_resonances(const ucp_spec* spec, double k_min, double k_max,
                               long long coarse_points, double threshold,
                               double* k_star, double* t_star, double* width,
                               long long cap, long long* count, int* plateau) {
    if (!spec || !k_star || !t_star || !width || !count || !plateau)
        return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        const ucp::ResonanceScan scan =
            ucp::find_resonances(spec->spec, k_min, k_max, coarse_points, threshold);
        *plateau = scan.plateau ? 1 : 0;
        *count = static_cast<long long>(scan.peaks.size());
        const long long n = std::min<long long>(cap, *count);
        for (long long i = 0; i < n; ++i) {
            k_star[i] = scan.peaks[i].k;
            t_star[i] = scan.peaks[i].t;
            width[i] = scan.peaks[i].width;
        }
        return UCP_OK;
    });
}

ucp_status ucp_area_preserving_height(const ucp_spec* spec, double V0, double* out) {
    if (!spec || !out) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        *out = ucp::area_preserving_height(spec->spec, V0);
        return UCP_OK;
    });
}

ucp_status ucp_reflection_asymptotic(const ucp_spec* spec, double V0, double k,
                                     double* estimate, double* exact_reflection,
                                     double* height, int* k_valid) {
    if (!spec || !estimate) return fail(UCP_ERR_BAD_ARGUMENT, "null argument");
    return guarded([&]() -> ucp_status {
        const ucp::ReflectionAsymptotic ra = ucp::reflection_asymptotic(spec->spec, V0, k);
        *estimate = ra.estimate;
        if (exact_reflection) *exact_reflection = ra.exact_reflection;
        if (height) *height = ra.height;
        if (k_valid) *k_valid = ra.k_valid ? 1 : 0;
        return UCP_OK;
    });
}

} // extern "C"
