#include "ucp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "ucp/errors.hpp"
#include "ucp/scattering.hpp"
#include "ucp/spp.hpp"

namespace ucp {

void parallel_for(std::int64_t n, int workers, const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    int w = workers;
    if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    w = static_cast<int>(std::min<std::int64_t>(w, n));
    if (w == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    // static partition: results land by index, so the worker count never
    // changes the output
    std::vector<std::thread> pool;
    pool.reserve(w);
    const std::int64_t chunk = (n + w - 1) / w;
    for (int t = 0; t < w; ++t) {
        const std::int64_t lo = t * chunk;
        const std::int64_t hi = std::min<std::int64_t>(lo + chunk, n);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

namespace {

std::vector<double> uniform_grid(double lo, double hi, std::int64_t n) {
    std::vector<double> g(n);
    for (std::int64_t i = 0; i < n; ++i)
        g[i] = (n == 1) ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    if (n > 1) g.back() = hi;
    return g;
}

} // namespace

SweepTable k_sweep(const PotentialSpec& spec, double k_min, double k_max,
                   std::int64_t n_points, Method method, int workers) {
    require_valid(spec);
    if (!(k_min > 0.0 && k_min < k_max)) throw DomainError("k_sweep: need 0 < k_min < k_max");
    if (n_points < 2) throw DomainError("k_sweep: need n_points >= 2");

    SweepTable table;
    table.spec = spec;
    table.method = method;
    table.k = uniform_grid(k_min, k_max, n_points);
    table.t.resize(n_points);
    table.r.resize(n_points);
    const bool closed = method != Method::Oracle;
    const bool oracle = method != Method::Closed;
    if (method == Method::Both) {
        table.t_oracle.resize(n_points);
        table.r_oracle.resize(n_points);
    }

    parallel_for(n_points, workers, [&](std::int64_t i) {
        if (closed) {
            const Transmission tr = transmission_closed_form(spec, table.k[i]);
            table.t[i] = tr.T;
            table.r[i] = tr.R;
        }
        if (oracle) {
            const Transmission tr = brute_force_transmission(spec, table.k[i]);
            if (method == Method::Oracle) {
                table.t[i] = tr.T;
                table.r[i] = tr.R;
            } else {
                table.t_oracle[i] = tr.T;
                table.r_oracle[i] = tr.R;
            }
        }
    });

    if (method == Method::Both) {
        double worst = 0.0;
        for (std::int64_t i = 0; i < n_points; ++i)
            worst = std::max(worst, std::fabs(table.t[i] - table.t_oracle[i]));
        table.max_discrepancy = worst;
    }
    return table;
}

GridTable rho_k_grid(const PotentialSpec& template_spec,
                     double rho_min, double rho_max, std::int64_t n_rho,
                     double k_min, double k_max, std::int64_t n_k, int workers) {
    if (!(rho_min <= rho_max) || n_rho < 1) throw DomainError("rho_k_grid: bad rho grid");
    if (!(k_min > 0.0 && k_min <= k_max) || n_k < 1) throw DomainError("rho_k_grid: bad k grid");

    GridTable table;
    table.template_spec = template_spec;
    table.rho_axis = uniform_grid(rho_min, rho_max, n_rho);
    table.k_axis = uniform_grid(k_min, k_max, n_k);
    table.t.assign(n_rho * n_k, std::numeric_limits<double>::quiet_NaN());
    table.row_valid.assign(n_rho, 0);

    for (std::int64_t r = 0; r < n_rho; ++r) {
        PotentialSpec s = template_spec;
        s.rho = table.rho_axis[r];
        table.row_valid[r] = validate_spec(s).ok ? 1 : 0;
    }
    parallel_for(n_rho * n_k, workers, [&](std::int64_t idx) {
        const std::int64_t r = idx / n_k;
        if (!table.row_valid[r]) return; // row stays NaN, never zero
        PotentialSpec s = template_spec;
        s.rho = table.rho_axis[r];
        table.t[idx] = transmission_closed_form(s, table.k_axis[idx % n_k]).T;
    });
    return table;
}

SaturationTable saturation_metric(const PotentialSpec& family, const std::vector<int>& stages,
                                  double k_min, double k_max, std::int64_t n_points,
                                  int workers) {
    if (stages.empty()) throw DomainError("saturation_metric: no stages");
    for (std::size_t i = 0; i < stages.size(); ++i)
        for (std::size_t j = i + 1; j < stages.size(); ++j)
            if (stages[i] == stages[j]) throw DomainError("saturation_metric: stages must be distinct");
    if (!(k_min > 0.0 && k_min < k_max) || n_points < 2)
        throw DomainError("saturation_metric: bad k grid");

    SaturationTable table;
    table.stages = stages;
    table.k = uniform_grid(k_min, k_max, n_points);
    const std::size_t ns = stages.size();
    table.log10_t.assign(ns, std::vector<double>(n_points, 0.0));

    std::vector<PotentialSpec> specs(ns, family);
    for (std::size_t s = 0; s < ns; ++s) {
        specs[s].S = stages[s];
        require_valid(specs[s]);
    }

    parallel_for(static_cast<std::int64_t>(ns) * n_points, workers, [&](std::int64_t idx) {
        const std::size_t s = static_cast<std::size_t>(idx / n_points);
        const std::int64_t i = idx % n_points;
        table.log10_t[s][i] = std::log10(transmission_closed_form(specs[s], table.k[i]).T);
    });

    table.dist.assign(ns, std::vector<double>(ns, 0.0));
    for (std::size_t a = 0; a < ns; ++a) {
        for (std::size_t b = a + 1; b < ns; ++b) {
            double sup = 0.0;
            for (std::int64_t i = 0; i < n_points; ++i)
                sup = std::max(sup, std::fabs(table.log10_t[a][i] - table.log10_t[b][i]));
            table.dist[a][b] = table.dist[b][a] = sup;
        }
    }
    return table;
}

ScalingFit scaling_fit(const PotentialSpec& spec, double V0,
                       double k_lo, double k_hi, std::int64_t n_points, FitMethod method) {
    require_valid(spec);
    if (!(k_lo > 0.0 && k_lo < k_hi)) throw DomainError("scaling_fit: need 0 < k_lo < k_hi");
    if (n_points < 2) throw DomainError("scaling_fit: need n_points >= 2");

    ScalingFit fit;
    fit.height = area_preserving_height(spec, V0);
    if (!(k_lo * k_lo >= 100.0 * fit.height))
        throw DomainError("scaling_fit: requires k_lo^2 >= 100 * V_S");

    PotentialSpec scaled = spec;
    scaled.V = fit.height;

    std::vector<double> lx, ly;
    lx.reserve(n_points);
    ly.reserve(n_points);
    const double llo = std::log(k_lo), lhi = std::log(k_hi);
    for (std::int64_t i = 0; i < n_points; ++i) {
        const double k = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n_points - 1));
        double R;
        if (method == FitMethod::ExactReflection) {
            R = transmission_closed_form(scaled, k).R;
        } else {
            R = reflection_asymptotic(spec, V0, k).estimate;
        }
        if (R < 1e-14) {
            ++fit.n_excluded;
            continue;
        }
        lx.push_back(std::log10(k));
        ly.push_back(std::log10(R));
    }
    fit.n_used = static_cast<std::int64_t>(lx.size());
    if (fit.n_used < 8) throw InsufficientPoints("scaling_fit: fewer than 8 usable points");

    const double n = static_cast<double>(fit.n_used);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss += e * e;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

namespace {

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// bisect for f(k) = level crossing between kin (f >= level) and kout (f < level)
double edge_bisect(const std::function<double(double)>& f, double kin, double kout, double level) {
    for (int it = 0; it < 80 && std::fabs(kout - kin) > 1e-12 * std::max(1.0, std::fabs(kin)); ++it) {
        const double mid = 0.5 * (kin + kout);
        if (f(mid) >= level)
            kin = mid;
        else
            kout = mid;
    }
    return 0.5 * (kin + kout);
}

} // namespace

ResonanceScan find_resonances(const PotentialSpec& spec, double k_min, double k_max,
                              std::int64_t coarse_points, double threshold) {
    require_valid(spec);
    if (!(k_min > 0.0 && k_min < k_max)) throw DomainError("find_resonances: need 0 < k_min < k_max");
    if (coarse_points < 100) throw DomainError("find_resonances: need coarse_points >= 100");
    if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("find_resonances: threshold in (0,1)");

    const auto T = [&spec](double k) { return transmission_closed_form(spec, k).T; };

    const std::vector<double> ks = uniform_grid(k_min, k_max, coarse_points);
    std::vector<double> ts(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) ts[i] = T(ks[i]);

    ResonanceScan scan;
    if (std::all_of(ts.begin(), ts.end(), [&](double t) { return t >= threshold; })) {
        scan.plateau = true; // e.g. V = 0: the whole range transmits
        return scan;
    }

    const double half = threshold / 2.0;
    for (std::size_t i = 1; i + 1 < ks.size(); ++i) {
        if (ts[i] < threshold || ts[i] < ts[i - 1] || ts[i] < ts[i + 1]) continue;
        double kstar = golden_max(T, ks[i - 1], ks[i + 1], 1e-10);
        double tstar = T(kstar);
        if (tstar < threshold) continue;

        // wide peaks are numerically flat at the top (|T-1| below double
        // resolution over ~1e-8 in k), which stalls the golden section;
        // one parabolic vertex step through samples outside the flat region
        // recovers the true maximum. Accepted only if it does not lower T.
        {
            const double h = 1e-5 * std::max(1.0, kstar);
            if (kstar - h > k_min && kstar + h < k_max) {
                const double fm = T(kstar - h), f0 = tstar, fp = T(kstar + h);
                const double denom = fp - 2.0 * f0 + fm;
                if (denom < 0.0) {
                    const double kv = kstar + 0.5 * h * (fm - fp) / denom;
                    if (std::fabs(kv - kstar) <= h) {
                        const double fv = T(kv);
                        if (fv >= tstar) {
                            kstar = kv;
                            tstar = fv;
                        }
                    }
                }
            }
        }

        // width: k-interval where T stays >= threshold/2 around the peak
        double left = k_min, right = k_max;
        for (std::size_t j = i; j-- > 0;) {
            if (ts[j] < half) {
                left = edge_bisect(T, ks[j + 1], ks[j], half);
                break;
            }
        }
        for (std::size_t j = i + 1; j < ks.size(); ++j) {
            if (ts[j] < half) {
                right = edge_bisect(T, ks[j - 1], ks[j], half);
                break;
            }
        }

        if (!scan.peaks.empty() && std::fabs(scan.peaks.back().k - kstar) < 1e-9) {
            if (tstar > scan.peaks.back().t) scan.peaks.back() = {kstar, tstar, right - left};
            continue;
        }
        scan.peaks.push_back({kstar, tstar, right - left});
    }
    return scan;
}

} // namespace ucp
