#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ucp/spec.hpp"

namespace ucp {

enum class Method { Closed, Oracle, Both };

/// Transmission/reflection over a uniform k grid (endpoints included).
/// With Method::Both the oracle columns are filled and max_discrepancy
/// holds max |t_closed - t_oracle| over the grid.
struct SweepTable {
    PotentialSpec spec;
    Method method = Method::Closed;
    std::vector<double> k;
    std::vector<double> t;
    std::vector<double> r;
    std::vector<double> t_oracle; // Both only
    std::vector<double> r_oracle; // Both only
    double max_discrepancy = 0.0;
};
SweepTable k_sweep(const PotentialSpec& spec, double k_min, double k_max,
                   std::int64_t n_points, Method method, int workers = 0);

/// T(rho, k) over a rho-k grid, closed form, row-major (rho rows).
/// A rho that violates the spec constraints marks its whole row NaN and
/// row_valid false; rows are never silently skipped.
struct GridTable {
    PotentialSpec template_spec;
    std::vector<double> rho_axis;
    std::vector<double> k_axis;
    std::vector<double> t;           // rho-major, n_rho * n_k
    std::vector<unsigned char> row_valid;
};
GridTable rho_k_grid(const PotentialSpec& template_spec,
                     double rho_min, double rho_max, std::int64_t n_rho,
                     double k_min, double k_max, std::int64_t n_k, int workers = 0);

/// Pairwise sup-norm distances D[i][j] = sup_k |log10 T_{S_i} - log10 T_{S_j}|
/// over a uniform k grid, for one spec family evaluated at each stage in
/// `stages`. The family saturates beyond s* when all pairwise distances
/// among stages >= s* fall below a chosen delta.
struct SaturationTable {
    std::vector<int> stages;
    std::vector<double> k;
    std::vector<std::vector<double>> log10_t; // per stage, per k
    std::vector<std::vector<double>> dist;    // stages x stages
};
SaturationTable saturation_metric(const PotentialSpec& family, const std::vector<int>& stages,
                                  double k_min, double k_max, std::int64_t n_points,
                                  int workers = 0);

enum class FitMethod {
    ExactReflection,      // R = 1 - T at area-preserved height V_S
    AsymptoticReflection, // R^ = (V0 L / 2 N^S k)^2 prod U^2 (large-k law)
};

/// Ordinary least squares on (log k, log R) over a log-uniform grid at
/// area-preserved height. Resonance nulls (R < 1e-14) are excluded from
/// the fit and counted. Throws InsufficientPoints below 8 usable points.
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::int64_t n_used = 0;
    std::int64_t n_excluded = 0;
    double height = 0.0; // V_S
};
ScalingFit scaling_fit(const PotentialSpec& spec, double V0,
                       double k_lo, double k_hi, std::int64_t n_points,
                       FitMethod method = FitMethod::ExactReflection);

/// One refined transmission resonance: position, height, and the k-width
/// of the surrounding T >= threshold/2 region.
struct Resonance {
    double k = 0.0;
    double t = 0.0;
    double width = 0.0;
};

/// Coarse scan + golden-section refinement of every local maximum above
/// `threshold` (|dk| <= 1e-10); peaks closer than 1e-9 are merged. A scan
/// whose every sample clears the threshold (V = 0 plateau) reports
/// plateau = true and no peaks.
struct ResonanceScan {
    std::vector<Resonance> peaks;
    bool plateau = false;
};
ResonanceScan find_resonances(const PotentialSpec& spec, double k_min, double k_max,
                              std::int64_t coarse_points, double threshold);

/// Deterministic static-partition parallel loop; workers = 0 picks the
/// hardware count, 1 runs inline. Results must be written by index.
void parallel_for(std::int64_t n, int workers, const std::function<void(std::int64_t)>& fn);

} // namespace ucp
