#pragma once

#include <optional>

#include "ucp/spec.hpp"

namespace ucp {

/// Fractal dimension D = ln N / ln rho. Both textbook definitions are
/// negative under a literal reading (ln zeta < 0 for zeta < 1); the
/// positive-magnitude convention used by the numeric literature is
/// returned.
double fractal_dimension(int N, double rho);

/// Alternative generalized-Cantor definition |ln 2 / ln((1-zeta)/2)|.
/// N=2 specific; agrees with fractal_dimension(2, 1/zeta) only at rho = 3.
double fractal_dimension_alt(double zeta);

/// Lacunarity-parameter taxonomy of the polyadic Cantor structure at unit
/// span. eps values are absolute values; raw_negative flags inputs whose
/// formula value came out negative before taking |.|.
struct Descriptors {
    double D = 0.0;
    double zeta = 0.0;                // 1/rho
    double g_c = 0.0;                 // central gap, unit span
    double eps_min = 0.0;             // highest-lacunarity extreme
    double eps_reg = 0.0;             // all gaps equal: minimum lacunarity
    std::optional<double> eps_max;    // undefined for N = 2 and N = 3
    bool raw_negative = false;
};

/// Requires N >= 2 and 0 < zeta < zeta_max = 1/N.
/// eps_max = g_c/(N-2) for even N, g_c/(N-3) for odd N; the N=2 and N=3
/// denominators vanish, reported as not-applicable rather than infinity.
Descriptors lacunarity_parameters(int N, double zeta);

/// Lacunarity parameter of a UCP instance: the stage-1 gap d_1 = L/rho^(mu+nu).
/// Requires a valid spec with S >= 1.
double ucp_epsilon(const PotentialSpec& spec);

} // namespace ucp
