#pragma once

#include <string>
#include <vector>

namespace ucp {

/// One UCP-rho_N instance: N children per segment, scaling base rho,
/// exponents mu/nu, stage S, total span L and barrier height V.
/// Units: hbar = 1, 2m = 1, so E = k^2 and lengths are 1/k.
struct PotentialSpec {
    int N = 2;        // children per segment, N >= 2
    double rho = 3.0; // scaling base, rho > 1
    double mu = 1.0;
    double nu = 0.0;  // (mu, nu) != (0, 0); nu = 0 is the fractal (PCP) case
    int S = 0;        // stage, S >= 0
    double L = 1.0;   // total span, L > 0
    double V = 0.0;   // barrier height, V >= 0
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    std::string joined() const;
};

/// Checks every construction constraint and reports all violations;
/// never throws. rho^(mu+nu*j) == N-1 (zero-width segments) counts as
/// invalid: the construction degenerates.
ValidationReport validate_spec(const PotentialSpec& spec);

/// Throws InvalidSpec listing every violated constraint.
void require_valid(const PotentialSpec& spec);

} // namespace ucp
