#include "ucp/fractal.hpp"

#include <cmath>

#include "ucp/errors.hpp"
#include "ucp/geometry.hpp"

namespace ucp {

double fractal_dimension(int N, double rho) {
    if (N < 2) throw DomainError("fractal_dimension: N must be >= 2");
    if (!(rho > 1.0)) throw DomainError("fractal_dimension: rho must be > 1");
    return std::log(static_cast<double>(N)) / std::log(rho);
}

double fractal_dimension_alt(double zeta) {
    if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("fractal_dimension_alt: zeta must be in (0, 1)");
    const double base = (1.0 - zeta) / 2.0;
    if (!(base > 0.0 && base < 1.0)) throw DomainError("fractal_dimension_alt: (1-zeta)/2 outside (0, 1)");
    return std::fabs(std::log(2.0) / std::log(base));
}

Descriptors lacunarity_parameters(int N, double zeta) {
    if (N < 2) throw DomainError("lacunarity_parameters: N must be >= 2");
    if (!(zeta > 0.0 && zeta < 1.0 / N))
        throw DomainError("lacunarity_parameters: zeta must satisfy 0 < zeta < 1/N");

    Descriptors d;
    d.zeta = zeta;
    d.D = fractal_dimension(N, 1.0 / zeta);
    d.g_c = 1.0 - zeta * N;
    d.eps_min = 0.0;

    const double reg = d.g_c / (N - 1);
    d.raw_negative = reg < 0.0;
    d.eps_reg = std::fabs(reg);

    // even-N formula divides by zero at N=2, odd-N at N=3
    if (N % 2 == 0) {
        if (N > 2) d.eps_max = std::fabs(d.g_c / (N - 2));
    } else {
        if (N > 3) d.eps_max = std::fabs(d.g_c / (N - 3));
    }
    if (d.eps_max && d.g_c / ((N % 2 == 0) ? (N - 2) : (N - 3)) < 0.0) d.raw_negative = true;
    return d;
}

double ucp_epsilon(const PotentialSpec& spec) {
    require_valid(spec);
    if (spec.S < 1) throw DomainError("ucp_epsilon: requires S >= 1");
    return gap_width(spec, 1);
}

} // namespace ucp
