#pragma once

#include <complex>
#include <cstdint>
#include <utility>

#include "ucp/geometry.hpp"
#include "ucp/spec.hpp"

namespace ucp {

using complexd = std::complex<double>;

/// Degeneracy threshold on |k^2 - V| (units of k^2): below it the
/// cancellation in ktilde = sqrt(k^2 - V) forces the series branch.
inline constexpr double kDegenerateEnergyEps = 1e-6;

/// Wavenumbers for one (k, V) pair under hbar = 1, 2m = 1:
/// E = k^2, ktilde = sqrt(k^2 - V) (principal branch: +i sqrt(V - k^2)
/// in the evanescent regime, 0 at E = V).
struct WaveContext {
    double k = 0.0;
    double V = 0.0;
    complexd ktilde;
};

/// Requires k > 0 (zero-energy scattering is rejected).
WaveContext make_wave_context(double k, double V);

/// sigma_+- = (k/ktilde +- ktilde/k)/2. Complex in the evanescent regime.
/// Throws DegenerateEnergy when |k^2 - V| < kDegenerateEnergyEps; the
/// E = V limit lives in the sinc forms used by barrier_matrix.
std::pair<complexd, complexd> sigma_pm(const WaveContext& ctx);

/// 2x2 complex transfer matrix relating plane-wave amplitudes across a
/// region, (A,B)_left = M (F,G)_right in a frame where both sides are
/// referenced to the region's start plane (a free region is the identity).
struct TransferMatrix {
    complexd m11, m12, m21, m22;

    complexd det() const { return m11 * m22 - m12 * m21; }
    static TransferMatrix identity();
    TransferMatrix operator*(const TransferMatrix& rhs) const;
};

/// The real-valued pieces of the unit-cell barrier matrix, shared by the
/// oracle and the closed form:
///   cos_ktb        = cos(ktilde b)
///   sig_plus_sin   = sigma_+ sin(ktilde b) = b(2k^2-V)/(2k) * sinc(ktilde b)
///   sig_minus_sin  = sigma_- sin(ktilde b) = bV/(2k)        * sinc(ktilde b)
/// All three are real for any real V; sinc carries the |ktilde b| < 1e-6
/// series branch, so E = V needs no special casing downstream.
struct BarrierFactors {
    double cos_ktb = 1.0;
    double sig_plus_sin = 0.0;
    double sig_minus_sin = 0.0;
    double abs_m22 = 1.0;
    double tau = 0.0; // principal arg of m22; only cos(tau - k chi) is consumed
};
BarrierFactors barrier_factors(const WaveContext& ctx, double b);

/// Unit-cell rectangular barrier of width b:
///   m11 = e^{+ikb}(cos ktb - i sigma_+ sin ktb),  m12 =  i sigma_- sin ktb,
///   m22 = e^{-ikb}(cos ktb + i sigma_+ sin ktb),  m21 = -i sigma_- sin ktb.
/// b = 0 or V = 0 give the identity.
TransferMatrix barrier_matrix(const WaveContext& ctx, double b);

/// Free translation of the reference plane by d: diag(e^{-ikd}, e^{+ikd}).
/// Composing unit cells therefore uses the start-to-start distance
/// (barrier width + gap); the convention is locked by the test that a
/// two-barrier composition reproduces the S = 1 closed form.
TransferMatrix propagation_matrix(double k, double d);

struct Transmission {
    double T = 1.0;
    double R = 0.0;
};

/// T = 1/|m22|^2, R = |m12|^2/|m22|^2 for a flux-conserving matrix.
/// Throws NonPhysicalMatrix if |m22| < 1 - 1e-9.
Transmission transmission_from_matrix(const TransferMatrix& m);

/// The brute-force oracle: builds the explicit layout and composes one
/// barrier matrix plus one translation per segment, left to right,
/// rescaling the running product past 1e150 so deep-tunneling stacks
/// cannot overflow. Cost O(N^S) matrix multiplies.
Transmission brute_force_transmission(const PotentialSpec& spec, double k,
                                      std::int64_t cap = kDefaultSegmentCap);

} // namespace ucp
