#pragma once

#include <cstdint>
#include <vector>

#include "ucp/spec.hpp"

namespace ucp {

/// Finite q-Pochhammer symbol (alpha; beta)_p = prod_{j=0}^{p-1} (1 - alpha beta^j).
/// p = 0 is the empty product. Total function.
double q_pochhammer(double alpha, double beta, int p);

/// Segment width b_s = (L/N^s) prod_{j=1}^{s} (1 - (N-1)/rho^(mu+nu j)).
/// The explicit product is canonical here; the q-Pochhammer closed form is
/// kept as a test identity. 0 <= s <= spec.S.
double segment_width(const PotentialSpec& spec, int s);

/// Gap width d_s = b_{s-1} / rho^(mu+nu s), 1 <= s <= spec.S.
double gap_width(const PotentialSpec& spec, int s);

/// Super-periodic distance r_q = b_{S+1-q} + b_{S-q}/rho^(mu+nu(S+1-q)),
/// i.e. the spacing between consecutive copies at hierarchy level q.
/// 1 <= q <= spec.S.
double super_period(const PotentialSpec& spec, int q);

/// Per-stage widths in one pass: b[0..S], gaps d[1..S], periods r[1..S]
/// (index 0 of d and r is unused padding).
struct StageMetrics {
    std::vector<double> b;
    std::vector<double> d;
    std::vector<double> r;
};
StageMetrics stage_metrics(const PotentialSpec& spec);

struct Segment {
    double start = 0.0;
    double end = 0.0;
    double width() const { return end - start; }
};

struct SegmentLayout {
    PotentialSpec spec;
    std::vector<Segment> segments; // N^S leaves, increasing, mirror-symmetric about L/2
};

inline constexpr std::int64_t kDefaultSegmentCap = 1'000'000;

/// Number of stage-S leaves, N^S. Throws LayoutTooLarge beyond the cap.
std::int64_t layout_count(const PotentialSpec& spec, std::int64_t cap = kDefaultSegmentCap);

/// Explicit barrier intervals on [0, L] by exact recursive subdivision:
/// every leaf coordinate is parent start plus an O(S)-deep chain of child
/// offsets, so rounding stays O(S) per leaf instead of O(N^S).
SegmentLayout build_layout(const PotentialSpec& spec, std::int64_t cap = kDefaultSegmentCap);

} // namespace ucp
