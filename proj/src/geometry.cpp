#include "ucp/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ucp/errors.hpp"

namespace ucp {

double q_pochhammer(double alpha, double beta, int p) {
    if (p < 0) throw DomainError("q_pochhammer: p must be >= 0");
    double prod = 1.0;
    double bj = 1.0; // beta^j
    for (int j = 0; j < p; ++j) {
        prod *= 1.0 - alpha * bj;
        bj *= beta;
    }
    return prod;
}

namespace {

void check_stage_index(const PotentialSpec& spec, int s, int lo, const char* what) {
    if (s < lo || s > spec.S) {
        std::ostringstream os;
        os << what << ": index " << s << " outside [" << lo << ", " << spec.S << "]";
        throw std::out_of_range(os.str());
    }
}

// (1 - (N-1)/rho^(mu+nu j)), throwing if non-positive.
double stage_factor(const PotentialSpec& spec, int j) {
    const double f = 1.0 - (spec.N - 1) / std::pow(spec.rho, spec.mu + spec.nu * j);
    if (!(f > 0.0)) {
        std::ostringstream os;
        os << "invalid spec: factor non-positive at j=" << j;
        throw InvalidSpec(os.str());
    }
    return f;
}

} // namespace

double segment_width(const PotentialSpec& spec, int s) {
    check_stage_index(spec, s, 0, "segment_width");
    double b = spec.L;
    for (int j = 1; j <= s; ++j) b *= stage_factor(spec, j) / spec.N;
    return b;
}

double gap_width(const PotentialSpec& spec, int s) {
    check_stage_index(spec, s, 1, "gap_width");
    return segment_width(spec, s - 1) / std::pow(spec.rho, spec.mu + spec.nu * s);
}

double super_period(const PotentialSpec& spec, int q) {
    check_stage_index(spec, q, 1, "super_period");
    // r_q = b_{S+1-q} + d_{S+1-q}
    return segment_width(spec, spec.S + 1 - q) + gap_width(spec, spec.S + 1 - q);
}

StageMetrics stage_metrics(const PotentialSpec& spec) {
    require_valid(spec);
    StageMetrics m;
    m.b.resize(spec.S + 1);
    m.d.resize(spec.S + 1, 0.0);
    m.r.resize(spec.S + 1, 0.0);
    m.b[0] = spec.L;
    for (int s = 1; s <= spec.S; ++s) {
        const double scale = std::pow(spec.rho, spec.mu + spec.nu * s);
        m.d[s] = m.b[s - 1] / scale;
        m.b[s] = m.b[s - 1] * stage_factor(spec, s) / spec.N;
    }
    for (int q = 1; q <= spec.S; ++q) m.r[q] = m.b[spec.S + 1 - q] + m.d[spec.S + 1 - q];
    return m;
}

std::int64_t layout_count(const PotentialSpec& spec, std::int64_t cap) {
    std::int64_t count = 1;
    for (int s = 0; s < spec.S; ++s) {
        if (count > cap / spec.N) {
            std::ostringstream os;
            os << "layout too large: N^S = " << spec.N << "^" << spec.S
               << " exceeds cap " << cap;
            throw LayoutTooLarge(os.str());
        }
        count *= spec.N;
    }
    if (count > cap) {
        std::ostringstream os;
        os << "layout too large: N^S = " << count << " exceeds cap " << cap;
        throw LayoutTooLarge(os.str());
    }
    return count;
}

SegmentLayout build_layout(const PotentialSpec& spec, std::int64_t cap) {
    require_valid(spec);
    const std::int64_t leaves = layout_count(spec, cap);

    SegmentLayout layout;
    layout.spec = spec;
    const StageMetrics m = stage_metrics(spec);

    std::vector<double> starts{0.0};
    starts.reserve(static_cast<std::size_t>(leaves));
    std::vector<double> next;
    for (int s = 1; s <= spec.S; ++s) {
        const double pitch = m.b[s] + m.d[s]; // child start-to-start within a parent
        next.clear();
        next.reserve(starts.size() * spec.N);
        for (double parent : starts)
            for (int i = 0; i < spec.N; ++i) next.push_back(parent + i * pitch);
        starts.swap(next);
    }

    const double b_S = m.b[spec.S];
    layout.segments.reserve(starts.size());
    for (double a : starts) layout.segments.push_back({a, a + b_S});
    return layout;
}

} // namespace ucp
