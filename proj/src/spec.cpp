#include "ucp/spec.hpp"

#include <cmath>
#include <sstream>

#include "ucp/errors.hpp"

namespace ucp {

std::string ValidationReport::joined() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i];
    }
    return os.str();
}

ValidationReport validate_spec(const PotentialSpec& spec) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };

    if (spec.N < 2) fail("N must be >= 2");
    if (!(spec.rho > 1.0)) fail("rho must be > 1");
    if (!(spec.L > 0.0)) fail("L must be > 0");
    if (spec.S < 0) fail("S must be >= 0");
    if (!(spec.V >= 0.0)) fail("V must be >= 0");
    if (spec.mu == 0.0 && spec.nu == 0.0) fail("(mu, nu) simultaneously zero");
    if (!std::isfinite(spec.rho) || !std::isfinite(spec.mu) || !std::isfinite(spec.nu) ||
        !std::isfinite(spec.L) || !std::isfinite(spec.V)) {
        fail("parameters must be finite");
    }

    if (rep.ok) {
        for (int j = 1; j <= spec.S; ++j) {
            const double denom = std::pow(spec.rho, spec.mu + spec.nu * j);
            if (!(denom > static_cast<double>(spec.N - 1))) {
                std::ostringstream os;
                os << "factor non-positive at j=" << j << " (rho^(mu+nu*j) = " << denom
                   << " <= N-1 = " << spec.N - 1 << ")";
                fail(os.str());
            }
        }
    }
    return rep;
}

void require_valid(const PotentialSpec& spec) {
    const ValidationReport rep = validate_spec(spec);
    if (!rep.ok) throw InvalidSpec("invalid spec: " + rep.joined());
}

} // namespace ucp
