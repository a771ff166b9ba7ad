#pragma once

#include <stdexcept>
#include <string>

namespace ucp {

// Spec parameters violate the construction constraints (non-positive
// segment factor, (mu,nu)=(0,0), rho<=1, ...).
class InvalidSpec : public std::invalid_argument {
public:
    explicit InvalidSpec(const std::string& what) : std::invalid_argument(what) {}
};

// N^S exceeds the configured segment cap.
class LayoutTooLarge : public std::length_error {
public:
    explicit LayoutTooLarge(const std::string& what) : std::length_error(what) {}
};

// |k^2 - V| below the degeneracy threshold; caller must take the
// series/limit branch instead of evaluating sigma+- directly.
class DegenerateEnergy : public std::domain_error {
public:
    explicit DegenerateEnergy(const std::string& what) : std::domain_error(what) {}
};

// Transfer matrix fails |m22| >= 1, so it cannot describe elastic
// scattering off a real potential.
class NonPhysicalMatrix : public std::domain_error {
public:
    explicit NonPhysicalMatrix(const std::string& what) : std::domain_error(what) {}
};

class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Too few usable points left after exclusions to fit anything.
class InsufficientPoints : public std::runtime_error {
public:
    explicit InsufficientPoints(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ucp
