#pragma once

#include <stdexcept>
#include <string>

namespace acstark {

// A RadialBasisConfig that cannot produce a usable discretization:
// bad parameters, ill-conditioned overlap, or a bound state the basis
// cannot represent.
class BasisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Resolvent energy within the guard band of a discrete eigenvalue of the
// target channel.  Carries the offending eigenvalue (real part, Hartree).
class ResonanceError : public std::runtime_error {
public:
    ResonanceError(const std::string& msg, double eigenvalue)
        : std::runtime_error(msg), resonance_energy(eigenvalue) {}
    double resonance_energy;
};

// Above-threshold resolvent query on an unscaled (theta = 0) basis.
class ThresholdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Linear-system solve failed or its residual is untrustworthy.
class SolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Time-series fit in extract_shift too poor to quote a shift.
class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// classical_limit_deviation against a vanishing classical shift.
class DeviationUndefinedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace acstark
