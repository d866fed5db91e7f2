#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acstark/resolvent.hpp"
#include "acstark/stark.hpp"
#include "acstark/types.hpp"

namespace acstark {

// Single quantized cavity mode: n_L photons of frequency omega in volume V
// (Bohr^3).  The coupling amplitude per photon, eps_L = sqrt(hbar w / 2 eps0 V)
// = sqrt(2 pi w / V) a.u., is always derived, never cached.
struct FockMode {
    double n_photons = 0.0;
    double volume = 1.0;
    double omega = 0.0;

    FockMode(double n, double v, double w) : n_photons(n), volume(v), omega(w) {
        if (!(n >= 0.0) || std::floor(n) != n)
            throw std::domain_error("photon number must be a nonnegative integer");
        if (!(v > 0.0)) throw std::domain_error("mode volume must be > 0");
        if (!(w > 0.0)) throw std::domain_error("mode frequency must be > 0");
    }

    double coupling() const { return std::sqrt(2.0 * std::numbers::pi * omega / volume); }
    // cycle-averaged intensity of the equivalent classical field, a.u.
    double matched_intensity_au() const {
        return intensity_from_density(n_photons * omega / volume);
    }
};

// Second-order shift of `state` dressed by the Fock mode:
//   delta_E = -(2 pi w / V) [ n_L * A_abs + (n_L + 1) * A_emis ]
// with A_abs/A_emis the angular-weighted channel amplitudes at
// E_ref +- omega (photon absorbed / emitted out of the mode; the +1 is the
// spontaneous part).  mode_energy_offset is a uniform constant added to the
// field energy; it cancels in every denominator and exists so the
// cancellation can be exercised numerically.
inline dcomplex quantized_shift(const AtomicState& state, const FockMode& mode,
                                const RadialBasis& basis,
                                double mode_energy_offset = 0.0) {
    double e_ref = basis.bound_state(state.n, state.l).energy.real();
    dcomplex acc[2] = {};                     // [0] absorption, [1] emission
    for (int q : {+1, -1}) {
        // field energy change relative to the n_L omega reference; the
        // photon-number part cancels per branch, the offset cancels here
        double field_delta = (q > 0 ? mode.omega + mode_energy_offset
                                    : -mode.omega + mode_energy_offset)
                             - mode_energy_offset;
        double e = e_ref + field_delta;
        for (const AngularChannel& ch : dipole_channels(state.l, state.m, q)) {
            if (ch.l_prime > basis.config().l_max)
                throw std::domain_error("basis l_max too small for dipole channel");
            ResolventQuery query{state, ch.l_prime, e, 0.0};
            acc[q > 0 ? 0 : 1] += ch.weight * ch.weight * channel_amplitude(basis, query);
        }
    }
    double pref = 2.0 * std::numbers::pi * mode.omega / mode.volume;
    return -pref * (mode.n_photons * acc[0] + (mode.n_photons + 1.0) * acc[1]);
}

// |delta_E_quant - delta_E_class| / |delta_E_class| with the mode volume
// fixed by the energy-density match I_L = (n_L w / V) c.  Decays as 1/n_L.
inline double classical_limit_deviation(const AtomicState& state, double omega,
                                        double n_photons, const LaserField& classical,
                                        const RadialBasis& basis) {
    if (!(n_photons >= 1.0)) throw std::domain_error("need at least one photon");
    if (classical.omega != omega)
        throw std::domain_error("classical field frequency mismatch");
    double i_au = classical.intensity_au();
    if (!(i_au > 0.0))
        throw DeviationUndefinedError("zero classical intensity: deviation undefined");
    double volume = n_photons * omega * codata().c_au() / i_au;
    FockMode mode(n_photons, volume, omega);
    dcomplex quant = quantized_shift(state, mode, basis);
    PolarizabilityResult pol = dynamic_polarizability(state, omega, basis);
    dcomplex cls = -(2.0 * std::numbers::pi / codata().c_au()) * i_au * pol.total;
    if (cls == dcomplex{})
        throw DeviationUndefinedError("classical shift vanishes: deviation undefined");
    return std::abs(quant - cls) / std::abs(cls);
}

} // namespace acstark
