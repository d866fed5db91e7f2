#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "acstark/constants.hpp"
#include "acstark/errors.hpp"
#include "acstark/hydrogenic.hpp"
#include "acstark/resolvent.hpp"
#include "acstark/types.hpp"

namespace acstark {

// Circularly polarized monochromatic field, atomic units.  The intensity
// convention is I_L = eps0 c eps_L^2 / 2, which in atomic units reads
// I = c_au eps_L^2 / (8 pi) with c_au = 1/alpha.
struct LaserField {
    double omega = 0.0;         // angular frequency, a.u.
    double amplitude = 0.0;     // eps_L, a.u. of field
    double damping = 0.0;       // ramp epsilon for time propagation, a.u.

    double intensity_au() const {
        return codata().c_au() * amplitude * amplitude / (8.0 * std::numbers::pi);
    }
    double intensity_si() const { return codata().intensity_au_to_si(intensity_au()); }

    static LaserField from_amplitude(double omega, double eps_l, double damping = 0.0) {
        if (!(omega > 0.0)) throw std::domain_error("field frequency must be > 0");
        if (eps_l < 0.0) throw std::domain_error("field amplitude must be >= 0");
        if (damping < 0.0) throw std::domain_error("field damping must be >= 0");
        return {omega, eps_l, damping};
    }
    static LaserField from_intensity_au(double omega, double i_au, double damping = 0.0) {
        if (i_au < 0.0) throw std::domain_error("intensity must be >= 0");
        return from_amplitude(omega,
                              std::sqrt(8.0 * std::numbers::pi * i_au / codata().c_au()),
                              damping);
    }
    static LaserField from_intensity_si(double omega, double i_si, double damping = 0.0) {
        return from_intensity_au(omega, codata().intensity_si_to_au(i_si), damping);
    }
};

// cycle-averaged intensity carried by a photon-energy density w = n hbar
// omega / V (a.u.): I = w c
inline double intensity_from_density(double energy_density_au) {
    return energy_density_au * codata().c_au();
}

enum class Pathway { absorption, emission };

struct PolarizabilityTerm {
    Pathway pathway = Pathway::absorption;
    int q = +1;                 // circular component driving this pathway
    int l_prime = 1;
    int m_prime = 0;
    double weight = 0.0;        // angular factor (enters squared)
    dcomplex contribution{};    // weight^2 * channel amplitude
};

// P(omega): dynamic polarizability of `state` in a circularly polarized
// field, normalized so that P(omega -> 0) is the static dipole
// polarizability (4.5 for H 1s).  Im P >= 0 above threshold (retarded
// boundary), giving Im(shift) <= 0 and an ionization rate >= 0.
struct PolarizabilityResult {
    dcomplex total{};
    std::vector<PolarizabilityTerm> per_term;
    double omega = 0.0;
    AtomicState state;
    double reference_energy = 0.0;  // discrete bound level used, Hartree
    bool channel_open = false;      // E_ref + omega > 0
};

enum class ResolventRoute { solve, spectral };

inline PolarizabilityResult dynamic_polarizability(const AtomicState& state, double omega,
                                                   const RadialBasis& basis,
                                                   double regularization = 0.0,
                                                   ResolventRoute route = ResolventRoute::solve) {
    if (!(omega > 0.0)) throw std::domain_error("omega must be > 0");
    PolarizabilityResult res;
    res.omega = omega;
    res.state = state;
    double e_ref = basis.bound_state(state.n, state.l).energy.real();
    res.reference_energy = e_ref;
    res.channel_open = e_ref + omega > 0.0;
    for (int q : {+1, -1}) {
        double e = q > 0 ? e_ref + omega : e_ref - omega;
        for (const AngularChannel& ch : dipole_channels(state.l, state.m, q)) {
            if (ch.l_prime > basis.config().l_max)
                throw std::domain_error("basis l_max too small for dipole channel");
            ResolventQuery query{state, ch.l_prime, e, regularization};
            dcomplex amp = route == ResolventRoute::solve
                               ? channel_amplitude(basis, query)
                               : sum_over_states_amplitude(basis, query);
            PolarizabilityTerm term;
            term.pathway = q > 0 ? Pathway::absorption : Pathway::emission;
            term.q = q;
            term.l_prime = ch.l_prime;
            term.m_prime = ch.m_prime;
            term.weight = ch.weight;
            term.contribution = ch.weight * ch.weight * amp;
            res.per_term.push_back(term);
            res.total += term.contribution;
        }
    }
    return res;
}

// Energy shift and ionization observables of a level in a given field.
// delta_e = -(e^2 eps_L^2/4) P = -(e^2/2 eps0 c) I_L P; the coefficients
// are intensity-normalized, so they stay finite at I_L = 0:
//   Re delta_e = hbar I_L beta_ac        [beta_ac]   = Hz (W/m^2)^-1
//   Im delta_e = -pi hbar I_L beta_ioni  [beta_ioni] = Hz (W/m^2)^-1
//   gamma_i = 2 pi beta_ioni I_L         [gamma_i]   = 1/s
//   sigma_i = 2 pi hbar omega beta_ioni  [sigma_i]   = m^2
struct StarkShiftResult {
    dcomplex delta_e_au{};      // Hartree
    dcomplex delta_e_hz{};      // delta_e / h, ordinary frequency
    double beta_ac = 0.0;
    double beta_ioni = 0.0;
    double gamma_i = 0.0;
    double sigma_i = 0.0;
    double omega = 0.0;         // a.u.
    double intensity_si = 0.0;  // W/m^2
};

inline StarkShiftResult stark_shift(const PolarizabilityResult& pol, const LaserField& field,
                                    const PhysicalConstants& k = codata()) {
    StarkShiftResult out;
    out.omega = pol.omega;
    out.intensity_si = k.intensity_au_to_si(field.intensity_au());

    // below every one-photon threshold the exact imaginary part vanishes;
    // drop solver noise there, and never let roundoff produce a negative rate
    double im = pol.channel_open ? std::max(0.0, pol.total.imag()) : 0.0;
    dcomplex p_eff(pol.total.real(), im);

    double c_au = k.c_au();
    out.delta_e_au = -(2.0 * std::numbers::pi / c_au) * field.intensity_au() * p_eff;
    out.delta_e_hz = out.delta_e_au * (k.hartree() / (2.0 * std::numbers::pi * k.hbar));

    // per-intensity coefficients, SI: beta = delta_e_J / (hbar I)
    double norm = k.hartree() / (k.hbar * k.atomic_intensity());
    out.beta_ac = -(2.0 * std::numbers::pi / c_au) * p_eff.real() * norm;
    out.beta_ioni = (2.0 / c_au) * p_eff.imag() * norm;
    out.gamma_i = 2.0 * std::numbers::pi * out.beta_ioni * out.intensity_si;
    double omega_si = pol.omega / k.atomic_time();
    out.sigma_i = 2.0 * std::numbers::pi * k.hbar * omega_si * out.beta_ioni;
    return out;
}

// Exact hydrogenic scaling from a Z = 1 result evaluated at omega:
// the same state of charge Z at Z^2 omega has P/Z^4, shifts/Z^4 at equal
// intensity, and cross section/Z^2.
inline dcomplex z_rescale_polarizability(dcomplex p_z1, int Z) {
    if (Z < 1 || Z > 11) throw std::domain_error("Z must be in 1..11");
    double z4 = double(Z) * Z * Z * Z;
    return p_z1 / z4;
}

inline StarkShiftResult z_rescale(const StarkShiftResult& r, int Z) {
    if (Z < 1 || Z > 11) throw std::domain_error("Z must be in 1..11");
    double z2 = double(Z) * Z, z4 = z2 * z2;
    StarkShiftResult out = r;
    out.omega = r.omega * z2;
    out.delta_e_au = r.delta_e_au / z4;
    out.delta_e_hz = r.delta_e_hz / z4;
    out.beta_ac = r.beta_ac / z4;
    out.beta_ioni = r.beta_ioni / z4;
    out.gamma_i = r.gamma_i / z4;
    out.sigma_i = r.sigma_i / z2;
    return out;
}

// two-photon resonance frequency for a pair of levels (e.g. 1s -> 2s)
inline double two_photon_omega(const AtomicState& lower, const AtomicState& upper) {
    if (lower.Z != upper.Z) throw std::domain_error("two_photon_omega: mixed charges");
    double d = upper.energy - lower.energy;
    if (!(d > 0.0)) throw std::domain_error("two_photon_omega: upper level must lie higher");
    return 0.5 * d;
}

// Frequencies where a pathway denominator of `state` hits a discrete level
// of an adjacent channel: omega = E_k - E_ref (absorption) or E_ref - E_k
// (emission), E_k near-real bound.  Used for scan gap flagging.
inline std::vector<double> resonant_frequencies(const AtomicState& state,
                                                const RadialBasis& basis) {
    double e_ref = basis.bound_state(state.n, state.l).energy.real();
    std::vector<double> out;
    for (int q : {+1, -1})
        for (const AngularChannel& ch : dipole_channels(state.l, state.m, q)) {
            const ChannelSpectrum& sp = basis.spectrum(ch.l_prime);
            for (int i = 0; i < sp.energies.size(); ++i) {
                dcomplex e = sp.energies[i];
                if (e.real() >= -1e-9 || std::abs(e.imag()) > 1e-6) continue;  // bound only
                double w = q > 0 ? e.real() - e_ref : e_ref - e.real();
                if (w > 1e-9) out.push_back(w);
            }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              out.end());
    return out;
}

} // namespace acstark
