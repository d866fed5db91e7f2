#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace acstark {

// CODATA 2018 SI values and the derived atomic-unit conversion factors.
// Everything internal runs in Hartree atomic units (hbar = e = m_e =
// 4*pi*eps0 = 1); SI appears only at input/output boundaries.
struct PhysicalConstants {
    double hbar          = 1.054571817e-34;   // J s
    double charge        = 1.602176634e-19;   // C
    double electron_mass = 9.1093837015e-31;  // kg
    double epsilon0      = 8.8541878128e-12;  // F/m
    double c             = 2.99792458e8;      // m/s

    double bohr_radius() const {
        return 4.0 * std::numbers::pi * epsilon0 * hbar * hbar
               / (electron_mass * charge * charge);
    }
    double hartree() const {   // J
        return hbar * hbar / (electron_mass * bohr_radius() * bohr_radius());
    }
    double atomic_time() const { return hbar / hartree(); }                 // s
    double atomic_field() const { return hartree() / (charge * bohr_radius()); } // V/m
    double atomic_intensity() const {                                      // W/m^2
        double f = atomic_field();
        return 0.5 * epsilon0 * c * f * f;
    }
    // speed of light in atomic units (= 1/alpha)
    double c_au() const { return c * atomic_time() / bohr_radius(); }
    // one Hartree expressed as an ordinary (cycles/s) frequency
    double hartree_hz() const { return hartree() / (2.0 * std::numbers::pi * hbar); }

    double intensity_si_to_au(double i_si) const { return i_si / atomic_intensity(); }
    double intensity_au_to_si(double i_au) const { return i_au * atomic_intensity(); }

    // vacuum wavelength <-> angular frequency, both boundary-facing
    double omega_au_from_lambda_nm(double lambda_nm) const {
        if (!(lambda_nm > 0.0))
            throw std::domain_error("wavelength must be positive");
        double lambda_au = lambda_nm * 1e-9 / bohr_radius();
        return 2.0 * std::numbers::pi * c_au() / lambda_au;
    }
    double lambda_nm_from_omega_au(double omega_au) const {
        if (!(omega_au > 0.0))
            throw std::domain_error("frequency must be positive");
        double lambda_au = 2.0 * std::numbers::pi * c_au() / omega_au;
        return lambda_au * bohr_radius() * 1e9;
    }
};

inline const PhysicalConstants& codata() {
    static const PhysicalConstants k{};
    return k;
}

} // namespace acstark
