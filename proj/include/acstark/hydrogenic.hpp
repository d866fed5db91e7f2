#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace acstark {

// Nonrelativistic hydrogen-like energy, Hartree.  Valid for point charge
// Z between 1 and 11 (H through Na^10+).
inline double bound_energy(int n, int Z) {
    if (n < 1) throw std::domain_error("principal quantum number must be >= 1");
    if (Z < 1 || Z > 11) throw std::domain_error("Z must be in 1..11");
    return -0.5 * double(Z) * double(Z) / (double(n) * double(n));
}

namespace detail {

// associated Laguerre L_k^(alpha)(x) for k = 0..kmax, three-term recurrence
inline void laguerre_row(int kmax, double alpha, double x, double* out) {
    out[0] = 1.0;
    if (kmax == 0) return;
    out[1] = 1.0 + alpha - x;
    for (int k = 2; k <= kmax; ++k)
        out[k] = ((2.0 * k - 1.0 + alpha - x) * out[k - 1]
                  - (k - 1.0 + alpha) * out[k - 2]) / double(k);
}

} // namespace detail

// Radial factor R_nl(r) of the hydrogenic orbital, normalized so that
// the full orbital R_nl * Y_lm has unit norm: integral r^2 R^2 dr = 1.
inline double radial_wavefunction(int n, int l, int Z, double r) {
    if (n < 1 || n > 10) throw std::domain_error("radial_wavefunction: n must be in 1..10");
    if (l < 0 || l >= n) throw std::domain_error("radial_wavefunction: need 0 <= l < n");
    if (Z < 1 || Z > 11) throw std::domain_error("radial_wavefunction: Z must be in 1..11");
    if (r < 0.0) throw std::domain_error("radial_wavefunction: r must be >= 0");

    double a = 2.0 * Z / double(n);
    double x = a * r;
    double ratio = 1.0;                       // (n+l)! / (n-l-1)!
    for (int k = n - l; k <= n + l; ++k) ratio *= double(k);
    double norm = std::sqrt(a * a * a / (2.0 * n * ratio));
    double lag[16];
    detail::laguerre_row(n - l - 1, 2.0 * l + 1.0, x, lag);
    return norm * std::exp(-0.5 * x) * std::pow(x, double(l)) * lag[n - l - 1];
}

// reduced radial function u_nl = r * R_nl
inline double radial_u(int n, int l, int Z, double r) {
    return r * radial_wavefunction(n, l, Z, r);
}

// A bound hydrogenic level (n, l, m) of charge Z, nonrelativistic.
struct AtomicState {
    int n = 1;
    int l = 0;
    int m = 0;
    int Z = 1;
    double energy = -0.5;       // Hartree

    AtomicState() = default;
    AtomicState(int n_, int l_, int m_, int Z_ = 1) : n(n_), l(l_), m(m_), Z(Z_) {
        if (n < 1 || n > 10) throw std::domain_error("AtomicState: n must be in 1..10");
        if (l < 0 || l >= n) throw std::domain_error("AtomicState: need 0 <= l < n");
        if (m < -l || m > l) throw std::domain_error("AtomicState: need |m| <= l");
        if (Z < 1 || Z > 11) throw std::domain_error("AtomicState: Z must be in 1..11");
        energy = bound_energy(n, Z);
    }
};

// Angular factor <l' m'| x_q / r |l m> for the circular dipole components
// x_{+1} = -(x+iy)/sqrt(2), x_{-1} = (x-iy)/sqrt(2), i.e. the matrix element
// of the Racah tensor C^1_q between spherical harmonics (Condon-Shortley
// phases).  Real by construction; 0 for any forbidden combination.
inline double angular_factor(int l, int m, int q, int l_prime, int m_prime) {
    if (l < 0 || l_prime < 0) return 0.0;
    if (m < -l || m > l || m_prime < -l_prime || m_prime > l_prime) return 0.0;
    if (q != 1 && q != -1) return 0.0;
    if (m_prime != m + q) return 0.0;

    if (l_prime == l + 1) {
        double s = (q == 1) ? std::sqrt(double(l + m + 1) * double(l + m + 2))
                            : std::sqrt(double(l - m + 1) * double(l - m + 2));
        return std::sqrt(double(l + 1) / double(2 * l + 3)) * s
               / std::sqrt(double(2 * l + 1) * double(2 * l + 2));
    }
    if (l_prime == l - 1) {
        double s = (q == 1) ? std::sqrt(double(l - m - 1) * double(l - m))
                            : std::sqrt(double(l + m - 1) * double(l + m));
        return -std::sqrt(double(l) / double(2 * l - 1)) * s
               / std::sqrt(double(2 * l) * double(2 * l + 1));
    }
    return 0.0;
}

// One dipole-allowed angular channel reached from (l, m) through a single
// circular dipole component q.
struct AngularChannel {
    int l_prime = 0;
    int m_prime = 0;
    double weight = 0.0;        // angular_factor(l, m, q, l_prime, m_prime)
};

inline std::vector<AngularChannel> dipole_channels(int l, int m, int q) {
    std::vector<AngularChannel> out;
    for (int lp : {l - 1, l + 1}) {
        if (lp < 0) continue;
        double w = angular_factor(l, m, q, lp, m + q);
        if (w != 0.0) out.push_back({lp, m + q, w});
    }
    return out;
}

} // namespace acstark
