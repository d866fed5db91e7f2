#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "acstark/errors.hpp"
#include "acstark/radial_basis.hpp"
#include "acstark/types.hpp"

namespace acstark {

// One radial second-order pathway: from the bound state of `state`, through
// the continuum/bound manifold of channel l_prime, at resolvent energy
// `energy` (Hartree).  regularization is the +i*eps pushed into the
// denominator (retarded boundary; 0 is fine below threshold or with theta>0).
struct ResolventQuery {
    AtomicState state;
    int l_prime = 1;
    double energy = 0.0;
    double regularization = 0.0;
};

namespace detail {

inline void check_query(const RadialBasis& basis, const ResolventQuery& q) {
    if (std::abs(q.l_prime - q.state.l) != 1 || q.l_prime < 0)
        throw std::domain_error("resolvent channel must satisfy l' = l +- 1, l' >= 0");
    if (q.regularization < 0.0)
        throw std::domain_error("regularization must be >= 0");
    if (basis.Z() != q.state.Z)
        throw std::domain_error("basis charge does not match state");
    if (q.energy > 0.0 && basis.theta() == 0.0)
        throw ThresholdError("resolvent energy " + std::to_string(q.energy)
                             + " is above threshold: use a complex-scaled basis");
    const ChannelSpectrum& sp = basis.spectrum(q.l_prime);
    for (int i = 0; i < sp.energies.size(); ++i) {
        dcomplex e = sp.energies[i];
        if (std::abs(e.imag()) < 1e-8 && std::abs(e.real() - q.energy) < 1e-8)
            throw ResonanceError("resolvent energy " + std::to_string(q.energy)
                                     + " within 1e-8 of discrete level "
                                     + std::to_string(e.real()),
                                 e.real());
    }
}

} // namespace detail

// <u | r (H_{l'} - E - i eps)^{-1} r | u> on the (possibly rotated) basis;
// the e^{2 i theta} factor restores the unrotated r weights.  Production
// route: one dense LU solve.
inline dcomplex channel_amplitude(const RadialBasis& basis, const ResolventQuery& q) {
    detail::check_query(basis, q);
    Eigen::VectorXcd c = basis.bound_state(q.state.n, q.state.l).coeffs;
    Eigen::VectorXcd s = basis.dipole(q.l_prime, q.state.l).cast<dcomplex>() * c;
    dcomplex z(q.energy, q.regularization);
    Eigen::MatrixXcd a = basis.hamiltonian(q.l_prime)
                         - z * basis.overlap(q.l_prime).cast<dcomplex>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    Eigen::VectorXcd x = lu.solve(s);
    double resid = (a * x - s).norm() / std::max(s.norm(), 1e-300);
    if (!std::isfinite(resid) || resid > 1e-8)
        throw SolveError("resolvent linear solve unreliable (residual "
                         + std::to_string(resid) + ")");
    dcomplex rot(std::cos(2.0 * basis.theta()), std::sin(2.0 * basis.theta()));
    return rot * (s.transpose() * x)(0);
}

// Same quantity through the explicit eigen-decomposition of channel l';
// independent check of the linear-solve route.
inline dcomplex sum_over_states_amplitude(const RadialBasis& basis,
                                          const ResolventQuery& q) {
    detail::check_query(basis, q);
    Eigen::VectorXcd c = basis.bound_state(q.state.n, q.state.l).coeffs;
    Eigen::VectorXcd s = basis.dipole(q.l_prime, q.state.l).cast<dcomplex>() * c;
    const ChannelSpectrum& sp = basis.spectrum(q.l_prime);
    dcomplex z(q.energy, q.regularization);
    dcomplex acc{};
    for (int k = 0; k < sp.energies.size(); ++k) {
        dcomplex w = sp.vectors.col(k).transpose() * s;
        acc += w * w / (sp.energies[k] - z);
    }
    dcomplex rot(std::cos(2.0 * basis.theta()), std::sin(2.0 * basis.theta()));
    return rot * acc;
}

} // namespace acstark
