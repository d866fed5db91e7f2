// Light shift of H(1s) and H(2s) far below resonance: polarizability,
// shift per intensity, and the shift at a reference intensity.
#include <cstdio>

#include "acstark/acstark.hpp"

using namespace acstark;

int main() {
    const double omega = 1e-4;              // quasi-static probe
    const double intensity = 1e14;          // W/m^2

    AtomicState s1(1, 0, 0, 1);
    RadialBasis b1(RadialBasisConfig::defaults_for(s1), 1);
    auto p1 = dynamic_polarizability(s1, omega, b1);
    auto r1 = stark_shift(p1, LaserField::from_intensity_si(omega, intensity));

    // the n = 2 shell is degenerate, so use a basis that carries 2s and 2p
    // exactly: Coulomb-Sturmians at kappa = 1/2
    AtomicState s2(2, 0, 0, 1);
    RadialBasisConfig cfg;
    cfg.kind = BasisKind::sturmian;
    cfg.count = 40;
    cfg.box_radius = 120.0;
    cfg.sturmian_kappa = 0.5;
    cfg.l_max = 1;
    RadialBasis b2(cfg, 1);
    auto p2 = dynamic_polarizability(s2, omega, b2);
    auto r2 = stark_shift(p2, LaserField::from_intensity_si(omega, intensity));

    std::printf("state   P (a.u.)      beta_AC ((rad/s)/(W/m^2))  dE at %.1e W/m^2 (Hz)\n",
                intensity);
    std::printf("1s   %12.6f   %20.6e   %18.6e\n", p1.total.real(), r1.beta_ac,
                r1.delta_e_hz.real());
    std::printf("2s   %12.6f   %20.6e   %18.6e\n", p2.total.real(), r2.beta_ac,
                r2.delta_e_hz.real());
    return 0;
}
