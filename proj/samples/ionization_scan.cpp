// One-photon ionization of H(2s) across its threshold at omega = 0.125:
// complex-scaled polarizability, ionization coefficient, and cross section.
#include <cstdio>

#include "acstark/acstark.hpp"

using namespace acstark;

int main() {
    AtomicState s2(2, 0, 0, 1);
    RadialBasisConfig cfg = RadialBasisConfig::defaults_for(s2);
    cfg.count = 160;
    cfg.box_radius = 120.0;
    cfg.knot_stretch = 4.0;
    cfg.theta = 0.2;                        // rotate the continuum away
    cfg.l_max = 1;
    RadialBasis basis(cfg, 1);

    const double intensity = 1e12;          // W/m^2

    std::printf("omega(au)   Im P(au)      beta_ioni        gamma_i(1/s)    sigma_i(m^2)\n");
    for (double w = 0.13; w < 0.2405; w += 0.01) {
        try {
            auto pol = dynamic_polarizability(s2, w, basis);
            auto r = stark_shift(pol, LaserField::from_intensity_si(w, intensity));
            std::printf("%8.4f  %11.5e  %12.5e  %13.5e  %13.5e\n", w,
                        pol.total.imag(), r.beta_ioni, r.gamma_i, r.sigma_i);
        } catch (const ResonanceError&) {
            std::printf("%8.4f  (skipped: resolvent pinned to a discrete level)\n", w);
        }
    }
    return 0;
}
