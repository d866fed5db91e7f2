#include <catch2/catch_amalgamated.hpp>

#include "acstark/stark.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

using namespace acstark;

namespace {

const AtomicState& gs() {
    static AtomicState s(1, 0, 0, 1);
    return s;
}

const RadialBasis& h_basis() {
    static RadialBasis b(RadialBasisConfig::defaults_for(gs()), 1);
    return b;
}

const RadialBasis& sturmian_2s_basis() {
    static RadialBasis b = [] {
        RadialBasisConfig cfg;
        cfg.kind = BasisKind::sturmian;
        cfg.count = 40;
        cfg.box_radius = 120.0;
        cfg.sturmian_kappa = 0.5;
        cfg.l_max = 1;
        return RadialBasis(cfg, 1);
    }();
    return b;
}

const RadialBasis& rotated_basis() {
    static RadialBasis b = [] {
        RadialBasisConfig cfg = RadialBasisConfig::defaults_for(AtomicState(2, 0, 0, 1));
        cfg.count = 120;
        cfg.box_radius = 80.0;
        cfg.theta = 0.2;
        cfg.knot_stretch = 4.0;
        cfg.l_max = 1;
        return RadialBasis(cfg, 1);
    }();
    return b;
}

} // namespace

TEST_CASE("static polarizability limits") {
    auto p1 = dynamic_polarizability(gs(), 1e-4, h_basis());
    CHECK(p1.total.real() == Catch::Approx(4.5).margin(1e-3));
    CHECK(std::abs(p1.total.imag()) < 1e-12);
    CHECK_FALSE(p1.channel_open);

    auto p1s = dynamic_polarizability(gs(), 1e-4, h_basis(), 0.0, ResolventRoute::spectral);
    CHECK(p1s.total.real() == Catch::Approx(4.5).margin(1e-3));
    CHECK(std::abs(p1.total - p1s.total) / std::abs(p1.total) < 1e-8);

    AtomicState s2(2, 0, 0, 1);
    auto p2 = dynamic_polarizability(s2, 1e-4, sturmian_2s_basis());
    CHECK(p2.total.real() == Catch::Approx(120.0).margin(0.1));
}

TEST_CASE("pathway decomposition") {
    auto p = dynamic_polarizability(gs(), 0.1, h_basis());
    REQUIRE(p.per_term.size() == 2);
    const auto& abs = p.per_term[0].pathway == Pathway::absorption ? p.per_term[0]
                                                                   : p.per_term[1];
    const auto& emi = p.per_term[0].pathway == Pathway::emission ? p.per_term[0]
                                                                 : p.per_term[1];
    CHECK(abs.q == +1);
    CHECK(abs.l_prime == 1);
    CHECK(abs.m_prime == 1);
    CHECK(emi.q == -1);
    CHECK(emi.m_prime == -1);
    CHECK(abs.weight == Catch::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    dcomplex sum = abs.contribution + emi.contribution;
    CHECK(std::abs(sum - p.total) < 1e-13 * std::abs(p.total));
    // absorption runs closer to the pole, so it dominates at finite omega
    CHECK(abs.contribution.real() > emi.contribution.real());
}

TEST_CASE("shift is negative, linear in intensity, and unit-consistent") {
    auto pol = dynamic_polarizability(gs(), 1e-4, h_basis());
    auto r1 = stark_shift(pol, LaserField::from_intensity_si(1e-4, 1e14));
    auto r2 = stark_shift(pol, LaserField::from_intensity_si(1e-4, 2e14));

    CHECK(r1.delta_e_au.real() < 0.0);
    CHECK(r1.beta_ac < 0.0);
    CHECK(r1.beta_ioni == 0.0);
    CHECK(r1.gamma_i == 0.0);

    CHECK(std::abs(r2.delta_e_au.real() - 2.0 * r1.delta_e_au.real()) <=
          1e-12 * std::abs(r2.delta_e_au.real()));
    CHECK(r2.beta_ac == Catch::Approx(r1.beta_ac).epsilon(1e-14));

    // Hz output converts back to the internal Hartree value
    const auto& k = codata();
    dcomplex back = r1.delta_e_hz * (2.0 * std::numbers::pi * k.hbar / k.hartree());
    CHECK(std::abs(back - r1.delta_e_au) <= 1e-12 * std::abs(r1.delta_e_au));

    // beta_AC inverts to Re P
    double p_back = -r1.beta_ac * k.c_au() /
                    (2.0 * std::numbers::pi * k.hartree() / (k.hbar * k.atomic_intensity()));
    CHECK(p_back == Catch::Approx(pol.total.real()).epsilon(1e-10));

    // Re dE = hbar I beta_AC in SI
    double lhs = r1.delta_e_au.real() * k.hartree();
    double rhs = k.hbar * r1.intensity_si * r1.beta_ac;
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("zero intensity leaves finite coefficients") {
    auto pol = dynamic_polarizability(gs(), 0.1, h_basis());
    auto r = stark_shift(pol, LaserField::from_intensity_au(0.1, 0.0));
    CHECK(r.delta_e_au == dcomplex{});
    CHECK(r.beta_ac < 0.0);
    CHECK(std::isfinite(r.beta_ac));
    CHECK(r.gamma_i == 0.0);
}

TEST_CASE("open channel drives ionization with pinned signs") {
    AtomicState s2(2, 0, 0, 1);
    auto pol = dynamic_polarizability(s2, 0.1875, rotated_basis());
    CHECK(pol.channel_open);
    CHECK(pol.total.imag() > 1.0);
    auto r = stark_shift(pol, LaserField::from_intensity_si(0.1875, 1e12));
    CHECK(r.delta_e_au.imag() < 0.0);
    CHECK(r.beta_ioni > 0.0);
    CHECK(r.gamma_i > 0.0);
    CHECK(r.sigma_i > 0.0);
    // gamma = 2 pi beta_ioni I and sigma = 2 pi hbar omega beta_ioni
    CHECK(r.gamma_i == Catch::Approx(2.0 * std::numbers::pi * r.beta_ioni * r.intensity_si)
                           .epsilon(1e-14));
}

TEST_CASE("closed channel keeps the rate at exactly zero") {
    auto pol = dynamic_polarizability(gs(), 0.1875, h_basis());
    CHECK_FALSE(pol.channel_open);
    CHECK(std::abs(pol.total.imag()) < 1e-10);
    auto r = stark_shift(pol, LaserField::from_intensity_si(0.1875, 1e16));
    CHECK(r.beta_ioni == 0.0);
    CHECK(r.delta_e_au.imag() == 0.0);
}

TEST_CASE("shift changes sign across the 1s-2p resonance") {
    auto lo = dynamic_polarizability(gs(), 0.373, h_basis());
    auto hi = dynamic_polarizability(gs(), 0.377, h_basis());
    CHECK(lo.total.real() > 100.0);
    CHECK(hi.total.real() < -100.0);
}

TEST_CASE("resonance table") {
    auto res = resonant_frequencies(gs(), h_basis());
    REQUIRE_FALSE(res.empty());
    CHECK(std::is_sorted(res.begin(), res.end()));
    bool has_2p = false;
    for (double w : res)
        if (std::abs(w - 0.375) < 5e-8) has_2p = true;
    CHECK(has_2p);
}

TEST_CASE("two-photon midpoint of 1S-2S sits at 243 nm") {
    AtomicState s1(1, 0, 0, 1), s2(2, 0, 0, 1);
    double w = two_photon_omega(s1, s2);
    CHECK(w == Catch::Approx(0.1875).epsilon(1e-15));
    CHECK(codata().lambda_nm_from_omega_au(w) == Catch::Approx(243.0).margin(0.1));
}

TEST_CASE("charge rescaling") {
    auto pol = dynamic_polarizability(gs(), 0.1, h_basis());
    auto base = stark_shift(pol, LaserField::from_intensity_si(0.1, 1e14));
    auto same = z_rescale(base, 1);
    CHECK(same.beta_ac == base.beta_ac);
    auto he = z_rescale(base, 2);
    CHECK(he.omega == Catch::Approx(0.4).epsilon(1e-15));
    CHECK(he.beta_ac == Catch::Approx(base.beta_ac / 16.0).epsilon(1e-15));
    CHECK(he.sigma_i == Catch::Approx(base.sigma_i / 4.0).epsilon(1e-15));
    CHECK_THROWS_AS(z_rescale(base, 0), std::domain_error);
    CHECK_THROWS_AS(z_rescale(base, 12), std::domain_error);
}

TEST_CASE("field construction guards") {
    CHECK_THROWS_AS(LaserField::from_amplitude(0.0, 1e-3), std::domain_error);
    CHECK_THROWS_AS(LaserField::from_amplitude(0.1, -1e-3), std::domain_error);
    CHECK_THROWS_AS(LaserField::from_intensity_au(0.1, -1.0), std::domain_error);
    auto f = LaserField::from_intensity_au(0.1, 3.5e-5);
    CHECK(f.intensity_au() == Catch::Approx(3.5e-5).epsilon(1e-14));
    auto g = LaserField::from_intensity_si(0.1, 1e14);
    CHECK(g.intensity_si() == Catch::Approx(1e14).epsilon(1e-12));
}
