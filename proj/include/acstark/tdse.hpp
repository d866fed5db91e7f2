#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "acstark/errors.hpp"
#include "acstark/radial_basis.hpp"
#include "acstark/stark.hpp"
#include "acstark/types.hpp"

namespace acstark {

// which eigenstates of angular channel (l, m) enter the propagation basis:
// the `count` lowest-energy ones
struct ChannelTruncation {
    int l = 0;
    int m = 0;
    int count = 1;
};

struct DampedDriveConfig {
    LaserField field;                       // field.damping is the ramp epsilon
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.0;
    std::vector<ChannelTruncation> channels;
    bool drop_emission_channels = false;    // rotating-wave comparison runs
    int sample_stride = 16;

    void validate() const {
        if (!(field.damping > 0.0)) throw std::domain_error("ramp damping must be > 0");
        if (!(t_start < 0.0) || !(t_end > 0.0))
            throw std::domain_error("need t_start < 0 < t_end");
        if (field.damping * (-t_start) < 5.0 - 1e-12)
            throw std::domain_error("drive not fully ramped: need eps*|t_start| >= 5");
        if (!(dt > 0.0) || dt * field.omega > 0.05 + 1e-12)
            throw std::domain_error("time step too coarse: need dt*omega <= 0.05");
        if (channels.empty()) throw std::domain_error("empty basis truncation");
        if (sample_stride < 1) throw std::domain_error("sample stride must be >= 1");
    }

    // reference channel + dipole-coupled neighbours, keeping every state
    // below energy_cutoff (Hartree)
    static DampedDriveConfig defaults_for(const RadialBasis& basis, const AtomicState& s,
                                          const LaserField& field,
                                          double energy_cutoff = 3.0) {
        if (!(field.damping > 0.0))
            throw std::domain_error("defaults_for: field needs a ramp damping");
        DampedDriveConfig cfg;
        cfg.field = field;
        cfg.t_start = -5.0 / field.damping;
        cfg.t_end = 3.0 / field.damping;
        double e_span = energy_cutoff;
        auto count_below = [&](int l) {
            const ChannelSpectrum& sp = basis.spectrum(l);
            int n = 0;
            for (int i = 0; i < sp.energies.size(); ++i)
                if (sp.energies[i].real() < energy_cutoff) ++n;
            e_span = std::max(e_span, std::abs(sp.energies[0].real()));
            return std::max(n, 1);
        };
        cfg.channels.push_back({s.l, s.m, count_below(s.l)});
        for (int q : {+1, -1})
            for (const AngularChannel& ch : dipole_channels(s.l, s.m, q))
                if (ch.l_prime <= basis.config().l_max)
                    cfg.channels.push_back({ch.l_prime, ch.m_prime, count_below(ch.l_prime)});
        cfg.dt = std::min(0.05 / field.omega, 0.2 / (e_span + field.omega));
        return cfg;
    }
};

struct EvolutionResult {
    std::vector<double> times;
    std::vector<dcomplex> projection;       // <phi|psi_I(t)>, interaction picture
    dcomplex delta_e{};                     // fitted complex shift, a.u.
    double fit_residual = 0.0;
    double damping = 0.0;
    double norm_drift = 0.0;
    double reference_energy = 0.0;
    bool truncation_warning = false;
    double max_excluded_coupling = 0.0;
    double max_included_coupling = 0.0;
};

namespace detail {

// Least-squares fit of log c(t) = A + B g(t) over t >= 0, with the ramp
// regressor g(t) = (1 - e^{-2 eps t})/(2 eps) (g = t for eps = 0), so that
// delta_E = i B.  Residual is rms misfit over the fitted signal span.
inline void fit_projection(const std::vector<double>& times,
                           const std::vector<dcomplex>& proj, double eps,
                           dcomplex& delta_e, double& residual) {
    std::vector<double> g;
    std::vector<dcomplex> logc;
    double prev_im = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) continue;
        if (std::abs(proj[i]) <= 0.0)
            throw ExtractionError("projection vanished: cannot take its log");
        dcomplex lc = std::log(proj[i]);
        double im = lc.imag();
        if (!g.empty()) {           // unwrap the phase branch
            double two_pi = 2.0 * std::numbers::pi;
            im += two_pi * std::round((prev_im - im) / two_pi);
        }
        prev_im = im;
        logc.push_back({lc.real(), im});
        g.push_back(eps > 0.0 ? -std::expm1(-2.0 * eps * times[i]) / (2.0 * eps)
                              : times[i]);
    }
    size_t n = g.size();
    if (n < 8) throw std::invalid_argument("too few post-ramp samples to fit");
    double gm = 0.0;
    dcomplex lm{};
    for (size_t i = 0; i < n; ++i) {
        gm += g[i];
        lm += logc[i];
    }
    gm /= double(n);
    lm /= double(n);
    double sgg = 0.0;
    dcomplex sgl{};
    for (size_t i = 0; i < n; ++i) {
        sgg += (g[i] - gm) * (g[i] - gm);
        sgl += (g[i] - gm) * (logc[i] - lm);
    }
    if (!(sgg > 0.0)) throw ExtractionError("degenerate fit window");
    dcomplex b = sgl / sgg;
    double rms = 0.0;
    for (size_t i = 0; i < n; ++i) {
        dcomplex r = logc[i] - lm - b * (g[i] - gm);
        rms += std::norm(r);
    }
    rms = std::sqrt(rms / double(n));
    double span = (*std::max_element(g.begin(), g.end())
                   - *std::min_element(g.begin(), g.end()));
    residual = rms / std::max(std::abs(b) * span, 1e-12);
    delta_e = dcomplex(0.0, 1.0) * b;
}

} // namespace detail

// Propagate the damped-drive Schrödinger equation in the truncated
// channel eigenbasis (interaction picture, classical RK4) and record the
// projection on the unperturbed reference state.
inline EvolutionResult propagate(const AtomicState& state, const DampedDriveConfig& cfg,
                                 const RadialBasis& basis) {
    cfg.validate();
    if (basis.theta() != 0.0)
        throw std::invalid_argument("time propagation needs an unscaled basis");
    if (basis.Z() != state.Z) throw std::invalid_argument("basis charge mismatch");

    std::vector<ChannelTruncation> channels;
    for (const ChannelTruncation& c : cfg.channels) {
        if (cfg.drop_emission_channels && c.m < state.m) continue;
        if (c.l < 0 || c.l > basis.config().l_max)
            throw std::domain_error("truncation channel outside basis l range");
        if (c.count < 1 || c.count > basis.size())
            throw std::domain_error("truncation count out of range");
        for (const ChannelTruncation& o : channels)
            if (o.l == c.l && o.m == c.m)
                throw std::domain_error("duplicate truncation channel");
        channels.push_back(c);
    }

    // flatten the included states
    int dim = 0;
    std::vector<int> offset(channels.size());
    for (size_t c = 0; c < channels.size(); ++c) {
        offset[c] = dim;
        dim += channels[c].count;
    }
    Eigen::VectorXd energy(dim);
    for (size_t c = 0; c < channels.size(); ++c) {
        const ChannelSpectrum& sp = basis.spectrum(channels[c].l);
        for (int i = 0; i < channels[c].count; ++i)
            energy[offset[c] + i] = sp.energies[i].real();
    }

    BoundChannelState ref = basis.bound_state(state.n, state.l);
    int ref_channel = -1;
    for (size_t c = 0; c < channels.size(); ++c)
        if (channels[c].l == state.l && channels[c].m == state.m) ref_channel = int(c);
    if (ref_channel < 0 || ref.index >= channels[ref_channel].count)
        throw std::invalid_argument("truncation does not include the reference state");
    int ref_index = offset[ref_channel] + ref.index;

    // dipole blocks in the x/y cartesian components:
    //   <row| x |col> = -+ A_{+-}/sqrt(2) R,  <row| y |col> = i A_{+-}/sqrt(2) R
    // (upper sign for m_row = m_col + 1).  x is real symmetric, y = i * yim
    // with yim real antisymmetric.
    Eigen::MatrixXd x_mat = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd yim_mat = Eigen::MatrixXd::Zero(dim, dim);
    double pref = -cfg.field.amplitude / std::sqrt(2.0);   // V = -e eps_L {x,y}/sqrt(2)
    for (size_t a = 0; a < channels.size(); ++a)
        for (size_t b = 0; b < channels.size(); ++b) {
            int dl = channels[a].l - channels[b].l;
            int dm = channels[a].m - channels[b].m;
            if (std::abs(dl) != 1 || std::abs(dm) != 1) continue;
            double ang = angular_factor(channels[b].l, channels[b].m, dm,
                                        channels[a].l, channels[a].m);
            if (ang == 0.0) continue;
            Eigen::MatrixXd va = basis.spectrum(channels[a].l)
                                     .vectors.leftCols(channels[a].count)
                                     .real();
            Eigen::MatrixXd vb = basis.spectrum(channels[b].l)
                                     .vectors.leftCols(channels[b].count)
                                     .real();
            Eigen::MatrixXd r = va.transpose()
                                * basis.dipole(channels[a].l, channels[b].l) * vb;
            double sx = dm > 0 ? -1.0 : 1.0;
            x_mat.block(offset[a], offset[b], channels[a].count, channels[b].count)
                = pref * sx * ang / std::sqrt(2.0) * r;
            yim_mat.block(offset[a], offset[b], channels[a].count, channels[b].count)
                = pref * ang / std::sqrt(2.0) * r;
        }

    // truncation diagnostic: dipole couplings of the reference state that
    // fell outside the included set, relative to the largest kept one
    double max_in = 0.0, max_out = 0.0;
    for (int q : {+1, -1})
        for (const AngularChannel& ch : dipole_channels(state.l, state.m, q)) {
            if (ch.l_prime > basis.config().l_max) continue;
            Eigen::VectorXd w = (basis.spectrum(ch.l_prime).vectors.real().transpose()
                                 * basis.dipole(ch.l_prime, state.l)
                                 * ref.coeffs.real())
                                * std::abs(ch.weight);
            int kept = 0;
            bool in_basis = !cfg.drop_emission_channels || ch.m_prime >= state.m;
            if (in_basis)
                for (const ChannelTruncation& c : channels)
                    if (c.l == ch.l_prime && c.m == ch.m_prime) kept = c.count;
            for (int i = 0; i < w.size(); ++i)
                (i < kept ? max_in : max_out)
                    = std::max(i < kept ? max_in : max_out, std::abs(w[i]));
        }

    // interaction-picture RK4; rhs(t, a) = -i e^{+iEt} f(t) [Vx cos + Vy sin] e^{-iEt} a
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(dim);
    amp[ref_index] = 1.0;
    double eps = cfg.field.damping, w_l = cfg.field.omega;
    auto rhs = [&](double t, const Eigen::VectorXcd& a) -> Eigen::VectorXcd {
        double f = std::exp(-eps * std::abs(t));
        double cw = f * std::cos(w_l * t), sw = f * std::sin(w_l * t);
        Eigen::VectorXcd u(dim);
        for (int i = 0; i < dim; ++i)
            u[i] = std::polar(1.0, -energy[i] * t) * a[i];
        Eigen::VectorXd pr = x_mat * u.real(), pi = x_mat * u.imag();
        Eigen::VectorXd qr = yim_mat * u.real(), qi = yim_mat * u.imag();
        Eigen::VectorXcd out(dim);
        for (int i = 0; i < dim; ++i) {
            // cw*(pr+i pi) + sw*i*(qr+i qi), then * -i e^{+iEt}
            dcomplex v(cw * pr[i] - sw * qi[i], cw * pi[i] + sw * qr[i]);
            out[i] = dcomplex(0.0, -1.0) * std::polar(1.0, energy[i] * t) * v;
        }
        return out;
    };

    EvolutionResult res;
    res.damping = eps;
    res.reference_energy = ref.energy.real();
    res.max_included_coupling = max_in;
    res.max_excluded_coupling = max_out;
    res.truncation_warning = max_out > 1e-3 * std::max(max_in, 1e-300);

    // land a node exactly on t = 0 so the fit window starts clean
    long nneg = std::lround(std::ceil(-cfg.t_start / cfg.dt));
    double dt_neg = -cfg.t_start / double(nneg);
    long npos = std::max<long>(std::lround(std::ceil(cfg.t_end / cfg.dt)), 8);
    double dt_pos = cfg.t_end / double(npos);

    auto step = [&](double t, double h) {
        Eigen::VectorXcd k1 = rhs(t, amp);
        Eigen::VectorXcd k2 = rhs(t + 0.5 * h, amp + 0.5 * h * k1);
        Eigen::VectorXcd k3 = rhs(t + 0.5 * h, amp + 0.5 * h * k2);
        Eigen::VectorXcd k4 = rhs(t + h, amp + h * k3);
        amp += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    auto record = [&](double t) {
        res.times.push_back(t);
        res.projection.push_back(amp[ref_index]);
    };

    record(cfg.t_start);
    for (long i = 0; i < nneg; ++i) {
        double t = cfg.t_start + double(i) * dt_neg;
        step(t, dt_neg);
        if ((i + 1) % cfg.sample_stride == 0 && i + 1 < nneg)
            record(cfg.t_start + double(i + 1) * dt_neg);
    }
    record(0.0);
    for (long i = 0; i < npos; ++i) {
        double t = double(i) * dt_pos;
        step(t, dt_pos);
        if ((i + 1) % cfg.sample_stride == 0 || i + 1 == npos)
            record(double(i + 1) * dt_pos);
    }

    res.norm_drift = std::abs(amp.norm() - 1.0);
    if (res.norm_drift > 1e-3)
        throw SolveError("time-step instability: norm drift "
                         + std::to_string(res.norm_drift));
    detail::fit_projection(res.times, res.projection, eps, res.delta_e,
                           res.fit_residual);
    return res;
}

// Refit the recorded projection; throws if the secular model misfits by
// more than 5% of the fitted signal.
inline dcomplex extract_shift(const EvolutionResult& result, double* residual = nullptr) {
    if (result.damping > 0.0
        && result.times.back() < 3.0 / result.damping * (1.0 - 1e-9))
        throw std::invalid_argument("need >= 3 ramp timescales past t = 0 to fit");
    dcomplex de{};
    double res = 0.0;
    detail::fit_projection(result.times, result.projection, result.damping, de, res);
    if (residual) *residual = res;
    if (res > 0.05)
        throw ExtractionError("fit residual " + std::to_string(res)
                              + " exceeds 5% of the extracted signal");
    return de;
}

inline void write_projection_csv(const EvolutionResult& result, std::ostream& os) {
    os << "t,re_c,im_c\n";
    char buf[128];
    for (size_t i = 0; i < result.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.11e,%.11e,%.11e\n", result.times[i],
                      result.projection[i].real(), result.projection[i].imag());
        os << buf;
    }
}

} // namespace acstark
