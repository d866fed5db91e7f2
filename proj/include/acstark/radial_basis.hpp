#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "acstark/bspline.hpp"
#include "acstark/errors.hpp"
#include "acstark/hydrogenic.hpp"
#include "acstark/types.hpp"

namespace acstark {

enum class BasisKind { bspline, sturmian };

struct RadialBasisConfig {
    BasisKind kind = BasisKind::bspline;
    int count = 80;                         // retained radial functions per channel
    double box_radius = 30.0;
    int spline_order = 7;
    KnotLayout layout = KnotLayout::exponential;
    double knot_stretch = 5.0;
    double theta = 0.0;                     // uniform complex-scaling angle
    int l_max = 3;
    double sturmian_kappa = 0.0;            // 0 -> use Z
    int quad_per_interval = 0;              // 0 -> spline_order + 6

    void validate() const {
        if (count < 10) throw BasisError("basis count must be >= 10");
        if (!(box_radius > 0.0)) throw BasisError("box radius must be > 0");
        if (spline_order < 4) throw BasisError("spline order must be >= 4");
        if (kind == BasisKind::bspline && count < spline_order)
            throw BasisError("basis count must be >= spline order");
        if (!(theta >= 0.0) || theta >= 0.25 * std::numbers::pi)
            throw BasisError("scaling angle must lie in [0, pi/4)");
        if (l_max < 0 || l_max > 8) throw BasisError("l_max must be in 0..8");
        if (sturmian_kappa < 0.0) throw BasisError("sturmian kappa must be >= 0");
        if (layout == KnotLayout::exponential && !(knot_stretch > 0.0))
            throw BasisError("knot stretch must be > 0");
    }

    static RadialBasisConfig defaults_for(const AtomicState& s) {
        RadialBasisConfig cfg;
        cfg.box_radius = 30.0 * s.n * s.n / double(s.Z);
        cfg.l_max = std::min(s.l + 1, 8);
        return cfg;
    }
};

// Eigen-decomposition of one angular channel: pencil (H_l, S), eigenvalues
// ascending by real part, vectors c-normalized (v^T S v = 1, no conjugation).
struct ChannelSpectrum {
    Eigen::VectorXcd energies;
    Eigen::MatrixXcd vectors;               // column i <-> energies[i]
};

struct BoundChannelState {
    int index = -1;
    dcomplex energy{};
    Eigen::VectorXcd coeffs;
};

// Radial discretization of the hydrogenic Hamiltonian for channels
// l = 0..l_max of a single charge Z, optionally complex-scaled:
//   H_l(theta) = e^{-2i theta} (T + l(l+1)/2 C2) - Z e^{-i theta} C1
// with T = kinetic, C2 = <1/r^2>, C1 = <1/r> in a reduced-wavefunction
// basis that vanishes at 0 and box_radius.
class RadialBasis {
public:
    RadialBasis(RadialBasisConfig cfg, int Z) : cfg_(cfg), z_(Z) {
        cfg_.validate();
        if (Z < 1 || Z > 11) throw BasisError("Z must be in 1..11");
        build_quadrature();
        build_function_tables();
        build_matrices();
        build_spectra();
    }

    const RadialBasisConfig& config() const { return cfg_; }
    int Z() const { return z_; }
    int size() const { return cfg_.count; }
    double theta() const { return cfg_.theta; }
    double condition_number() const { return cond_; }

    const Eigen::MatrixXd& overlap(int l = 0) const { return S_[chan(l)]; }
    const Eigen::MatrixXd& kinetic(int l = 0) const { return T_[chan(l)]; }

    Eigen::MatrixXcd hamiltonian(int l) const {
        check_l(l);
        int c = chan(l);
        Eigen::MatrixXd hr = T_[c] + 0.5 * l * (l + 1.0) * C2_[c];
        dcomplex e2(std::cos(2.0 * cfg_.theta), -std::sin(2.0 * cfg_.theta));
        dcomplex e1(std::cos(cfg_.theta), -std::sin(cfg_.theta));
        return e2 * hr.cast<dcomplex>() - double(z_) * e1 * C1_[c].cast<dcomplex>();
    }

    // <f_i^{l_row} | r | f_j^{l_col}>, rows in channel l_row
    const Eigen::MatrixXd& dipole(int l_row, int l_col) const {
        check_l(l_row);
        check_l(l_col);
        if (std::abs(l_row - l_col) != 1)
            throw std::domain_error("dipole: channels must differ by one unit of l");
        if (shared_functions()) return D_[0];
        return l_row < l_col ? D_up_[l_row] : D_dn_[l_col];
    }

    const ChannelSpectrum& spectrum(int l) const {
        check_l(l);
        return spectra_[l];
    }

    // discrete counterpart of the (n, l) bound level
    BoundChannelState bound_state(int n, int l) const {
        check_l(l);
        double target = bound_energy(n, z_);
        const ChannelSpectrum& sp = spectra_[l];
        int best = -1;
        double dist = 1e300;
        for (int i = 0; i < sp.energies.size(); ++i) {
            dcomplex e = sp.energies[i];
            if (std::abs(e.imag()) > 1e-6 * std::max(1.0, std::abs(e.real()))) continue;
            double d = std::abs(e.real() - target);
            if (d < dist) {
                dist = d;
                best = i;
            }
        }
        if (best < 0 || dist > 1e-3 * std::abs(target))
            throw BasisError("basis cannot represent bound state n=" + std::to_string(n)
                             + " l=" + std::to_string(l));
        return {best, sp.energies[best], sp.vectors.col(best)};
    }

    // u(r) for a coefficient vector in channel l (0 outside the box)
    dcomplex eval_radial(int l, const Eigen::VectorXcd& coeffs, double r) const {
        check_l(l);
        if (r <= 0.0 || r >= cfg_.box_radius) return {0.0, 0.0};
        if (cfg_.kind == BasisKind::bspline) {
            const BsplineBasis& bs = *bspline_;
            int j = int(std::upper_bound(bs.breaks().begin(), bs.breaks().end(), r)
                        - bs.breaks().begin()) - 1;
            j = std::clamp(j, 0, bs.intervals() - 1);
            std::vector<double> v(bs.order()), d(bs.order());
            bs.eval(j, r, v.data(), d.data());
            dcomplex out{};
            for (int i = 0; i < bs.order(); ++i) {
                int g = j + i;              // full-basis index
                if (g >= 1 && g <= bs.size() - 2) out += coeffs[g - 1] * v[i];
            }
            return out;
        }
        double kap = kappa();
        double x = 2.0 * kap * r;
        std::vector<double> lag(cfg_.count);
        detail::laguerre_row(cfg_.count - 1, 2.0 * l + 1.0, x, lag.data());
        double pref = std::pow(x, l + 1.0) * std::exp(-0.5 * x);
        dcomplex out{};
        for (int i = 0; i < cfg_.count; ++i)
            out += coeffs[i] * pref * lag[i] * sturm_scale_[l][i];
        return out;
    }

    const std::vector<double>& quad_nodes() const { return rq_; }
    const std::vector<double>& quad_weights() const { return wq_; }

private:
    RadialBasisConfig cfg_;
    int z_;
    std::vector<double> rq_, wq_;
    std::unique_ptr<BsplineBasis> bspline_;
    std::vector<Eigen::MatrixXd> vals_, ders_;          // per channel (or single shared)
    std::vector<std::vector<double>> sturm_scale_;      // per-function normalization
    std::vector<Eigen::MatrixXd> S_, T_, C2_, C1_;
    std::vector<Eigen::MatrixXd> D_, D_up_, D_dn_;
    std::vector<ChannelSpectrum> spectra_;
    double cond_ = 0.0;

    bool shared_functions() const { return cfg_.kind == BasisKind::bspline; }
    int chan(int l) const { return shared_functions() ? 0 : l; }
    int nchan() const { return shared_functions() ? 1 : cfg_.l_max + 1; }
    double kappa() const { return cfg_.sturmian_kappa > 0.0 ? cfg_.sturmian_kappa : double(z_); }

    void check_l(int l) const {
        if (l < 0 || l > cfg_.l_max)
            throw std::domain_error("channel l out of range (raise l_max)");
    }

    void build_quadrature() {
        int per = cfg_.quad_per_interval > 0 ? cfg_.quad_per_interval : cfg_.spline_order + 6;
        int m;
        if (cfg_.kind == BasisKind::bspline) {
            m = cfg_.count - cfg_.spline_order + 3;
            if (m < 2) throw BasisError("basis count too small for spline order");
        } else {
            m = std::max(48, cfg_.count);
            per = std::max(per, 16);
        }
        std::vector<double> b = breakpoints(cfg_.layout, m, cfg_.box_radius, cfg_.knot_stretch);
        if (cfg_.kind == BasisKind::bspline)
            bspline_ = std::make_unique<BsplineBasis>(b, cfg_.spline_order);
        GaussLegendre gl(per);
        rq_.reserve(m * per);
        wq_.reserve(m * per);
        for (int j = 0; j < m; ++j) {
            double h = 0.5 * (b[j + 1] - b[j]), c = 0.5 * (b[j + 1] + b[j]);
            for (int p = 0; p < per; ++p) {
                rq_.push_back(c + h * gl.nodes[p]);
                wq_.push_back(h * gl.weights[p]);
            }
        }
    }

    void build_function_tables() {
        int np = int(rq_.size());
        if (cfg_.kind == BasisKind::bspline) {
            const BsplineBasis& bs = *bspline_;
            int per = np / bs.intervals();
            Eigen::MatrixXd v = Eigen::MatrixXd::Zero(bs.size(), np);
            Eigen::MatrixXd d = Eigen::MatrixXd::Zero(bs.size(), np);
            std::vector<double> bv(bs.order()), bd(bs.order());
            for (int j = 0; j < bs.intervals(); ++j)
                for (int p = 0; p < per; ++p) {
                    int col = j * per + p;
                    bs.eval(j, rq_[col], bv.data(), bd.data());
                    for (int i = 0; i < bs.order(); ++i) {
                        v(j + i, col) = bv[i];
                        d(j + i, col) = bd[i];
                    }
                }
            // drop boundary splines: u(0) = u(box) = 0
            vals_.push_back(v.middleRows(1, bs.size() - 2));
            ders_.push_back(d.middleRows(1, bs.size() - 2));
            return;
        }
        double kap = kappa();
        sturm_scale_.resize(cfg_.l_max + 1);
        for (int l = 0; l <= cfg_.l_max; ++l) {
            Eigen::MatrixXd v(cfg_.count, np), d(cfg_.count, np);
            std::vector<double> lag(cfg_.count), lag1(cfg_.count);
            for (int p = 0; p < np; ++p) {
                double x = 2.0 * kap * rq_[p];
                detail::laguerre_row(cfg_.count - 1, 2.0 * l + 1.0, x, lag.data());
                detail::laguerre_row(cfg_.count - 1, 2.0 * l + 2.0, x, lag1.data());
                double xl = std::pow(x, double(l)), ex = std::exp(-0.5 * x);
                for (int i = 0; i < cfg_.count; ++i) {
                    double lp = i > 0 ? -lag1[i - 1] : 0.0;   // d/dx Laguerre
                    v(i, p) = xl * x * ex * lag[i];
                    d(i, p) = 2.0 * kap * ex
                              * ((l + 1.0) * xl * lag[i] - 0.5 * xl * x * lag[i]
                                 + xl * x * lp);
                }
            }
            sturm_scale_[l].resize(cfg_.count);
            for (int i = 0; i < cfg_.count; ++i) {
                double nrm2 = 0.0;
                for (int p = 0; p < np; ++p) nrm2 += wq_[p] * v(i, p) * v(i, p);
                double s = 1.0 / std::sqrt(nrm2);
                sturm_scale_[l][i] = s;
                v.row(i) *= s;
                d.row(i) *= s;
            }
            vals_.push_back(std::move(v));
            ders_.push_back(std::move(d));
        }
    }

    void build_matrices() {
        int np = int(rq_.size());
        Eigen::VectorXd w(np), w_r(np), w_r2(np), wr(np);
        for (int p = 0; p < np; ++p) {
            w[p] = wq_[p];
            w_r[p] = wq_[p] / rq_[p];
            w_r2[p] = wq_[p] / (rq_[p] * rq_[p]);
            wr[p] = wq_[p] * rq_[p];
        }
        for (int c = 0; c < nchan(); ++c) {
            const Eigen::MatrixXd& v = vals_[c];
            const Eigen::MatrixXd& d = ders_[c];
            S_.push_back(v * w.asDiagonal() * v.transpose());
            T_.push_back(0.5 * d * w.asDiagonal() * d.transpose());
            C1_.push_back(v * w_r.asDiagonal() * v.transpose());
            C2_.push_back(v * w_r2.asDiagonal() * v.transpose());
        }
        if (shared_functions()) {
            D_.push_back(vals_[0] * wr.asDiagonal() * vals_[0].transpose());
        } else {
            for (int l = 0; l < cfg_.l_max; ++l) {
                D_up_.push_back(vals_[l] * wr.asDiagonal() * vals_[l + 1].transpose());
                D_dn_.push_back(D_up_.back().transpose());
            }
        }
        cond_ = 0.0;
        for (int c = 0; c < nchan(); ++c) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S_[c],
                                                              Eigen::EigenvaluesOnly);
            double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
            if (!(lo > 0.0))
                throw BasisError("overlap matrix not positive definite");
            cond_ = std::max(cond_, hi / lo);
        }
        if (cond_ > 1e14)
            throw BasisError("overlap matrix condition number "
                             + std::to_string(cond_) + " exceeds 1e14");
    }

    void build_spectra() {
        spectra_.resize(cfg_.l_max + 1);
        for (int l = 0; l <= cfg_.l_max; ++l) {
            int c = chan(l);
            int n = int(S_[c].rows());
            if (cfg_.theta == 0.0) {
                Eigen::MatrixXd h = T_[c] + 0.5 * l * (l + 1.0) * C2_[c]
                                    - double(z_) * C1_[c];
                Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(h, S_[c]);
                if (es.info() != Eigen::Success)
                    throw SolveError("generalized eigensolve failed in channel l="
                                     + std::to_string(l));
                spectra_[l].energies = es.eigenvalues().cast<dcomplex>();
                spectra_[l].vectors = es.eigenvectors().cast<dcomplex>();
                continue;
            }
            Eigen::LLT<Eigen::MatrixXd> llt(S_[c]);
            if (llt.info() != Eigen::Success)
                throw BasisError("overlap factorization failed");
            Eigen::MatrixXcd lc = llt.matrixL().toDenseMatrix().cast<dcomplex>();
            Eigen::MatrixXcd x = lc.triangularView<Eigen::Lower>().solve(hamiltonian(l));
            Eigen::MatrixXcd a = lc.triangularView<Eigen::Lower>()
                                     .solve(x.transpose())
                                     .transpose();
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
            if (es.info() != Eigen::Success)
                throw SolveError("complex eigensolve failed in channel l="
                                 + std::to_string(l));
            Eigen::MatrixXcd vecs = lc.transpose()
                                        .triangularView<Eigen::Upper>()
                                        .solve(es.eigenvectors());
            std::vector<int> order(n);
            for (int i = 0; i < n; ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](int i, int j) {
                return es.eigenvalues()[i].real() < es.eigenvalues()[j].real();
            });
            spectra_[l].energies.resize(n);
            spectra_[l].vectors.resize(n, n);
            for (int i = 0; i < n; ++i) {
                Eigen::VectorXcd v = vecs.col(order[i]);
                dcomplex nrm2 = v.transpose() * S_[c].cast<dcomplex>() * v;
                if (std::abs(nrm2) < 1e-12 * v.squaredNorm() * S_[c].norm() / n)
                    throw SolveError("self-orthogonal eigenvector in channel l="
                                     + std::to_string(l));
                spectra_[l].energies[i] = es.eigenvalues()[order[i]];
                spectra_[l].vectors.col(i) = v / std::sqrt(nrm2);
            }
        }
    }
};

} // namespace acstark
