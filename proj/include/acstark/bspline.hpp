#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace acstark {

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes, weights;

    explicit GaussLegendre(int n) : nodes(n), weights(n) {
        if (n < 1) throw std::domain_error("GaussLegendre: need n >= 1");
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

enum class KnotLayout { linear, exponential };

// breakpoints 0 = b_0 < b_1 < ... < b_M = r_max
inline std::vector<double> breakpoints(KnotLayout layout, int intervals, double r_max,
                                       double stretch) {
    if (intervals < 1) throw std::domain_error("breakpoints: need >= 1 interval");
    if (!(r_max > 0.0)) throw std::domain_error("breakpoints: r_max must be > 0");
    std::vector<double> b(intervals + 1);
    for (int j = 0; j <= intervals; ++j) {
        double f = double(j) / intervals;
        if (layout == KnotLayout::exponential && stretch > 0.0)
            f = std::expm1(stretch * f) / std::expm1(stretch);
        b[j] = r_max * f;
    }
    b.front() = 0.0;
    b.back() = r_max;
    return b;
}

// Clamped B-spline basis of order k (polynomial degree k-1) on given
// breakpoints.  Full basis has intervals + k - 1 members; the first and
// last are the only ones nonzero at the endpoints and get dropped by the
// radial solver to enforce u(0) = u(r_max) = 0.
class BsplineBasis {
public:
    BsplineBasis(std::vector<double> breaks, int order)
        : breaks_(std::move(breaks)), k_(order) {
        if (k_ < 2) throw std::domain_error("BsplineBasis: order must be >= 2");
        if (breaks_.size() < 2) throw std::domain_error("BsplineBasis: need >= 2 breakpoints");
        knots_.assign(k_, breaks_.front());
        knots_.insert(knots_.end(), breaks_.begin() + 1, breaks_.end() - 1);
        knots_.insert(knots_.end(), k_, breaks_.back());
    }

    int order() const { return k_; }
    int intervals() const { return int(breaks_.size()) - 1; }
    int size() const { return intervals() + k_ - 1; }
    const std::vector<double>& breaks() const { return breaks_; }

    // Values and first derivatives of the k splines supported on breakpoint
    // interval `j` at point x in that interval; global indices j .. j+k-1.
    // val/der must hold k doubles.
    void eval(int j, double x, double* val, double* der) const {
        int mu = j + k_ - 1;        // knot span: knots_[mu] <= x < knots_[mu+1]
        std::vector<double> left(k_), right(k_), nm1(k_, 0.0);
        val[0] = 1.0;
        for (int r = 1; r < k_; ++r) {
            left[r] = x - knots_[mu + 1 - r];
            right[r] = knots_[mu + r] - x;
            double saved = 0.0;
            for (int i = 0; i < r; ++i) {
                double tmp = val[i] / (right[i + 1] + left[r - i]);
                val[i] = saved + right[i + 1] * tmp;
                saved = left[r - i] * tmp;
            }
            val[r] = saved;
            if (r == k_ - 2)
                for (int i = 0; i < k_ - 1; ++i) nm1[i] = val[i];
        }
        if (k_ == 2) nm1[0] = 1.0;  // order-1 spline on the span
        for (int i = 0; i < k_; ++i) {
            int g = mu - k_ + 1 + i;
            double d = 0.0;
            if (i >= 1) {
                double den = knots_[g + k_ - 1] - knots_[g];
                if (den > 0.0) d += nm1[i - 1] / den;
            }
            if (i <= k_ - 2) {
                double den = knots_[g + k_] - knots_[g + 1];
                if (den > 0.0) d -= nm1[i] / den;
            }
            der[i] = (k_ - 1.0) * d;
        }
    }

private:
    std::vector<double> breaks_;
    int k_;
    std::vector<double> knots_;
};

} // namespace acstark
