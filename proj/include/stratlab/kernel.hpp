#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stratlab/common.hpp"
#include "stratlab/cutoff.hpp"
#include "stratlab/symbol.hpp"

namespace stratlab {

/// Parameters of the dispersive convolution kernel
///   K(t, tau, z) = int exp( s*i*tau*(|xi_h|/|xi|) S(xi)
///                           - (nu+nu')/2 |xi|^2 t + i xi.z ) Psi_{r,R}(xi) dxi
/// over continuous xi in R^3 (the cutoff support makes the domain finite).
struct KernelParams {
    double r = 1.0;
    double R = 4.0;
    double eps = 1e-3;
    double nu = 1.0;
    double nu_prime = 1.0;
    double t = 0.0;
    double tau = 0.0;
    std::array<double, 3> z{0.0, 0.0, 0.0};
    int sign = +1;
};

/// Quadrature resolution policy.  Per-axis counts follow the Nyquist guard:
/// at least `points_per_period` nodes per oscillation period of the phase
/// along each axis, with `base_points` as the floor; the evaluation budget
/// is capped.
struct QuadSpec {
    int base_points = 96;
    int points_per_period = 8;
    std::size_t max_evals = 1000000000ull;
};

namespace detail {

/// 16-point Gauss-Legendre panel on (-1, 1).
struct GlPanel {
    std::array<double, 16> x;
    std::array<double, 16> w;
};

inline const GlPanel& gl16() {
    static const GlPanel p = [] {
        GlPanel g{};
        const int n = 16;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * pp * pp);
            g.x[static_cast<std::size_t>(i)] = -x;
            g.w[static_cast<std::size_t>(i)] = w;
            g.x[static_cast<std::size_t>(n - 1 - i)] = x;
            g.w[static_cast<std::size_t>(n - 1 - i)] = w;
        }
        return g;
    }();
    return p;
}

/// Composite 16-point Gauss-Legendre nodes covering [a, b] with npanels.
inline void composite_gl(double a, double b, int npanels, std::vector<double>& nodes,
                         std::vector<double>& weights) {
    const GlPanel& p = gl16();
    nodes.clear();
    weights.clear();
    nodes.reserve(static_cast<std::size_t>(16 * npanels));
    weights.reserve(static_cast<std::size_t>(16 * npanels));
    const double h = (b - a) / npanels;
    for (int k = 0; k < npanels; ++k) {
        const double mid = a + (k + 0.5) * h;
        for (int j = 0; j < 16; ++j) {
            nodes.push_back(mid + 0.5 * h * p.x[static_cast<std::size_t>(j)]);
            weights.push_back(0.5 * h * p.w[static_cast<std::size_t>(j)]);
        }
    }
}

inline int required_points(double cycles, const QuadSpec& q) {
    const double need = q.points_per_period * cycles;
    return std::max(q.base_points, static_cast<int>(std::ceil(need)));
}

}  // namespace detail

/// Direct evaluation of the kernel by tensor-product Gauss-Legendre
/// quadrature in cylindrical coordinates: the angular integral is exactly
/// 2 pi J0(|xi_h| |z_h|), which reduces the domain to
/// (|xi_h|, xi_3) in [r/2, 2R] x [-2R, 2R].  Signals when the oscillation
/// budget would exceed the evaluation cap.
inline cplx eval_kernel(const KernelParams& p, const QuadSpec& q = QuadSpec()) {
    if (!(0.0 < p.r && p.r < p.R)) throw std::invalid_argument("kernel requires 0 < r < R");
    const FrequencyCutoff cut(p.r, p.R);
    const double rho_lo = 0.5 * p.r, rho_hi = 2.0 * p.R;
    const double zeta_hi = 2.0 * p.R;
    const double zh = std::hypot(p.z[0], p.z[1]);

    // Phase-variation bounds along each axis: the oscillation factor has
    // total variation at most tau along a rho line and 2 tau along a zeta
    // line (phi ranges over (0, 1]); the plane-wave factor adds |z| cycles.
    const double cycles_rho = (p.tau * 1.0 + zh * (rho_hi - rho_lo)) / kTwoPi;
    const double cycles_zeta = (p.tau * 2.0 + std::abs(p.z[2]) * 2.0 * zeta_hi) / kTwoPi;
    const int n_rho = detail::required_points(cycles_rho, q);
    const int n_zeta = detail::required_points(cycles_zeta, q);
    if (static_cast<std::size_t>(n_rho) * static_cast<std::size_t>(n_zeta) > q.max_evals)
        throw std::runtime_error("kernel quadrature exceeds the evaluation cap");

    std::vector<double> xr, wr, xz, wz;
    detail::composite_gl(rho_lo, rho_hi, (n_rho + 15) / 16, xr, wr);
    detail::composite_gl(-zeta_hi, zeta_hi, (n_zeta + 15) / 16, xz, wz);

    const double damp_coef = 0.5 * (p.nu + p.nu_prime) * p.t;
    const double sgn = p.sign >= 0 ? 1.0 : -1.0;

    // Deterministic tile-ordered reduction over rho nodes.
    const std::size_t nr = xr.size();
    std::vector<cplx> partial(nr, cplx(0.0, 0.0));
    parallel_for(nr, [&](std::size_t ir) {
        const double rho = xr[ir];
        const double bess = zh > 0.0 ? std::cyl_bessel_j(0.0, rho * zh) : 1.0;
        const double pre_rho = wr[ir] * rho * bess * (1.0 - chi_profile(2.0 * rho / p.r));
        if (pre_rho == 0.0) return;
        cplx acc(0.0, 0.0);
        for (std::size_t iz = 0; iz < xz.size(); ++iz) {
            const double zeta = xz[iz];
            const double m2 = rho * rho + zeta * zeta;
            const double m = std::sqrt(m2);
            const double psi_m = chi_profile(m / p.R);
            if (psi_m == 0.0) continue;
            const cplx S = S_factor(rho * rho, m2, p.eps, p.nu, p.nu_prime);
            const cplx phase = sgn * iu() * p.tau * (rho / m) * S +
                               cplx(-damp_coef * m2, p.z[2] * zeta);
            acc += wz[iz] * psi_m * std::exp(phase);
        }
        partial[ir] = pre_rho * acc;
    });
    cplx total(0.0, 0.0);
    for (const cplx& v : partial) total += v;
    return kTwoPi * total;
}

/// Brute-force oracle: uniform midpoint Riemann sum over the bounding box
/// of the cutoff support in the original three variables.
inline cplx eval_kernel_riemann(const KernelParams& p, int points_per_axis) {
    const FrequencyCutoff cut(p.r, p.R);
    const double L = 2.0 * p.R;
    const double h = 2.0 * L / points_per_axis;
    const double sgn = p.sign >= 0 ? 1.0 : -1.0;
    const double damp_coef = 0.5 * (p.nu + p.nu_prime) * p.t;
    const std::size_t n = static_cast<std::size_t>(points_per_axis);
    std::vector<cplx> partial(n, cplx(0.0, 0.0));
    parallel_for(n, [&](std::size_t i1) {
        const double x1 = -L + (i1 + 0.5) * h;
        cplx acc(0.0, 0.0);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const double x2 = -L + (i2 + 0.5) * h;
            const double mh2 = x1 * x1 + x2 * x2;
            const double psi_h = 1.0 - chi_profile(2.0 * std::sqrt(mh2) / p.r);
            if (psi_h == 0.0) continue;
            for (std::size_t i3 = 0; i3 < n; ++i3) {
                const double x3 = -L + (i3 + 0.5) * h;
                const double m2 = mh2 + x3 * x3;
                const double m = std::sqrt(m2);
                const double psi = psi_h * chi_profile(m / p.R);
                if (psi == 0.0) continue;
                const cplx S = S_factor(mh2, m2, p.eps, p.nu, p.nu_prime);
                const cplx phase = sgn * iu() * p.tau * (std::sqrt(mh2) / m) * S +
                                   cplx(-damp_coef * m2,
                                        p.z[0] * x1 + p.z[1] * x2 + p.z[2] * x3);
                acc += psi * std::exp(phase);
            }
        }
        partial[i1] = acc;
    });
    cplx total(0.0, 0.0);
    for (const cplx& v : partial) total += v;
    return total * (h * h * h);
}

/// Decay read-out: |K| on a log-spaced tau grid, the least-squares slope of
/// log|K| against log tau at z = 0, and the max of |K| over a fixed z sample.
struct DecayFit {
    std::vector<double> tau;
    std::vector<double> abs_k;      // at z = 0
    std::vector<double> sup_abs_k;  // max over the z sample
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

inline std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    return out;
}

inline DecayFit fit_decay(KernelParams base, const std::vector<double>& tau_grid,
                          const QuadSpec& q = QuadSpec()) {
    if (tau_grid.size() < 12) throw std::invalid_argument("tau grid needs at least 12 points");
    static const std::array<std::array<double, 3>, 3> z_sample{
        {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.5}, {0.4, 0.8, -1.2}}};
    DecayFit fit;
    fit.tau = tau_grid;
    for (double tau : tau_grid) {
        base.tau = tau;
        double sup = 0.0;
        double at0 = 0.0;
        for (const auto& z : z_sample) {
            base.z = z;
            const double a = std::abs(eval_kernel(base, q));
            if (z[0] == 0.0 && z[1] == 0.0 && z[2] == 0.0) at0 = a;
            sup = std::max(sup, a);
        }
        fit.abs_k.push_back(at0);
        fit.sup_abs_k.push_back(sup);
    }
    // least squares on (log tau, log |K|)
    const std::size_t n = tau_grid.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(fit.tau[i]);
        const double y = std::log(fit.abs_k[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::log(fit.abs_k[i]) - (fit.intercept + fit.slope * std::log(fit.tau[i]));
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

}  // namespace stratlab
