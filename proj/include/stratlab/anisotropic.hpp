#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stratlab/field.hpp"
#include "stratlab/operators.hpp"

namespace stratlab {

/// One level of a mixed Lebesgue norm: a set of axes and an exponent
/// (infinity for the essential sup, realized as a collocation max).
struct AxisNorm {
    std::array<bool, 3> axes{false, false, false};
    double p = 2.0;
};

inline AxisNorm horizontal_axes(double p) { return {{true, true, false}, p}; }
inline AxisNorm vertical_axis(double p) { return {{false, false, true}, p}; }

namespace detail {
inline bool is_inf(double p) { return std::isinf(p); }
}

/// Mixed-norm quadrature over the collocation grid with uniform (periodic
/// trapezoidal) weights and the true box measure: inner exponent first over
/// the inner axes, then the outer exponent over the remaining axes.
inline double anisotropic_norm(const FourierGrid& g, const std::vector<double>& phys,
                               const AxisNorm& outer, const AxisNorm& inner) {
    for (int a = 0; a < 3; ++a)
        if (outer.axes[a] == inner.axes[a])
            throw std::invalid_argument("outer and inner axis sets must partition the axes");
    if (outer.p < 1.0 || inner.p < 1.0)
        throw std::invalid_argument("exponents must lie in [1, inf]");

    const std::array<int, 3> n = g.dims();
    std::array<double, 3> dx{g.box()[0] / n[0], g.box()[1] / n[1], g.box()[2] / n[2]};

    double inner_measure = 1.0, outer_measure = 1.0;
    for (int a = 0; a < 3; ++a) (inner.axes[a] ? inner_measure : outer_measure) *= dx[a];

    const bool inner_inf = detail::is_inf(inner.p);
    const bool outer_inf = detail::is_inf(outer.p);

    double outer_acc = outer_inf ? 0.0 : 0.0;
    // iterate over outer index space; inner loop collapses the inner axes
    std::array<int, 3> idx{0, 0, 0};
    std::array<int, 3> outer_dim{1, 1, 1}, inner_dim{1, 1, 1};
    for (int a = 0; a < 3; ++a) (inner.axes[a] ? inner_dim : outer_dim)[a] = n[a];

    for (int o1 = 0; o1 < outer_dim[0]; ++o1)
        for (int o2 = 0; o2 < outer_dim[1]; ++o2)
            for (int o3 = 0; o3 < outer_dim[2]; ++o3) {
                double inner_acc = 0.0;
                for (int i1 = 0; i1 < inner_dim[0]; ++i1)
                    for (int i2 = 0; i2 < inner_dim[1]; ++i2)
                        for (int i3 = 0; i3 < inner_dim[2]; ++i3) {
                            idx[0] = inner.axes[0] ? i1 : o1;
                            idx[1] = inner.axes[1] ? i2 : o2;
                            idx[2] = inner.axes[2] ? i3 : o3;
                            const double v =
                                std::abs(phys[g.index(idx[0], idx[1], idx[2])]);
                            if (inner_inf)
                                inner_acc = std::max(inner_acc, v);
                            else
                                inner_acc += std::pow(v, inner.p) * inner_measure;
                        }
                const double inner_norm = inner_inf ? inner_acc : std::pow(inner_acc, 1.0 / inner.p);
                if (outer_inf)
                    outer_acc = std::max(outer_acc, inner_norm);
                else
                    outer_acc += std::pow(inner_norm, outer.p) * outer_measure;
            }
    return outer_inf ? outer_acc : std::pow(outer_acc, 1.0 / outer.p);
}

/// Plain L^p norm over the whole box (true measure; p = inf is the max).
inline double lp_norm(const FourierGrid& g, const std::vector<double>& phys, double p) {
    if (detail::is_inf(p)) {
        double worst = 0.0;
        for (double v : phys) worst = std::max(worst, std::abs(v));
        return worst;
    }
    double acc = 0.0;
    const double cell = g.cell_volume();
    for (double v : phys) acc += std::pow(std::abs(v), p) * cell;
    return std::pow(acc, 1.0 / p);
}

/// Spectral support radius: max |xi| over modes carrying mass.
inline double support_radius(const SpectralScalar& u, double rel_floor = 1e-13) {
    double peak = 0.0;
    for (const auto& c : u.coef) peak = std::max(peak, std::abs(c));
    const double floor = rel_floor * peak;
    double radius = 0.0;
    u.grid->for_each_mode_full([&](std::size_t i, double x1, double x2, double x3) {
        if (std::abs(u.coef[i]) > floor)
            radius = std::max(radius, std::sqrt(x1 * x1 + x2 * x2 + x3 * x3));
    });
    return radius;
}

/// sup over |alpha| = k of || d^alpha u ||_{L^b} divided by the Bernstein
/// envelope lambda^{k + d(1/a - 1/b)} ||u||_{L^a} with measured lambda.
inline double bernstein_ratio(const SpectralScalar& u, int k, double a, double b) {
    const auto& g = *u.grid;
    const double lambda = support_radius(u);
    if (lambda == 0.0) throw std::domain_error("bernstein_ratio needs a nonconstant field");
    const double na = lp_norm(g, scalar_to_physical(u), a);

    double sup_db = 0.0;
    for (int k1 = 0; k1 <= k; ++k1)
        for (int k2 = 0; k2 + k1 <= k; ++k2) {
            const int k3 = k - k1 - k2;
            SpectralScalar d(g);
            g.for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
                cplx mult(1.0, 0.0);
                for (int r = 0; r < k1; ++r) mult *= iu() * x1;
                for (int r = 0; r < k2; ++r) mult *= iu() * x2;
                for (int r = 0; r < k3; ++r) mult *= iu() * x3;
                d.coef[i] = mult * u.coef[i];
            });
            sup_db = std::max(sup_db, lp_norm(g, scalar_to_physical(d), b));
        }
    const double inv_a = detail::is_inf(a) ? 0.0 : 1.0 / a;
    const double inv_b = detail::is_inf(b) ? 0.0 : 1.0 / b;
    const double envelope = std::pow(lambda, k + 3.0 * (inv_a - inv_b)) * na;
    return sup_db / envelope;
}

}  // namespace stratlab
