#pragma once

#include <cmath>
#include <map>
#include <utility>

#include "stratlab/cutoff.hpp"
#include "stratlab/field.hpp"
#include "stratlab/operators.hpp"

namespace stratlab {

/// Dyadic partition profiles, built from the same closed-form bump as the
/// frequency cutoff and scaled so that the low-pass profile is 1 inside
/// radius 3/4 and vanishes outside 4/3.  phi(s) = chi(s/2) - chi(s) is then
/// supported in the annulus [3/4, 8/3] and the family telescopes to 1.
inline double lp_chi(double s) { return smooth_step(s, 0.75, 4.0 / 3.0); }
inline double lp_phi(double s) { return lp_chi(0.5 * s) - lp_chi(s); }

/// Raw block multiplier at radius s for block q (q >= -1).
inline double lp_block_multiplier(int q, double s) {
    if (q < -1) return 0.0;
    if (q == -1) return lp_chi(s);
    return lp_phi(std::ldexp(s, -q));  // phi(2^{-q} s)
}

/// Littlewood-Paley decomposition on a fixed grid.  Multipliers are radial,
/// precomputed per mode, and renormalized pointwise so that they sum to 1
/// exactly; reconstruction is then exact to rounding.
class DyadicDecomposition {
public:
    explicit DyadicDecomposition(const FourierGrid& g) : grid_(&g) {
        double xi_max = 0.0;
        g.for_each_mode_full([&](std::size_t, double x1, double x2, double x3) {
            xi_max = std::max(xi_max, std::sqrt(x1 * x1 + x2 * x2 + x3 * x3));
        });
        q_max_ = 0;
        while (0.75 * std::ldexp(1.0, q_max_ + 1) < xi_max) ++q_max_;
        mult_.assign(static_cast<std::size_t>(q_max_ + 2), std::vector<double>(g.size(), 0.0));
        g.for_each_mode_full([&](std::size_t i, double x1, double x2, double x3) {
            const double s = std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
            double sum = 0.0;
            for (int q = -1; q <= q_max_; ++q) {
                const double v = lp_block_multiplier(q, s);
                mult_[static_cast<std::size_t>(q + 1)][i] = v;
                sum += v;
            }
            for (int q = -1; q <= q_max_; ++q) mult_[static_cast<std::size_t>(q + 1)][i] /= sum;
        });
    }

    const FourierGrid& grid() const { return *grid_; }
    int q_max() const { return q_max_; }

    double multiplier(int q, std::size_t mode) const {
        if (q < -1 || q > q_max_) return 0.0;
        return mult_[static_cast<std::size_t>(q + 1)][mode];
    }

    /// S_q = sum of blocks q' <= q - 1.
    double lowpass_multiplier(int q, std::size_t mode) const {
        double s = 0.0;
        for (int q2 = -1; q2 <= std::min(q - 1, q_max_); ++q2)
            s += mult_[static_cast<std::size_t>(q2 + 1)][mode];
        return s;
    }

    SpectralScalar block(const SpectralScalar& u, int q) const {
        SpectralScalar out(*grid_);
        if (q < -1 || q > q_max_) return out;
        const auto& m = mult_[static_cast<std::size_t>(q + 1)];
        for (std::size_t i = 0; i < u.coef.size(); ++i) out.coef[i] = m[i] * u.coef[i];
        return out;
    }

    SpectralScalar lowpass(const SpectralScalar& u, int q) const {
        SpectralScalar out(*grid_);
        for (std::size_t i = 0; i < u.coef.size(); ++i)
            out.coef[i] = lowpass_multiplier(q, i) * u.coef[i];
        return out;
    }

    SpectralField4 block(const SpectralField4& u, int q) const {
        SpectralField4 out(u.grid(), u.real_valued());
        if (q < -1 || q > q_max_) return out;
        const auto& m = mult_[static_cast<std::size_t>(q + 1)];
        for (int c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < m.size(); ++i) out.at(c, i) = m[i] * u.at(c, i);
        return out;
    }

    /// Besov-style square sum (sum_q 2^{2qs} ||Delta_q u||_{L2}^2)^{1/2}.
    double besov_l2(const SpectralScalar& u, double s) const {
        double acc = 0.0;
        for (int q = -1; q <= q_max_; ++q) {
            const SpectralScalar b = block(u, q);
            const double nq = sobolev_norm(b, 0.0, false);
            acc += std::pow(2.0, 2.0 * q * s) * nq * nq;
        }
        return std::sqrt(acc);
    }

private:
    const FourierGrid* grid_;
    int q_max_;
    std::vector<std::vector<double>> mult_;
};

struct DyadicBlockSet {
    const DyadicDecomposition* basis;
    std::map<int, SpectralScalar> blocks;
};

inline DyadicBlockSet decompose(const DyadicDecomposition& d, const SpectralScalar& u) {
    DyadicBlockSet set{&d, {}};
    for (int q = -1; q <= d.q_max(); ++q) set.blocks.emplace(q, d.block(u, q));
    return set;
}

/// Dealiased pointwise product of two spectral scalars.
inline SpectralScalar spectral_product(const SpectralScalar& a, const SpectralScalar& b) {
    const auto pa = scalar_to_physical(a);
    const auto pb = scalar_to_physical(b);
    std::vector<double> prod(pa.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = pa[i] * pb[i];
    SpectralScalar out = scalar_to_spectral(*a.grid, prod);
    dealias_23_inplace(out);
    return out;
}

struct BonySplit {
    SpectralScalar low_high;   // T_u v
    SpectralScalar high_low;   // T_v u
    SpectralScalar resonant;   // R(u, v)
};

/// Bony splitting of the product uv into paraproducts and remainder.
inline BonySplit bony_split(const DyadicDecomposition& d, const SpectralScalar& u,
                            const SpectralScalar& v) {
    const auto& g = d.grid();
    const int qm = d.q_max();
    // physical blocks of u and v
    std::vector<std::vector<double>> bu, bv;
    for (int q = -1; q <= qm; ++q) {
        bu.push_back(scalar_to_physical(d.block(u, q)));
        bv.push_back(scalar_to_physical(d.block(v, q)));
    }
    const std::size_t n = g.size();
    auto cumulative = [&](const std::vector<std::vector<double>>& b, int upto) {
        std::vector<double> s(n, 0.0);
        for (int q = -1; q <= std::min(upto, qm); ++q)
            for (std::size_t i = 0; i < n; ++i) s[i] += b[static_cast<std::size_t>(q + 1)][i];
        return s;
    };

    std::vector<double> t_uv(n, 0.0), t_vu(n, 0.0), rem(n, 0.0);
    for (int q = -1; q <= qm; ++q) {
        const auto su = cumulative(bu, q - 2);  // S_{q-1} u
        const auto sv = cumulative(bv, q - 2);
        const auto& dv = bv[static_cast<std::size_t>(q + 1)];
        const auto& du = bu[static_cast<std::size_t>(q + 1)];
        for (std::size_t i = 0; i < n; ++i) {
            t_uv[i] += su[i] * dv[i];
            t_vu[i] += sv[i] * du[i];
        }
        for (int q2 = std::max(-1, q - 1); q2 <= std::min(qm, q + 1); ++q2) {
            const auto& dv2 = bv[static_cast<std::size_t>(q2 + 1)];
            for (std::size_t i = 0; i < n; ++i) rem[i] += du[i] * dv2[i];
        }
    }
    BonySplit out{scalar_to_spectral(g, t_uv), scalar_to_spectral(g, t_vu),
                  scalar_to_spectral(g, rem)};
    dealias_23_inplace(out.low_high);
    dealias_23_inplace(out.high_low);
    dealias_23_inplace(out.resonant);
    return out;
}

}  // namespace stratlab
