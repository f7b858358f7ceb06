#pragma once

#include <cmath>
#include <stdexcept>

#include "stratlab/field.hpp"

namespace stratlab {

/// Four-component Leray projection: per mode V' -> V' - xi (xi.V')/|xi|^2,
/// fourth component untouched.  Built on the derivative wavenumbers, so
/// divergence(leray_project(V)) vanishes identically on the grid; the
/// xi = 0 mode passes through unchanged.
inline SpectralField4 leray_project(const SpectralField4& v) {
    SpectralField4 out = v;
    const auto& g = v.grid();
    g.for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
        const double m = x1 * x1 + x2 * x2 + x3 * x3;
        if (m == 0.0) return;
        const cplx dot = x1 * v.at(0, i) + x2 * v.at(1, i) + x3 * v.at(2, i);
        const cplx s = dot / m;
        out.at(0, i) = v.at(0, i) - x1 * s;
        out.at(1, i) = v.at(1, i) - x2 * s;
        out.at(2, i) = v.at(2, i) - x3 * s;
    });
    return out;
}

inline SpectralScalar divergence(const SpectralField4& v) {
    SpectralScalar out(v.grid());
    v.grid().for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
        out.coef[i] = iu() * (x1 * v.at(0, i) + x2 * v.at(1, i) + x3 * v.at(2, i));
    });
    return out;
}

inline double max_divergence(const SpectralField4& v) {
    double worst = 0.0;
    v.grid().for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
        worst = std::max(worst, std::abs(x1 * v.at(0, i) + x2 * v.at(1, i) + x3 * v.at(2, i)));
    });
    return worst;
}

/// Diffusion block: multiplies components 1-3 by -nu |xi|^2 and component 4
/// by -nu' |xi|^2 (full wavenumbers, Nyquist included).
inline SpectralField4 laplacian_apply(const SpectralField4& v, double nu, double nu_prime) {
    SpectralField4 out = v;
    const auto& g = v.grid();
    std::size_t flat = 0;
    for (int b1 = 0; b1 < g.n1(); ++b1)
        for (int b2 = 0; b2 < g.n2(); ++b2)
            for (int b3 = 0; b3 < g.n3(); ++b3, ++flat) {
                const double x1 = g.xi(0, b1), x2 = g.xi(1, b2), x3 = g.xi(2, b3);
                const double m = x1 * x1 + x2 * x2 + x3 * x3;
                for (int c = 0; c < 3; ++c) out.at(c, flat) = -nu * m * v.at(c, flat);
                out.at(3, flat) = -nu_prime * m * v.at(3, flat);
            }
    return out;
}

/// Horizontal gradient of a scalar: (i xi_1 f, i xi_2 f).
inline std::pair<SpectralScalar, SpectralScalar> gradient_h(const SpectralScalar& f) {
    SpectralScalar g1(*f.grid), g2(*f.grid);
    f.grid->for_each_mode([&](std::size_t i, double x1, double x2, double) {
        g1.coef[i] = iu() * x1 * f.coef[i];
        g2.coef[i] = iu() * x2 * f.coef[i];
    });
    return {std::move(g1), std::move(g2)};
}

/// curl_h V = -d2 V1 + d1 V2.
inline SpectralScalar curl_h(const SpectralField4& v) {
    SpectralScalar out(v.grid());
    v.grid().for_each_mode([&](std::size_t i, double x1, double x2, double) {
        out.coef[i] = iu() * (-x2 * v.at(0, i) + x1 * v.at(1, i));
    });
    return out;
}

/// 2/3-rule truncation: zero every mode with |k_j| > n_j/3 on any axis.
inline bool mode_kept_23(const FourierGrid& g, int b1, int b2, int b3) {
    const int k1 = std::abs(g.mode(0, b1));
    const int k2 = std::abs(g.mode(1, b2));
    const int k3 = std::abs(g.mode(2, b3));
    return 3 * k1 <= g.n1() && 3 * k2 <= g.n2() && 3 * k3 <= g.n3();
}

inline void dealias_23_inplace(SpectralField4& v) {
    const auto& g = v.grid();
    std::size_t flat = 0;
    for (int b1 = 0; b1 < g.n1(); ++b1)
        for (int b2 = 0; b2 < g.n2(); ++b2)
            for (int b3 = 0; b3 < g.n3(); ++b3, ++flat)
                if (!mode_kept_23(g, b1, b2, b3))
                    for (int c = 0; c < 4; ++c) v.at(c, flat) = cplx(0.0, 0.0);
}

inline SpectralField4 dealias_23(const SpectralField4& v) {
    SpectralField4 out = v;
    dealias_23_inplace(out);
    return out;
}

inline void dealias_23_inplace(SpectralScalar& v) {
    const auto& g = *v.grid;
    std::size_t flat = 0;
    for (int b1 = 0; b1 < g.n1(); ++b1)
        for (int b2 = 0; b2 < g.n2(); ++b2)
            for (int b3 = 0; b3 < g.n3(); ++b3, ++flat)
                if (!mode_kept_23(g, b1, b2, b3)) v.coef[flat] = cplx(0.0, 0.0);
}

namespace detail {
inline double sobolev_weight(double m2, double s, bool homogeneous) {
    if (homogeneous) return m2 == 0.0 ? 0.0 : std::pow(m2, s);
    return std::pow(1.0 + m2, s);
}
}  // namespace detail

/// Sobolev norm with the declared Parseval weight prod(L_j / 2 pi).
/// Homogeneous norms drop the DC mode and reject s < 0 with nonzero mean.
inline double sobolev_norm(const SpectralField4& v, double s, bool homogeneous = true) {
    const auto& g = v.grid();
    if (homogeneous && s < 0.0) {
        double dc = 0.0;
        for (int c = 0; c < 4; ++c) dc += std::abs(v.at(c, 0));
        if (dc > 1e-14)
            throw std::domain_error("homogeneous norm with s < 0 requires zero mean");
    }
    double acc = 0.0;
    std::size_t flat = 0;
    for (int b1 = 0; b1 < g.n1(); ++b1)
        for (int b2 = 0; b2 < g.n2(); ++b2)
            for (int b3 = 0; b3 < g.n3(); ++b3, ++flat) {
                const double x1 = g.xi(0, b1), x2 = g.xi(1, b2), x3 = g.xi(2, b3);
                const double m2 = x1 * x1 + x2 * x2 + x3 * x3;
                const double w = detail::sobolev_weight(m2, s, homogeneous);
                if (w == 0.0) continue;
                double e = 0.0;
                for (int c = 0; c < 4; ++c) e += std::norm(v.at(c, flat));
                acc += w * e;
            }
    return std::sqrt(g.parseval_weight() * acc);
}

inline double sobolev_norm(const SpectralScalar& v, double s, bool homogeneous = true) {
    const auto& g = *v.grid;
    if (homogeneous && s < 0.0 && std::abs(v.coef[0]) > 1e-14)
        throw std::domain_error("homogeneous norm with s < 0 requires zero mean");
    double acc = 0.0;
    std::size_t flat = 0;
    for (int b1 = 0; b1 < g.n1(); ++b1)
        for (int b2 = 0; b2 < g.n2(); ++b2)
            for (int b3 = 0; b3 < g.n3(); ++b3, ++flat) {
                const double x1 = g.xi(0, b1), x2 = g.xi(1, b2), x3 = g.xi(2, b3);
                const double w = detail::sobolev_weight(x1 * x1 + x2 * x2 + x3 * x3, s, homogeneous);
                if (w != 0.0) acc += w * std::norm(v.coef[flat]);
            }
    return std::sqrt(g.parseval_weight() * acc);
}

inline double l2_norm(const SpectralField4& v) { return sobolev_norm(v, 0.0, false); }

/// L2 inner product under the same weight convention.
inline double l2_inner(const SpectralField4& a, const SpectralField4& b) {
    double acc = 0.0;
    for (int c = 0; c < 4; ++c) {
        const auto& pa = a.comp(c);
        const auto& pb = b.comp(c);
        for (std::size_t i = 0; i < pa.size(); ++i)
            acc += pa[i].real() * pb[i].real() + pa[i].imag() * pb[i].imag();
    }
    return a.grid().parseval_weight() * acc;
}

/// Physical-space L2 norm under the declared normalization (matches the
/// spectral norm by Parseval).
inline double l2_norm_physical(const PhysicalField4& f) {
    double acc = 0.0;
    for (int c = 0; c < 4; ++c)
        for (double v : f.comp(c)) acc += v * v;
    return std::sqrt(f.grid().parseval_weight() * acc / static_cast<double>(f.grid().size()));
}

/// Collocation maximum of the 4-vector magnitude (L-infinity surrogate).
inline double linf_surrogate(const SpectralField4& v) {
    PhysicalField4 p = to_physical(v);
    double worst = 0.0;
    const std::size_t n = v.grid().size();
    for (std::size_t i = 0; i < n; ++i) {
        const double m = p.comp(0)[i] * p.comp(0)[i] + p.comp(1)[i] * p.comp(1)[i] +
                         p.comp(2)[i] * p.comp(2)[i] + p.comp(3)[i] * p.comp(3)[i];
        worst = std::max(worst, m);
    }
    return std::sqrt(worst);
}

}  // namespace stratlab
