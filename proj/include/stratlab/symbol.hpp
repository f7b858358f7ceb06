#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "stratlab/common.hpp"

namespace stratlab {

using Mat4c = std::array<std::array<cplx, 4>, 4>;
using Vec4c = std::array<cplx, 4>;

inline Mat4c mat4_zero() {
    Mat4c m{};
    for (auto& row : m) row.fill(cplx(0.0, 0.0));
    return m;
}

inline Mat4c mat4_mul(const Mat4c& a, const Mat4c& b) {
    Mat4c c = mat4_zero();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const cplx aik = a[i][k];
            if (aik == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

inline Vec4c mat4_apply(const Mat4c& a, const Vec4c& v) {
    Vec4c out{};
    for (int i = 0; i < 4; ++i) {
        cplx s(0.0, 0.0);
        for (int j = 0; j < 4; ++j) s += a[i][j] * v[j];
        out[i] = s;
    }
    return out;
}

inline double mat4_max_abs(const Mat4c& a) {
    double worst = 0.0;
    for (const auto& row : a)
        for (const auto& v : row) worst = std::max(worst, std::abs(v));
    return worst;
}

/// Oscillation scale factor S: sqrt(1 - eps^2 (nu-nu')^2 |xi|^6/(4 |xi_h|^2)),
/// continued as i*sqrt(-disc) past the overdamping threshold.  Single source
/// of truth for the eigendecomposition and the dispersive kernel phase.
inline cplx S_factor(double mh2, double m2, double eps, double nu, double nu_prime) {
    const double disc =
        1.0 - eps * eps * (nu - nu_prime) * (nu - nu_prime) * m2 * m2 * m2 / (4.0 * mh2);
    return disc >= 0.0 ? cplx(std::sqrt(disc), 0.0) : cplx(0.0, std::sqrt(-disc));
}

/// Symbol of the linear wave-diffusion operator at one wavenumber:
/// diagonal eps*(nu,nu,nu,nu') |xi|^2 plus the buoyancy coupling routed
/// through the solenoidal projection.
inline Mat4c symbol(double xi1, double xi2, double xi3, double eps, double nu, double nu_prime) {
    const double m = xi1 * xi1 + xi2 * xi2 + xi3 * xi3;
    if (m == 0.0) throw std::domain_error("symbol is undefined at xi = 0");
    const double mh = xi1 * xi1 + xi2 * xi2;
    Mat4c L = mat4_zero();
    L[0][0] = L[1][1] = L[2][2] = eps * nu * m;
    L[3][3] = eps * nu_prime * m;
    L[0][3] = -xi3 * xi1 / m;
    L[1][3] = -xi3 * xi2 / m;
    L[2][3] = mh / m;
    L[3][2] = -1.0;
    return L;
}

/// Closed-form eigendecomposition of the symbol.
///
/// lambda0 = eps*nu*|xi|^2 (twice);
/// lambda_pm = eps*(nu+nu')|xi|^2/2 +- i (|xi_h|/|xi|) S;
/// S = sqrt(1 - eps^2 (nu-nu')^2 |xi|^6 / (4|xi_h|^2)), continued as a
/// complex value in the overdamped range.  The eigenvector scale factors
/// are calS_pm = S -+ (i/2) eps (nu-nu') |xi|^3/|xi_h|, which is what the
/// eigenvector equation forces; calS_p * calS_m = 1.
///
/// Q has columns {e_1 or e_2, E0, E+, E-}; the completion column picks the
/// larger of |xi_1|, |xi_2| so Q stays well conditioned.  Qinv is the exact
/// block inverse.  Modes with |xi_h| < tol*|xi| or |S| < tol are flagged
/// degenerate and carry eigenvalues only.
struct EigenSystem {
    cplx lambda0;
    cplx lambda_p;
    cplx lambda_m;
    cplx S;
    cplx calS_p;
    cplx calS_m;
    Vec4c E0;
    Vec4c Ep;
    Vec4c Em;
    Mat4c Q;
    Mat4c Qinv;
    bool degenerate = false;
};

inline EigenSystem eigensystem(double xi1, double xi2, double xi3, double eps, double nu,
                               double nu_prime, double tol = 1e-8) {
    const double mh2 = xi1 * xi1 + xi2 * xi2;
    const double m2 = mh2 + xi3 * xi3;
    if (m2 == 0.0) throw std::domain_error("eigensystem is undefined at xi = 0");
    const double mh = std::sqrt(mh2);
    const double m = std::sqrt(m2);

    EigenSystem es;
    es.lambda0 = eps * nu * m2;

    if (mh == 0.0) {
        // The symbol is triangular: purely diffusive pair.
        es.degenerate = true;
        es.S = cplx(1.0, 0.0);
        es.lambda_p = eps * nu * m2;
        es.lambda_m = eps * nu_prime * m2;
        return es;
    }

    const cplx S = S_factor(mh2, m2, eps, nu, nu_prime);
    es.S = S;

    const double re = 0.5 * eps * (nu + nu_prime) * m2;
    es.lambda_p = cplx(re, 0.0) + iu() * (mh / m) * S;
    es.lambda_m = cplx(re, 0.0) - iu() * (mh / m) * S;

    const cplx cross = iu() * (0.5 * eps * (nu - nu_prime) * m2 * m / mh);
    es.calS_p = S - cross;
    es.calS_m = S + cross;

    if (mh < tol * m) {
        es.degenerate = true;  // eigenvector basis ill-conditioned
        return es;
    }

    es.E0 = {cplx(-xi2 / mh, 0.0), cplx(xi1 / mh, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)};
    const double a1 = xi3 * xi1 / (m * mh);
    const double a2 = xi3 * xi2 / (m * mh);
    const double b = mh / m;
    es.Ep = {iu() * a1 * es.calS_p, iu() * a2 * es.calS_p, -iu() * b * es.calS_p, cplx(1.0, 0.0)};
    es.Em = {-iu() * a1 * es.calS_m, -iu() * a2 * es.calS_m, iu() * b * es.calS_m, cplx(1.0, 0.0)};

    if (std::abs(S) < tol) {
        es.degenerate = true;  // E+ and E- collide
        return es;
    }

    const bool use_e1 = std::abs(xi1) >= std::abs(xi2);
    Vec4c comp = use_e1 ? Vec4c{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(0, 0)}
                        : Vec4c{cplx(0, 0), cplx(1, 0), cplx(0, 0), cplx(0, 0)};
    es.Q = mat4_zero();
    for (int i = 0; i < 4; ++i) {
        es.Q[i][0] = comp[i];
        es.Q[i][1] = es.E0[i];
        es.Q[i][2] = es.Ep[i];
        es.Q[i][3] = es.Em[i];
    }

    es.Qinv = mat4_zero();
    if (use_e1) {
        es.Qinv[0][0] = 1.0;
        es.Qinv[0][1] = xi2 / xi1;
        es.Qinv[0][2] = xi3 / xi1;
        es.Qinv[1][1] = mh / xi1;
        es.Qinv[1][2] = xi2 * xi3 / (mh * xi1);
    } else {
        es.Qinv[0][0] = xi1 / xi2;
        es.Qinv[0][1] = 1.0;
        es.Qinv[0][2] = xi3 / xi2;
        es.Qinv[1][0] = -mh / xi2;
        es.Qinv[1][2] = -xi1 * xi3 / (mh * xi2);
    }
    const cplx half_over_S = 0.5 / S;
    es.Qinv[2][2] = iu() * (m / mh) * half_over_S;
    es.Qinv[2][3] = es.calS_m * half_over_S;
    es.Qinv[3][2] = -iu() * (m / mh) * half_over_S;
    es.Qinv[3][3] = es.calS_p * half_over_S;
    return es;
}

/// Q diag(lambda) Qinv, for reconstruction checks.
inline Mat4c eigensystem_reconstruct(const EigenSystem& es) {
    Mat4c d = mat4_zero();
    d[0][0] = es.lambda0;
    d[1][1] = es.lambda0;
    d[2][2] = es.lambda_p;
    d[3][3] = es.lambda_m;
    return mat4_mul(es.Q, mat4_mul(d, es.Qinv));
}

}  // namespace stratlab
