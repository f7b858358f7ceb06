#pragma once

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>

#include "stratlab/field.hpp"
#include "stratlab/symbol.hpp"

namespace stratlab {

using Mat4d = std::array<double, 16>;

namespace detail {

inline Mat4d matexp_scaling_squaring(double x1, double x2, double x3, double tau, double eps,
                                     double nu, double nu_prime) {
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    const Mat4c L = symbol(x1, x2, x3, eps, nu, nu_prime);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) A(i, j) = -tau * L[i][j].real();
    Eigen::Matrix4d E = A.exp();
    Mat4d out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(4 * i + j)] = E(i, j);
    return out;
}

}  // namespace detail

/// exp(-tau * L_hat) at one wavenumber.  The symbol is a real matrix, so
/// the exponential is real; the eigenvector route drops the O(1e-16)
/// imaginary residue, which also preserves conjugate symmetry exactly.
/// Degenerate modes fall back to a scaling-and-squaring exponential.
inline Mat4d propagator_matrix(double x1, double x2, double x3, double tau, double eps, double nu,
                               double nu_prime, double tol = 1e-8) {
    const EigenSystem es = eigensystem(x1, x2, x3, eps, nu, nu_prime, tol);
    if (es.degenerate) return detail::matexp_scaling_squaring(x1, x2, x3, tau, eps, nu, nu_prime);
    Mat4c d = mat4_zero();
    d[0][0] = std::exp(-tau * es.lambda0);
    d[1][1] = d[0][0];
    d[2][2] = std::exp(-tau * es.lambda_p);
    d[3][3] = std::exp(-tau * es.lambda_m);
    const Mat4c M = mat4_mul(es.Q, mat4_mul(d, es.Qinv));
    Mat4d out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(4 * i + j)] = M[i][j].real();
    return out;
}

/// Per-mode table of exp(-(t/eps) L_hat) over a whole grid, built once and
/// shared (immutable after construction).  The symbol is evaluated on the
/// derivative wavenumbers; the xi = 0 mode and pure-Nyquist modes (always
/// empty in dealiased states) get the identity and pure diffusion.
class PropagatorTable {
public:
    PropagatorTable(const FourierGrid& g, double t, double eps, double nu, double nu_prime,
                    double tol = 1e-8)
        : grid_(&g), mats_(g.size()) {
        const double tau = t / eps;
        g.for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
            const double m2 = x1 * x1 + x2 * x2 + x3 * x3;
            Mat4d& M = mats_[i];
            M.fill(0.0);
            if (m2 == 0.0) {
                const int b3 = static_cast<int>(i) % g.n3();
                const int b2 = static_cast<int>(i / static_cast<std::size_t>(g.n3())) % g.n2();
                const int b1 = static_cast<int>(i / static_cast<std::size_t>(g.n3()) /
                                                static_cast<std::size_t>(g.n2()));
                const double f1 = g.xi(0, b1), f2 = g.xi(1, b2), f3 = g.xi(2, b3);
                const double full_m2 = f1 * f1 + f2 * f2 + f3 * f3;
                if (full_m2 == 0.0) {
                    M[0] = M[5] = M[10] = M[15] = 1.0;  // mean mode untouched
                } else {
                    const double du = std::exp(-nu * t * full_m2);
                    const double dr = std::exp(-nu_prime * t * full_m2);
                    M[0] = M[5] = M[10] = du;
                    M[15] = dr;
                }
                return;
            }
            M = propagator_matrix(x1, x2, x3, tau, eps, nu, nu_prime, tol);
        });
    }

    void apply(const SpectralField4& in, SpectralField4& out) const {
        const std::size_t n = grid_->size();
        parallel_for(n, [&](std::size_t i) {
            const Mat4d& M = mats_[i];
            const cplx v0 = in.at(0, i), v1 = in.at(1, i), v2 = in.at(2, i), v3 = in.at(3, i);
            out.at(0, i) = M[0] * v0 + M[1] * v1 + M[2] * v2 + M[3] * v3;
            out.at(1, i) = M[4] * v0 + M[5] * v1 + M[6] * v2 + M[7] * v3;
            out.at(2, i) = M[8] * v0 + M[9] * v1 + M[10] * v2 + M[11] * v3;
            out.at(3, i) = M[12] * v0 + M[13] * v1 + M[14] * v2 + M[15] * v3;
        });
    }

private:
    const FourierGrid* grid_;
    std::vector<Mat4d> mats_;
};

/// Exact linear evolution over time t (the xi = 0 mode is left unchanged).
inline SpectralField4 propagate(const SpectralField4& v, double t, double eps, double nu,
                                double nu_prime, double tol = 1e-8) {
    if (t < 0.0) throw std::invalid_argument("propagate requires t >= 0");
    PropagatorTable table(v.grid(), t, eps, nu, nu_prime, tol);
    SpectralField4 out(v.grid(), v.real_valued());
    table.apply(v, out);
    return out;
}

}  // namespace stratlab
