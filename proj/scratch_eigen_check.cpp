// Scratch oracle check (not part of the build): closed-form eigensystem vs
// Eigen's ComplexEigenSolver, Q*Qinv, reconstruction, eigenvector residuals.
#include <Eigen/Dense>

#include <algorithm>
#include <cstdio>
#include <random>

#include "stratlab/symbol.hpp"

using namespace stratlab;

int main() {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(-8.0, 8.0);
    double worst_recon = 0, worst_qq = 0, worst_evec = 0, worst_eval = 0;
    int tested = 0;
    for (int trial = 0; trial < 20000 && tested < 10000; ++trial) {
        double x1 = unif(rng), x2 = unif(rng), x3 = unif(rng);
        double mh = std::sqrt(x1 * x1 + x2 * x2), m = std::sqrt(mh * mh + x3 * x3);
        if (!(mh > 0.5 && m < 8.0)) continue;  // C_{0.5, 8}
        for (double eps : {1e-1, 1e-2, 1e-3}) {
            double nu = 1.3, nup = 0.6;  // distinct on purpose
            auto es = eigensystem(x1, x2, x3, eps, nu, nup);
            if (es.degenerate) continue;
            auto L = symbol(x1, x2, x3, eps, nu, nup);
            // Q * Qinv == I
            auto QQ = mat4_mul(es.Q, es.Qinv);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    worst_qq = std::max(worst_qq, std::abs(QQ[i][j] - cplx(i == j ? 1.0 : 0.0, 0.0)));
            // reconstruction
            auto Rm = eigensystem_reconstruct(es);
            double lmax = mat4_max_abs(L);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    worst_recon = std::max(worst_recon, std::abs(Rm[i][j] - L[i][j]) / lmax);
            // eigenvector residuals
            auto check_vec = [&](const Vec4c& E, cplx lam) {
                auto LE = mat4_apply(L, E);
                double emax = 0;
                for (int i = 0; i < 4; ++i) emax = std::max(emax, std::abs(LE[i] - lam * E[i]));
                worst_evec = std::max(worst_evec, emax);
            };
            check_vec(es.E0, es.lambda0);
            check_vec(es.Ep, es.lambda_p);
            check_vec(es.Em, es.lambda_m);
            // eigenvalue sets vs general-purpose solver
            Eigen::Matrix4cd M;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) M(i, j) = L[i][j];
            Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(M, false);
            std::array<cplx, 4> ours = {es.lambda0, es.lambda0, es.lambda_p, es.lambda_m};
            std::array<bool, 4> used{};
            for (int i = 0; i < 4; ++i) {
                double best = 1e30;
                int arg = -1;
                for (int j = 0; j < 4; ++j) {
                    if (used[j]) continue;
                    double d = std::abs(ours[i] - cplx(solver.eigenvalues()(j)));
                    if (d < best) { best = d; arg = j; }
                }
                used[arg] = true;
                worst_eval = std::max(worst_eval, best);
            }
            ++tested;
        }
    }
    std::printf("tested=%d\nQ*Qinv defect     = %.3e\nreconstruction    = %.3e\n"
                "eigvec residual   = %.3e\neigval set match  = %.3e\n",
                tested, worst_qq, worst_recon, worst_evec, worst_eval);
    return 0;
}
