// Scratch: kernel quadrature sanity + decay slope (not part of the build).
#include <cstdio>

#include "stratlab/kernel.hpp"

using namespace stratlab;

int main() {
    set_thread_count(2);
    KernelParams p;  // (r,R)=(1,4), nu=nu'=1, eps=1e-3, t=0, z=0
    p.tau = 0.0;
    cplx k0 = eval_kernel(p);
    std::printf("K(0,0,0) = %.6f + %.2ei  (volume C_{1/2,8} ~ %.1f)\n", k0.real(), k0.imag(),
                4.0 / 3.0 * kPi * 512.0);

    // oracle agreement at a few moderate taus
    for (double tau : {0.0, 5.0, 20.0}) {
        p.tau = tau;
        cplx a = eval_kernel(p);
        cplx b = eval_kernel_riemann(p, 192);
        std::printf("tau=%5.1f  GL=% .6e %+.6ei   Riemann=% .6e %+.6ei  rel=%.2e\n", tau, a.real(),
                    a.imag(), b.real(), b.imag(), std::abs(a - b) / std::abs(a));
    }

    // decay slope over the full fit range
    auto taus = log_spaced(10.0, 1e4, 13);
    auto fit = fit_decay(p, taus);
    std::printf("slope = %.4f  intercept=%.3f residual=%.3f\n", fit.slope, fit.intercept,
                fit.residual);
    for (std::size_t i = 0; i < taus.size(); ++i)
        std::printf("  tau=%9.1f  |K|=%.5e  sup=%.5e\n", fit.tau[i], fit.abs_k[i],
                    fit.sup_abs_k[i]);

    // t-decay envelope at tau = 100
    p.tau = 100.0;
    p.t = 0.0;
    const double k_t0 = std::abs(eval_kernel(p));
    for (double t : {0.1, 0.5, 1.0}) {
        p.t = t;
        const double kt = std::abs(eval_kernel(p));
        const double env = std::exp(-0.25 * (p.nu + p.nu_prime) * p.r * p.r * t);
        std::printf("t=%.1f |K|/|K0| = %.4e  envelope*10 = %.4e  ok=%d\n", t, kt / k_t0, env * 10,
                    kt / k_t0 <= env * 10);
    }
    // plateau: tau in [0,1]
    p.t = 0.0;
    double kmax = 0.0;
    for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        p.tau = tau;
        kmax = std::max(kmax, std::abs(eval_kernel(p)));
    }
    std::printf("plateau max over tau in [0,1]: %.4e vs 2|K(0)| = %.4e\n", kmax, 2 * std::abs(k0));
    return 0;
}
