#pragma once

#include <array>

#include "stratlab/field.hpp"
#include "stratlab/operators.hpp"

namespace stratlab {

/// -P dealias( div(u (x) U) ), the Leray-projected advection term of the
/// full system in divergence form (exact for solenoidal u).
inline SpectralField4 advection_rhs(const SpectralField4& U, bool dealias = true) {
    const auto& g = U.grid();
    auto& plan = fft_plan_for(g);
    const std::size_t n = g.size();

    std::array<std::vector<double>, 4> phys;
    std::vector<cplx> buf(n);
    for (int c = 0; c < 4; ++c) {
        plan.backward(U.comp(c).data(), buf.data());
        phys[static_cast<std::size_t>(c)].resize(n);
        for (std::size_t i = 0; i < n; ++i) phys[static_cast<std::size_t>(c)][i] = buf[i].real();
    }

    SpectralField4 out(g, true);
    std::vector<cplx> prod_hat(n);
    for (int j = 0; j < 3; ++j) {
        for (int c = 0; c < 4; ++c) {
            for (std::size_t i = 0; i < n; ++i)
                buf[i] = cplx(phys[static_cast<std::size_t>(j)][i] *
                                  phys[static_cast<std::size_t>(c)][i],
                              0.0);
            plan.forward(buf.data(), prod_hat.data());
            const int axis = j;
            g.for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
                const double xj = axis == 0 ? x1 : axis == 1 ? x2 : x3;
                out.at(c, i) -= iu() * xj * prod_hat[i];
            });
        }
    }
    if (dealias) dealias_23_inplace(out);
    return leray_project(out);
}

/// Horizontal-Leray-projected advection of the layered limit system:
/// -(1 - grad_h lap_h^{-1} div_h) dealias( div_h(u_h (x) u_h) ).
inline SpectralField4 limit_rhs(const SpectralField4& ubar, bool dealias = true) {
    const auto& g = ubar.grid();
    auto& plan = fft_plan_for(g);
    const std::size_t n = g.size();

    std::array<std::vector<double>, 2> phys;
    std::vector<cplx> buf(n);
    for (int c = 0; c < 2; ++c) {
        plan.backward(ubar.comp(c).data(), buf.data());
        phys[static_cast<std::size_t>(c)].resize(n);
        for (std::size_t i = 0; i < n; ++i) phys[static_cast<std::size_t>(c)][i] = buf[i].real();
    }

    SpectralField4 out(g, true);
    std::vector<cplx> prod_hat(n);
    for (int j = 0; j < 2; ++j) {
        for (int c = 0; c < 2; ++c) {
            for (std::size_t i = 0; i < n; ++i)
                buf[i] = cplx(phys[static_cast<std::size_t>(j)][i] *
                                  phys[static_cast<std::size_t>(c)][i],
                              0.0);
            plan.forward(buf.data(), prod_hat.data());
            const int axis = j;
            g.for_each_mode([&](std::size_t i, double x1, double x2, double) {
                const double xj = axis == 0 ? x1 : x2;
                out.at(c, i) -= iu() * xj * prod_hat[i];
            });
        }
    }
    if (dealias) dealias_23_inplace(out);
    // layer-wise horizontal Leray projection
    g.for_each_mode([&](std::size_t i, double x1, double x2, double) {
        const double mh2 = x1 * x1 + x2 * x2;
        if (mh2 == 0.0) return;
        const cplx dot = (x1 * out.at(0, i) + x2 * out.at(1, i)) / mh2;
        out.at(0, i) -= x1 * dot;
        out.at(1, i) -= x2 * dot;
    });
    return out;
}

/// -dealias( div_h(u_h omega) ), the transport term of the layered
/// vorticity equation; omega rides in component 0.
inline SpectralField4 vorticity_rhs(const SpectralField4& omega_state,
                                    const SpectralField4& velocity, bool dealias = true) {
    const auto& g = omega_state.grid();
    auto& plan = fft_plan_for(g);
    const std::size_t n = g.size();

    std::vector<cplx> buf(n);
    std::vector<double> w(n);
    plan.backward(omega_state.comp(0).data(), buf.data());
    for (std::size_t i = 0; i < n; ++i) w[i] = buf[i].real();

    SpectralField4 out(g, true);
    std::vector<cplx> prod_hat(n);
    for (int j = 0; j < 2; ++j) {
        plan.backward(velocity.comp(j).data(), buf.data());
        for (std::size_t i = 0; i < n; ++i) buf[i] = cplx(buf[i].real() * w[i], 0.0);
        plan.forward(buf.data(), prod_hat.data());
        const int axis = j;
        g.for_each_mode([&](std::size_t i, double x1, double x2, double) {
            const double xj = axis == 0 ? x1 : x2;
            out.at(0, i) -= iu() * xj * prod_hat[i];
        });
    }
    if (dealias) {
        SpectralScalar s(g);
        s.coef = out.comp(0);
        dealias_23_inplace(s);
        out.comp(0) = s.coef;
    }
    return out;
}

/// Layer-wise Biot-Savart inversion: u_h = (-d2, d1) lap_h^{-1} omega,
/// zero on the xi_h = 0 modes.
inline SpectralField4 biot_savart(const SpectralField4& omega_state) {
    const auto& g = omega_state.grid();
    SpectralField4 out(g, true);
    g.for_each_mode([&](std::size_t i, double x1, double x2, double) {
        const double mh2 = x1 * x1 + x2 * x2;
        if (mh2 == 0.0) return;
        const cplx w = omega_state.at(0, i);
        out.at(0, i) = iu() * x2 * w / mh2;
        out.at(1, i) = -iu() * x1 * w / mh2;
    });
    return out;
}

/// Wave corrector source (0, 0, d3 pbar, 0) with
/// pbar = (-lap_h)^{-1} div_h div_h (u_h (x) u_h); the xi_h = 0 modes of
/// pbar are set to zero.
inline SpectralField4 compute_lambda(const SpectralField4& ubar, bool dealias = true) {
    const auto& g = ubar.grid();
    auto& plan = fft_plan_for(g);
    const std::size_t n = g.size();

    std::array<std::vector<double>, 2> phys;
    std::vector<cplx> buf(n);
    for (int c = 0; c < 2; ++c) {
        plan.backward(ubar.comp(c).data(), buf.data());
        phys[static_cast<std::size_t>(c)].resize(n);
        for (std::size_t i = 0; i < n; ++i) phys[static_cast<std::size_t>(c)][i] = buf[i].real();
    }

    // hat(p) = sum_{j,k in h} xi_j xi_k hat(u_j u_k) / |xi_h|^2
    std::array<std::vector<cplx>, 3> prod_hat;  // (1,1), (1,2), (2,2)
    int idx = 0;
    for (int j = 0; j < 2; ++j)
        for (int k = j; k < 2; ++k, ++idx) {
            for (std::size_t i = 0; i < n; ++i)
                buf[i] = cplx(phys[static_cast<std::size_t>(j)][i] *
                                  phys[static_cast<std::size_t>(k)][i],
                              0.0);
            prod_hat[static_cast<std::size_t>(idx)].resize(n);
            plan.forward(buf.data(), prod_hat[static_cast<std::size_t>(idx)].data());
        }

    SpectralField4 out(g, true);
    g.for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
        const double mh2 = x1 * x1 + x2 * x2;
        if (mh2 == 0.0) return;
        const cplx pbar = (x1 * x1 * prod_hat[0][i] + 2.0 * x1 * x2 * prod_hat[1][i] +
                           x2 * x2 * prod_hat[2][i]) /
                          mh2;
        out.at(2, i) = iu() * x3 * pbar;
    });
    if (dealias) {
        SpectralScalar s(g);
        s.coef = out.comp(2);
        dealias_23_inplace(s);
        out.comp(2) = s.coef;
    }
    return out;
}

}  // namespace stratlab
