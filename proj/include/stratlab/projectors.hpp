#pragma once

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "stratlab/field.hpp"
#include "stratlab/symbol.hpp"

namespace stratlab {

/// Projection onto the non-oscillating direction:
/// P0 V = (1/|xi_h|^2) (-xi_2, xi_1, 0, 0) * (-xi_2 V1 + xi_1 V2),
/// zero on xi_h = 0 modes.  Independent of eps.
inline SpectralField4 project_0(const SpectralField4& v) {
    SpectralField4 out(v.grid(), v.real_valued());
    v.grid().for_each_mode([&](std::size_t i, double x1, double x2, double) {
        const double mh2 = x1 * x1 + x2 * x2;
        if (mh2 == 0.0) return;
        const cplx k0 = (-x2 * v.at(0, i) + x1 * v.at(1, i)) / mh2;
        out.at(0, i) = -x2 * k0;
        out.at(1, i) = x1 * k0;
    });
    return out;
}

namespace detail {
struct PmRows {
    cplx k_row3;   // multiplier of V3 in k_pm
    cplx k_row4;   // multiplier of V4 in k_pm
    Vec4c evec;
    bool degenerate;
};

inline PmRows pm_rows(double x1, double x2, double x3, double eps, double nu, double nu_prime,
                      int sign, double tol) {
    EigenSystem es = eigensystem(x1, x2, x3, eps, nu, nu_prime, tol);
    PmRows r;
    r.degenerate = es.degenerate;
    if (es.degenerate) return r;
    const double mh = std::sqrt(x1 * x1 + x2 * x2);
    const double m = std::sqrt(mh * mh + x3 * x3);
    const cplx half_over_S = 0.5 / es.S;
    if (sign > 0) {
        r.k_row3 = iu() * (m / mh) * half_over_S;
        r.k_row4 = es.calS_m * half_over_S;
        r.evec = es.Ep;
    } else {
        r.k_row3 = -iu() * (m / mh) * half_over_S;
        r.k_row4 = es.calS_p * half_over_S;
        r.evec = es.Em;
    }
    return r;
}
}  // namespace detail

/// Projection onto the oscillating direction E_+ (sign > 0) or E_- (sign < 0).
/// Fields must vanish on degenerate modes (use cutoff_apply first, or data
/// that is zero on the xi_h = 0 plane).
inline SpectralField4 project_pm(const SpectralField4& v, double eps, int sign, double nu,
                                 double nu_prime, double tol = 1e-8) {
    SpectralField4 out(v.grid(), v.real_valued());
    v.grid().for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
        const double m2 = x1 * x1 + x2 * x2 + x3 * x3;
        if (m2 == 0.0) return;  // mean mode carries no oscillating part
        auto rows = detail::pm_rows(x1, x2, x3, eps, nu, nu_prime, sign, tol);
        if (rows.degenerate) {
            double mass = 0.0;
            for (int c = 0; c < 4; ++c) mass += std::abs(v.at(c, i));
            if (mass > 0.0)
                throw std::domain_error("project_pm applied to a degenerate mode with data");
            return;
        }
        const cplx k = rows.k_row3 * v.at(2, i) + rows.k_row4 * v.at(3, i);
        for (int c = 0; c < 4; ++c) out.at(c, i) = k * rows.evec[c];
    });
    return out;
}

/// Precomputed per-mode action of P_+ + P_- on a fixed grid; degenerate
/// modes are marked and must carry no data when applied.
class OscProjectorTable {
public:
    OscProjectorTable(const FourierGrid& g, double eps, double nu, double nu_prime,
                      double tol = 1e-8)
        : grid_(&g), kp3_(g.size()), kp4_(g.size()), km4_(g.size()), ep_(g.size()),
          em_(g.size()), flag_(g.size(), kDropped) {
        g.for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
            const double m2 = x1 * x1 + x2 * x2 + x3 * x3;
            if (m2 == 0.0) return;
            EigenSystem es = eigensystem(x1, x2, x3, eps, nu, nu_prime, tol);
            if (es.degenerate) {
                flag_[i] = kDegenerate;
                return;
            }
            const double mh = std::sqrt(x1 * x1 + x2 * x2);
            const double m = std::sqrt(m2);
            const cplx half_over_S = 0.5 / es.S;
            kp3_[i] = iu() * (m / mh) * half_over_S;  // k_- uses the negative
            kp4_[i] = es.calS_m * half_over_S;
            km4_[i] = es.calS_p * half_over_S;
            ep_[i] = es.Ep;
            em_[i] = es.Em;
            flag_[i] = kRegular;
        });
    }

    void apply(const SpectralField4& v, SpectralField4& out) const {
        const std::size_t n = grid_->size();
        std::atomic<bool> hit_degenerate{false};
        parallel_for(n, [&](std::size_t i) {
            for (int c = 0; c < 4; ++c) out.at(c, i) = cplx(0.0, 0.0);
            if (flag_[i] == kDropped) return;
            if (flag_[i] == kDegenerate) {
                double mass = 0.0;
                for (int c = 0; c < 4; ++c) mass += std::abs(v.at(c, i));
                if (mass > 0.0) hit_degenerate.store(true, std::memory_order_relaxed);
                return;
            }
            const cplx kp = kp3_[i] * v.at(2, i) + kp4_[i] * v.at(3, i);
            const cplx km = -kp3_[i] * v.at(2, i) + km4_[i] * v.at(3, i);
            for (int c = 0; c < 4; ++c)
                out.at(c, i) = kp * ep_[i][static_cast<std::size_t>(c)] +
                               km * em_[i][static_cast<std::size_t>(c)];
        });
        if (hit_degenerate.load())
            throw std::domain_error("oscillating projection hit a degenerate mode");
    }

private:
    static constexpr int kDropped = 0;
    static constexpr int kDegenerate = -1;
    static constexpr int kRegular = 1;
    const FourierGrid* grid_;
    std::vector<cplx> kp3_;
    std::vector<cplx> kp4_;
    std::vector<cplx> km4_;
    std::vector<Vec4c> ep_;
    std::vector<Vec4c> em_;
    std::vector<int> flag_;
};

/// P_+ + P_- in one pass (shares the eigensystem work).
inline SpectralField4 project_osc(const SpectralField4& v, double eps, double nu, double nu_prime,
                                  double tol = 1e-8) {
    SpectralField4 out(v.grid(), v.real_valued());
    v.grid().for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
        const double m2 = x1 * x1 + x2 * x2 + x3 * x3;
        if (m2 == 0.0) return;
        EigenSystem es = eigensystem(x1, x2, x3, eps, nu, nu_prime, tol);
        if (es.degenerate) {
            double mass = 0.0;
            for (int c = 0; c < 4; ++c) mass += std::abs(v.at(c, i));
            if (mass > 0.0)
                throw std::domain_error("project_pm applied to a degenerate mode with data");
            return;
        }
        const double mh = std::sqrt(x1 * x1 + x2 * x2);
        const double m = std::sqrt(m2);
        const cplx half_over_S = 0.5 / es.S;
        const cplx kp = (iu() * (m / mh) * half_over_S) * v.at(2, i) + es.calS_m * half_over_S * v.at(3, i);
        const cplx km = (-iu() * (m / mh) * half_over_S) * v.at(2, i) + es.calS_p * half_over_S * v.at(3, i);
        for (int c = 0; c < 4; ++c) out.at(c, i) = kp * es.Ep[c] + km * es.Em[c];
    });
    return out;
}

}  // namespace stratlab
