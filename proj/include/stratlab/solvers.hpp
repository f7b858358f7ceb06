#pragma once

#include <functional>
#include <optional>

#include "stratlab/cutoff.hpp"
#include "stratlab/nonlinear.hpp"
#include "stratlab/projectors.hpp"
#include "stratlab/propagator.hpp"
#include "stratlab/trajectory.hpp"

namespace stratlab {

namespace detail {

/// Scalar diffusion propagator exp(-nu |xi|^2 t) applied to all components.
class DiffusionTable {
public:
    DiffusionTable(const FourierGrid& g, double nu, double nu_prime, double t)
        : fac_u_(g.size()), fac_r_(g.size()) {
        g.for_each_mode_full([&](std::size_t i, double x1, double x2, double x3) {
            const double m2 = x1 * x1 + x2 * x2 + x3 * x3;
            fac_u_[i] = std::exp(-nu * m2 * t);
            fac_r_[i] = std::exp(-nu_prime * m2 * t);
        });
    }
    void apply(const SpectralField4& in, SpectralField4& out) const {
        const std::size_t n = fac_u_.size();
        parallel_for(n, [&](std::size_t i) {
            for (int c = 0; c < 3; ++c) out.at(c, i) = fac_u_[i] * in.at(c, i);
            out.at(3, i) = fac_r_[i] * in.at(3, i);
        });
    }

private:
    std::vector<double> fac_u_;
    std::vector<double> fac_r_;
};

using ApplyOp = std::function<void(const SpectralField4&, SpectralField4&)>;
using RhsOp = std::function<SpectralField4(const SpectralField4&)>;

/// One integrating-factor RK4 step: the linear part is applied exactly via
/// E1 = exp(-h A_lin) and E2 = exp(-h A_lin / 2); the nonlinearity rides on
/// classical RK4 stages.
inline SpectralField4 ifrk4_step(const SpectralField4& u, double h, const ApplyOp& e1,
                                 const ApplyOp& e2, const RhsOp& rhs) {
    const auto& g = u.grid();
    SpectralField4 n1 = rhs(u);

    SpectralField4 ua(g), tmp(g);
    ua = u;
    ua.add_scaled(0.5 * h, n1);
    e2(ua, tmp);  // tmp = E2 (u + h/2 N1)
    SpectralField4 n2 = rhs(tmp);

    SpectralField4 e2u(g);
    e2(u, e2u);
    SpectralField4 ub = e2u;
    ub.add_scaled(0.5 * h, n2);
    SpectralField4 n3 = rhs(ub);

    SpectralField4 e1u(g);
    e1(u, e1u);
    SpectralField4 e2n3(g);
    e2(n3, e2n3);
    SpectralField4 uc = e1u;
    uc.add_scaled(h, e2n3);
    SpectralField4 n4 = rhs(uc);

    SpectralField4 e1n1(g);
    e1(n1, e1n1);
    SpectralField4 e2n2(g);
    e2(n2, e2n2);

    SpectralField4 out = e1u;
    out.add_scaled(h / 6.0, e1n1);
    out.add_scaled(h / 3.0, e2n2);
    out.add_scaled(h / 3.0, e2n3);
    out.add_scaled(h / 6.0, n4);
    return out;
}

struct MarchResult {
    Trajectory traj;
};

/// Shared time marching loop with norm recording, snapshotting, the CFL
/// advisory and the blow-up guard.
inline Trajectory march(const SpectralField4& u0, const SolverConfig& cfg, const ApplyOp& e1,
                        const ApplyOp& e2, const RhsOp& rhs, TrajectoryKind kind,
                        bool blowup_guard) {
    cfg.validate();
    const int nsteps = cfg.step_count();
    const double h = cfg.fitted_dt();
    const auto& g = u0.grid();

    Trajectory traj;
    traj.kind = kind;

    const double dx_min =
        std::min({g.box()[0] / g.n1(), g.box()[1] / g.n2(), g.box()[2] / g.n3()});
    const double u_max0 = velocity_max(u0);
    if (u_max0 > 0.0 && h > 0.5 * dx_min / u_max0) traj.cfl_warning = true;

    const double guard0 = sobolev_norm(u0, 0.5, true);

    SpectralField4 u = u0;
    traj.record_norms(0.0, u);
    traj.times.push_back(0.0);
    traj.states.push_back(u);
    for (int k = 0; k < nsteps; ++k) {
        u = ifrk4_step(u, h, e1, e2, rhs);
        const double t = (k + 1) * h;
        traj.record_norms(t, u);
        if (blowup_guard && guard0 > 0.0) {
            const double hn = traj.norms.at("Hdot_half").back();
            if (hn > cfg.blowup_factor * guard0)
                throw std::runtime_error("blow-up guard tripped at t = " + std::to_string(t));
        }
        if (!traj.cfl_warning) {
            const double vmax = traj.norms.at("Linf").back();
            if (vmax > 0.0 && h > 0.5 * dx_min / vmax) traj.cfl_warning = true;
        }
        if ((k + 1) % cfg.snapshot_stride == 0 || k + 1 == nsteps) {
            if (traj.times.back() < t) {
                traj.times.push_back(t);
                traj.states.push_back(u);
            }
        }
    }
    return traj;
}

inline void require_solenoidal(const SpectralField4& u, const char* who) {
    const double scale = std::max(1.0, l2_norm(u));
    if (max_divergence(u) > 1e-8 * scale)
        throw std::invalid_argument(std::string(who) + ": initial data is not divergence-free");
}

}  // namespace detail

/// Nonlinear evolution of the full wave-diffusion system with the exact
/// per-mode propagator for the stiff part and RK4 for the projected,
/// dealiased advection term.  The pressure is never formed.
inline Trajectory solve_pbs(const SpectralField4& u0, double eps, double nu, double nu_prime,
                            const SolverConfig& cfg) {
    detail::require_solenoidal(u0, "solve_pbs");
    const double h = cfg.fitted_dt();
    const auto& g = u0.grid();

    detail::ApplyOp e1, e2;
    if (cfg.disable_wave_coupling) {
        auto t1 = std::make_shared<detail::DiffusionTable>(g, nu, nu_prime, h);
        auto t2 = std::make_shared<detail::DiffusionTable>(g, nu, nu_prime, 0.5 * h);
        e1 = [t1](const SpectralField4& in, SpectralField4& out) { t1->apply(in, out); };
        e2 = [t2](const SpectralField4& in, SpectralField4& out) { t2->apply(in, out); };
    } else {
        auto t1 = std::make_shared<PropagatorTable>(g, h, eps, nu, nu_prime);
        auto t2 = std::make_shared<PropagatorTable>(g, 0.5 * h, eps, nu, nu_prime);
        e1 = [t1](const SpectralField4& in, SpectralField4& out) { t1->apply(in, out); };
        e2 = [t2](const SpectralField4& in, SpectralField4& out) { t2->apply(in, out); };
    }
    detail::RhsOp rhs = [dealias = cfg.dealias](const SpectralField4& u) {
        return advection_rhs(u, dealias);
    };
    return detail::march(u0, cfg, e1, e2, rhs, TrajectoryKind::state4, true);
}

/// Layered horizontal Navier-Stokes flow with full 3-D diffusion.
inline Trajectory solve_limit(const SpectralField4& ubar0, double nu, const SolverConfig& cfg) {
    const auto& g = ubar0.grid();
    {
        double worst = 0.0;
        g.for_each_mode([&](std::size_t i, double x1, double x2, double) {
            worst = std::max(worst, std::abs(x1 * ubar0.at(0, i) + x2 * ubar0.at(1, i)));
        });
        if (worst > 1e-8 * std::max(1.0, l2_norm(ubar0)))
            throw std::invalid_argument("solve_limit: layers are not horizontally solenoidal");
    }
    const double h = cfg.fitted_dt();
    auto t1 = std::make_shared<detail::DiffusionTable>(g, nu, nu, h);
    auto t2 = std::make_shared<detail::DiffusionTable>(g, nu, nu, 0.5 * h);
    detail::ApplyOp e1 = [t1](const SpectralField4& in, SpectralField4& out) { t1->apply(in, out); };
    detail::ApplyOp e2 = [t2](const SpectralField4& in, SpectralField4& out) { t2->apply(in, out); };
    detail::RhsOp rhs = [dealias = cfg.dealias](const SpectralField4& u) {
        return limit_rhs(u, dealias);
    };
    return detail::march(ubar0, cfg, e1, e2, rhs, TrajectoryKind::state4, true);
}

/// Transport-diffusion of the layer vorticity; the advecting velocity is
/// recovered per stage through the Biot-Savart inversion.
inline Trajectory solve_vorticity(const SpectralField4& omega0, double nu,
                                  const SolverConfig& cfg) {
    const auto& g = omega0.grid();
    const double h = cfg.fitted_dt();
    auto t1 = std::make_shared<detail::DiffusionTable>(g, nu, nu, h);
    auto t2 = std::make_shared<detail::DiffusionTable>(g, nu, nu, 0.5 * h);
    detail::ApplyOp e1 = [t1](const SpectralField4& in, SpectralField4& out) { t1->apply(in, out); };
    detail::ApplyOp e2 = [t2](const SpectralField4& in, SpectralField4& out) { t2->apply(in, out); };
    detail::RhsOp rhs = [dealias = cfg.dealias](const SpectralField4& w) {
        return vorticity_rhs(w, biot_savart(w), dealias);
    };
    return detail::march(omega0, cfg, e1, e2, rhs, TrajectoryKind::scalar, false);
}

namespace detail {

/// Cubic (4-point Lagrange) interpolation of trajectory snapshots in time.
class TrajectoryInterpolant {
public:
    explicit TrajectoryInterpolant(const Trajectory& traj) : traj_(&traj) {
        if (traj.times.size() < 4)
            throw std::invalid_argument("trajectory too short for cubic interpolation");
    }

    SpectralField4 operator()(double t) const {
        const auto& times = traj_->times;
        const std::size_t n = times.size();
        std::size_t k = 0;
        while (k + 1 < n && times[k + 1] < t) ++k;
        std::size_t lo = k == 0 ? 0 : k - 1;
        if (lo + 4 > n) lo = n - 4;
        std::array<double, 4> w{};
        for (int i = 0; i < 4; ++i) {
            double num = 1.0, den = 1.0;
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                num *= t - times[lo + static_cast<std::size_t>(j)];
                den *= times[lo + static_cast<std::size_t>(i)] -
                       times[lo + static_cast<std::size_t>(j)];
            }
            w[static_cast<std::size_t>(i)] = num / den;
        }
        SpectralField4 out(traj_->states[lo].grid(), true);
        for (int i = 0; i < 4; ++i)
            out.add_scaled(w[static_cast<std::size_t>(i)],
                           traj_->states[lo + static_cast<std::size_t>(i)]);
        return out;
    }

    /// Leave-one-out cubic error at interior snapshots, as an interpolation
    /// quality estimate.
    double interpolation_error_estimate() const {
        const auto& times = traj_->times;
        const std::size_t n = times.size();
        if (n < 6) return 0.0;
        double worst = 0.0;
        for (std::size_t k : {n / 3, n / 2, 2 * n / 3}) {
            if (k < 2 || k + 2 >= n) continue;
            const std::array<std::size_t, 4> pts{k - 2, k - 1, k + 1, k + 2};
            SpectralField4 est(traj_->states[k].grid(), true);
            for (std::size_t i = 0; i < 4; ++i) {
                double num = 1.0, den = 1.0;
                for (std::size_t j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    num *= times[k] - times[pts[j]];
                    den *= times[pts[i]] - times[pts[j]];
                }
                est.add_scaled(num / den, traj_->states[pts[i]]);
            }
            est -= traj_->states[k];
            worst = std::max(worst, l2_norm(est));
        }
        return worst;
    }

private:
    const Trajectory* traj_;
};

}  // namespace detail

namespace detail {

/// Shared free-wave integrator: exact propagator plus trapezoidal Duhamel
/// quadrature of the propagated forcing, on substeps of cfg.dt.
inline Trajectory freewave_march(const SpectralField4& w0, const Trajectory& ubar_traj,
                                 double eps, double nu, double nu_prime,
                                 const std::optional<FrequencyCutoff>& cut,
                                 const SolverConfig& cfg) {
    cfg.validate();
    const auto& g = w0.grid();
    const int nsteps = cfg.step_count();
    const double h = cfg.fitted_dt();
    const int sub = std::max(1, cfg.freewave_substeps);
    const double hs = h / sub;

    if (ubar_traj.times.back() < cfg.t_end - 1e-12)
        throw std::invalid_argument("freewave: limit trajectory does not cover [0, t_end]");

    TrajectoryInterpolant ubar(ubar_traj);
    if (ubar.interpolation_error_estimate() > h * h)
        throw std::runtime_error("freewave: limit trajectory too coarse for dt^2 forcing accuracy");

    PropagatorTable e1(g, hs, eps, nu, nu_prime);
    OscProjectorTable osc(g, eps, nu, nu_prime);

    auto forcing = [&](double t) {
        SpectralField4 lam = compute_lambda(ubar(t), cfg.dealias);
        if (cut) lam = cutoff_apply(lam, *cut);
        SpectralField4 out(g, true);
        osc.apply(lam, out);
        return out;
    };

    Trajectory traj;
    traj.kind = TrajectoryKind::state4;
    SpectralField4 w = w0;
    traj.record_norms(0.0, w);
    traj.times.push_back(0.0);
    traj.states.push_back(w);

    SpectralField4 f_now = forcing(0.0);
    SpectralField4 tmp(g), prop_f(g);
    for (int k = 0; k < nsteps; ++k) {
        for (int s = 0; s < sub; ++s) {
            const double t1 = k * h + (s + 1) * hs;
            e1.apply(w, tmp);
            e1.apply(f_now, prop_f);
            SpectralField4 f_next = forcing(t1);
            w = tmp;
            w.add_scaled(-0.5 * hs, prop_f);
            w.add_scaled(-0.5 * hs, f_next);
            f_now = std::move(f_next);
        }
        const double t = (k + 1) * h;
        traj.record_norms(t, w);
        if ((k + 1) % cfg.snapshot_stride == 0 || k + 1 == nsteps) {
            if (traj.times.back() < t) {
                traj.times.push_back(t);
                traj.states.push_back(w);
            }
        }
    }
    return traj;
}

}  // namespace detail

/// Free-wave system restricted to the frequency shell: data
/// Psi(D)(P_+ + P_-) U0, forcing -Psi(D)(P_+ + P_-) Lambda(ubar).
/// The cutoff is applied before the oscillating projection (the operators
/// are commuting Fourier multipliers), which keeps the projection away
/// from degenerate modes.
inline Trajectory solve_freewave(const SpectralField4& u0, const Trajectory& ubar_traj, double eps,
                                 double nu, double nu_prime, const FrequencyCutoff& cut,
                                 const SolverConfig& cfg) {
    const auto& g = u0.grid();
    OscProjectorTable osc(g, eps, nu, nu_prime);
    SpectralField4 w0(g, true);
    osc.apply(cutoff_apply(u0, cut), w0);
    return detail::freewave_march(w0, ubar_traj, eps, nu, nu_prime, cut, cfg);
}

/// Free-wave system without the shell cutoff: data (1 - P0) U0 by the
/// identity resolution, same integrator and forcing structure.
inline Trajectory solve_freewave_full(const SpectralField4& u0, const Trajectory& ubar_traj,
                                      double eps, double nu, double nu_prime,
                                      const SolverConfig& cfg) {
    SpectralField4 w0 = u0 - project_0(u0);
    return detail::freewave_march(w0, ubar_traj, eps, nu, nu_prime, std::nullopt, cfg);
}

/// Defect norms of delta = U - W - Ubar at the common snapshot times.
struct DeltaNorms {
    std::vector<double> times;
    std::vector<double> h_half;              // || delta ||_{Hdot^{1/2}}
    std::vector<double> grad_h_half;         // || grad delta ||_{Hdot^{1/2}}
    std::vector<double> dissipation_integral;  // cumulative trapezoid of grad^2
    double sup_h_half = 0.0;
};

inline SpectralField4 delta_at(const SpectralField4& u, const SpectralField4& w,
                               const SpectralField4& ubar) {
    SpectralField4 d = u;
    d -= w;
    for (int c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < d.comp(c).size(); ++i) d.at(c, i) -= ubar.at(c, i);
    return d;
}

inline DeltaNorms compute_delta(const Trajectory& u_traj, const Trajectory& w_traj,
                                const Trajectory& ubar_traj) {
    const auto& t = u_traj.times;
    if (w_traj.times.size() != t.size() || ubar_traj.times.size() != t.size())
        throw std::invalid_argument("compute_delta: trajectories are not time-aligned");
    for (std::size_t i = 0; i < t.size(); ++i)
        if (std::abs(w_traj.times[i] - t[i]) > 1e-9 || std::abs(ubar_traj.times[i] - t[i]) > 1e-9)
            throw std::invalid_argument("compute_delta: trajectories are not time-aligned");

    DeltaNorms out;
    out.times = t;
    double integral = 0.0;
    double prev_grad2 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        SpectralField4 d = delta_at(u_traj.states[i], w_traj.states[i], ubar_traj.states[i]);
        const double hh = sobolev_norm(d, 0.5, true);
        const double gh = sobolev_norm(d, 1.5, true);
        out.h_half.push_back(hh);
        out.grad_h_half.push_back(gh);
        if (i > 0) integral += 0.5 * (t[i] - t[i - 1]) * (gh * gh + prev_grad2);
        out.dissipation_integral.push_back(integral);
        prev_grad2 = gh * gh;
        out.sup_h_half = std::max(out.sup_h_half, hh);
    }
    return out;
}

/// Wave-coupling block alone: (1/1) P A delta per mode (no diffusion).
inline SpectralField4 apply_wave_coupling(const SpectralField4& v) {
    SpectralField4 out(v.grid(), v.real_valued());
    v.grid().for_each_mode([&](std::size_t i, double x1, double x2, double x3) {
        const double m2 = x1 * x1 + x2 * x2 + x3 * x3;
        if (m2 == 0.0) return;
        const double mh2 = x1 * x1 + x2 * x2;
        const cplx v3 = v.at(2, i), v4 = v.at(3, i);
        out.at(0, i) = -x3 * x1 / m2 * v4;
        out.at(1, i) = -x3 * x2 / m2 * v4;
        out.at(2, i) = mh2 / m2 * v4;
        out.at(3, i) = -v3;
    });
    return out;
}

}  // namespace stratlab
