#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stratlab/operators.hpp"

namespace stratlab {

struct SolverConfig {
    double dt = 1e-2;
    double t_end = 1.0;
    std::string scheme = "IF-RK4";
    int snapshot_stride = 5;
    bool dealias = true;
    double blowup_factor = 1e3;
    int freewave_substeps = 4;       // Duhamel substeps per dt
    bool disable_wave_coupling = false;  // drop the 1/eps block (test knob)

    void validate() const {
        if (!(dt > 0.0) || !(t_end > 0.0) || dt > t_end)
            throw std::invalid_argument("solver config requires 0 < dt <= t_end");
        if (scheme != "IF-RK4") throw std::invalid_argument("unknown scheme: " + scheme);
        if (snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
    }

    int step_count() const {
        return static_cast<int>(std::ceil(t_end / dt - 1e-12));
    }
    double fitted_dt() const { return t_end / step_count(); }
};

enum class TrajectoryKind { state4, scalar };

/// Time-indexed snapshots plus per-step recorded norms.
struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::state4;
    std::vector<double> times;            // snapshot times
    std::vector<SpectralField4> states;   // snapshots (stride-spaced, ends included)
    std::vector<double> norm_times;       // every accepted step
    std::map<std::string, std::vector<double>> norms;
    bool cfl_warning = false;

    void record_norms(double t, const SpectralField4& u) {
        norm_times.push_back(t);
        norms["L2"].push_back(sobolev_norm(u, 0.0, false));
        norms["Hdot_half"].push_back(sobolev_norm(u, 0.5, true));
        norms["Hdot_3half"].push_back(sobolev_norm(u, 1.5, true));
        norms["Linf"].push_back(linf_surrogate(u));
    }

    const SpectralField4& at_time(double t, double tol = 1e-9) const {
        for (std::size_t i = 0; i < times.size(); ++i)
            if (std::abs(times[i] - t) <= tol) return states[i];
        throw std::out_of_range("no snapshot at requested time");
    }

    /// Strict time ordering and (for 4-component states) the solenoidal check.
    void validate(double div_tol = 1e-10) const {
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::logic_error("snapshot times must increase strictly");
        if (kind == TrajectoryKind::state4)
            for (const auto& s : states)
                if (max_divergence(s) > div_tol)
                    throw std::logic_error("trajectory state violates the divergence-free check");
    }
};

/// max |u| over collocation points of the velocity components only.
inline double velocity_max(const SpectralField4& u) {
    PhysicalField4 p = to_physical(u);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.grid().size(); ++i) {
        const double m = p.comp(0)[i] * p.comp(0)[i] + p.comp(1)[i] * p.comp(1)[i] +
                         p.comp(2)[i] * p.comp(2)[i];
        worst = std::max(worst, m);
    }
    return std::sqrt(worst);
}

}  // namespace stratlab
