#pragma once

#include <cmath>
#include <stdexcept>

#include "stratlab/field.hpp"

namespace stratlab {

/// Smooth transition bump in closed form: 1 for s <= a, 0 for s >= b,
/// f((b-s)/(b-a)) / (f((b-s)/(b-a)) + f((s-a)/(b-a))) with f(x) = e^{-1/x}
/// in between.  Bit-reproducible, C-infinity.
inline double smooth_step(double s, double a, double b) {
    if (s <= a) return 1.0;
    if (s >= b) return 0.0;
    const double u = (b - s) / (b - a);
    const double v = (s - a) / (b - a);
    const double fu = std::exp(-1.0 / u);
    const double fv = std::exp(-1.0 / v);
    return fu / (fu + fv);
}

/// Radial profile chi: 1 on [0,1], 0 on [2,inf).
inline double chi_profile(double s) { return smooth_step(s, 1.0, 2.0); }

/// Frequency shell selector Psi_{r,R}: equal to 1 on the shell
/// {|xi_h| > r, |xi| < R}, supported in {|xi_h| > r/2, |xi| < 2R}.
class FrequencyCutoff {
public:
    FrequencyCutoff(double r, double R) : r_(r), R_(R) {
        if (!(0.0 < r && r < R)) throw std::invalid_argument("cutoff requires 0 < r < R");
    }

    double r() const { return r_; }
    double R() const { return R_; }

    double operator()(double xi1, double xi2, double xi3) const {
        const double h = std::sqrt(xi1 * xi1 + xi2 * xi2);
        const double m = std::sqrt(h * h + xi3 * xi3);
        return value_hm(h, m);
    }

    /// Psi as a function of |xi_h| and |xi|.
    double value_hm(double xi_h, double xi_mod) const {
        return chi_profile(xi_mod / R_) * (1.0 - chi_profile(2.0 * xi_h / r_));
    }

    bool inside_core(double xi_h, double xi_mod) const { return xi_h > r_ && xi_mod < R_; }
    bool inside_support(double xi_h, double xi_mod) const {
        return xi_h > 0.5 * r_ && xi_mod < 2.0 * R_;
    }

private:
    double r_;
    double R_;
};

/// Per-mode multiplication by Psi_{r,R}.
inline SpectralField4 cutoff_apply(const SpectralField4& v, const FrequencyCutoff& cut) {
    SpectralField4 out = v;
    v.grid().for_each_mode_full([&](std::size_t i, double x1, double x2, double x3) {
        const double psi = cut(x1, x2, x3);
        for (int c = 0; c < 4; ++c) out.at(c, i) = psi * v.at(c, i);
    });
    return out;
}

}  // namespace stratlab
