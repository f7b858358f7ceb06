#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "stratlab/fft.hpp"
#include "stratlab/grid.hpp"

namespace stratlab {

/// One complex spectral component on a grid.
struct SpectralScalar {
    explicit SpectralScalar(const FourierGrid& g) : grid(&g), coef(g.size(), cplx(0.0, 0.0)) {}
    const FourierGrid* grid;
    std::vector<cplx> coef;
};

/// Four-component state (u1, u2, u3, rho) in spectral space.  When
/// `real_valued` is set the coefficients are conjugate-symmetric and the
/// collocation field is real.
class SpectralField4 {
public:
    explicit SpectralField4(const FourierGrid& g, bool real_valued = true)
        : grid_(&g), real_valued_(real_valued) {
        for (auto& c : coef_) c.assign(g.size(), cplx(0.0, 0.0));
    }

    const FourierGrid& grid() const { return *grid_; }
    bool real_valued() const { return real_valued_; }
    void set_real_valued(bool v) { real_valued_ = v; }

    std::vector<cplx>& comp(int c) { return coef_[static_cast<std::size_t>(c)]; }
    const std::vector<cplx>& comp(int c) const { return coef_[static_cast<std::size_t>(c)]; }

    cplx& at(int c, std::size_t flat) { return coef_[static_cast<std::size_t>(c)][flat]; }
    cplx at(int c, std::size_t flat) const { return coef_[static_cast<std::size_t>(c)][flat]; }

    void set_zero() {
        for (auto& c : coef_) std::fill(c.begin(), c.end(), cplx(0.0, 0.0));
    }

    SpectralField4& operator+=(const SpectralField4& o) {
        for (int c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < coef_[c].size(); ++i) coef_[c][i] += o.coef_[c][i];
        return *this;
    }
    SpectralField4& operator-=(const SpectralField4& o) {
        for (int c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < coef_[c].size(); ++i) coef_[c][i] -= o.coef_[c][i];
        return *this;
    }
    SpectralField4& operator*=(double s) {
        for (auto& comp : coef_)
            for (auto& v : comp) v *= s;
        return *this;
    }

    friend SpectralField4 operator+(SpectralField4 a, const SpectralField4& b) { return a += b; }
    friend SpectralField4 operator-(SpectralField4 a, const SpectralField4& b) { return a -= b; }
    friend SpectralField4 operator*(double s, SpectralField4 a) { return a *= s; }

    /// axpy: *this += s * o.
    void add_scaled(double s, const SpectralField4& o) {
        for (int c = 0; c < 4; ++c)
            for (std::size_t i = 0; i < coef_[c].size(); ++i) coef_[c][i] += s * o.coef_[c][i];
    }

    /// Largest deviation from conjugate symmetry, for the reality checks.
    double conjugate_symmetry_defect() const {
        const auto& g = *grid_;
        double worst = 0.0;
        for (int c = 0; c < 4; ++c) {
            for (int b1 = 0; b1 < g.n1(); ++b1)
                for (int b2 = 0; b2 < g.n2(); ++b2)
                    for (int b3 = 0; b3 < g.n3(); ++b3) {
                        const int m1 = (g.n1() - b1) % g.n1();
                        const int m2 = (g.n2() - b2) % g.n2();
                        const int m3 = (g.n3() - b3) % g.n3();
                        const cplx a = coef_[c][g.index(b1, b2, b3)];
                        const cplx b = coef_[c][g.index(m1, m2, m3)];
                        worst = std::max(worst, std::abs(a - std::conj(b)));
                    }
        }
        return worst;
    }

private:
    const FourierGrid* grid_;
    std::array<std::vector<cplx>, 4> coef_;
    bool real_valued_;
};

/// Four real collocation arrays.
class PhysicalField4 {
public:
    explicit PhysicalField4(const FourierGrid& g) : grid_(&g) {
        for (auto& c : val_) c.assign(g.size(), 0.0);
    }
    const FourierGrid& grid() const { return *grid_; }
    std::vector<double>& comp(int c) { return val_[static_cast<std::size_t>(c)]; }
    const std::vector<double>& comp(int c) const { return val_[static_cast<std::size_t>(c)]; }

private:
    const FourierGrid* grid_;
    std::array<std::vector<double>, 4> val_;
};

inline std::vector<double> scalar_to_physical(const SpectralScalar& f) {
    auto& plan = fft_plan_for(*f.grid);
    std::vector<cplx> tmp(f.grid->size());
    plan.backward(f.coef.data(), tmp.data());
    std::vector<double> out(f.grid->size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = tmp[i].real();
    return out;
}

inline SpectralScalar scalar_to_spectral(const FourierGrid& g, const std::vector<double>& v) {
    if (v.size() != g.size()) throw std::invalid_argument("grid/data size mismatch");
    std::vector<cplx> tmp(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) tmp[i] = cplx(v[i], 0.0);
    SpectralScalar out(g);
    fft_plan_for(g).forward(tmp.data(), out.coef.data());
    return out;
}

inline PhysicalField4 to_physical(const SpectralField4& f) {
    PhysicalField4 out(f.grid());
    auto& plan = fft_plan_for(f.grid());
    std::vector<cplx> tmp(f.grid().size());
    for (int c = 0; c < 4; ++c) {
        plan.backward(f.comp(c).data(), tmp.data());
        auto& dst = out.comp(c);
        for (std::size_t i = 0; i < tmp.size(); ++i) dst[i] = tmp[i].real();
    }
    return out;
}

inline SpectralField4 to_spectral(const PhysicalField4& f) {
    SpectralField4 out(f.grid(), true);
    auto& plan = fft_plan_for(f.grid());
    std::vector<cplx> tmp(f.grid().size());
    for (int c = 0; c < 4; ++c) {
        const auto& src = f.comp(c);
        for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = cplx(src[i], 0.0);
        plan.forward(tmp.data(), out.comp(c).data());
    }
    return out;
}

}  // namespace stratlab
