#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "stratlab/common.hpp"

namespace stratlab {

/// Periodic Fourier grid.  Wavenumbers are xi_j = 2*pi*k_j/L_j with the
/// integer k_j in the symmetric range {-n/2, ..., n/2-1} (DFT bin order in
/// storage).  First-order derivative operators use a Nyquist-zeroed copy of
/// the wavenumbers so that they stay skew-adjoint on the grid.
class FourierGrid {
public:
    FourierGrid(std::array<int, 3> dims, std::array<double, 3> box = {kTwoPi, kTwoPi, kTwoPi})
        : dims_(dims), box_(box) {
        for (int a = 0; a < 3; ++a) {
            if (dims_[a] < 8 || dims_[a] % 2 != 0)
                throw std::invalid_argument("grid dims must be even and >= 8");
            if (!(box_[a] > 0.0))
                throw std::invalid_argument("box lengths must be positive");
        }
        for (int a = 0; a < 3; ++a) {
            wave_[a].resize(static_cast<std::size_t>(dims_[a]));
            dwave_[a].resize(static_cast<std::size_t>(dims_[a]));
            const double f = kTwoPi / box_[a];
            for (int b = 0; b < dims_[a]; ++b) {
                const int k = b <= dims_[a] / 2 - 1 ? b : b - dims_[a];
                wave_[a][static_cast<std::size_t>(b)] = f * k;
                dwave_[a][static_cast<std::size_t>(b)] = (b == dims_[a] / 2) ? 0.0 : f * k;
            }
        }
    }

    const std::array<int, 3>& dims() const { return dims_; }
    const std::array<double, 3>& box() const { return box_; }
    int n1() const { return dims_[0]; }
    int n2() const { return dims_[1]; }
    int n3() const { return dims_[2]; }
    std::size_t size() const {
        return static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
    }

    std::size_t index(int b1, int b2, int b3) const {
        return (static_cast<std::size_t>(b1) * dims_[1] + b2) * dims_[2] + b3;
    }

    /// Integer mode index along axis a for storage bin b.
    int mode(int a, int b) const {
        return b <= dims_[a] / 2 - 1 ? b : b - dims_[a];
    }

    double xi(int a, int b) const { return wave_[a][static_cast<std::size_t>(b)]; }
    /// Derivative wavenumber (Nyquist bin zeroed).
    double dxi(int a, int b) const { return dwave_[a][static_cast<std::size_t>(b)]; }

    /// Collocation point coordinate along axis a.
    double x(int a, int j) const { return box_[a] * j / dims_[a]; }

    /// Weight turning a plain spectral coefficient sum into the declared
    /// L2 norm: product of L_j/(2*pi) factors.
    double parseval_weight() const {
        return (box_[0] / kTwoPi) * (box_[1] / kTwoPi) * (box_[2] / kTwoPi);
    }

    double cell_volume() const { return box_[0] * box_[1] * box_[2] / static_cast<double>(size()); }

    bool operator==(const FourierGrid& o) const { return dims_ == o.dims_ && box_ == o.box_; }
    bool operator!=(const FourierGrid& o) const { return !(*this == o); }

    /// Visit every mode: f(flat, xi1, xi2, xi3) with derivative wavenumbers.
    template <class F>
    void for_each_mode(F&& f) const {
        std::size_t flat = 0;
        for (int b1 = 0; b1 < dims_[0]; ++b1)
            for (int b2 = 0; b2 < dims_[1]; ++b2)
                for (int b3 = 0; b3 < dims_[2]; ++b3, ++flat)
                    f(flat, dwave_[0][static_cast<std::size_t>(b1)],
                      dwave_[1][static_cast<std::size_t>(b2)],
                      dwave_[2][static_cast<std::size_t>(b3)]);
    }

    /// Same, with the full (Nyquist-signed) wavenumbers; for multipliers
    /// that are not derivatives.
    template <class F>
    void for_each_mode_full(F&& f) const {
        std::size_t flat = 0;
        for (int b1 = 0; b1 < dims_[0]; ++b1)
            for (int b2 = 0; b2 < dims_[1]; ++b2)
                for (int b3 = 0; b3 < dims_[2]; ++b3, ++flat)
                    f(flat, wave_[0][static_cast<std::size_t>(b1)],
                      wave_[1][static_cast<std::size_t>(b2)],
                      wave_[2][static_cast<std::size_t>(b3)]);
    }

private:
    std::array<int, 3> dims_;
    std::array<double, 3> box_;
    std::array<std::vector<double>, 3> wave_;
    std::array<std::vector<double>, 3> dwave_;
};

}  // namespace stratlab
