#pragma once

#include <cstddef>
#include <vector>

#include "delayctl/kernel.hpp"
#include "delayctl/spectral.hpp"
#include "delayctl/types.hpp"

namespace delayctl {

/// Element of M = C x L^2(-1,0): head scalar xi plus the history tail
/// sampled on a uniform grid over [-1,0] (even panel count).
struct MState {
    Complex head{0.0, 0.0};
    std::vector<Complex> tail;  // tail[j] = x0(-1 + j h), j = 0..panels

    std::size_t panels() const { return tail.empty() ? 0 : tail.size() - 1; }
    double grid_step() const { return 1.0 / static_cast<double>(panels()); }

    static MState zero(std::size_t panels);
    /// Constant-one data (head 1, tail identically 1).
    static MState ones(std::size_t panels);
    /// Eigenvector e_lambda = (1, e^{i lambda tau}).
    static MState eigenvector(Complex lambda, std::size_t panels);
};

/// Inner product of M, conjugate-linear in the second argument:
///   <a,b> = a.head conj(b.head) + int_{-1}^0 a.tail conj(b.tail)  (Simpson).
Complex m_inner(const MState& a, const MState& b);

double m_norm(const MState& a);

MState m_axpy(Complex alpha, const MState& x, const MState& y);  // alpha*x + y

/// Formal Fourier coefficient <x, x_lambda> of x against the biorthogonal
/// system: head pairing with xi_bar plus the Simpson tail pairing with
/// x_bar_lambda on x's grid.
Complex expansion_coefficient(const MState& x, const EigenRecord& rec, const DelayKernel& kernel);

}  // namespace delayctl
