#pragma once

#include <cstddef>
#include <vector>

#include "delayctl/types.hpp"

namespace delayctl {

enum class KernelKind { Zero, Sampled };

/// Distributed-delay weight phi in L^2(-1,0): either identically zero or
/// sampled on a uniform grid over [-1,0] with an even panel count.
class DelayKernel {
public:
    /// Default-constructed kernels are the zero kernel.
    DelayKernel() = default;

    static DelayKernel zero();
    /// samples.size() must be odd (even panel count), covering [-1,0].
    static DelayKernel sampled(std::vector<Complex> samples);

    KernelKind kind() const { return kind_; }
    bool is_zero() const { return kind_ == KernelKind::Zero; }
    const std::vector<Complex>& samples() const { return samples_; }
    std::size_t panels() const { return samples_.empty() ? 0 : samples_.size() - 1; }
    double grid_step() const { return grid_step_; }

    /// True if all samples are real (always true for the zero kernel).
    bool is_real() const;

    /// Simpson quadrature of  int_{-1}^0 e^{i z tau} phi(tau) dtau.
    Complex exp_moment(Complex z) const;
    /// Simpson quadrature of  int_{-1}^0 i tau e^{i z tau} phi(tau) dtau.
    Complex exp_moment_derivative(Complex z) const;

    /// phi(0), the sample at tau = 0; zero for the zero kernel.
    Complex value_at_zero() const;

private:
    KernelKind kind_ = KernelKind::Zero;
    std::vector<Complex> samples_;
    double grid_step_ = 0.0;
};

/// Composite-Simpson weights for panels+1 nodes spanning `length`; panels even.
std::vector<double> simpson_weights(std::size_t panels, double length);

}  // namespace delayctl
