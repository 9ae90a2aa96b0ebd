#include "delayctl/kernel.hpp"

#include <stdexcept>

namespace delayctl {

DelayKernel DelayKernel::zero() {
    DelayKernel k;
    k.kind_ = KernelKind::Zero;
    return k;
}

DelayKernel DelayKernel::sampled(std::vector<Complex> samples) {
    if (samples.size() < 3 || samples.size() % 2 == 0) {
        throw std::invalid_argument(
            "DelayKernel::sampled: need an odd sample count (even panel count) over [-1,0]");
    }
    DelayKernel k;
    k.kind_ = KernelKind::Sampled;
    k.grid_step_ = 1.0 / static_cast<double>(samples.size() - 1);
    k.samples_ = std::move(samples);
    return k;
}

bool DelayKernel::is_real() const {
    for (const Complex& s : samples_) {
        if (s.imag() != 0.0) return false;
    }
    return true;
}

Complex DelayKernel::exp_moment(Complex z) const {
    if (is_zero()) return {0.0, 0.0};
    const auto w = simpson_weights(panels(), 1.0);
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < samples_.size(); ++j) {
        const double tau = -1.0 + grid_step_ * static_cast<double>(j);
        acc += w[j] * std::exp(kI * z * tau) * samples_[j];
    }
    return acc;
}

Complex DelayKernel::exp_moment_derivative(Complex z) const {
    if (is_zero()) return {0.0, 0.0};
    const auto w = simpson_weights(panels(), 1.0);
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < samples_.size(); ++j) {
        const double tau = -1.0 + grid_step_ * static_cast<double>(j);
        acc += w[j] * kI * tau * std::exp(kI * z * tau) * samples_[j];
    }
    return acc;
}

Complex DelayKernel::value_at_zero() const {
    return is_zero() ? Complex{0.0, 0.0} : samples_.back();
}

std::vector<double> simpson_weights(std::size_t panels, double length) {
    if (panels == 0 || panels % 2 != 0) {
        throw std::invalid_argument("simpson_weights: panel count must be even and positive");
    }
    const double h = length / static_cast<double>(panels);
    std::vector<double> w(panels + 1, 0.0);
    w.front() = w.back() = h / 3.0;
    for (std::size_t j = 1; j < panels; ++j) {
        w[j] = (j % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    }
    return w;
}

}  // namespace delayctl
