#include "delayctl/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace delayctl {

namespace {

// Linear interpolation on a uniform grid spanning [t0, t0 + n*h].
Complex lerp_grid(const std::vector<Complex>& v, double t0, double h, double t) {
    const double s = (t - t0) / h;
    const double lo = std::floor(s);
    auto idx = static_cast<std::ptrdiff_t>(lo);
    if (idx < 0) idx = 0;
    if (idx >= static_cast<std::ptrdiff_t>(v.size()) - 1) idx = static_cast<std::ptrdiff_t>(v.size()) - 2;
    const double frac = s - static_cast<double>(idx);
    return v[static_cast<std::size_t>(idx)] * (1.0 - frac) + v[static_cast<std::size_t>(idx) + 1] * frac;
}

}  // namespace

Complex Trajectory::value_at(double t) const {
    const double h = grid_step();
    if (t < -1.0 - 1e-9 || t > t_end() + 1e-9) throw std::domain_error("time outside trajectory");
    return lerp_grid(samples, -1.0, h, t);
}

Trajectory simulate(const MState& x0, const ControlSignal* u, const DelayKernel& kernel,
                    double t_end, const SimOptions& opts) {
    const std::size_t spu = opts.steps_per_unit;
    if (spu < 2) throw std::invalid_argument("steps_per_unit too small");
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (x0.tail.size() < 2) throw std::invalid_argument("initial state has no tail grid");
    const double h = 1.0 / static_cast<double>(spu);
    const auto n_steps = static_cast<std::size_t>(std::ceil(t_end * static_cast<double>(spu) - 1e-9));

    Trajectory traj;
    traj.steps_per_unit = spu;
    traj.samples.assign(spu + n_steps + 1, Complex{0.0, 0.0});
    for (std::size_t j = 0; j <= spu; ++j) {
        const double t = -1.0 + static_cast<double>(j) * h;
        traj.samples[j] = lerp_grid(x0.tail, -1.0, x0.grid_step(), t);
    }
    traj.samples[spu] = x0.head;

    // Control resampled onto the step times, zero past its horizon.
    std::vector<Complex> uu(n_steps + 1, Complex{0.0, 0.0});
    if (u != nullptr && u->samples.size() >= 2) {
        if (std::abs(u->grid_step() - h) > 1e-12) {
            std::fprintf(stderr, "warning: control grid (step %.3e) resampled to simulation step %.3e\n",
                         u->grid_step(), h);
        }
        for (std::size_t k = 0; k <= n_steps; ++k) {
            const double t = static_cast<double>(k) * h;
            if (t <= u->T + 1e-12) uu[k] = lerp_grid(u->samples, 0.0, u->grid_step(), t);
        }
    }

    // Distributed kernel resampled once to the simulation grid.
    std::vector<Complex> phi;
    Complex phi0{0.0, 0.0};
    if (!kernel.is_zero()) {
        phi.resize(spu + 1);
        for (std::size_t j = 0; j <= spu; ++j) {
            const double tau = -1.0 + static_cast<double>(j) * h;
            phi[j] = lerp_grid(kernel.samples(), -1.0, kernel.grid_step(), tau);
        }
        phi0 = phi[spu];
    }

    // Trapezoid of int_{-1}^0 x(t+tau) phi(tau) dtau at absolute index i,
    // excluding the tau = 0 contribution when `partial` (the node may be
    // unknown during the implicit half-step).
    auto distributed = [&](std::size_t i, bool partial) -> Complex {
        if (kernel.is_zero()) return {0.0, 0.0};
        Complex acc = 0.5 * phi[0] * traj.samples[i - spu];
        for (std::size_t j = 1; j < spu; ++j) acc += phi[j] * traj.samples[i - spu + j];
        if (!partial) acc += 0.5 * phi[spu] * traj.samples[i];
        return h * acc;
    };

    // The right side at step i+1 contains x[i+1] only through the tau = 0
    // trapezoid node, with coefficient (h/2) phi(0); solve the scalar
    // implicit relation directly.
    const Complex implicit_coeff = 1.0 - (h / 2.0) * (h / 2.0) * phi0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        const std::size_t i = spu + k;
        const Complex f_i = traj.samples[i - spu] + distributed(i, false) + uu[k];
        const Complex f_next_known =
            traj.samples[i + 1 - spu] + distributed(i + 1, true) + uu[k + 1];
        traj.samples[i + 1] = (traj.samples[i] + (h / 2.0) * (f_i + f_next_known)) / implicit_coeff;
    }
    return traj;
}

MState semigroup_apply(const MState& x0, double t, const DelayKernel& kernel,
                       const SimOptions& opts) {
    if (t < 0.0) throw std::invalid_argument("semigroup time must be nonnegative");
    const std::size_t panels = x0.panels();
    if (t < 1e-12) return x0;
    const Trajectory traj = simulate(x0, nullptr, kernel, t, opts);
    MState out = MState::zero(panels);
    out.head = traj.value_at(t);
    for (std::size_t j = 0; j <= panels; ++j) {
        const double tau = -1.0 + static_cast<double>(j) / static_cast<double>(panels);
        out.tail[j] = traj.value_at(t + tau);
    }
    return out;
}

double terminal_segment_norm(const Trajectory& traj, double T) {
    const std::size_t spu = traj.steps_per_unit;
    const double h = traj.grid_step();
    const auto j1 = static_cast<std::size_t>(std::llround((T + 1.0) * static_cast<double>(spu)));
    if (j1 < spu || j1 >= traj.samples.size() ||
        std::abs((T + 1.0) - static_cast<double>(j1) * h) > 1e-9) {
        throw std::invalid_argument("trajectory does not cover [T-1, T] on its grid");
    }
    const std::size_t j0 = j1 - spu;
    double acc = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) {
        const double w = (j == j0 || j == j1) ? 0.5 : 1.0;
        acc += w * std::norm(traj.samples[j]);
    }
    return std::sqrt(std::norm(traj.samples[j1]) + h * acc);
}

}  // namespace delayctl
