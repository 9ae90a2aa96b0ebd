#pragma once

#include <cstddef>
#include <vector>

#include "delayctl/control.hpp"
#include "delayctl/kernel.hpp"
#include "delayctl/state.hpp"
#include "delayctl/types.hpp"

namespace delayctl {

/// Sampled trajectory of the delay equation on [-1, T_end], on a uniform
/// grid whose step divides the unit delay exactly.
struct Trajectory {
    std::vector<Complex> samples;  // samples[j] = x(-1 + j h), h = 1/steps_per_unit
    std::size_t steps_per_unit = 0;

    double grid_step() const { return 1.0 / static_cast<double>(steps_per_unit); }
    double t_end() const {
        return -1.0 + static_cast<double>(samples.size() - 1) * grid_step();
    }
    /// Linear interpolation; exact at grid nodes. Throws std::domain_error
    /// outside [-1, t_end].
    Complex value_at(double t) const;
};

struct SimOptions {
    std::size_t steps_per_unit = 2048;
};

/// Method-of-steps trapezoidal integration of
///   x'(t) = x(t-1) + int_{-1}^0 x(t+tau) phi(tau) dtau + u(t)
/// from the history x0 (head = x(0), tail = x on (-1,0)). The control may
/// be null for the free response; it is resampled to the simulation grid by
/// linear interpolation (warning on stderr when the grids differ) and read
/// as zero past its own horizon.
Trajectory simulate(const MState& x0, const ControlSignal* u, const DelayKernel& kernel,
                    double t_end, const SimOptions& opts = {});

/// Semigroup action: simulates homogeneously to time t >= 0 and packages
/// (x(t), x(t + .)) as an MState on x0's grid.
MState semigroup_apply(const MState& x0, double t, const DelayKernel& kernel,
                       const SimOptions& opts = {});

/// M-norm of the terminal state at time T:
///   sqrt( |x(T)|^2 + int_{T-1}^T |x|^2 )   (trapezoid at grid resolution).
/// Throws std::invalid_argument if the trajectory does not cover [T-1, T].
double terminal_segment_norm(const Trajectory& traj, double T);

}  // namespace delayctl
