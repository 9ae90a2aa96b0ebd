#pragma once

#include <cstddef>
#include <vector>

#include "delayctl/control.hpp"
#include "delayctl/kernel.hpp"
#include "delayctl/state.hpp"
#include "delayctl/summation.hpp"
#include "delayctl/types.hpp"

namespace delayctl {

struct OracleOptions {
    std::size_t sim_steps_per_unit = 256;
    /// Minimum acceptable effective rank, as a fraction of the terminal
    /// dimension; below it the terminal map is reported degenerate.
    double min_rank_fraction = 0.5;
};

/// Discretized least-norm control with its optimality certificate.
struct OracleResult {
    ControlSignal u;
    int rank = 0;                      // effective rank of the terminal map
    double constraint_residual = 0.0;  // controlled/free terminal-norm ratio
    double rowspace_residual = 0.0;    // distance of u from the row space, relative
    bool null_perturbations_increase_norm = false;  // 5 fixed-seed null directions
};

/// Brute-force minimal-norm control: builds the linear map from control
/// samples (N nodes over [0,T]) to the sampled terminal segment by impulse
/// responses of the simulator, and returns the minimum-norm solution of
/// L u = -b under trapezoidal L^2 weighting (rank-revealing complete
/// orthogonal factorization). Throws std::runtime_error("terminal map
/// degenerate ...") on rank collapse.
OracleResult least_norm_control(const MState& x0, const DelayKernel& kernel, double T,
                                std::size_t N, const OracleOptions& opts = {});

struct GapRow {
    int n;
    double norm_spectral;
    double norm_oracle;
    double gap_l2;
};

/// For each summation order n, the L^2(0,T) distance between the spectral
/// synthesis and the oracle control, with both norms.
std::vector<GapRow> norm_gap_report(const MState& x0, const SpectrumSet& spectrum,
                                    const SummationSchedule& schedule, Horizon horizon,
                                    std::size_t N, const std::vector<int>& n_list,
                                    const OracleOptions& opts = {});

}  // namespace delayctl
