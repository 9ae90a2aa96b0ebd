#pragma once

#include <cstddef>
#include <vector>

#include "delayctl/kernel.hpp"
#include "delayctl/spectral.hpp"
#include "delayctl/state.hpp"
#include "delayctl/summation.hpp"
#include "delayctl/types.hpp"

namespace delayctl {

/// Control horizon T in (1,2) with delta = T - 1.
struct Horizon {
    double T;
    double delta;

    /// Validates 1 < T < 2; throws std::invalid_argument otherwise.
    static Horizon of(double T);
};

/// Biorthogonal control data for one eigenvalue: the pulse
/// p_bar(t) = A sinh t + B cosh t on (0, delta), zero outside, together
/// with a_lambda = 1/(e^{i lambda} D'(lambda)).
struct BiorthControl {
    Complex lambda;
    Complex A;
    Complex B;
    Complex a_lambda;
    Horizon horizon;
};

/// Evaluation side at a breakpoint of a piecewise function: the left or
/// right one-sided limit, or their mean (equal wherever continuous).
enum class EvalSide { left = -1, mean = 0, right = 1 };

/// Solves the normalization int_0^delta e^{i lambda t} p_bar(t) dt = 1 for
/// B = p_bar(0) in closed form and populates A and a_lambda. Throws
/// std::runtime_error("degenerate normalization") if the linear equation
/// for B degenerates (cannot happen at characteristic roots).
BiorthControl solve_p_lambda(const EigenRecord& rec, Horizon horizon);

/// The pulse p_bar extended by zero outside (0, delta); one-sided limits
/// at the breakpoints {0, delta} selected by `side`.
Complex eval_p_bar(const BiorthControl& bc, double t, EvalSide side = EvalSide::mean);

/// Biorthogonal function v_lambda on [0,T], evaluated in closed form:
///   conj(v_lambda(t)) = -i a_lambda [ p_bar(t-1)
///                       + int e^{-i lambda (t-u)} p_bar(u) du ]
/// with the convolution over (t-1, t) ∩ (0, delta). Piecewise smooth with
/// a jump at t = 1 and a one-sided limit at t = T; `side` selects the
/// limit there. Throws std::domain_error for t outside [0,T].
Complex eval_v_lambda(const BiorthControl& bc, double t, EvalSide side = EvalSide::mean);

/// Control signal sampled on a uniform grid over [0,T].
struct ControlSignal {
    std::vector<Complex> samples;  // samples[j] = u(j T / panels)
    double T = 0.0;

    std::size_t panels() const { return samples.empty() ? 0 : samples.size() - 1; }
    double grid_step() const { return T / static_cast<double>(panels()); }

    static ControlSignal zero(double T, std::size_t panels);
};

/// Trapezoidal L^2(0,T) norm of the sampled signal.
double l2_norm(const ControlSignal& u);

/// Fixed scale of the per-eigenvector control, kappa = -i D'(lambda) e^{i lambda T},
/// derived from the moment equation int_0^T u e^{-i lambda t} dt = -1/xi_bar.
Complex control_scale(const EigenRecord& rec, const Horizon& horizon);

/// Optimal null control for the eigenvector initial state e_lambda:
///   u_lambda(t) = kappa * conj(v_lambda(T - t)),
/// sampled on `panels` uniform panels. Interior jump nodes carry the mean
/// of the one-sided limits, endpoints the inward limit, so trapezoidal
/// consumers retain second-order accuracy.
ControlSignal u_for_eigenvector(const EigenRecord& rec, Horizon horizon, std::size_t panels);

/// Regularized synthesis of the optimal control for initial state x0:
///   u_n = sum_lambda w_n(lambda) <x0, x_lambda> u_lambda,
/// accumulated in ascending |lambda| order. Only the zero kernel is
/// supported (the biorthogonal family is constructed for the model case).
ControlSignal synthesize_control(const MState& x0, int n, const SpectrumSet& spectrum,
                                 const SummationSchedule& schedule, Horizon horizon,
                                 std::size_t panels);

}  // namespace delayctl
