#include "delayctl/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delayctl {

namespace {

constexpr double kNodeEps = 1e-12;

// int_a^b e^{(i lambda + s) u} du, s = +1 or -1.
Complex exp_primitive(Complex lambda, double s, double a, double b) {
    const Complex c = kI * lambda + s;
    if (std::abs(c) < 1e-9) throw std::runtime_error("degenerate normalization");
    return (std::exp(c * b) - std::exp(c * a)) / c;
}

// Pair (S, C) = int_a^b e^{i lambda u} {sinh u, cosh u} du.
struct SinhCosh {
    Complex S;
    Complex C;
};

SinhCosh sinh_cosh_moment(Complex lambda, double a, double b) {
    const Complex ep = exp_primitive(lambda, 1.0, a, b);
    const Complex em = exp_primitive(lambda, -1.0, a, b);
    return {(ep - em) / 2.0, (ep + em) / 2.0};
}

// conj(v_lambda(t)) = -i a_lambda [ p_bar(t-1) + conv(t) ].
Complex eval_w(const BiorthControl& bc, double t, EvalSide side) {
    const double T = bc.horizon.T;
    const double delta = bc.horizon.delta;
    if (t < -kNodeEps || t > T + kNodeEps) throw std::domain_error("time outside [0,T]");
    Complex pulse = eval_p_bar(bc, t - 1.0, side);
    Complex conv{0.0, 0.0};
    const double lo = std::max(t - 1.0, 0.0);
    const double hi = std::min(t, delta);
    if (hi > lo + kNodeEps) {
        const SinhCosh m = sinh_cosh_moment(bc.lambda, lo, hi);
        conv = std::exp(-kI * bc.lambda * t) * (bc.A * m.S + bc.B * m.C);
    }
    return -kI * bc.a_lambda * (pulse + conv);
}

}  // namespace

Horizon Horizon::of(double T) {
    if (!(T > 1.0) || !(T < 2.0)) {
        throw std::invalid_argument("horizon T must lie in (1,2); got T = " + std::to_string(T));
    }
    return Horizon{T, T - 1.0};
}

BiorthControl solve_p_lambda(const EigenRecord& rec, Horizon horizon) {
    const Complex lambda = rec.lambda;
    const SinhCosh m = sinh_cosh_moment(lambda, 0.0, horizon.delta);
    // Normalization int_0^delta e^{i lambda t} p_bar = 1 with
    // p_bar = (i lambda B - lambda^2) sinh t + B cosh t.
    const Complex denom = m.C + kI * lambda * m.S;
    if (std::abs(denom) < 1e-12) throw std::runtime_error("degenerate normalization");
    const Complex B = (1.0 + lambda * lambda * m.S) / denom;
    const Complex A = kI * lambda * B - lambda * lambda;
    const Complex a_lambda = 1.0 / (std::exp(kI * lambda) * rec.d_prime);
    return BiorthControl{lambda, A, B, a_lambda, horizon};
}

Complex eval_p_bar(const BiorthControl& bc, double t, EvalSide side) {
    const double delta = bc.horizon.delta;
    const Complex interior = bc.A * std::sinh(t) + bc.B * std::cosh(t);
    if (t > kNodeEps && t < delta - kNodeEps) return interior;
    if (std::abs(t) <= kNodeEps) {
        // Jump from 0 to B at t = 0.
        if (side == EvalSide::left) return {0.0, 0.0};
        if (side == EvalSide::right) return bc.B;
        return bc.B / 2.0;
    }
    if (std::abs(t - delta) <= kNodeEps) {
        if (side == EvalSide::left) return interior;
        if (side == EvalSide::right) return {0.0, 0.0};
        return interior / 2.0;
    }
    return {0.0, 0.0};
}

Complex eval_v_lambda(const BiorthControl& bc, double t, EvalSide side) {
    return std::conj(eval_w(bc, t, side));
}

ControlSignal ControlSignal::zero(double T, std::size_t panels) {
    return ControlSignal{std::vector<Complex>(panels + 1, Complex{0.0, 0.0}), T};
}

double l2_norm(const ControlSignal& u) {
    if (u.samples.size() < 2) return 0.0;
    const double h = u.grid_step();
    double acc = 0.0;
    for (std::size_t j = 0; j < u.samples.size(); ++j) {
        const double w = (j == 0 || j + 1 == u.samples.size()) ? 0.5 : 1.0;
        acc += w * std::norm(u.samples[j]);
    }
    return std::sqrt(h * acc);
}

Complex control_scale(const EigenRecord& rec, const Horizon& horizon) {
    return -kI * rec.d_prime * std::exp(kI * rec.lambda * horizon.T);
}

ControlSignal u_for_eigenvector(const EigenRecord& rec, Horizon horizon, std::size_t panels) {
    const BiorthControl bc = solve_p_lambda(rec, horizon);
    const Complex kappa = control_scale(rec, horizon);
    ControlSignal u = ControlSignal::zero(horizon.T, panels);
    const double h = horizon.T / static_cast<double>(panels);
    for (std::size_t j = 0; j <= panels; ++j) {
        const double t = static_cast<double>(j) * h;
        // u(t) = kappa conj(v(T - t)); inward limits at the endpoints of
        // [0,T], averaged one-sided limits at interior jump nodes.
        EvalSide side = EvalSide::mean;
        if (j == 0) side = EvalSide::left;
        if (j == panels) side = EvalSide::right;
        u.samples[j] = kappa * eval_w(bc, horizon.T - t, side);
    }
    return u;
}

ControlSignal synthesize_control(const MState& x0, int n, const SpectrumSet& spectrum,
                                 const SummationSchedule& schedule, Horizon horizon,
                                 std::size_t panels) {
    if (!spectrum.kernel.is_zero()) {
        throw std::invalid_argument(
            "control synthesis supports the zero kernel only (no closed-form "
            "biorthogonal family for distributed kernels)");
    }
    check_spectrum_sufficient(n, spectrum, schedule);
    std::vector<const EigenRecord*> order;
    order.reserve(spectrum.records.size());
    for (const EigenRecord& rec : spectrum.records) order.push_back(&rec);
    std::sort(order.begin(), order.end(), [](const EigenRecord* a, const EigenRecord* b) {
        const double ma = std::abs(a->lambda);
        const double mb = std::abs(b->lambda);
        if (ma != mb) return ma < mb;
        return a->lambda.real() < b->lambda.real();
    });
    ControlSignal out = ControlSignal::zero(horizon.T, panels);
    for (const EigenRecord* rec : order) {
        const Complex w = weight_for_eigenvalue(n, *rec, schedule);
        if (w == Complex{0.0, 0.0}) continue;
        const Complex coeff = w * expansion_coefficient(x0, *rec, spectrum.kernel);
        if (coeff == Complex{0.0, 0.0}) continue;
        const ControlSignal u_lam = u_for_eigenvector(*rec, horizon, panels);
        for (std::size_t j = 0; j <= panels; ++j) out.samples[j] += coeff * u_lam.samples[j];
    }
    return out;
}

}  // namespace delayctl
