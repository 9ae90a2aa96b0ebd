#include "delayctl/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace delayctl {

double SummationSchedule::l(int n) const { return l_coeff * std::pow(std::abs(n), l_power); }

double SummationSchedule::R(int n) const { return R_coeff * std::pow(std::abs(n), R_power); }

void SummationSchedule::validate(int n_max) const {
    if (l_coeff <= 0.0 || R_coeff <= 0.0 || l_power <= 0.0 || R_power <= 0.0) {
        throw std::invalid_argument("SummationSchedule: coefficients and powers must be positive");
    }
    auto decreasing = [](double a, double b) { return b <= a + 1e-15; };
    for (int n = 1; n < n_max; ++n) {
        if (l(n + 1) <= l(n) || R(n + 1) <= R(n)) {
            throw std::invalid_argument("SummationSchedule: l_n, R_n must be strictly increasing");
        }
        if (!decreasing(l(n) * l(n) / n, l(n + 1) * l(n + 1) / (n + 1))) {
            throw std::invalid_argument("SummationSchedule: l_n^2/n must be decreasing");
        }
        if (!decreasing(static_cast<double>(n) / R(n), static_cast<double>(n + 1) / R(n + 1))) {
            throw std::invalid_argument("SummationSchedule: n/R_n must be decreasing");
        }
    }
    // e^{-pi l_n/2} R_n -> 0: automatic for power laws with positive powers
    // (checked above); the sequence turns decreasing only past
    // n ~ (2 R_power / (pi/2 l_coeff l_power))^{1/l_power}, far beyond desk
    // ranges for the default rule, so no sampled-range check is meaningful.
}

Complex weight_fn(int n, Complex z, const SummationSchedule& schedule) {
    const Complex zn{static_cast<double>(n), 0.0};
    if (std::abs(z - zn) < 1e-14 || std::abs(z + zn) < 1e-14) {
        throw std::domain_error("weight_fn: z = +-n is outside the domain");
    }
    const double ln = schedule.l(n);
    const Complex log_moebius = std::log((z - zn) / (z + zn));  // principal branch
    return std::exp(-ln * kPi - kI * ln * log_moebius);
}

Complex weight_for_eigenvalue(int n, const EigenRecord& rec, const SummationSchedule& schedule) {
    if (std::abs(rec.lambda) >= schedule.R(n)) return {0.0, 0.0};
    if (rec.lambda.imag() <= 0.0) return {1.0, 0.0};  // exceptional finite set
    return weight_fn(n, rec.lambda, schedule);
}

WeightTable weight_table(int n, const SpectrumSet& spectrum, const SummationSchedule& schedule) {
    WeightTable t;
    t.n = n;
    for (const auto& rec : spectrum.records) {
        t.entries.push_back({rec.branch, rec.lambda, weight_for_eigenvalue(n, rec, schedule)});
    }
    return t;
}

int required_records_per_half_axis(double R) {
    return static_cast<int>(std::ceil(R / kPi)) + 8;
}

void check_spectrum_sufficient(int n, const SpectrumSet& spectrum,
                               const SummationSchedule& schedule) {
    const double R = schedule.R(n);
    const int need = required_records_per_half_axis(R);
    int pos = 0, neg = 0;
    for (const auto& rec : spectrum.records) {
        if (rec.branch >= 0) ++pos;
        if (rec.branch <= 0) ++neg;
    }
    if (pos < need || neg < need) {
        throw std::runtime_error(
            "partial_sum: spectrum too short for truncation radius R_n = " + std::to_string(R) +
            " (need " + std::to_string(need) + " records per half-axis, have " +
            std::to_string(pos) + "/" + std::to_string(neg) + ")");
    }
}

MState partial_sum(const MState& x, int n, const SpectrumSet& spectrum,
                   const SummationSchedule& schedule) {
    check_spectrum_sufficient(n, spectrum, schedule);

    // deterministic order: ascending |lambda|, ties by Re
    std::vector<std::size_t> order(spectrum.records.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ma = std::abs(spectrum.records[a].lambda);
        const double mb = std::abs(spectrum.records[b].lambda);
        if (ma != mb) return ma < mb;
        return spectrum.records[a].lambda.real() < spectrum.records[b].lambda.real();
    });

    MState acc = MState::zero(x.panels());
    for (std::size_t idx : order) {
        const EigenRecord& rec = spectrum.records[idx];
        const Complex w = weight_for_eigenvalue(n, rec, schedule);
        if (w == Complex{0.0, 0.0}) continue;
        const Complex c = expansion_coefficient(x, rec, spectrum.kernel);
        acc = m_axpy(w * c, MState::eigenvector(rec.lambda, x.panels()), acc);
    }
    return acc;
}

}  // namespace delayctl
