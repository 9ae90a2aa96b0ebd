#include "delayctl/state.hpp"

#include <cmath>
#include <stdexcept>

namespace delayctl {

namespace {

void check_grids(const MState& a, const MState& b, const char* who) {
    if (a.panels() != b.panels()) {
        throw std::invalid_argument(std::string(who) + ": tail grids do not match (" +
                                    std::to_string(a.panels()) + " vs " +
                                    std::to_string(b.panels()) + " panels)");
    }
}

void check_state(const MState& x, const char* who) {
    if (x.tail.size() < 3 || x.tail.size() % 2 == 0) {
        throw std::invalid_argument(std::string(who) +
                                    ": tail needs an odd sample count (even panel count)");
    }
    for (const Complex& v : x.tail) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(who) + ": non-finite tail sample");
        }
    }
}

}  // namespace

MState MState::zero(std::size_t panels) {
    MState s;
    s.tail.assign(panels + 1, Complex{0.0, 0.0});
    return s;
}

MState MState::ones(std::size_t panels) {
    MState s;
    s.head = {1.0, 0.0};
    s.tail.assign(panels + 1, Complex{1.0, 0.0});
    return s;
}

MState MState::eigenvector(Complex lambda, std::size_t panels) {
    MState s;
    s.head = {1.0, 0.0};
    s.tail.resize(panels + 1);
    const double h = 1.0 / static_cast<double>(panels);
    for (std::size_t j = 0; j <= panels; ++j) {
        s.tail[j] = std::exp(kI * lambda * (-1.0 + h * j));
    }
    return s;
}

Complex m_inner(const MState& a, const MState& b) {
    check_state(a, "m_inner");
    check_state(b, "m_inner");
    check_grids(a, b, "m_inner");
    const auto w = simpson_weights(a.panels(), 1.0);
    Complex acc = a.head * std::conj(b.head);
    for (std::size_t j = 0; j < a.tail.size(); ++j) {
        acc += w[j] * a.tail[j] * std::conj(b.tail[j]);
    }
    return acc;
}

double m_norm(const MState& a) {
    return std::sqrt(std::max(0.0, m_inner(a, a).real()));
}

MState m_axpy(Complex alpha, const MState& x, const MState& y) {
    check_grids(x, y, "m_axpy");
    MState out = y;
    out.head += alpha * x.head;
    for (std::size_t j = 0; j < out.tail.size(); ++j) {
        out.tail[j] += alpha * x.tail[j];
    }
    return out;
}

Complex expansion_coefficient(const MState& x, const EigenRecord& rec, const DelayKernel& kernel) {
    check_state(x, "expansion_coefficient");
    const auto tail = biorth_tail_samples(rec, kernel, x.panels());
    const auto w = simpson_weights(x.panels(), 1.0);
    Complex acc = x.head * rec.xi_bar;
    for (std::size_t j = 0; j < tail.size(); ++j) {
        acc += w[j] * x.tail[j] * tail[j];
    }
    return acc;
}

}  // namespace delayctl
