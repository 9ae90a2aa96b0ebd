#pragma once

// Composite Simpson on one smooth segment, with one-sided evaluation at the
// segment endpoints so integrands with jumps at the breakpoints are read
// from inside the segment.

#include <complex>
#include <cstddef>
#include <functional>

#include "delayctl/control.hpp"

namespace testsupport {

inline std::complex<double> segment_simpson(
    const std::function<std::complex<double>(double, delayctl::EvalSide)>& f, double a, double b,
    std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    std::complex<double> acc = f(a, delayctl::EvalSide::right) + f(b, delayctl::EvalSide::left);
    for (std::size_t j = 1; j < panels; ++j) {
        const double t = a + static_cast<double>(j) * h;
        acc += ((j % 2 == 1) ? 4.0 : 2.0) * f(t, delayctl::EvalSide::mean);
    }
    return acc * (h / 3.0);
}

}  // namespace testsupport
