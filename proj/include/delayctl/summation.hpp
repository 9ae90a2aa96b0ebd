#pragma once

#include <vector>

#include "delayctl/spectral.hpp"
#include "delayctl/state.hpp"
#include "delayctl/types.hpp"

namespace delayctl {

/// Regularization schedule n -> (l_n, R_n). Default is l_n = n^{1/4},
/// R_n = n^4; general power laws l_n = l_coeff n^{l_power},
/// R_n = R_coeff n^{R_power} are accepted after validation of the growth
/// conditions on the requested range.
struct SummationSchedule {
    double l_coeff = 1.0;
    double l_power = 0.25;
    double R_coeff = 1.0;
    double R_power = 4.0;

    double l(int n) const;
    double R(int n) const;

    /// Checks, for 1 <= n <= n_max: positive coefficients and powers (which
    /// already force e^{-pi l_n/2} R_n -> 0); l_n, R_n strictly increasing;
    /// l_n^2/n and n/R_n decreasing. Throws std::invalid_argument on violation.
    void validate(int n_max) const;
};

struct WeightEntry {
    int branch;
    Complex lambda;
    Complex weight;
};

/// Weight table of one summation order n over a spectrum.
struct WeightTable {
    int n;
    std::vector<WeightEntry> entries;
};

/// Regularizing weight
///   W_n(z) = e^{-l_n pi - i l_n Log((z-n)/(z+n))}   (principal branch),
/// defined for z not in {n, -n}.
Complex weight_fn(int n, Complex z, const SummationSchedule& schedule);

/// Eigenvalue weight w_n(lambda): 0 if |lambda| >= R_n; 1 for the finitely
/// many exceptional roots with Im lambda <= 0; W_n(lambda) otherwise.
Complex weight_for_eigenvalue(int n, const EigenRecord& rec, const SummationSchedule& schedule);

WeightTable weight_table(int n, const SpectrumSet& spectrum, const SummationSchedule& schedule);

/// Eigenvalue count the spectrum must hold per half-axis so that every root
/// with |lambda| < R is guaranteed present.
int required_records_per_half_axis(double R);

/// Throws if the spectrum cannot cover the truncation radius R_n.
void check_spectrum_sufficient(int n, const SpectrumSet& spectrum,
                               const SummationSchedule& schedule);

/// Regularized partial sum  S_n x = sum_lambda w_n(lambda) <x, x_lambda> e_lambda,
/// accumulated in ascending |lambda| order on x's grid.
MState partial_sum(const MState& x, int n, const SpectrumSet& spectrum,
                   const SummationSchedule& schedule);

}  // namespace delayctl
