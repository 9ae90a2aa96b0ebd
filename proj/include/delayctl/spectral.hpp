#pragma once

#include <cstddef>
#include <vector>

#include "delayctl/kernel.hpp"
#include "delayctl/types.hpp"

namespace delayctl {

/// One root lambda of the characteristic function with cached data of the
/// biorthogonal system: D'(lambda), xi_bar = -i/D'(lambda), and the branch
/// index used to enumerate it.
struct EigenRecord {
    Complex lambda;
    Complex d_prime;
    Complex xi_bar;
    int branch = 0;
};

struct RootFindOptions {
    double root_tol = 1e-11;
    double dedup_tol = 1e-6;
    int max_iter = 60;
};

/// Ordered (by Re lambda) set of characteristic roots for one kernel.
struct SpectrumSet {
    std::vector<EigenRecord> records;
    DelayKernel kernel;
    double dedup_tol = 1e-6;

    const EigenRecord& by_branch(int branch) const;
};

/// Characteristic function  D(z) = -iz + e^{-iz} + int_{-1}^0 e^{iz tau} phi(tau) dtau.
Complex eval_charfn(Complex z, const DelayKernel& kernel);

/// Analytic derivative  D'(z) = -i - i e^{-iz} + int_{-1}^0 i tau e^{iz tau} phi(tau) dtau.
Complex eval_charfn_derivative(Complex z, const DelayKernel& kernel);

/// Locate the roots for branch indices in [branch_lo, branch_hi].
///
/// Branches |n| >= 2 are found by Newton iteration from the asymptotic seed
/// -pi/2 + 2 pi n + i log(2 pi n) (negative branches by reflection); the low
/// branches come from a coarse scan of the rectangle |Re z| <= 3 pi,
/// -2 <= Im z <= 3. The returned count is cross-checked against the argument
/// principle on an enclosing rectangle.
SpectrumSet find_roots(const DelayKernel& kernel, int branch_lo, int branch_hi,
                       const RootFindOptions& opts = {});

/// Fourier transform of the biorthogonal tail x_bar_lambda:
///   int_{-1}^0 e^{izt} x_bar_lambda(t) dt
///     = (1/D'(lambda)) (e^{-iz} + int e^{iz tau} phi - i lambda) / (z - lambda),
/// with the removable singularity at z = lambda evaluated by Taylor expansion
/// for |z - lambda| < 1e-6.
Complex biorth_tail_transform(Complex lambda, Complex z, const DelayKernel& kernel);

/// Closed-form biorthogonal tail of the zero kernel:
///   x_bar_lambda(t) = lambda e^{-i lambda t} / (lambda - i),  t in [-1,0].
/// Rejects sampled kernels (no closed form).
Complex biorth_tail_model(Complex lambda, double t, const DelayKernel& kernel);

/// Samples of x_bar_lambda on the uniform grid of [-1,0] with `panels` panels.
/// Zero kernel: closed form. Sampled kernel: trigonometric least-squares
/// inversion of the tail transform.
std::vector<Complex> biorth_tail_samples(const EigenRecord& rec, const DelayKernel& kernel,
                                         std::size_t panels);

/// Zero-counting winding number of D over the rectangle boundary
/// [re_lo,re_hi] x [im_lo,im_hi] (counter-clockwise), by adaptive phase tracking.
int argument_principle_count(const DelayKernel& kernel, double re_lo, double re_hi,
                             double im_lo, double im_hi);

}  // namespace delayctl
