#include "delayctl/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace delayctl {

namespace {

void check_representable(Complex z) {
    if (std::abs(z.imag()) >= 700.0) {
        std::ostringstream msg;
        msg << "eval_charfn: e^{-iz} not representable at z = (" << z.real() << ", " << z.imag()
            << ")";
        throw std::range_error(msg.str());
    }
}

std::string fmt(Complex z) {
    std::ostringstream s;
    s << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return s.str();
}

// Newton iteration on D; returns the root or throws with the seed in the message.
Complex newton_root(const DelayKernel& kernel, Complex seed, const RootFindOptions& opts) {
    Complex z = seed;
    for (int it = 0; it < opts.max_iter; ++it) {
        const Complex d = eval_charfn(z, kernel);
        // Rounding in e^{-iz} leaves a residual floor proportional to |z|,
        // so the tolerance must scale with the local magnitude of D.
        if (std::abs(d) < opts.root_tol * std::max(1.0, std::abs(z))) {
            // Polish down to the rounding floor, keeping the best iterate.
            Complex best = z;
            double best_res = std::abs(d);
            for (int extra = 0; extra < 3; ++extra) {
                const Complex dp = eval_charfn_derivative(z, kernel);
                if (std::abs(dp) < 1e-300) break;
                z -= eval_charfn(z, kernel) / dp;
                const double res = std::abs(eval_charfn(z, kernel));
                if (res < best_res) {
                    best = z;
                    best_res = res;
                }
            }
            return best;
        }
        const Complex dp = eval_charfn_derivative(z, kernel);
        if (std::abs(dp) < 1e-300) break;
        z -= d / dp;
    }
    throw std::runtime_error("find_roots: Newton did not converge from seed " + fmt(seed));
}

// Phase increment of D along the segment [a,b], refined until each step
// turns by less than pi/2.
double phase_change(const DelayKernel& kernel, Complex a, Complex b, int depth = 0) {
    const Complex fa = eval_charfn(a, kernel);
    const Complex fb = eval_charfn(b, kernel);
    const double d = std::arg(fb / fa);
    if (std::abs(d) < kPi / 2.0 && depth > 2) return d;
    if (depth > 40) return d;
    const Complex mid = 0.5 * (a + b);
    return phase_change(kernel, a, mid, depth + 1) + phase_change(kernel, mid, b, depth + 1);
}

}  // namespace

Complex eval_charfn(Complex z, const DelayKernel& kernel) {
    check_representable(z);
    return -kI * z + std::exp(-kI * z) + kernel.exp_moment(z);
}

Complex eval_charfn_derivative(Complex z, const DelayKernel& kernel) {
    check_representable(z);
    return -kI - kI * std::exp(-kI * z) + kernel.exp_moment_derivative(z);
}

int argument_principle_count(const DelayKernel& kernel, double re_lo, double re_hi, double im_lo,
                             double im_hi) {
    const Complex c1{re_lo, im_lo}, c2{re_hi, im_lo}, c3{re_hi, im_hi}, c4{re_lo, im_hi};
    double total = 0.0;
    const Complex corners[5] = {c1, c2, c3, c4, c1};
    for (int e = 0; e < 4; ++e) {
        // walk each edge in unit-length hops before the adaptive refinement
        const Complex a = corners[e], b = corners[e + 1];
        const int hops = std::max(1, static_cast<int>(std::ceil(std::abs(b - a))));
        for (int j = 0; j < hops; ++j) {
            const Complex p = a + (b - a) * (static_cast<double>(j) / hops);
            const Complex q = a + (b - a) * (static_cast<double>(j + 1) / hops);
            total += phase_change(kernel, p, q);
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

const EigenRecord& SpectrumSet::by_branch(int branch) const {
    for (const auto& r : records) {
        if (r.branch == branch) return r;
    }
    throw std::out_of_range("SpectrumSet: branch " + std::to_string(branch) + " not present");
}

SpectrumSet find_roots(const DelayKernel& kernel, int branch_lo, int branch_hi,
                       const RootFindOptions& opts) {
    if (branch_lo > branch_hi) {
        return SpectrumSet{{}, kernel, opts.dedup_tol};
    }

    // Low branches: coarse |D| minima scan of the rectangle, Newton polish.
    std::vector<Complex> low_roots;
    if (branch_lo <= 1 && branch_hi >= -1) {
        const double re_lo = -3.0 * kPi, re_hi = 3.0 * kPi, im_lo = -2.0, im_hi = 3.0;
        const int nx = 150, ny = 50;
        std::vector<std::vector<double>> mag(nx + 1, std::vector<double>(ny + 1));
        for (int i = 0; i <= nx; ++i) {
            for (int j = 0; j <= ny; ++j) {
                const Complex z{re_lo + (re_hi - re_lo) * i / nx, im_lo + (im_hi - im_lo) * j / ny};
                mag[i][j] = std::abs(eval_charfn(z, kernel));
            }
        }
        for (int i = 1; i < nx; ++i) {
            for (int j = 1; j < ny; ++j) {
                bool is_min = true;
                for (int di = -1; di <= 1 && is_min; ++di) {
                    for (int dj = -1; dj <= 1; ++dj) {
                        if (di == 0 && dj == 0) continue;
                        if (mag[i + di][j + dj] < mag[i][j]) {
                            is_min = false;
                            break;
                        }
                    }
                }
                if (!is_min) continue;
                const Complex seed{re_lo + (re_hi - re_lo) * i / nx,
                                   im_lo + (im_hi - im_lo) * j / ny};
                Complex root;
                try {
                    root = newton_root(kernel, seed, opts);
                } catch (const std::runtime_error&) {
                    continue;  // spurious minimum
                }
                if (root.real() < re_lo - 0.5 || root.real() > re_hi + 0.5 ||
                    root.imag() < im_lo - 0.5 || root.imag() > im_hi + 0.5) {
                    continue;
                }
                bool duplicate = false;
                for (const Complex& r : low_roots) {
                    if (std::abs(r - root) < opts.dedup_tol) duplicate = true;
                }
                if (!duplicate) low_roots.push_back(root);
            }
        }
        std::sort(low_roots.begin(), low_roots.end(),
                  [](Complex a, Complex b) { return a.real() < b.real(); });
    }

    // Assign low branches by position relative to the root nearest Re = 0.
    std::vector<std::pair<int, Complex>> found;
    if (!low_roots.empty()) {
        std::size_t center = 0;
        for (std::size_t i = 1; i < low_roots.size(); ++i) {
            if (std::abs(low_roots[i].real()) < std::abs(low_roots[center].real())) center = i;
        }
        for (std::size_t i = 0; i < low_roots.size(); ++i) {
            const int branch = static_cast<int>(i) - static_cast<int>(center);
            if (branch >= branch_lo && branch <= branch_hi && std::abs(branch) <= 1) {
                found.emplace_back(branch, low_roots[i]);
            }
        }
    }

    // High branches: Newton from the asymptotic seed, reflection for n < 0.
    for (int n = std::max(2, branch_lo); n <= branch_hi; ++n) {
        const Complex seed{-kPi / 2.0 + 2.0 * kPi * n, std::log(2.0 * kPi * n)};
        found.emplace_back(n, newton_root(kernel, seed, opts));
    }
    for (int n = std::min(-2, branch_hi); n >= branch_lo; --n) {
        const Complex pos{-kPi / 2.0 + 2.0 * kPi * (-n), std::log(2.0 * kPi * (-n))};
        const Complex seed = -std::conj(pos);
        found.emplace_back(n, newton_root(kernel, seed, opts));
    }

    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.second.real() < b.second.real(); });

    // Two seeds collapsing onto one point would mean a multiple zero.
    for (std::size_t i = 0; i + 1 < found.size(); ++i) {
        if (std::abs(found[i].second - found[i + 1].second) <= opts.dedup_tol) {
            throw std::runtime_error("find_roots: possible multiple zero near " +
                                     fmt(found[i].second));
        }
    }

    SpectrumSet set;
    set.kernel = kernel;
    set.dedup_tol = opts.dedup_tol;
    for (const auto& [branch, root] : found) {
        EigenRecord rec;
        rec.lambda = root;
        rec.d_prime = eval_charfn_derivative(root, kernel);
        if (std::abs(rec.d_prime) < 1e-12) {
            throw std::runtime_error("find_roots: vanishing D' (multiple zero?) at " + fmt(root));
        }
        rec.xi_bar = -kI / rec.d_prime;
        rec.branch = branch;
        set.records.push_back(rec);
    }

    // Count cross-check on an enclosing rectangle.
    if (!set.records.empty()) {
        double re_min = 1e300, re_max = -1e300, im_min = 1e300, im_max = -1e300;
        for (const auto& r : set.records) {
            re_min = std::min(re_min, r.lambda.real());
            re_max = std::max(re_max, r.lambda.real());
            im_min = std::min(im_min, r.lambda.imag());
            im_max = std::max(im_max, r.lambda.imag());
        }
        const int count = argument_principle_count(kernel, re_min - kPi, re_max + kPi,
                                                   im_min - 1.5, im_max + 1.5);
        if (count != static_cast<int>(set.records.size())) {
            std::ostringstream msg;
            msg << "find_roots: argument principle predicts " << count << " zeros, found "
                << set.records.size();
            throw std::runtime_error(msg.str());
        }
    }

    // Reflection closure for real kernels and symmetric ranges.
    if (kernel.is_real() && branch_lo == -branch_hi) {
        for (const auto& r : set.records) {
            const Complex mirror = -std::conj(r.lambda);
            bool present = false;
            for (const auto& s : set.records) {
                if (std::abs(s.lambda - mirror) < 1e-8) present = true;
            }
            if (!present) {
                throw std::runtime_error("find_roots: reflection symmetry violated at " +
                                         fmt(r.lambda));
            }
        }
    }
    return set;
}

Complex biorth_tail_transform(Complex lambda, Complex z, const DelayKernel& kernel) {
    const Complex dp = eval_charfn_derivative(lambda, kernel);
    const Complex dz = z - lambda;
    if (std::abs(dz) >= 1e-6) {
        const Complex numer = std::exp(-kI * z) + kernel.exp_moment(z) - kI * lambda;
        return numer / dz / dp;
    }
    // Removable singularity: numer(lambda) = 0, expand numer(z)/(z-lambda) to
    // second order around lambda.
    const Complex n1 = -kI * std::exp(-kI * lambda) + kernel.exp_moment_derivative(lambda);
    // second derivative of the numerator, with the kernel part by central difference
    const double h = 1e-5;
    const Complex n2 = -std::exp(-kI * lambda) +
                       (kernel.is_zero()
                            ? Complex{0.0, 0.0}
                            : (kernel.exp_moment_derivative(lambda + h) -
                               kernel.exp_moment_derivative(lambda - h)) /
                                  (2.0 * h));
    return (n1 + 0.5 * n2 * dz) / dp;
}

Complex biorth_tail_model(Complex lambda, double t, const DelayKernel& kernel) {
    if (!kernel.is_zero()) {
        throw std::invalid_argument("biorth_tail_model: closed form exists only for the zero kernel");
    }
    return lambda * std::exp(-kI * lambda * t) / (lambda - kI);
}

std::vector<Complex> biorth_tail_samples(const EigenRecord& rec, const DelayKernel& kernel,
                                         std::size_t panels) {
    std::vector<Complex> out(panels + 1);
    const double h = 1.0 / static_cast<double>(panels);
    if (kernel.is_zero()) {
        for (std::size_t j = 0; j <= panels; ++j) {
            out[j] = biorth_tail_model(rec.lambda, -1.0 + h * j, kernel);
        }
        return out;
    }

    // Least-squares inversion of the tail transform in the basis
    // {1, t, t^2, e^{2 pi i m t} (m != 0)} sampled at frequencies z = pi j.
    const int modes = 48;
    const int n_freq = 4 * modes + 1;
    const int n_basis = 2 * modes + 3;
    using Mat = Eigen::MatrixXcd;
    using Vec = Eigen::VectorXcd;

    auto t0 = [](Complex z) -> Complex {  // int_{-1}^0 e^{izt} dt
        if (std::abs(z) < 1e-8) return Complex{1.0, 0.0};
        return (1.0 - std::exp(-kI * z)) / (kI * z);
    };
    auto t1 = [&](Complex z) -> Complex {  // int_{-1}^0 t e^{izt} dt
        if (std::abs(z) < 1e-8) return Complex{-0.5, 0.0};
        return (std::exp(-kI * z) - t0(z)) / (kI * z);
    };
    auto t2 = [&](Complex z) -> Complex {  // int_{-1}^0 t^2 e^{izt} dt
        if (std::abs(z) < 1e-8) return Complex{1.0 / 3.0, 0.0};
        return (-std::exp(-kI * z) - 2.0 * t1(z)) / (kI * z);
    };

    Mat A(n_freq, n_basis);
    Vec b(n_freq);
    for (int r = 0; r < n_freq; ++r) {
        const Complex z{kPi * (r - 2 * modes), 0.0};
        b(r) = biorth_tail_transform(rec.lambda, z, kernel);
        A(r, 0) = t0(z);
        A(r, 1) = t1(z);
        A(r, 2) = t2(z);
        for (int m = -modes, c = 3; m <= modes; ++m) {
            if (m == 0) continue;
            A(r, c++) = t0(z + 2.0 * kPi * m);
        }
    }
    const Vec coef = A.colPivHouseholderQr().solve(b);

    for (std::size_t j = 0; j <= panels; ++j) {
        const double t = -1.0 + h * j;
        Complex v = coef(0) + coef(1) * t + coef(2) * t * t;
        for (int m = -modes, c = 3; m <= modes; ++m) {
            if (m == 0) continue;
            v += coef(c++) * std::exp(Complex{0.0, 2.0 * kPi * m * t});
        }
        out[j] = v;
    }
    return out;
}

}  // namespace delayctl
