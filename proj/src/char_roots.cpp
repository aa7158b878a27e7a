#include "arlimit/char_roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>

#include "arlimit/error.hpp"

namespace arlimit {

MonicPolynomial::MonicPolynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
    if (coeffs_.size() < 2) {
        throw Error(ErrorCode::EmptyInput, "polynomial degree must be at least 1");
    }
    if (coeffs_.front() != 1.0) {
        throw Error(ErrorCode::InvalidArgument, "polynomial must be monic");
    }
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            throw Error(ErrorCode::InvalidArgument, "polynomial coefficients must be finite");
        }
    }
}

Complex MonicPolynomial::operator()(Complex z) const noexcept {
    Complex acc = 0.0;
    for (double c : coeffs_) acc = acc * z + c;
    return acc;
}

MonicPolynomial char_polynomial(const ARCoefficients& alphas) {
    std::vector<double> c;
    c.reserve(alphas.order() + 1);
    c.push_back(1.0);
    for (double a : alphas.alphas()) c.push_back(-a);
    return MonicPolynomial(std::move(c));
}

std::vector<Complex> expand_roots(std::span<const Complex> roots) {
    std::vector<Complex> c{1.0};
    for (const auto& r : roots) {
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i] -= r * c[i - 1];
    }
    return c;
}

double coefficient_residual(const MonicPolynomial& poly, std::span<const Complex> roots) {
    const auto rebuilt = expand_roots(roots);
    const auto coeffs = poly.coefficients();
    if (rebuilt.size() != coeffs.size()) {
        throw Error(ErrorCode::LengthMismatch, "root count does not match polynomial degree");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        worst = std::max(worst, std::abs(rebuilt[i] - coeffs[i]));
    }
    return worst;
}

double residual_target(const MonicPolynomial& poly) {
    double cmax = 0.0;
    for (double c : poly.coefficients()) cmax = std::max(cmax, std::abs(c));
    return static_cast<double>(poly.degree()) * 1e-10 * (1.0 + cmax);
}

namespace {

// p(z) and p'(z) by Horner.
std::pair<Complex, Complex> eval_with_derivative(std::span<const double> c, Complex z) {
    Complex p = c[0];
    Complex dp = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return {p, dp};
}

// Snap approximate conjugate pairs onto exact ones. Candidate pairs are
// accepted greedily by increasing distance |z_a - conj(z_b)|; a root paired
// with itself becomes real.
std::vector<Complex> symmetrize_conjugates(const std::vector<Complex>& z) {
    const std::size_t k = z.size();
    struct Candidate {
        double dist;
        std::size_t a, b;
    };
    std::vector<Candidate> cands;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            cands.push_back({std::abs(z[a] - std::conj(z[b])), a, b});
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
        return std::tie(x.dist, x.a, x.b) < std::tie(y.dist, y.a, y.b);
    });

    std::vector<Complex> out = z;
    std::vector<bool> used(k, false);
    for (const auto& c : cands) {
        if (used[c.a] || used[c.b]) continue;
        used[c.a] = used[c.b] = true;
        if (c.a == c.b) {
            out[c.a] = Complex(z[c.a].real(), 0.0);
        } else {
            const Complex mean = 0.5 * (z[c.a] + std::conj(z[c.b]));
            out[c.a] = mean;
            out[c.b] = std::conj(mean);
        }
    }
    return out;
}

std::vector<double> derivative(std::span<const double> c) {
    const std::size_t deg = c.size() - 1;
    std::vector<double> d;
    for (std::size_t i = 0; i < deg; ++i) d.push_back(c[i] * static_cast<double>(deg - i));
    return d;
}

// Inside a cluster of m nearly-equal roots, p cannot be evaluated above the
// rounding noise, so the members drift and their mean is off by about the
// cluster radius. The mean is well conditioned as the simple root of
// p^(m-1); each cluster is translated so its mean lands there.
std::vector<Complex> recentre_clusters(std::span<const double> c, const std::vector<Complex>& z,
                                       double radius) {
    const std::size_t k = z.size();
    std::vector<int> label(k, -1);
    int next = 0;
    for (std::size_t a = 0; a < k; ++a) {
        if (label[a] >= 0) continue;
        label[a] = next;
        std::vector<std::size_t> stack{a};
        while (!stack.empty()) {
            const auto i = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < k; ++b) {
                if (label[b] < 0 && std::abs(z[i] - z[b]) <= radius) {
                    label[b] = next;
                    stack.push_back(b);
                }
            }
        }
        ++next;
    }

    std::vector<Complex> out = z;
    for (int g = 0; g < next; ++g) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < k; ++i) {
            if (label[i] == g) members.push_back(i);
        }
        const std::size_t m = members.size();
        if (m < 2) continue;
        Complex mean = 0.0;
        for (auto i : members) mean += z[i];
        mean /= static_cast<double>(m);

        std::vector<double> q(c.begin(), c.end());
        for (std::size_t d = 1; d < m; ++d) q = derivative(q);
        const auto dq = derivative(q);
        Complex centre = mean;
        for (int it = 0; it < 50; ++it) {
            Complex f = 0.0, df = 0.0;
            for (double a : q) f = f * centre + a;
            for (double a : dq) df = df * centre + a;
            if (df == Complex(0.0)) break;
            const Complex step = f / df;
            centre -= step;
            if (std::abs(step) <= 1e-16 * (1.0 + std::abs(centre))) break;
        }
        for (auto i : members) out[i] = z[i] + (centre - mean);
    }
    return out;
}

void sort_roots(std::vector<Complex>& z) {
    std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) {
        return std::make_tuple(a.real(), a.imag()) < std::make_tuple(b.real(), b.imag());
    });
}

}  // namespace

RootSolution solve_roots(const MonicPolynomial& poly, const RootSolveOptions& options) {
    if (!(options.tol > 0.0) || options.max_iter < 1) {
        throw Error(ErrorCode::InvalidArgument, "root solver needs tol > 0 and max_iter >= 1");
    }
    const auto c = poly.coefficients();
    const std::size_t k = poly.degree();

    double cmax = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) cmax = std::max(cmax, std::abs(c[i]));
    const double radius = 1.0 + cmax;

    constexpr double kRotation = 0.4;
    std::vector<Complex> z(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                 static_cast<double>(k) + kRotation;
        z[j] = std::polar(radius, angle);
    }

    // Gauss-Seidel sweeps over all roots until every correction is below tol.
    int iter = 0;
    bool converged = false;
    while (!converged && iter < options.max_iter) {
        ++iter;
        converged = true;
        for (std::size_t j = 0; j < k; ++j) {
            const auto [p, dp] = eval_with_derivative(c, z[j]);
            if (p == Complex(0.0)) continue;
            Complex repulsion = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                if (l != j) repulsion += 1.0 / (z[j] - z[l]);
            }
            const Complex denom = dp - p * repulsion;
            // Degenerate step: nudge along a fixed direction instead.
            const Complex step = (denom == Complex(0.0)) ? Complex(1e-3, 1e-3) * (1.0 + std::abs(z[j]))
                                                         : p / denom;
            z[j] -= step;
            if (std::abs(step) > options.tol * (1.0 + std::abs(z[j]))) converged = false;
        }
    }

    const double target = residual_target(poly);
    double residual = coefficient_residual(poly, z);
    for (double radius : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        if (residual <= target) break;
        auto moved = recentre_clusters(c, z, radius * (1.0 + cmax));
        const double moved_residual = coefficient_residual(poly, moved);
        if (moved_residual < residual) {
            z = std::move(moved);
            residual = moved_residual;
        }
    }

    auto sym = symmetrize_conjugates(z);
    const double sym_residual = coefficient_residual(poly, sym);
    if (sym_residual <= target || sym_residual <= residual) {
        z = std::move(sym);
        residual = sym_residual;
    }

    if (!(residual <= target)) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "root solver stopped after %d iterations with coefficient residual %.3e (target %.3e)",
                      iter, residual, target);
        throw Error(ErrorCode::NoConvergence, msg);
    }
    sort_roots(z);
    return RootSolution{RootMultiset(std::move(z)), residual, iter};
}

RootSolution ar_roots(const ARCoefficients& alphas, const RootSolveOptions& options) {
    return solve_roots(char_polynomial(alphas), options);
}

bool is_stationary(const RootMultiset& roots) noexcept { return roots.stationary(); }

}  // namespace arlimit
