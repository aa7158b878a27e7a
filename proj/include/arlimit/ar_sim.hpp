#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "arlimit/model.hpp"

namespace arlimit {

/**
 * Deterministic standard-normal source: std::mt19937_64 (whose output
 * sequence the C++ standard fixes) feeding a Box-Muller transform.
 *
 * Each pair of 64-bit draws (a, b) becomes uniforms u = ((a >> 11) + 1) * 2^-53
 * in (0, 1] and v = (b >> 11) * 2^-53 in [0, 1), producing
 *   z0 = sqrt(-2 ln u) cos(2 pi v),  z1 = sqrt(-2 ln u) sin(2 pi v),
 * returned in that order. std::normal_distribution is avoided because its
 * algorithm is implementation-defined.
 */
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed);
    double next();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct SeriesSample {
    std::vector<double> values;
    ARCoefficients alphas;
    double sigma = 1.0;
    std::uint64_t seed = 0;
    int burn_in = 0;
};

/// ceil(10 k / (1 - max|lambda|))
int default_burn_in(const ARCoefficients& alphas);

/**
 * Runs X_i = sum_p alpha_p X_{i-p} + sigma * eps_i from k zero pre-sample
 * values for burn_in + n steps and keeps the last n. When burn_in is not
 * given, default_burn_in() is used. Throws NonStationary when the
 * characteristic roots are not inside the unit disk.
 */
SeriesSample simulate(const ARCoefficients& alphas, double sigma, int n,
                      std::optional<int> burn_in, std::uint64_t seed);

/// Sum of X_i (pairwise).
double sum_x(std::span<const double> series);
inline double sum_x(const SeriesSample& s) { return sum_x(s.values); }

/// sum_{i=1}^{n-j} X_i X_{i+j} (pairwise). Throws LagTooLarge unless j < n.
double lagged_cross_sum(std::span<const double> series, int j);
inline double lagged_cross_sum(const SeriesSample& s, int j) { return lagged_cross_sum(s.values, j); }

/// sum_p A_p lambda_p^{|j|} with caller-supplied A_p.
Complex rho_eval(std::span<const Complex> a_coeffs, const RootMultiset& roots, long long j);

/// One value per line, 17 significant digits, '.' as decimal separator
/// regardless of locale.
void write_series(std::ostream& out, std::span<const double> values);
std::vector<double> read_series(std::istream& in);

}  // namespace arlimit
