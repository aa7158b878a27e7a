#include "arlimit/ar_sim.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "arlimit/char_roots.hpp"
#include "arlimit/error.hpp"
#include "arlimit/limit_eval.hpp"
#include "arlimit/summation.hpp"

namespace arlimit {

GaussianStream::GaussianStream(std::uint64_t seed) : engine_(seed) {}

double GaussianStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    constexpr double kTwoPow53 = 0x1p-53;
    const double u = static_cast<double>((engine_() >> 11) + 1) * kTwoPow53;
    const double v = static_cast<double>(engine_() >> 11) * kTwoPow53;
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * v;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

namespace {

RootMultiset stationary_roots(const ARCoefficients& alphas) {
    auto roots = ar_roots(alphas).roots;
    if (!roots.stationary()) {
        throw Error(ErrorCode::NonStationary,
                    "AR coefficients have a root on or outside the unit circle");
    }
    return roots;
}

int burn_in_for(std::size_t order, double max_modulus) {
    return static_cast<int>(std::ceil(10.0 * static_cast<double>(order) / (1.0 - max_modulus)));
}

}  // namespace

int default_burn_in(const ARCoefficients& alphas) {
    return burn_in_for(alphas.order(), stationary_roots(alphas).max_modulus());
}

SeriesSample simulate(const ARCoefficients& alphas, double sigma, int n,
                      std::optional<int> burn_in, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "series length must be at least 1");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorCode::InvalidArgument, "sigma must be positive and finite");
    }
    if (burn_in && *burn_in < 0) throw Error(ErrorCode::InvalidArgument, "burn-in must be >= 0");
    const auto roots = stationary_roots(alphas);
    const int burn = burn_in ? *burn_in : burn_in_for(alphas.order(), roots.max_modulus());

    const auto a = alphas.alphas();
    const std::size_t k = a.size();
    const std::size_t total = static_cast<std::size_t>(burn) + static_cast<std::size_t>(n);
    // k zero pre-sample values, then the recursion.
    std::vector<double> x(k + total, 0.0);
    GaussianStream noise(seed);
    for (std::size_t i = k; i < x.size(); ++i) {
        double v = sigma * noise.next();
        for (std::size_t p = 0; p < k; ++p) v += a[p] * x[i - 1 - p];
        x[i] = v;
    }

    x.erase(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k + static_cast<std::size_t>(burn)));
    return SeriesSample{std::move(x), alphas, sigma, seed, burn};
}

double sum_x(std::span<const double> series) { return pairwise_sum<double>(series); }

double lagged_cross_sum(std::span<const double> series, int j) {
    if (j < 0) throw Error(ErrorCode::InvalidArgument, "lag must be non-negative");
    if (static_cast<std::size_t>(j) >= series.size()) {
        throw Error(ErrorCode::LagTooLarge, "lag " + std::to_string(j) + " is not below the series length");
    }
    const std::size_t m = series.size() - static_cast<std::size_t>(j);
    std::vector<double> prod(m);
    for (std::size_t i = 0; i < m; ++i) prod[i] = series[i] * series[i + static_cast<std::size_t>(j)];
    return pairwise_sum<double>(prod);
}

Complex rho_eval(std::span<const Complex> a_coeffs, const RootMultiset& roots, long long j) {
    if (a_coeffs.size() != roots.size()) {
        throw Error(ErrorCode::LengthMismatch, "coefficient count differs from root count");
    }
    const auto lag = static_cast<unsigned>(std::llabs(j));
    Complex acc = 0.0;
    for (std::size_t p = 0; p < a_coeffs.size(); ++p) acc += a_coeffs[p] * ipow(roots[p], lag);
    return acc;
}

void write_series(std::ostream& out, std::span<const double> values) {
    char buf[64];
    for (double v : values) {
        const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
        out.write(buf, end - buf);
        out.put('\n');
    }
}

std::vector<double> read_series(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        double v = 0.0;
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end) {
            throw Error(ErrorCode::ParseError, "bad series value on line " + std::to_string(line_no));
        }
        values.push_back(v);
    }
    return values;
}

}  // namespace arlimit
