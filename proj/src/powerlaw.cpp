#include "dappnet/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dappnet {

namespace {

constexpr std::size_t kMinSamples = 50;
constexpr std::size_t kMinTail = 10;

} // namespace

double hurwitz_zeta(double s, double q)
{
    if (!(s > 1.0) || !(q > 0.0))
        throw std::invalid_argument("hurwitz_zeta needs s > 1 and q > 0");
    // Euler-Maclaurin: direct sum up to a, then integral and Bernoulli terms.
    constexpr double kBernoulli[] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                                     5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
    double sum = 0.0;
    double a = q;
    while (a < 16.0) {
        sum += std::pow(a, -s);
        a += 1.0;
    }
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // term_j = B_2j / (2j)! * s (s+1) ... (s+2j-2) * a^(-s-2j+1)
    double rising = s;           // s (s+1) ... (s+2j-2)
    double factorial = 2.0;      // (2j)!
    double power = std::pow(a, -s - 1.0);
    for (int j = 1; j <= 7; ++j) {
        sum += kBernoulli[j - 1] / factorial * rising * power;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        power /= a * a;
    }
    return sum;
}

PowerLawFit fit_powerlaw(const std::vector<std::uint64_t>& samples)
{
    if (samples.size() < kMinSamples)
        throw std::invalid_argument("power-law fit needs at least " + std::to_string(kMinSamples) + " samples");
    std::vector<std::uint64_t> x = samples;
    std::sort(x.begin(), x.end());
    if (x.front() == 0)
        throw std::invalid_argument("power-law samples must be >= 1");

    const std::size_t n = x.size();
    // suffix_log[i] = sum_{j >= i} ln x_j
    std::vector<double> suffix_log(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;)
        suffix_log[i] = suffix_log[i + 1] + std::log(static_cast<double>(x[i]));

    // Distinct values with the index of their first occurrence.
    std::vector<std::pair<std::uint64_t, std::size_t>> distinct;
    for (std::size_t i = 0; i < n; ++i)
        if (i == 0 || x[i] != x[i - 1])
            distinct.emplace_back(x[i], i);

    auto evaluate = [&](std::size_t d) {
        PowerLawFit fit;
        const auto [xmin, start] = distinct[d];
        fit.x_min = xmin;
        fit.n_tail = n - start;
        fit.n_samples = n;
        const double tail = static_cast<double>(fit.n_tail);
        const double denom = suffix_log[start] - tail * std::log(static_cast<double>(xmin) - 0.5);
        fit.alpha = 1.0 + tail / denom;
        fit.reliable = fit.n_tail >= kMinTail && d + 1 < distinct.size();

        const double norm = hurwitz_zeta(fit.alpha, static_cast<double>(xmin));
        auto model_cdf = [&](double v) { // P(X <= v) for integer v >= xmin - 1
            if (v < static_cast<double>(xmin))
                return 0.0;
            return 1.0 - hurwitz_zeta(fit.alpha, v + 1.0) / norm;
        };
        double ks = 0.0;
        for (std::size_t e = d; e < distinct.size(); ++e) {
            const double v = static_cast<double>(distinct[e].first);
            const std::size_t below = distinct[e].second - start;
            const std::size_t upto = (e + 1 < distinct.size() ? distinct[e + 1].second : n) - start;
            // Empirical CDF is flat between observed values; check both ends.
            ks = std::max(ks, std::abs(static_cast<double>(below) / tail - model_cdf(v - 1.0)));
            ks = std::max(ks, std::abs(static_cast<double>(upto) / tail - model_cdf(v)));
        }
        fit.ks_distance = ks;
        return fit;
    };

    std::size_t usable = 0;
    while (usable < distinct.size() && n - distinct[usable].second >= kMinTail)
        ++usable;
    if (usable == 0)
        usable = distinct.size();

    PowerLawFit best;
    best.ks_distance = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < usable; ++d) {
        // A tail of one repeated value has no finite-alpha shape to compare.
        if (d + 1 == distinct.size() && d > 0)
            break;
        const PowerLawFit fit = evaluate(d);
        if (fit.ks_distance < best.ks_distance)
            best = fit;
    }
    return best;
}

} // namespace dappnet
