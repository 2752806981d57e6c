#pragma once

#include <cstdint>
#include <vector>

namespace dappnet {

struct PowerLawFit {
    double alpha = 0.0;
    std::uint64_t x_min = 0;
    double ks_distance = 0.0;
    std::size_t n_tail = 0;
    std::size_t n_samples = 0;
    // False for fewer than 10 tail points or a tail with a single value.
    bool reliable = false;
};

/// Hurwitz zeta sum_{k>=0} (k + q)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// Discrete power-law fit. For each candidate x_min among the observed
/// values, alpha = 1 + n / sum ln(x / (x_min - 0.5)) over the tail, and the
/// x_min with the smallest KS distance to the fitted model wins (ties keep
/// the smaller x_min). Candidates leaving fewer than 10 tail points are
/// used only when nothing else is available.
///
/// Throws std::invalid_argument for fewer than 50 samples or a zero sample.
PowerLawFit fit_powerlaw(const std::vector<std::uint64_t>& samples);

} // namespace dappnet
