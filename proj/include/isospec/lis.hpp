#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "isospec/rng.hpp"

namespace isospec {

/// Longest increasing subsequence length via patience sorting
/// (binary search over pile tops, O(N log N)).
int lis_length(const Permutation& p);

/// O(N^2) dynamic-programming oracle, capped at N <= 12.
int lis_bruteforce(const Permutation& p);

/// Longest strictly decreasing subsequence (for the Erdos-Szekeres check).
int lds_length(const Permutation& p);

struct LisMonteCarloResult {
    int dimension = 0;
    int trials = 0;
    std::vector<int> lengths;       // per trial
    std::vector<double> scaled;     // (l - 2 sqrt(N)) / N^{1/6}, sorted
    /// Empirical CDF of the scaled statistic.
    double ecdf(double t) const;
};

/// Samples uniform permutations and records the scaled LIS statistic of
/// the Baik-Deift-Johansson limit.
LisMonteCarloResult lis_monte_carlo(int n, int trials, std::uint64_t seed, int workers = 0);

} // namespace isospec
