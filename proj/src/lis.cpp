#include "isospec/lis.hpp"

#include <algorithm>
#include <cmath>

#include "isospec/errors.hpp"
#include "parallel.hpp"

namespace isospec {

int lis_length(const Permutation& p) {
    if (!p.is_valid()) throw ValidationError("lis_length: input is not a permutation of {1..n}");
    std::vector<int> tops; // tops[k] = smallest tail of an increasing subsequence of length k+1
    tops.reserve(p.values.size());
    for (int v : p.values) {
        auto it = std::lower_bound(tops.begin(), tops.end(), v);
        if (it == tops.end())
            tops.push_back(v);
        else
            *it = v;
    }
    return static_cast<int>(tops.size());
}

int lis_bruteforce(const Permutation& p) {
    if (!p.is_valid()) throw ValidationError("lis_bruteforce: input is not a permutation");
    const int n = p.size();
    if (n > 12) throw ValidationError("lis_bruteforce: size cap is N <= 12");
    std::vector<int> best(n, 1); // best[i] = max increasing run ending at i
    int out = 1;
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j)
            if (p.values[j] < p.values[i]) best[i] = std::max(best[i], best[j] + 1);
        out = std::max(out, best[i]);
    }
    return out;
}

int lds_length(const Permutation& p) {
    Permutation flipped;
    flipped.values.reserve(p.values.size());
    const int n = p.size();
    for (int v : p.values) flipped.values.push_back(n + 1 - v);
    return lis_length(flipped);
}

double LisMonteCarloResult::ecdf(double t) const {
    const auto it = std::upper_bound(scaled.begin(), scaled.end(), t);
    return static_cast<double>(it - scaled.begin()) / static_cast<double>(scaled.size());
}

LisMonteCarloResult lis_monte_carlo(int n, int trials, std::uint64_t seed, int workers) {
    if (n < 1) throw ValidationError("lis_monte_carlo: n must be >= 1");
    if (trials < 1) throw ValidationError("lis_monte_carlo: trials must be >= 1");
    LisMonteCarloResult res;
    res.dimension = n;
    res.trials = trials;
    res.lengths.resize(trials);
    parallel_for_trials(trials, workers, [&](int t) {
        res.lengths[t] = lis_length(random_permutation(n, seed, t));
    });
    res.scaled.resize(trials);
    const double root = 2.0 * std::sqrt(static_cast<double>(n));
    const double scale = std::pow(static_cast<double>(n), 1.0 / 6.0);
    for (int t = 0; t < trials; ++t) res.scaled[t] = (res.lengths[t] - root) / scale;
    std::sort(res.scaled.begin(), res.scaled.end());
    return res;
}

} // namespace isospec
