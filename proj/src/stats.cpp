#include "isospec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isospec/errors.hpp"

namespace isospec {

double sample_mean(const std::vector<double>& v) {
    if (v.empty()) throw ValidationError("sample_mean: empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    if (v.size() < 2) throw ValidationError("sample_variance: need >= 2 values");
    const double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

double sample_median(std::vector<double> v) {
    if (v.empty()) throw ValidationError("sample_median: empty sample");
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw ValidationError("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    return d;
}

double ks_distance_to_cdf(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw ValidationError("ks_distance_to_cdf: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs(f - i / n));
        d = std::max(d, std::fabs((i + 1) / n - f));
    }
    return d;
}

double ks_distance_lattice_to_cdf(std::vector<double> sample,
                                  const std::function<double(double)>& cdf) {
    if (sample.empty()) throw ValidationError("ks_distance_lattice_to_cdf: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        if (i + 1 < sample.size() && sample[i + 1] == sample[i]) continue; // atom end only
        d = std::max(d, std::fabs((i + 1) / n - cdf(sample[i])));
    }
    return d;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0; // average rank of a tie group
        for (size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

} // namespace

double spearman_rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw ValidationError("spearman_rank_correlation: need two equal samples of size >= 2");
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const double ma = sample_mean(ra), mb = sample_mean(rb);
    double num = 0.0, da = 0.0, db = 0.0;
    for (size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    if (da == 0.0 || db == 0.0) throw DomainError("spearman_rank_correlation: constant sample");
    return num / std::sqrt(da * db);
}

HistogramBins histogram_bins(std::vector<double> pooled, int bins) {
    if (pooled.empty()) throw ValidationError("histogram_bins: empty sample");
    if (bins < 1) throw ValidationError("histogram_bins: need >= 1 bin");
    std::sort(pooled.begin(), pooled.end());
    const size_t n = pooled.size();
    double lo = pooled[static_cast<size_t>(0.005 * static_cast<double>(n - 1))];
    double hi = pooled[static_cast<size_t>(std::ceil(0.995 * static_cast<double>(n - 1)))];
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    HistogramBins out;
    out.left.resize(bins);
    out.right.resize(bins);
    const double w = (hi - lo) / bins;
    for (int i = 0; i < bins; ++i) {
        out.left[i] = lo + i * w;
        out.right[i] = lo + (i + 1) * w;
    }
    return out;
}

std::vector<int> histogram_counts(const HistogramBins& bins, const std::vector<double>& sample) {
    const int nb = static_cast<int>(bins.left.size());
    std::vector<int> counts(nb, 0);
    const double lo = bins.left.front();
    const double hi = bins.right.back();
    const double w = (hi - lo) / nb;
    for (double x : sample) {
        if (x < lo || x > hi) continue;
        int b = static_cast<int>((x - lo) / w);
        if (b == nb) b = nb - 1; // x == hi lands in the last bin
        if (b >= 0 && b < nb) ++counts[b];
    }
    return counts;
}

} // namespace isospec
