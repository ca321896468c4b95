#pragma once

#include <functional>
#include <vector>

namespace isospec {

double sample_mean(const std::vector<double>& v);
/// Unbiased sample variance (1/(n-1) convention); needs >= 2 values.
double sample_variance(const std::vector<double>& v);
double sample_median(std::vector<double> v);

/// Two-sample Kolmogorov-Smirnov statistic: sup |F_a - F_b| over the
/// empirical CDFs. Both samples must be non-empty.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// KS statistic between an empirical sample and a reference CDF.
double ks_distance_to_cdf(std::vector<double> sample, const std::function<double(double)>& cdf);

/// KS variant for lattice-valued samples: compares the empirical CDF with
/// the reference CDF at the achieved values only (both right-continuous).
/// The usual two-sided statistic is bounded below by half the largest atom
/// mass, which says nothing about convergence of the law.
double ks_distance_lattice_to_cdf(std::vector<double> sample,
                                  const std::function<double(double)>& cdf);

/// Spearman rank correlation (Pearson correlation of average ranks).
double spearman_rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

/// Shared histogram bin edges: `bins` equal-width bins covering the central
/// 99% range of the pooled sample.
struct HistogramBins {
    std::vector<double> left;
    std::vector<double> right;
};

HistogramBins histogram_bins(std::vector<double> pooled, int bins);
std::vector<int> histogram_counts(const HistogramBins& bins, const std::vector<double>& sample);

} // namespace isospec
