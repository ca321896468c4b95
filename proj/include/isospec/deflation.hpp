#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "isospec/matrix.hpp"
#include "isospec/rng.hpp"
#include "isospec/stats.hpp"

namespace isospec {

/// Per-trial halting data for a deflation run.
struct DeflationRecord {
    std::uint64_t trial = 0;
    double time = 0.0;        // iteration count (discrete) or flow time (Toda)
    int k_hat = 0;            // deflation index, 1-based; ties resolved to smallest k
    double top_gap = 0.0;     // lambda_N - lambda_{N-1} from the eigensolver oracle
    double epsilon = 0.0;
    double halting_norm = 0.0; // min_k block norm at the halting time
    bool halted = true;
};

/// Frobenius norm of the upper-right k x (N-k) block, 1 <= k <= N-1.
double block_offdiag_norm(const SymmetricMatrix& m, int k);

/// All block norms k = 1..N-1 at once (suffix-sum based, no cancellation).
std::vector<double> all_block_norms(const SymmetricMatrix& m);

/// Smallest iteration count m such that some k-block off-diagonal norm of
/// the m-th iterate drops below eps. Throws NonHaltingError with the final
/// block-norm profile after max_iter steps.
DeflationRecord deflation_time_discrete(const SymmetricMatrix& m0,
                                        const std::function<SymmetricMatrix(const SymmetricMatrix&)>& step,
                                        double eps, int max_iter, std::uint64_t trial = 0);

/// Continuous analogue for the Toda flow: d(t) = min_k block norm is walked
/// on a coarse grid (step coarse_dt) and the first eps-crossing is located
/// by bisection to |d(T) - eps| <= 1e-3 * eps.
DeflationRecord deflation_time_toda(const SymmetricMatrix& m0, double eps, double t_max,
                                    double coarse_dt = 0.05, std::uint64_t trial = 0);

struct OneDeflationResult {
    double t1 = 0.0;        // first time E(t) = sum_{j>=2} X_1j^2 < eps^2
    double top_entry = 0.0; // X_11(T1)
};

/// 1-deflation time of the Toda flow, computed through the spectral
/// representation of the first row (O(N) per time probe after one
/// eigensolve). Throws NonHaltingError past t_max.
OneDeflationResult one_deflation_time(const SymmetricMatrix& m0, double eps, double t_max);

/// (T_i - mean) / sample standard deviation; the result has mean 0 and
/// variance 1 exactly (1/(n-1) convention). Throws on zero variance.
std::vector<double> normalize_times(const std::vector<double>& times);

enum class DeflationAlgorithm { QR, Toda };

const char* algorithm_name(DeflationAlgorithm a);
DeflationAlgorithm algorithm_from_name(const std::string& name);

struct UniversalityConfig {
    DeflationAlgorithm algorithm = DeflationAlgorithm::QR;
    std::vector<EnsembleKind> ensembles{EnsembleKind::GOE, EnsembleKind::BernoulliWigner};
    int dimension = 100;
    double epsilon = 1e-10;
    int trials = 2000;
    std::uint64_t master_seed = 1;
    int bins = 40;
    int workers = 0; // 0 = hardware concurrency
    int max_iter = 2000;     // discrete budget
    double t_max = 500.0;    // Toda budget
    double coarse_dt = 0.05; // Toda halting grid
};

struct UniversalityResult {
    UniversalityConfig config;
    struct PerEnsemble {
        EnsembleKind kind = EnsembleKind::GOE;
        std::vector<DeflationRecord> records; // trial order, non-halted included
        std::vector<double> normalized;       // T-tilde over halted trials
        double mean_time = 0.0;
        double variance_time = 0.0;
        int nonhalted = 0;
    };
    std::vector<PerEnsemble> ensembles;
    HistogramBins bins;                       // shared bins over pooled T-tilde
    std::vector<std::vector<int>> histogram;  // per ensemble, per bin
    std::vector<std::vector<double>> ks;      // pairwise KS of T-tilde samples
};

/// Monte Carlo reproduction of the deflation-time universality experiment:
/// runs `trials` deflations per ensemble in parallel, normalizes the halting
/// times per ensemble, and reports histograms plus pairwise KS distances.
UniversalityResult universality_experiment(const UniversalityConfig& config);

struct GapLawConfig {
    EnsembleKind ensemble = EnsembleKind::GOE;
    int dimension = 50;
    double epsilon = 1e-8;
    int trials = 500;
    std::uint64_t master_seed = 1;
    double sigma = 0.0; // scaling-region parameter: log(1/eps)/log N >= 5/3 + sigma/2
    int workers = 0;
    double t_max = 20000.0;
};

struct GapLawResult {
    GapLawConfig config;
    struct Trial {
        std::uint64_t trial = 0;
        double t1 = 0.0;
        double top_entry = 0.0;
        double lambda_max = 0.0;
        double top_gap = 0.0;
        double scaled_t1 = 0.0;      // T1 / (N^{2/3} (log 1/eps - (2/3) log N))
        double scaled_inv_gap = 0.0; // 1 / (2^{-2/3} N^{2/3} gap)
        double top_entry_error = 0.0; // |X_11(T1) - lambda_max|
        bool halted = true;
    };
    std::vector<Trial> trials;
    double rank_correlation = 0.0; // Spearman(T1, 1/gap) over halted trials
    double median_matched_ks = 1.0;
    int nonhalted = 0;
};

/// 1-deflation time vs. inverse top gap. Samples are rescaled to the
/// unit-edge normalization (semicircle edge near 2) so the theorem-style
/// scaled statistics are O(1); both acceptance metrics (rank correlation
/// and median-matched KS) are scale-invariant anyway. Validates the
/// scaling region log(1/eps)/log N >= 5/3 + sigma/2.
GapLawResult gap_statistic_experiment(const GapLawConfig& config);

} // namespace isospec
