#include "isospec/deflation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isospec/errors.hpp"
#include "isospec/flows.hpp"
#include "isospec/linalg.hpp"
#include "parallel.hpp"

namespace isospec {

double block_offdiag_norm(const SymmetricMatrix& m, int k) {
    const int n = m.n();
    if (k < 1 || k > n - 1)
        throw ValidationError("block_offdiag_norm: k must be in [1, N-1], got " + std::to_string(k));
    double s = 0.0;
    for (int i = 0; i < k; ++i)
        for (int j = k; j < n; ++j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

std::vector<double> all_block_norms(const SymmetricMatrix& m) {
    const int n = m.n();
    if (n < 2) return {};
    // suffix[i][j] = sum_{l >= j} M_il^2, built right-to-left: additions of
    // non-negative terms only, so small block norms are not lost to
    // cancellation.
    Matrix suffix(n, n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = n - 1; j >= 0; --j) {
            acc += m(i, j) * m(i, j);
            suffix(i, j) = acc;
        }
    }
    std::vector<double> norms(n - 1);
    for (int k = 1; k <= n - 1; ++k) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += suffix(i, k);
        norms[k - 1] = std::sqrt(s);
    }
    return norms;
}

namespace {

struct MinNorm {
    double value;
    int k; // 1-based, smallest index on ties
};

MinNorm min_block_norm(const SymmetricMatrix& m) {
    const std::vector<double> norms = all_block_norms(m);
    MinNorm best{norms[0], 1};
    for (size_t i = 1; i < norms.size(); ++i)
        if (norms[i] < best.value) best = {norms[i], static_cast<int>(i) + 1};
    return best;
}

double oracle_top_gap(const SymmetricMatrix& m0) {
    Spectrum s = symmetric_eigen(m0, false);
    const size_t n = s.values.size();
    return s.values[n - 1] - s.values[n - 2];
}

} // namespace

DeflationRecord deflation_time_discrete(const SymmetricMatrix& m0,
                                        const std::function<SymmetricMatrix(const SymmetricMatrix&)>& step,
                                        double eps, int max_iter, std::uint64_t trial) {
    if (!(eps > 0.0)) throw ValidationError("deflation_time_discrete: epsilon must be positive");
    if (m0.n() < 2) throw ValidationError("deflation_time_discrete: need N >= 2");

    DeflationRecord rec;
    rec.trial = trial;
    rec.epsilon = eps;
    rec.top_gap = oracle_top_gap(m0);

    SymmetricMatrix m = m0;
    for (int iter = 0; iter <= max_iter; ++iter) {
        const MinNorm d = min_block_norm(m);
        if (d.value < eps) {
            rec.time = static_cast<double>(iter);
            rec.k_hat = d.k;
            rec.halting_norm = d.value;
            return rec;
        }
        if (iter == max_iter) break;
        m = step(m);
    }
    throw NonHaltingError("deflation_time_discrete: no deflation within " +
                              std::to_string(max_iter) + " iterations",
                          all_block_norms(m));
}

DeflationRecord deflation_time_toda(const SymmetricMatrix& m0, double eps, double t_max,
                                    double coarse_dt, std::uint64_t trial) {
    if (!(eps > 0.0)) throw ValidationError("deflation_time_toda: epsilon must be positive");
    if (!(coarse_dt > 0.0)) throw ValidationError("deflation_time_toda: coarse_dt must be positive");
    if (m0.n() < 2) throw ValidationError("deflation_time_toda: need N >= 2");

    DeflationRecord rec;
    rec.trial = trial;
    rec.epsilon = eps;

    SpectralFlow flow(m0, scalar_identity());
    {
        const auto& lam = flow.eigenvalues();
        rec.top_gap = lam[lam.size() - 1] - lam[lam.size() - 2];
    }

    MinNorm d0 = min_block_norm(m0);
    if (d0.value < eps) {
        rec.time = 0.0;
        rec.k_hat = d0.k;
        rec.halting_norm = d0.value;
        return rec;
    }

    SpectralFlow checkpoint = flow; // state at the left end of the bracket
    double t_left = 0.0;
    for (;;) {
        if (t_left >= t_max)
            throw NonHaltingError("deflation_time_toda: no deflation before t_max = " +
                                      format_g17(t_max),
                                  all_block_norms(flow.current()));
        flow.advance(coarse_dt);
        const SymmetricMatrix m = flow.current();
        const MinNorm d = min_block_norm(m);
        if (d.value < eps) break;
        t_left += coarse_dt;
        checkpoint = flow;
    }

    // First crossing inside (t_left, t_left + coarse_dt]: bisect from the
    // checkpoint until the block norm matches eps to 1e-3 relative.
    double lo = 0.0, hi = coarse_dt;
    MinNorm located{0.0, 1};
    double s_hit = hi;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        SpectralFlow probe = checkpoint;
        probe.advance(mid);
        const MinNorm d = min_block_norm(probe.current());
        if (std::fabs(d.value - eps) <= 1e-3 * eps) {
            located = d;
            s_hit = mid;
            break;
        }
        if (d.value >= eps)
            lo = mid;
        else
            hi = mid;
        if (iter == 59) {
            SpectralFlow last = checkpoint;
            last.advance(hi);
            located = min_block_norm(last.current());
            s_hit = hi;
        }
    }
    rec.time = t_left + s_hit;
    rec.k_hat = located.k;
    rec.halting_norm = located.value;
    return rec;
}

OneDeflationResult one_deflation_time(const SymmetricMatrix& m0, double eps, double t_max) {
    if (!(eps > 0.0)) throw ValidationError("one_deflation_time: epsilon must be positive");
    const int n = m0.n();
    if (n < 2) throw ValidationError("one_deflation_time: need N >= 2");

    Spectrum s = symmetric_eigen(m0, true);
    const std::vector<double>& lam = s.values;
    const double lam_max = lam.back();
    const Matrix& v = *s.vectors;
    std::vector<double> c(n); // first row of V: coordinates of e_1 in the eigenbasis
    for (int k = 0; k < n; ++k) c[k] = v(0, k);

    // E(t) and X_11(t) from the spectral measure of the first coordinate:
    // with weights w_k ~ c_k^2 exp(2 t lambda_k),
    //   X_11(t) = sum lambda_k w_k / sum w_k
    //   E(t)    = sum (lambda_k - X_11)^2 w_k / sum w_k
    std::vector<double> y(n);
    auto probe = [&](double t, double& x11_out) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            y[k] = c[k] * c[k] * std::exp(2.0 * t * (lam[k] - lam_max));
            sum += y[k];
        }
        if (sum == 0.0)
            throw ConvergenceError("one_deflation_time: spectral weights underflowed");
        double x11 = 0.0;
        for (int k = 0; k < n; ++k) x11 += lam[k] * y[k];
        x11 /= sum;
        double e = 0.0;
        for (int k = 0; k < n; ++k) e += (lam[k] - x11) * (lam[k] - x11) * y[k];
        x11_out = x11;
        return e / sum;
    };

    const double eps2 = eps * eps;
    double x11 = 0.0;
    if (probe(0.0, x11) < eps2) return {0.0, m0(0, 0)};

    const double coarse_dt = 0.05;
    double t_left = 0.0;
    for (;;) {
        if (t_left >= t_max)
            throw NonHaltingError("one_deflation_time: E(t) never crossed eps^2 before t_max", {});
        const double t_next = t_left + coarse_dt;
        if (probe(t_next, x11) < eps2) break;
        t_left = t_next;
    }
    double lo = t_left, hi = t_left + coarse_dt;
    double t_hit = hi;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double e = probe(mid, x11);
        if (std::fabs(std::sqrt(e) - eps) <= 1e-3 * eps) {
            t_hit = mid;
            break;
        }
        if (e >= eps2)
            lo = mid;
        else
            hi = mid;
        t_hit = hi;
    }
    probe(t_hit, x11);
    return {t_hit, x11};
}

std::vector<double> normalize_times(const std::vector<double>& times) {
    if (times.size() < 2) throw ValidationError("normalize_times: need >= 2 samples");
    const double mean = sample_mean(times);
    const double var = sample_variance(times);
    if (!(var > 0.0)) throw DomainError("normalize_times: degenerate sample (zero variance)");
    const double sd = std::sqrt(var);
    std::vector<double> out(times.size());
    for (size_t i = 0; i < times.size(); ++i) out[i] = (times[i] - mean) / sd;
    return out;
}

const char* algorithm_name(DeflationAlgorithm a) {
    return a == DeflationAlgorithm::QR ? "qr" : "toda";
}

DeflationAlgorithm algorithm_from_name(const std::string& name) {
    if (name == "qr" || name == "QR") return DeflationAlgorithm::QR;
    if (name == "toda" || name == "Toda") return DeflationAlgorithm::Toda;
    throw ValidationError("unknown algorithm: '" + name + "' (expected qr or toda)");
}

namespace {

void validate_universality_config(const UniversalityConfig& c) {
    if (c.dimension < 2) throw ValidationError("config field N: must be >= 2");
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0))
        throw ValidationError("config field epsilon: must lie in (0, 1)");
    if (c.trials < 2) throw ValidationError("config field trials: must be >= 2");
    if (c.ensembles.empty()) throw ValidationError("config field ensembles: must be non-empty");
    for (EnsembleKind k : c.ensembles)
        if (k == EnsembleKind::GUE)
            throw ValidationError("config field ensembles: deflation experiments run on real "
                                  "symmetric ensembles (goe, bernoulli)");
    if (c.bins < 1) throw ValidationError("config field bins: must be >= 1");
    if (c.max_iter < 1) throw ValidationError("config field max_iter: must be >= 1");
    if (!(c.t_max > 0.0)) throw ValidationError("config field t_max: must be positive");
    if (!(c.coarse_dt > 0.0)) throw ValidationError("config field coarse_dt: must be positive");
}

std::uint64_t ensemble_stream_seed(std::uint64_t master, EnsembleKind kind) {
    // decorrelate the ensembles while keeping everything a pure function of
    // the master seed
    return derive_trial_seed(master, 0x9000 + static_cast<std::uint64_t>(kind));
}

} // namespace

UniversalityResult universality_experiment(const UniversalityConfig& config) {
    validate_universality_config(config);
    UniversalityResult result;
    result.config = config;

    for (EnsembleKind kind : config.ensembles) {
        UniversalityResult::PerEnsemble pe;
        pe.kind = kind;
        pe.records.resize(config.trials);

        EnsembleSpec spec{kind, config.dimension, ensemble_stream_seed(config.master_seed, kind)};
        parallel_for_trials(config.trials, config.workers, [&](int t) {
            const SymmetricMatrix m0 = sample_real_ensemble(spec, t);
            DeflationRecord rec;
            try {
                if (config.algorithm == DeflationAlgorithm::QR) {
                    rec = deflation_time_discrete(m0, qr_step_symmetric, config.epsilon,
                                                  config.max_iter, t);
                } else {
                    rec = deflation_time_toda(m0, config.epsilon, config.t_max, config.coarse_dt, t);
                }
            } catch (const NonHaltingError&) {
                rec.trial = t;
                rec.epsilon = config.epsilon;
                rec.top_gap = oracle_top_gap(m0);
                rec.halted = false;
            } catch (const SingularMatrixError&) {
                // singular-to-precision iterate (possible for Bernoulli): excluded
                rec.trial = t;
                rec.epsilon = config.epsilon;
                rec.top_gap = oracle_top_gap(m0);
                rec.halted = false;
            }
            pe.records[t] = rec;
        });

        std::vector<double> times;
        times.reserve(config.trials);
        for (const DeflationRecord& r : pe.records)
            if (r.halted) times.push_back(r.time);
        pe.nonhalted = config.trials - static_cast<int>(times.size());
        if (times.size() >= 2) {
            pe.mean_time = sample_mean(times);
            pe.variance_time = sample_variance(times);
            pe.normalized = normalize_times(times);
        }
        result.ensembles.push_back(std::move(pe));
    }

    std::vector<double> pooled;
    for (const auto& pe : result.ensembles)
        pooled.insert(pooled.end(), pe.normalized.begin(), pe.normalized.end());
    if (!pooled.empty()) {
        result.bins = histogram_bins(pooled, config.bins);
        for (const auto& pe : result.ensembles)
            result.histogram.push_back(histogram_counts(result.bins, pe.normalized));
    }

    const size_t ne = result.ensembles.size();
    result.ks.assign(ne, std::vector<double>(ne, 0.0));
    for (size_t i = 0; i < ne; ++i)
        for (size_t j = i + 1; j < ne; ++j) {
            // NaN when an ensemble produced no usable halting times
            double d = std::nan("");
            if (!result.ensembles[i].normalized.empty() &&
                !result.ensembles[j].normalized.empty())
                d = ks_distance(result.ensembles[i].normalized, result.ensembles[j].normalized);
            result.ks[i][j] = result.ks[j][i] = d;
        }
    return result;
}

GapLawResult gap_statistic_experiment(const GapLawConfig& config) {
    if (config.dimension < 2) throw ValidationError("config field N: must be >= 2");
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0))
        throw ValidationError("config field epsilon: must lie in (0, 1)");
    if (config.trials < 2) throw ValidationError("config field trials: must be >= 2");
    if (config.ensemble == EnsembleKind::GUE)
        throw ValidationError("config field ensemble: gap experiment runs on real ensembles");
    const double n = config.dimension;
    const double scaling_ratio = std::log(1.0 / config.epsilon) / std::log(n);
    const double required = 5.0 / 3.0 + config.sigma / 2.0;
    if (scaling_ratio < required)
        throw ValidationError("config: (epsilon, N) outside the scaling region: log(1/eps)/log N = " +
                              format_g17(scaling_ratio) + " < 5/3 + sigma/2 = " + format_g17(required));

    GapLawResult result;
    result.config = config;
    result.trials.resize(config.trials);

    // Unit-edge normalization: entry variance v gives semicircle edge
    // 2 sqrt(N v); divide by sqrt(N v) so the edge sits near 2.
    const double entry_var = config.ensemble == EnsembleKind::GOE ? 0.5 : 1.0;
    const double scale = std::sqrt(n * entry_var);
    const double time_denom =
        std::pow(n, 2.0 / 3.0) * (std::log(1.0 / config.epsilon) - (2.0 / 3.0) * std::log(n));
    const double gap_denom_factor = std::pow(2.0, -2.0 / 3.0) * std::pow(n, 2.0 / 3.0);

    EnsembleSpec spec{config.ensemble, config.dimension,
                      ensemble_stream_seed(config.master_seed, config.ensemble)};
    parallel_for_trials(config.trials, config.workers, [&](int t) {
        SymmetricMatrix raw = sample_real_ensemble(spec, t);
        SymmetricMatrix m(raw.n());
        for (int i = 0; i < raw.n(); ++i)
            for (int j = i; j < raw.n(); ++j) m.set(i, j, raw(i, j) / scale);

        GapLawResult::Trial trial;
        trial.trial = t;
        Spectrum s = symmetric_eigen(m, false);
        trial.lambda_max = s.values.back();
        trial.top_gap = s.values[s.values.size() - 1] - s.values[s.values.size() - 2];
        try {
            OneDeflationResult r = one_deflation_time(m, config.epsilon, config.t_max);
            trial.t1 = r.t1;
            trial.top_entry = r.top_entry;
            trial.top_entry_error = std::fabs(r.top_entry - trial.lambda_max);
            trial.scaled_t1 = r.t1 / time_denom;
            trial.scaled_inv_gap = 1.0 / (gap_denom_factor * trial.top_gap);
        } catch (const NonHaltingError&) {
            trial.halted = false;
        }
        result.trials[t] = trial;
    });

    std::vector<double> t1, inv_gap, scaled_t1, scaled_inv_gap;
    for (const auto& tr : result.trials) {
        if (!tr.halted) {
            ++result.nonhalted;
            continue;
        }
        t1.push_back(tr.t1);
        inv_gap.push_back(1.0 / tr.top_gap);
        scaled_t1.push_back(tr.scaled_t1);
        scaled_inv_gap.push_back(tr.scaled_inv_gap);
    }
    if (t1.size() >= 2) {
        result.rank_correlation = spearman_rank_correlation(t1, inv_gap);
        const double match = sample_median(scaled_t1) / sample_median(scaled_inv_gap);
        std::vector<double> matched = scaled_inv_gap;
        for (double& x : matched) x *= match;
        result.median_matched_ks = ks_distance(scaled_t1, matched);
    }
    return result;
}

} // namespace isospec
