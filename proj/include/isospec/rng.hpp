#pragma once

#include <cstdint>
#include <vector>

#include "isospec/matrix.hpp"

namespace isospec {

/// splitmix64 step: advances state and returns the next output.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Per-trial seed from (master seed, trial index). Counter-based and
/// injective in the trial index for a fixed master seed, so parallel
/// trial workers get reproducible independent streams.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

/// xoshiro256++ (Blackman/Vigna). State seeded through splitmix64.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed);
    std::uint64_t next();

private:
    std::uint64_t s_[4];
};

/// Deterministic random stream for one trial: uniforms, Box-Muller normals,
/// unbiased bounded integers. Output is bit-reproducible for a fixed seed,
/// independent of platform or standard library.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}
    RandomStream(std::uint64_t master_seed, std::uint64_t trial)
        : gen_(derive_trial_seed(master_seed, trial)) {}

    std::uint64_t next_u64() { return gen_.next(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01();

    /// Standard normal via Box-Muller (pairs; the spare is cached).
    double gauss();

    /// Uniform integer in [0, bound), rejection-based, unbiased.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Fair +/-1.
    double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

private:
    Xoshiro256pp gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

enum class EnsembleKind { GOE, GUE, BernoulliWigner };

const char* ensemble_name(EnsembleKind k);
EnsembleKind ensemble_from_name(const std::string& name);

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::GOE;
    int dimension = 1;      // N >= 1
    std::uint64_t seed = 0; // master seed; per-trial streams derived from it
};

/// M = (A + Aᵀ)/2 with A having iid standard normal entries.
/// Off-diagonal variance 1/2, diagonal variance 1; exactly symmetric.
SymmetricMatrix sample_goe(const EnsembleSpec& spec, std::uint64_t trial);

/// Symmetric matrix of iid +/-1 signs on the upper triangle (diagonal included).
SymmetricMatrix sample_bernoulli(const EnsembleSpec& spec, std::uint64_t trial);

/// M = (A + A*)/2 with A having iid standard complex normal entries;
/// exactly Hermitian with real diagonal.
HermitianMatrix sample_gue(const EnsembleSpec& spec, std::uint64_t trial);

/// Dispatch on spec.kind for the real ensembles (GOE, Bernoulli).
SymmetricMatrix sample_real_ensemble(const EnsembleSpec& spec, std::uint64_t trial);

/// Permutation of {1..n}, stored one-based.
struct Permutation {
    std::vector<int> values;

    int size() const { return static_cast<int>(values.size()); }
    bool is_valid() const;
};

/// Uniform permutation via Fisher-Yates with unbiased index draws.
Permutation random_permutation(int n, std::uint64_t seed, std::uint64_t trial);

} // namespace isospec
