#include "isospec/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "isospec/errors.hpp"

namespace isospec {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    // state = h(master) + odd * trial is injective in trial for fixed master;
    // the splitmix64 output map is a bijection, so distinct trials never collide.
    std::uint64_t h = master_seed;
    std::uint64_t hashed_master = splitmix64_next(h);
    std::uint64_t state = hashed_master + 0x9e3779b97f4a7c15ULL * trial_index;
    return splitmix64_next(state);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64_next(sm);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t Xoshiro256pp::next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::gauss() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * uniform01();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("uniform_below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r = next_u64();
    while (r >= limit) r = next_u64();
    return r % bound;
}

const char* ensemble_name(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::GOE: return "goe";
        case EnsembleKind::GUE: return "gue";
        case EnsembleKind::BernoulliWigner: return "bernoulli";
    }
    return "?";
}

EnsembleKind ensemble_from_name(const std::string& name) {
    if (name == "goe" || name == "GOE") return EnsembleKind::GOE;
    if (name == "gue" || name == "GUE") return EnsembleKind::GUE;
    if (name == "bernoulli" || name == "BE" || name == "bernoulli-wigner")
        return EnsembleKind::BernoulliWigner;
    throw ValidationError("unknown ensemble: '" + name + "' (expected goe, gue or bernoulli)");
}

SymmetricMatrix sample_goe(const EnsembleSpec& spec, std::uint64_t trial) {
    if (spec.kind != EnsembleKind::GOE) throw ValidationError("spec.kind is not GOE");
    if (spec.dimension < 1) throw ValidationError("dimension must be >= 1");
    const int n = spec.dimension;
    RandomStream rs(spec.seed, trial);
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rs.gauss();
    return SymmetricMatrix::symmetrized(a);
}

SymmetricMatrix sample_bernoulli(const EnsembleSpec& spec, std::uint64_t trial) {
    if (spec.kind != EnsembleKind::BernoulliWigner)
        throw ValidationError("spec.kind is not BernoulliWigner");
    if (spec.dimension < 1) throw ValidationError("dimension must be >= 1");
    const int n = spec.dimension;
    RandomStream rs(spec.seed, trial);
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, rs.sign());
    return m;
}

HermitianMatrix sample_gue(const EnsembleSpec& spec, std::uint64_t trial) {
    if (spec.kind != EnsembleKind::GUE) throw ValidationError("spec.kind is not GUE");
    if (spec.dimension < 1) throw ValidationError("dimension must be >= 1");
    const int n = spec.dimension;
    RandomStream rs(spec.seed, trial);
    const double s = std::sqrt(0.5); // standard complex normal: Re, Im ~ N(0, 1/2)
    std::vector<std::complex<double>> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = s * rs.gauss();
            const double im = s * rs.gauss();
            a[static_cast<size_t>(i) * n + j] = {re, im};
        }
    HermitianMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, a[static_cast<size_t>(i) * n + i].real()); // (z + conj z)/2
        for (int j = i + 1; j < n; ++j) {
            const std::complex<double> v =
                0.5 * (a[static_cast<size_t>(i) * n + j] + std::conj(a[static_cast<size_t>(j) * n + i]));
            m.set(i, j, v);
        }
    }
    return m;
}

SymmetricMatrix sample_real_ensemble(const EnsembleSpec& spec, std::uint64_t trial) {
    switch (spec.kind) {
        case EnsembleKind::GOE: return sample_goe(spec, trial);
        case EnsembleKind::BernoulliWigner: return sample_bernoulli(spec, trial);
        case EnsembleKind::GUE: break;
    }
    throw ValidationError("sample_real_ensemble: GUE is not a real ensemble");
}

bool Permutation::is_valid() const {
    const int n = size();
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (int v : values) {
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation random_permutation(int n, std::uint64_t seed, std::uint64_t trial) {
    if (n < 1) throw ValidationError("random_permutation: n must be >= 1");
    RandomStream rs(seed, trial);
    Permutation p;
    p.values.resize(n);
    for (int i = 0; i < n; ++i) p.values[i] = i + 1;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rs.uniform_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(p.values[i], p.values[j]);
    }
    return p;
}

} // namespace isospec
