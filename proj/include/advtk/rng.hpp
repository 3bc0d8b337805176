#ifndef ADVTK_RNG_HPP
#define ADVTK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace advtk {

// splitmix64 finalizer. Stateless mixing primitive behind seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Labeled stream derivation: one master seed fans out into independent
// streams keyed by a purpose string and an index. Adding parallelism never
// shifts results because every consumer derives its own stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the label bytes
    for (unsigned char c : label) {
        h = (h ^ c) * 0x100000001b3ull;
    }
    return mix64(mix64(master ^ h) ^ index);
}

// Small deterministic generator (splitmix64 stream). Distributions are
// implemented here rather than via <random> so sequences are identical on
// every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 24 random mantissa bits.
    float uniform() { return float(next_u64() >> 40) * 0x1.0p-24f; }

    float uniform(float lo, float hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), n > 0.
    int uniform_int(int n) {
        return int((static_cast<unsigned __int128>(next_u64()) *
                    static_cast<unsigned __int128>(n)) >> 64);
    }

    // Standard normal via Box-Muller; second draw of the pair is cached.
    float normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        float u1 = uniform();
        float u2 = uniform();
        float r = std::sqrt(-2.0f * std::log(1.0f - u1));
        float t = 6.2831853071795864f * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = int(v.size()) - 1; i > 0; --i) {
            int j = uniform_int(i + 1);
            std::swap(v[i], v[j]);
        }
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    float spare_ = 0.0f;
};

}  // namespace advtk

#endif  // ADVTK_RNG_HPP
