#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace f1opt {

// splitmix64 step: maps (seed, stream) to a well-mixed engine seed so that
// consecutive run seeds and consecutive streams stay decorrelated.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0) {
    return std::mt19937_64(derive_seed(seed, stream));
}

// Uniform on [0, 1) from the top 53 bits. The standard distributions are
// implementation-defined, so everything that must reproduce bit-for-bit
// across toolchains goes through this and NormalSampler instead.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& g, double p) {
    return uniform01(g) < p;
}

// Marsaglia polar method; consumes uniforms in pairs and caches the spare.
class NormalSampler {
  public:
    double operator()(std::mt19937_64& g) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01(g) - 1.0;
            v = 2.0 * uniform01(g) - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * scale;
        have_spare_ = true;
        return u * scale;
    }

  private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace f1opt
