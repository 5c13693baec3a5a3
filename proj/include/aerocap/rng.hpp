#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aerocap {

// splitmix64; used to decorrelate per-run seeds derived from (master, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard and the uniform/normal transforms below are explicit, so sequences
// are bit-identical across platforms (std::normal_distribution is not).
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        // 53-bit mantissa in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller; one value per call, cached pair discarded for simplicity.
    double normal(double mean = 0.0, double sigma = 1.0) {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        return mean + sigma * z;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace aerocap
