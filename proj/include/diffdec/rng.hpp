#ifndef DIFFDEC_RNG_HPP_
#define DIFFDEC_RNG_HPP_

#include <cstdint>
#include <random>

namespace diffdec {

// Deterministic RNG wrapper. std::mt19937_64 output is fully specified by
// the standard, but the std distributions are not, so bounded draws are
// implemented here to make generated datasets reproducible everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    // Derives an independent, reproducible stream (seed, stream index).
    Rng(std::uint64_t seed, std::uint64_t stream)
        : engine_(mix(mix(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [lo, hi], inclusive.
    long long uniform_int(long long lo, long long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1ULL;
        // rejection sampling to kill modulo bias
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<long long>(v % span);
    }

    // Uniform double in [lo, hi).
    double uniform_real(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    bool chance(double p) { return uniform_real(0.0, 1.0) < p; }

    // Weighted choice; weights need not be normalized.
    template <std::size_t N>
    std::size_t weighted(const double (&w)[N]) {
        double total = 0;
        for (double x : w) total += x;
        double r = uniform_real(0.0, total);
        for (std::size_t i = 0; i + 1 < N; ++i) {
            if (r < w[i]) return i;
            r -= w[i];
        }
        return N - 1;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer; decorrelates nearby seeds
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace diffdec

#endif  // DIFFDEC_RNG_HPP_
