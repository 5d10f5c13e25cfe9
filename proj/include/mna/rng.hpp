#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mna {

// Seeded generator with a cross-platform normal sampler. std::mt19937_64 is
// bit-reproducible by standard; the Gaussian uses the Marsaglia polar method
// (std::normal_distribution is implementation-defined and must not be used
// where outputs are part of the determinism contract).
class Rng {
public:
    static constexpr const char* kNormalSampler = "marsaglia-polar";

    explicit Rng(uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (-1, 1), excluding exact 0 only by measure.
    double uniform_sym() { return 2.0 * uniform() - 1.0; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform_sym();
            v = uniform_sym();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        has_spare_ = true;
        return u * factor;
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    uint64_t next_u64() { return engine_(); }

    // splitmix64 mix of (master, stream): replication k of an experiment with
    // master seed s always sees the same substream, serial or parallel.
    static uint64_t derive_seed(uint64_t master, uint64_t stream) {
        uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mna
