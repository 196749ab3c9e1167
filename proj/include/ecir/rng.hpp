#pragma once

#include <cmath>
#include <cstdint>

namespace ecir {

// Counter-based splitmix64 stream. Per-path streams are derived from
// (seed, path index), so Monte-Carlo results do not depend on thread
// scheduling. Normals come from Box-Muller on the raw 64-bit outputs, which
// keeps draws bit-identical across platforms.
class CounterRng {
public:
    static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = mix(seed + 0x9E3779B97F4A7C15ull);
        x ^= mix(stream + 0xD1B54A32D192ED03ull);
        return mix(x);
    }

    explicit CounterRng(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform in (0, 1].
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = (static_cast<double>(next_u64() >> 11)) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ull;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBull;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ecir
