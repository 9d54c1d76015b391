#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace touchless {

// User-facing input problems (bad files, bad arguments, violated preconditions
// on supplied data). The CLI maps these to exit code 1.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariants; exit code 2 at the CLI boundary.
struct invariant_error : std::logic_error {
    using std::logic_error::logic_error;
};

// splitmix64. Every randomized component in the project goes through this so
// that a seed fully determines the output on any platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        return lo + int(next_u64() % uint64_t(hi - lo + 1));
    }

private:
    uint64_t state_;
};

}  // namespace touchless
