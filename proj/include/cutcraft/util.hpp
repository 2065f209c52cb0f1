#pragma once

#include <cstdint>
#include <cstdlib>
#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutcraft {

// Deterministic splittable RNG (splitmix64 core). We do not use
// std::uniform_int_distribution anywhere because its output is not pinned
// by the standard; bounded draws below are identical on every platform.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound), bound > 0, via rejection (no modulo bias)
    uint64_t below(uint64_t bound) {
        uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // uniform in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi) {
        return lo + (int64_t)below((uint64_t)(hi - lo + 1));
    }

    double real() {  // [0,1)
        return (next() >> 11) * 0x1.0p-53;
    }

    // independent child stream; never interferes with this one
    Rng split(uint64_t idx) const {
        Rng mix(state ^ (0x7f4a7c15ULL + idx * 0xda942042e4dd58b5ULL));
        mix.next();
        return Rng(mix.next());
    }
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Cooperative wall-clock budget. Solvers poll check() in their outer loops.
struct Budget {
    std::chrono::steady_clock::time_point deadline;
    bool enabled = false;

    Budget() = default;
    static Budget from_ms(int64_t ms) {
        Budget b;
        b.enabled = true;
        b.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
        return b;
    }
    bool expired() const {
        return enabled && std::chrono::steady_clock::now() > deadline;
    }
    void check(const char* where) const {
        if (expired()) throw BudgetExceeded(std::string("time budget exceeded in ") + where);
    }
};

inline int env_workers() {
    if (const char* s = ::getenv("CUTCRAFT_WORKERS")) {
        int v = std::atoi(s);
        if (v > 0) return v;
    }
    return 0;  // 0 = pick a default elsewhere
}

}  // namespace cutcraft
