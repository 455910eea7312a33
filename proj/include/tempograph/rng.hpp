#pragma once

#include <cstdint>
#include <random>

namespace tempo {

// Thin wrapper around mt19937_64 with hand-rolled bounded draws.
// std::uniform_int_distribution is implementation-defined, which would make
// generated benchmarks differ across standard libraries; the raw engine
// output is pinned by the standard, so everything here is reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // uniform in [0, n), n >= 1
    uint32_t below(uint32_t n) { return static_cast<uint32_t>(next_u64() % n); }

    // uniform in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 gen_;
};

} // namespace tempo
