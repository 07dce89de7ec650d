#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "etnckit/rational.hpp"

namespace etnckit {

// Deterministic RNG: mt19937_64 plus rejection sampling, so a fixed seed gives
// the same stream on every platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("empty range");
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= lim);
        return v % n;
    }

    // uniform in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi) {
        if (lo > hi) throw std::invalid_argument("empty range");
        uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
        return static_cast<int64_t>(static_cast<uint64_t>(lo) + below(span));
    }

    bool coin() { return below(2) == 1; }

    // random p/q with |p| <= maxabs_num, 1 <= q <= maxden
    Rational rational(int64_t maxabs_num, uint64_t maxden) {
        Rational r(static_cast<long>(range(-maxabs_num, maxabs_num)),
                   static_cast<unsigned long>(below(maxden) + 1));
        r.canonicalize();
        return r;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace etnckit
