#ifndef CFCHROMA_RNG_HPP
#define CFCHROMA_RNG_HPP

#include <cstdint>
#include <random>

namespace cfc {

// All randomized suites draw through these helpers.  std::mt19937's raw
// stream is pinned by the standard, but the distribution classes are not,
// so we do the range reduction ourselves to keep runs byte-identical
// across standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(static_cast<uint32_t>(seed)) {}

    // uniform integer in [0, n), n >= 1, by rejection sampling
    uint32_t below(uint32_t n) {
        if (n <= 1) return 0;
        const uint32_t limit = UINT32_MAX - (UINT32_MAX % n);
        uint32_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    int range(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<uint32_t>(hi - lo + 1)));
    }

    bool coin() { return (gen_() & 1u) != 0; }

  private:
    std::mt19937 gen_;
};

}  // namespace cfc

#endif
