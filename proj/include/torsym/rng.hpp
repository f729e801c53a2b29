#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace torsym {

// All randomness in the verification harness flows from one seed through
// named streams: hashing the stream name into the seed means adding a new
// test never perturbs the draws of an existing one.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (char c : name) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 1099511628211ull;
  }
  h ^= seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream) : gen_(mix_seed(seed, stream)) {}

  std::uint64_t raw() { return gen_(); }

  // uniform in [0, n), rejection-sampled so results do not depend on the
  // standard library's distribution implementations
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  long long int_in(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // 53-bit uniform in [0,1)
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool flip() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace torsym
