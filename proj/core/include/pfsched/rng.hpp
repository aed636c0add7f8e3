#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pfsched/rational.hpp"

namespace pfsched {

// mt19937_64 output is pinned by the standard; the derived draws below avoid
// std::uniform_*_distribution, whose mapping is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t word() { return eng_(); }

  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      std::uint64_t w = eng_();
      if (w < limit) return w % n;
    }
  }

  std::int64_t int_in(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform over {lo, lo + 1/den, ..., hi}.
  Rat rat_grid(long lo, long hi, long den) {
    std::uint64_t steps = static_cast<std::uint64_t>((hi - lo)) * den + 1;
    return Rat(lo) + make_rat(static_cast<long>(below(steps)), den);
  }

  bool coin() { return (eng_() & 1) != 0; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pfsched
