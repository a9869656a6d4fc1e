#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cvqa {

// Counter-based seed derivation: every sampled object is addressed by a
// (master seed, path...) tuple, so replays are independent of thread
// scheduling and of how many draws other cells consumed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t p : path) {
    s = splitmix64(s ^ p);
  }
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t master, std::initializer_list<std::uint64_t> path)
      : eng_(derive_seed(master, path)) {}

  // Uniform angle in [0, 2*pi).
  double angle() {
    return std::uniform_real_distribution<double>(
        0.0, 6.283185307179586476925286766559)(eng_);
  }

  // Uniform quarter-turn in {0,1,2,3}.
  std::uint8_t quarter() {
    return static_cast<std::uint8_t>(
        std::uniform_int_distribution<int>(0, 3)(eng_));
  }

  std::uint64_t integer(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(eng_);
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cvqa
