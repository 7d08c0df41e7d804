#pragma once
// Deterministic random number generation with per-path substreams.
//
// xoshiro256++ seeded through splitmix64. Normal and exponential variates are
// produced by explicit transforms (Box-Muller, inverse exponential) rather
// than std::distributions, so identical seeds give bit-identical streams on
// every platform and standard library.

#include <array>
#include <cstdint>

namespace pswitch {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Xoshiro256pp {
 public:
  // Substream `stream` of the master seed; distinct streams are decorrelated
  // by the splitmix64 scrambling of (seed, stream).
  explicit Xoshiro256pp(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t sm = seed ^ (0xA3EC647659359ACDull * (stream + 1));
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log argument.
  double uniform_pos() { return 1.0 - uniform(); }

  // Standard normal pair (Box-Muller).
  std::array<double, 2> normal_pair();

  // Exp(rate) variate.
  double exponential(double rate);

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }
  std::array<std::uint64_t, 4> state_;
};

// Fills out[0..n) with standard normals, consuming ceil(n/2) Box-Muller pairs.
void fill_normals(Xoshiro256pp& rng, double* out, std::size_t n);

}  // namespace pswitch
