#pragma once

#include <cstdint>
#include <random>

namespace groupdyn {

// SplitMix64 finalizer; used to whiten seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Replica i derives its stream seed as splitmix64(master + (i+1) * gamma),
// the standard fixed-increment stream split. Replicas never share a seed.
inline std::uint64_t replica_seed(std::uint64_t master, std::uint64_t replica) {
  return splitmix64(master + (replica + 1) * 0x9e3779b97f4a7c15ULL);
}

// Deterministic random stream. Draws bypass std::*_distribution so the
// byte-for-byte output contract holds across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1); 52-bit resolution.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Exponential waiting time with the given rate; strictly positive.
  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

  bool bernoulli(double p) { return uniform_open() < p; }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace groupdyn
