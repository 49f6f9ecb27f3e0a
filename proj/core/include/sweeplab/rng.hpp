// Fixed-stride splittable counter generator. value(key, i) depends only on
// (key, i), so verification loops may evaluate any index from any worker and
// results never depend on worker count.
#pragma once

#include <cstdint>

#include "sweeplab/rational.hpp"

namespace sweeplab {

constexpr std::uint64_t kRngStride = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t rng_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

// Derives an independent stream key from a user seed and a stream index.
constexpr std::uint64_t rng_key(std::uint64_t seed, std::uint64_t stream) {
  return rng_mix(rng_mix(seed + kRngStride) ^ (stream * 0xbf58476d1ce4e5b9ull + 1));
}

constexpr std::uint64_t rng_value(std::uint64_t key, std::uint64_t index) {
  return rng_mix(key + index * kRngStride);
}

inline BigInt bigint_from_u64(std::uint64_t v) {
  BigInt hi(static_cast<unsigned long>(v >> 32));
  BigInt lo(static_cast<unsigned long>(v & 0xffffffffull));
  return (hi << 32) + lo;
}

// Exact uniform sample from {0, 1/2^64, ..., (2^64-1)/2^64}.
inline Rational rng_unit(std::uint64_t key, std::uint64_t index) {
  Rational r(bigint_from_u64(rng_value(key, index)));
  BigInt d;
  mpz_mul_2exp(d.get_mpz_t(), BigInt(1).get_mpz_t(), 64);
  r /= Rational(d);
  return r;
}

// Uniform-ish integer in [0, n); modulo bias is irrelevant for test-corpus
// generation, which is this helper's only use.
inline std::uint64_t rng_below(std::uint64_t key, std::uint64_t index, std::uint64_t n) {
  return rng_value(key, index) % n;
}

inline int rng_sign(std::uint64_t key, std::uint64_t index) {
  return (rng_value(key, index) & 1) ? 1 : -1;
}

}  // namespace sweeplab
