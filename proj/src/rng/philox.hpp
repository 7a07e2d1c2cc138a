#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace qf::rng {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11): a keyed bijection on
// 128-bit counters. Matches the Random123 known-answer vectors.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/*!
 * Deterministic stream of random numbers addressed by (seed, stream).
 *
 * The 64-bit seed is the Philox key. Counter words 2..3 hold the stream id
 * and words 0..1 a block index, so distinct streams never share a counter.
 * Each block yields two 64-bit outputs, consumed in order.
 *
 * Uniform doubles use the top 53 bits: u = (k + 0.5) / 2^53, so u is in the
 * open interval (0, 1). Normal draws use the Box-Muller transform on two
 * consecutive uniforms (u1, u2): r = sqrt(-2 ln u1), z0 = r cos(2 pi u2),
 * z1 = r sin(2 pi u2); z0 is returned first and z1 is cached for the next
 * call.
 */
class PhiloxStream {
 public:
  using result_type = std::uint64_t;

  PhiloxStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  double uniform();
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Independent child stream; deterministic in (seed, stream, child).
  PhiloxStream split(std::uint64_t child) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace qf::rng
