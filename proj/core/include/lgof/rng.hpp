#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace lgof {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3", SC'11). Exposed for known-answer tests.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

// Counter-based random stream. A stream is identified by (seed, stream id);
// draw k of stream (s, r) is a pure function of (s, r, k), so replication r
// of a Monte Carlo run produces the same variates no matter which thread
// evaluates it or in which order.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t draws() const noexcept { return position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;  // number of 64-bit words consumed
  std::uint64_t block_index_ = ~std::uint64_t{0};
  PhiloxCounter block_{};
};

// SplitMix64 finaliser; used to derive independent seeds for sub-studies
// (calibration vs. each alternative) from one user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) noexcept;
std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) noexcept;

}  // namespace lgof
