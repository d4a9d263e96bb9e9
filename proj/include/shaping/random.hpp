#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace shaping {

/// Philox4x32-10 block: a keyed bijection on 128-bit counters.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Standard normal variates addressed by (seed, stream_id, index).
///
/// Variates 2k and 2k+1 are the Box-Muller pair built from Philox block k, so any
/// position of any stream can be regenerated without replaying the ones before it.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t position() const noexcept { return position_; }

  double at(std::uint64_t index) const noexcept;
  double next() noexcept { return at(position_++); }
  void fill(std::span<double> out) noexcept;

  GaussianSource with_stream(std::uint64_t stream_id) const noexcept {
    return GaussianSource(seed_, stream_id);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;
};

}  // namespace shaping
