#pragma once

// Counter-based Philox4x32-10 streams. A stream is addressed by
// (seed, stream_id, sample_index); draws within a sample advance a block counter.

#include <array>
#include <cstdint>

#include "rgm/modular.hpp"

namespace rgm {

inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += W0;
    key[1] += W1;
  }
  return ctr;
}

class PhiloxStream {
 public:
  PhiloxStream(u64 seed, std::uint32_t stream_id, u64 sample_index)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        sample_(sample_index),
        stream_(stream_id) {}

  u64 seed() const { return static_cast<u64>(key_[1]) << 32 | key_[0]; }
  std::uint32_t stream_id() const { return stream_; }
  u64 sample_index() const { return sample_; }

  std::uint32_t next_u32() {
    if (pos_ == 4) {
      if (block_ == UINT32_MAX) throw InternalError("Philox block counter exhausted");
      buf_ = philox4x32_10({static_cast<std::uint32_t>(sample_), static_cast<std::uint32_t>(sample_ >> 32), stream_, block_++},
                           key_);
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  u64 next_u64() {
    const u64 hi = next_u32();
    return hi << 32 | next_u32();
  }

  // Uniform on [0, bound) by rejection.
  u64 uniform(u64 bound) {
    if (bound <= 1) return 0;
    if (bound <= (u64{1} << 32)) {
      const std::uint32_t lim = static_cast<std::uint32_t>((u64{1} << 32) - ((u64{1} << 32) % bound));
      while (true) {
        const std::uint32_t x = next_u32();
        if (lim == 0 || x < lim) return x % bound;
      }
    }
    const u64 lim = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    while (true) {
      const u64 x = next_u64();
      if (x <= lim) return x % bound;
    }
  }

  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::array<std::uint32_t, 2> key_;
  u64 sample_;
  std::uint32_t stream_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace rgm
