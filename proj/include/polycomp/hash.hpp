#pragma once

// Canonical 128-bit readout fingerprint (FNV-1a). Classes are fed in
// ascending k, entries in ascending weight with their multiplicities, so equal
// multisets always hash equally. Callers still compare on a hash match.

#include <cstdint>
#include <vector>

#include "polycomp/composition.hpp"

namespace polycomp {

using Hash128 = unsigned __int128;

class Fnv128 {
 public:
  void add(std::uint32_t x) {
    for (int i = 0; i < 4; ++i) {
      state_ ^= static_cast<std::uint8_t>(x >> (8 * i));
      state_ *= kPrime;
    }
  }
  Hash128 value() const noexcept { return state_; }

 private:
  static constexpr Hash128 kPrime = (static_cast<Hash128>(1) << 88) + 0x13b;
  Hash128 state_ = (static_cast<Hash128>(0x6c62272e07bb0142ULL) << 64) | 0x62b821756295c58dULL;
};

// Hash of r with the classes in `skip` left out (skip must be ascending).
Hash128 readout_hash(const Readout& r, const std::vector<int>& skip = {});

struct Hash128Hasher {
  std::size_t operator()(Hash128 h) const noexcept {
    return static_cast<std::size_t>(static_cast<std::uint64_t>(h) ^ static_cast<std::uint64_t>(h >> 64));
  }
};

}  // namespace polycomp
