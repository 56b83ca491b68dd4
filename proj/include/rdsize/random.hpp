#pragma once

#include <cstdint>
#include <random>

namespace rdsize {

using Rng = std::mt19937_64;

// Independent stream for replicate/chain `index` under a master seed.
inline Rng derive_rng(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32), 0x5bd1e995u};
  return Rng(seq);
}

inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  Rng rng = derive_rng(master_seed, index);
  return rng();
}

}  // namespace rdsize
