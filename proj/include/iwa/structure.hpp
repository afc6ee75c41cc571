#pragma once

#include "iwa/fpmod.hpp"

namespace iwa {

/// Elementary-divisor data at height-one primes, extracted from the chain of
/// determinantal divisors g_1 | g_2 | ... | g_d. The chain quotients
/// c_i = g_i / g_{i-1} are kept alongside the per-prime exponent lists; the
/// product of all listed prime powers and residual blocks equals the
/// characteristic generator.
struct Decomposition {
  struct PrimeExponents {
    PrimeDescriptor prime;
    std::vector<int> exponents; // non-increasing
  };
  struct ResidualBlock {
    int chain_index = 0; // which c_i the block divides (1-based)
    PowerSeriesElement factor;
  };

  std::vector<PrimeExponents> primes;
  std::vector<ResidualBlock> residual_blocks;
  std::vector<Level1Canonical> chain; // c_1 | c_2 | ... | c_d (units dropped)
  Level1Canonical char_generator;
};

struct SplitDecomposition {
  std::vector<std::vector<int>> characters;
  std::vector<Decomposition> components;
};

/// g_k = canonical gcd of all k x k minors; the divisibility chain is
/// verified at precision.
std::vector<Level1Canonical> determinantal_divisors(const Presentation &P);

Decomposition decompose(const Presentation &P);

SplitDecomposition decompose_split(const Presentation &P);

} // namespace iwa
