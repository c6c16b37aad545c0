#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>

namespace precoderlab {

/// Philox4x64-10 counter-based block function (pure integer arithmetic, so
/// sequences are identical across platforms and independent of call order).
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

/// A deterministic random stream keyed by (master_seed, stream_index).
/// Blocks are generated in counter mode, so distinct stream indices under the
/// same master seed can never produce overlapping block sequences. Each
/// stream is owned by a single execution lane.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : key_{master_seed, stream_index} {}

  std::uint64_t master_seed() const { return key_[0]; }
  std::uint64_t stream_index() const { return key_[1]; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1), 53-bit resolution.
  double next_unit();
  /// Uniform in (0, 1]; safe as a log() argument.
  double next_unit_pos();
  /// Circularly-symmetric complex Gaussian CN(0,1): Re and Im are
  /// independent N(0, 1/2). Box-Muller on two fresh uniforms.
  std::complex<double> next_cgauss();
  /// Two fair bits from one block word.
  std::pair<int, int> next_bit_pair();

 private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buf_{};
  unsigned pos_ = 4;  // empty
};

/// i-th output of the SplitMix64 sequence seeded with `master_seed`. Used to
/// derive independent sub-experiment seeds (e.g. one per BER sweep point).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace precoderlab
