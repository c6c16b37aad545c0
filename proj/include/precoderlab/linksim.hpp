#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "precoderlab/metrics.hpp"
#include "precoderlab/precoder.hpp"

namespace precoderlab {

/// Gray-coded unit-energy QPSK constellation, indexed by (b1 << 1) | b2.
/// b1 selects the sign of the in-phase part, b2 the quadrature part.
inline constexpr std::array<cxd, 4> kQpskSymbols = {
    cxd{0.7071067811865476, 0.7071067811865476},    // 00
    cxd{0.7071067811865476, -0.7071067811865476},   // 01
    cxd{-0.7071067811865476, 0.7071067811865476},   // 10
    cxd{-0.7071067811865476, -0.7071067811865476},  // 11
};

cxd modulate(int b1, int b2);

/// Quadrant decision: b1 = (Re y < 0), b2 = (Im y < 0). An exact zero
/// resolves to bit 0.
std::pair<int, int> demodulate(cxd y);

struct BerEstimate {
  double snr_db = 0.0;
  Method method = Method::Zf;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits_sent = 0;
  double ber = 0.0;
  std::size_t nt = 0;
  std::size_t k_users = 0;
  std::uint64_t seed = 0;
};

struct BerPointConfig {
  std::size_t nt = 4;
  std::size_t k_users = 4;
  Method method = Method::Zf;
  double snr_db = 0.0;
  std::uint64_t min_bits = 100000;
  std::uint64_t max_bits = 10000000;
  std::uint64_t seed = 0;
  double sigma2 = 1.0;
  /// Regularization for RZF; empty means alpha = sigma2.
  std::optional<double> alpha;
  int threads = 1;
};

/// Error-count target paired with min_bits: a point runs until it has both
/// min_bits bits and 100 errors, hard-capped at max_bits.
inline constexpr std::uint64_t kBerTargetErrors = 100;
/// Trials are committed in fixed batches so the stopping decision, and hence
/// the output, is identical for any thread count.
inline constexpr std::uint64_t kBerTrialBatch = 1024;

/// Monte-Carlo BER of the downlink at one (SNR, method) point. Each trial
/// draws a fresh channel from the stream (seed, trial), sends one QPSK
/// symbol per user through y_k = sqrt(p_k) h_k^H w_k s_k + interference +
/// CN(0, sigma2) noise, equalizes by the known effective gain, and counts
/// bit errors over all users. Fully deterministic in the config.
BerEstimate simulate_ber_point(const BerPointConfig& cfg);

/// Convenience overload with the default sigma2 = 1, alpha = sigma2 link.
BerEstimate simulate_ber_point(std::size_t nt, std::size_t k_users, Method method,
                               double snr_db, std::uint64_t min_bits,
                               std::uint64_t max_bits, std::uint64_t seed);

}  // namespace precoderlab
