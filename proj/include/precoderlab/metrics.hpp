#pragma once

#include <cstdint>
#include <vector>

#include "precoderlab/channel.hpp"
#include "precoderlab/precoder.hpp"

namespace precoderlab {

/// Noise variance plus the per-user transmit power split.
struct NoisePowerModel {
  double sigma2 = 1.0;
  double total_power = 0.0;
  std::vector<double> powers;

  /// Equal split p_k = total_power / k_users.
  static NoisePowerModel equal_allocation(double sigma2, double total_power,
                                          std::size_t k_users);
};

/// P = sigma2 * 10^(snr_db/10): the sweep axis is total power over noise.
double snr_db_to_power(double snr_db, double sigma2);

/// Transmit-side figure of merit for user k's precoder:
/// |h_k^H w|^2 / (sigma2 + sum_{j != k} |h_j^H w|^2).
double slnr_value(const ChannelSet& ch, std::size_t k, const ComplexVector& w,
                  double sigma2);

/// Receive-side SINR at user k under the full precoder matrix:
/// p_k |h_k^H w_k|^2 / (sigma2 + sum_{j != k} p_j |h_k^H w_j|^2).
double sinr(const ChannelSet& ch, const PrecoderMatrix& w,
            const NoisePowerModel& pw, std::size_t k);

/// Shannon sum rate sum_k log2(1 + SINR_k) in bits.
double sum_rate(const ChannelSet& ch, const PrecoderMatrix& w,
                const NoisePowerModel& pw);

struct RateSample {
  double snr_db = 0.0;
  std::vector<double> per_user_sinr;
  double sum_rate_bits = 0.0;
  std::int64_t trial_index = 0;
  std::uint64_t seed = 0;
};

RateSample rate_sample(const ChannelSet& ch, const PrecoderMatrix& w,
                       const NoisePowerModel& pw, double snr_db,
                       std::int64_t trial_index, std::uint64_t seed);

}  // namespace precoderlab
