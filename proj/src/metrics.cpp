#include "precoderlab/metrics.hpp"

#include <cmath>

namespace precoderlab {

NoisePowerModel NoisePowerModel::equal_allocation(double sigma2, double total_power,
                                                  std::size_t k_users) {
  if (!(sigma2 > 0.0)) throw ConfigError("NoisePowerModel: sigma2 must be > 0");
  if (total_power < 0.0) throw ConfigError("NoisePowerModel: total_power must be >= 0");
  if (k_users == 0) throw InvalidDimensionError("NoisePowerModel: k_users must be >= 1");
  NoisePowerModel pw;
  pw.sigma2 = sigma2;
  pw.total_power = total_power;
  pw.powers.assign(k_users, total_power / static_cast<double>(k_users));
  return pw;
}

double snr_db_to_power(double snr_db, double sigma2) {
  return sigma2 * std::pow(10.0, snr_db / 10.0);
}

double slnr_value(const ChannelSet& ch, std::size_t k, const ComplexVector& w,
                  double sigma2) {
  if (k >= ch.k_users) throw IndexOutOfRangeError("slnr_value: user index");
  if (w.size() != ch.nt) throw DimensionMismatchError("slnr_value: vector length");
  if (!(sigma2 > 0.0)) throw ConfigError("slnr_value: sigma2 must be > 0");
  if (std::abs(norm(w) - 1.0) > 1e-9)
    throw NotUnitNormError("slnr_value requires a unit-norm precoder");
  double leakage = 0.0;
  for (std::size_t j = 0; j < ch.k_users; ++j) {
    if (j == k) continue;
    leakage += std::norm(dot(ch.h.col(j), w));
  }
  return std::norm(dot(ch.h.col(k), w)) / (sigma2 + leakage);
}

double sinr(const ChannelSet& ch, const PrecoderMatrix& w,
            const NoisePowerModel& pw, std::size_t k) {
  if (k >= ch.k_users) throw IndexOutOfRangeError("sinr: user index");
  if (w.nt() != ch.nt || w.k_users() != ch.k_users ||
      pw.powers.size() != ch.k_users)
    throw DimensionMismatchError("sinr: channel/precoder/power shapes disagree");
  const ComplexVector hk = ch.h.col(k);
  double interference = 0.0;
  double signal = 0.0;
  for (std::size_t j = 0; j < ch.k_users; ++j) {
    const double g = std::norm(dot(hk, w.columns.col(j)));
    if (j == k)
      signal = pw.powers[j] * g;
    else
      interference += pw.powers[j] * g;
  }
  return signal / (pw.sigma2 + interference);
}

double sum_rate(const ChannelSet& ch, const PrecoderMatrix& w,
                const NoisePowerModel& pw) {
  double bits = 0.0;
  for (std::size_t k = 0; k < ch.k_users; ++k)
    bits += std::log2(1.0 + sinr(ch, w, pw, k));
  return bits;
}

RateSample rate_sample(const ChannelSet& ch, const PrecoderMatrix& w,
                       const NoisePowerModel& pw, double snr_db,
                       std::int64_t trial_index, std::uint64_t seed) {
  RateSample s;
  s.snr_db = snr_db;
  s.trial_index = trial_index;
  s.seed = seed;
  s.per_user_sinr.resize(ch.k_users);
  double bits = 0.0;
  for (std::size_t k = 0; k < ch.k_users; ++k) {
    s.per_user_sinr[k] = sinr(ch, w, pw, k);
    bits += std::log2(1.0 + s.per_user_sinr[k]);
  }
  s.sum_rate_bits = bits;
  return s;
}

}  // namespace precoderlab
