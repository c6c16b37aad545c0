#include "precoderlab/linksim.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <vector>

#include "precoderlab/parallel.hpp"

namespace precoderlab {

cxd modulate(int b1, int b2) {
  return kQpskSymbols[static_cast<std::size_t>(((b1 & 1) << 1) | (b2 & 1))];
}

std::pair<int, int> demodulate(cxd y) {
  return {y.real() < 0.0 ? 1 : 0, y.imag() < 0.0 ? 1 : 0};
}

namespace {

// One block-fading use: fresh channel, one QPSK symbol per user, coherent
// single-tap equalization by the known effective gain. Returns the bit
// error count over all users.
std::uint64_t run_trial(const BerPointConfig& cfg, double per_user_power,
                        double alpha, std::uint64_t trial) {
  RngStream stream(cfg.seed, trial);
  const ChannelSet ch = sample_channel(cfg.nt, cfg.k_users, stream);

  std::vector<std::pair<int, int>> bits(cfg.k_users);
  std::vector<cxd> symbols(cfg.k_users);
  for (std::size_t k = 0; k < cfg.k_users; ++k) {
    bits[k] = stream.next_bit_pair();
    symbols[k] = modulate(bits[k].first, bits[k].second);
  }
  const double noise_scale = std::sqrt(cfg.sigma2);
  std::vector<cxd> noise(cfg.k_users);
  for (std::size_t k = 0; k < cfg.k_users; ++k)
    noise[k] = noise_scale * stream.next_cgauss();

  const PrecoderMatrix w =
      build_precoder_matrix(ch, cfg.method, cfg.sigma2, alpha);

  const double amp = std::sqrt(per_user_power);
  std::uint64_t errors = 0;
  for (std::size_t k = 0; k < cfg.k_users; ++k) {
    const ComplexVector hk = ch.h.col(k);
    cxd y = noise[k];
    cxd gain{0.0, 0.0};
    for (std::size_t j = 0; j < cfg.k_users; ++j) {
      const cxd g = amp * dot(hk, w.columns.col(j));
      y += g * symbols[j];
      if (j == k) gain = g;
    }
    const auto [b1, b2] = demodulate(y / gain);
    errors += static_cast<std::uint64_t>(b1 != bits[k].first) +
              static_cast<std::uint64_t>(b2 != bits[k].second);
  }
  return errors;
}

}  // namespace

BerEstimate simulate_ber_point(const BerPointConfig& cfg) {
  if (cfg.nt == 0 || cfg.k_users == 0)
    throw InvalidDimensionError("simulate_ber_point: nt and k_users must be >= 1");
  if (!(cfg.sigma2 > 0.0)) throw ConfigError("simulate_ber_point: sigma2 must be > 0");
  if (cfg.max_bits == 0) throw ConfigError("simulate_ber_point: max_bits must be >= 1");
  if (cfg.min_bits > cfg.max_bits)
    throw ConfigError("simulate_ber_point: min_bits must be <= max_bits");

  const double alpha = cfg.alpha.value_or(cfg.sigma2);
  const double total_power = snr_db_to_power(cfg.snr_db, cfg.sigma2);
  const double per_user_power = total_power / static_cast<double>(cfg.k_users);
  const std::uint64_t bits_per_trial = 2 * cfg.k_users;

  std::uint64_t errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t next_trial = 0;

  while (!((bits >= cfg.min_bits && errors >= kBerTargetErrors) ||
           bits >= cfg.max_bits)) {
    const std::uint64_t remaining =
        (cfg.max_bits - bits + bits_per_trial - 1) / bits_per_trial;
    const std::uint64_t batch = std::min(kBerTrialBatch, remaining);

    // Exact integer reduction: any summation order gives the same counters,
    // so the batched result is independent of the thread count.
    std::atomic<std::uint64_t> batch_errors{0};
    const std::uint64_t base = next_trial;
    parallel_for_range(
        static_cast<std::int64_t>(batch), cfg.threads,
        [&](std::int64_t b, std::int64_t e) {
          std::uint64_t local = 0;
          for (std::int64_t t = b; t < e; ++t) {
            try {
              local += run_trial(cfg, per_user_power, alpha,
                                 base + static_cast<std::uint64_t>(t));
            } catch (const Error& err) {
              throw Error(std::string(err.what()) + " [seed=" +
                          std::to_string(cfg.seed) + ", trial=" +
                          std::to_string(base + static_cast<std::uint64_t>(t)) + "]");
            }
          }
          batch_errors.fetch_add(local, std::memory_order_relaxed);
        });

    errors += batch_errors.load();
    bits += batch * bits_per_trial;
    next_trial += batch;
  }

  BerEstimate est;
  est.snr_db = cfg.snr_db;
  est.method = cfg.method;
  est.bit_errors = errors;
  est.bits_sent = bits;
  est.ber = static_cast<double>(errors) / static_cast<double>(bits);
  est.nt = cfg.nt;
  est.k_users = cfg.k_users;
  est.seed = cfg.seed;
  return est;
}

BerEstimate simulate_ber_point(std::size_t nt, std::size_t k_users, Method method,
                               double snr_db, std::uint64_t min_bits,
                               std::uint64_t max_bits, std::uint64_t seed) {
  BerPointConfig cfg;
  cfg.nt = nt;
  cfg.k_users = k_users;
  cfg.method = method;
  cfg.snr_db = snr_db;
  cfg.min_bits = min_bits;
  cfg.max_bits = max_bits;
  cfg.seed = seed;
  return simulate_ber_point(cfg);
}

}  // namespace precoderlab
