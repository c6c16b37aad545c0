#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "precoderlab/linksim.hpp"
#include "precoderlab/metrics.hpp"

namespace precoderlab {

enum class Command { SumRate, Ber, Equiv };

struct ExperimentConfig {
  Command command = Command::SumRate;
  std::size_t nt = 4;
  std::size_t k_users = 4;
  std::vector<double> snr_db_list = {-5, 0, 5, 10, 15, 20, 25, 30};
  std::int64_t trials = 1000;          // sumrate / equiv
  std::uint64_t min_bits = 100000;     // ber
  std::uint64_t max_bits = 10000000;   // ber
  std::vector<Method> methods = {Method::Zf, Method::Rzf, Method::SlnrClosed};
  std::optional<double> fixed_alpha;   // empty: alpha = sigma2
  double sigma2 = 1.0;
  std::uint64_t master_seed = 1;
  int threads = 1;
};

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& cfg);

/// Named parameter sets mirroring the reference experiments.
struct Preset {
  std::size_t nt;
  std::size_t k_users;
  std::vector<double> snr_db_list;
};
std::optional<Preset> preset_by_name(std::string_view name);  // fig1a/fig1b/fig2a/fig2b

struct SumRateRow {
  double snr_db;
  Method method;
  std::int64_t trials;
  double mean_sum_rate_bits;
  double stderr_bits;
  std::uint64_t seed;
};

struct EquivRow {
  std::int64_t trial;
  std::size_t user;
  double alignment_slnr_rzf;
  double alignment_eig_closed;
  double lambda_rel_err;
  std::uint64_t seed;
};

struct EquivSummary {
  double min_alignment_slnr_rzf = 1.0;
  double min_alignment_eig_closed = 1.0;
  double max_lambda_rel_err = 0.0;
  bool pass = false;
  EquivRow worst{};  // row achieving min_alignment_slnr_rzf
};

inline constexpr double kEquivAlignmentFloor = 1.0 - 1e-10;
inline constexpr double kEquivLambdaRelTol = 1e-9;

/// Mean sum rate per (snr, method) over shared per-trial channel draws
/// (channels depend only on (master_seed, trial), never on snr or method).
std::vector<SumRateRow> run_sumrate(const ExperimentConfig& cfg);

/// One BER point per (snr, method). The per-point seed is derived from the
/// master seed and the snr index only, so methods at the same point see
/// identical channel, symbol and noise draws.
std::vector<BerEstimate> run_ber(const ExperimentConfig& cfg);

/// Certifies per user and channel that the closed-form SLNR precoder, the
/// eigen-path SLNR precoder, and RZF with alpha = sigma2 are the same
/// direction, and that the SLNR value of the returned precoder equals the
/// construction's eigenvalue.
std::pair<std::vector<EquivRow>, EquivSummary> run_equiv(const ExperimentConfig& cfg);

// ---- CSV rendering (byte-stable: fixed headers, %.17g doubles, no
// timestamps) ----

std::string format_double(double v);
std::string sumrate_csv(const std::vector<SumRateRow>& rows);
std::string ber_csv(const std::vector<BerEstimate>& rows);
std::string equiv_csv(const std::vector<EquivRow>& rows);

}  // namespace precoderlab
