#pragma once

#include <optional>
#include <string_view>

#include "precoderlab/channel.hpp"
#include "precoderlab/linalg.hpp"

namespace precoderlab {

enum class Method { Zf, Rzf, SlnrClosed, SlnrEig };

std::string_view method_token(Method m);
std::optional<Method> parse_method(std::string_view token);

struct PrecoderParams {
  double sigma2 = 1.0;
  double alpha = 1.0;
};

/// K unit-norm precoding vectors, one column per user, plus the method and
/// parameters that produced them.
struct PrecoderMatrix {
  Method method = Method::Zf;
  ComplexMatrix columns;  // nt x K
  PrecoderParams params;

  std::size_t nt() const { return columns.rows(); }
  std::size_t k_users() const { return columns.cols(); }
  ComplexVector user_vector(std::size_t k) const { return columns.col(k); }
};

/// Output of the closed-form SLNR construction for one user: the unit-norm
/// direction w, the squared norm gamma of the unnormalized solve, and the
/// max-SLNR eigenvalue lambda = h_k^H (sigma2 I + H_-k H_-k^H)^{-1} h_k.
struct SlnrSolution {
  ComplexVector w;
  double gamma;
  double lambda;
};

/// Condition-number ceiling for the ZF Gram inverse; beyond this, double
/// precision leaves too few digits for meaningful nulling.
inline constexpr double kZfConditionLimit = 1e12;

/// Unit-norm column k of H (H^H H)^{-1} (pseudo-inverse zero-forcing).
/// Requires nt >= K; throws RankDeficientError when cond(H^H H) exceeds
/// kZfConditionLimit.
ComplexVector zf_direction(const ChannelSet& ch, std::size_t k);

/// Unit-norm direction of (alpha I + H H^H)^{-1} h_k. alpha = 0 is allowed
/// only when H H^H is invertible (throws SingularSystemError otherwise).
ComplexVector rzf_direction(const ChannelSet& ch, std::size_t k, double alpha);

/// Max-SLNR precoder for user k via the direct solve
/// (sigma2 I + H_-k H_-k^H)^{-1} h_k, normalized.
SlnrSolution slnr_closed_form(const ChannelSet& ch, std::size_t k, double sigma2);

/// Max-SLNR precoder for user k as the dominant eigenvector of the rank-one
/// operator v -> (sigma2 I + H_-k H_-k^H)^{-1} h_k (h_k^H v), computed by
/// power iteration started at h_k.
ComplexVector slnr_eig(const ChannelSet& ch, std::size_t k, double sigma2);

/// Same as slnr_eig but also returns the converged eigenvalue estimate.
EigenPair slnr_eig_solution(const ChannelSet& ch, std::size_t k, double sigma2);

/// |w1^H w2| for unit vectors, clamped to [0, 1]. 1 means equal up to a
/// unit-modulus phase. Throws NotUnitNormError if either norm deviates from
/// 1 by more than 1e-9.
double alignment(const ComplexVector& w1, const ComplexVector& w2);

/// Rotates w by a unit-modulus scalar so its largest-magnitude entry is real
/// and positive. Idempotent; used only to make serialized vectors
/// deterministic.
ComplexVector canonical_phase(const ComplexVector& w);

/// Assembles the per-user directions of `method` into one transmit matrix.
/// alpha is ignored by ZF and the SLNR methods; sigma2 is ignored by ZF and
/// RZF. Per-user failures are rethrown with the offending user index.
PrecoderMatrix build_precoder_matrix(const ChannelSet& ch, Method method,
                                     double sigma2, double alpha);

}  // namespace precoderlab
