#include "precoderlab/precoder.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace precoderlab {

namespace {

// Rough extremal-eigenvalue estimates for a Hermitian positive-definite
// matrix with an already-computed factorization: a few plain power
// iterations each way. Only used as a threshold test, so convergence to the
// last digit does not matter.
double cond_estimate(const ComplexMatrix& g, const HpdFactor& factor) {
  const std::size_t n = g.rows();
  if (n <= 1) return 1.0;
  ComplexVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = cxd{1.0, 0.25 * static_cast<double>(i + 1)};
  v = normalized(v);
  ComplexVector u = v;
  double lam_max = 0.0;
  for (int it = 0; it < 48; ++it) {
    ComplexVector w = matvec(g, u);
    const double nw = norm(w);
    if (nw == 0.0) return std::numeric_limits<double>::infinity();
    lam_max = nw;
    for (std::size_t i = 0; i < n; ++i) u[i] = w[i] / nw;
  }
  double inv_lam_min = 0.0;
  u = v;
  for (int it = 0; it < 48; ++it) {
    ComplexVector w = factor.solve(u);
    const double nw = norm(w);
    if (nw == 0.0) break;
    inv_lam_min = nw;
    for (std::size_t i = 0; i < n; ++i) u[i] = w[i] / nw;
  }
  return lam_max * inv_lam_min;
}

ComplexVector zf_from_factor(const ChannelSet& ch, const HpdFactor& gram_factor,
                             std::size_t k) {
  ComplexVector ek(ch.k_users, cxd{0.0, 0.0});
  ek[k] = 1.0;
  // column k of H (H^H H)^{-1}
  return normalized(matvec(ch.h, gram_factor.solve(ek)));
}

HpdFactor zf_gram_factor(const ChannelSet& ch) {
  if (ch.nt < ch.k_users)
    throw DimensionMismatchError("zf_direction requires nt >= k_users");
  const ComplexMatrix g = gram(ch.h);
  try {
    HpdFactor factor(g);
    if (cond_estimate(g, factor) > kZfConditionLimit)
      throw RankDeficientError("H^H H exceeds the ZF conditioning threshold");
    return factor;
  } catch (const NotPositiveDefiniteError&) {
    throw RankDeficientError("H^H H is numerically rank deficient");
  }
}

HpdFactor rzf_system_factor(const ChannelSet& ch, double alpha) {
  if (alpha < 0.0) throw ConfigError("rzf_direction: alpha must be >= 0");
  try {
    return HpdFactor(ridged_outer_gram(ch.h, alpha));
  } catch (const NotPositiveDefiniteError&) {
    throw SingularSystemError("alpha I + H H^H is singular (alpha = " +
                              std::to_string(alpha) + ")");
  }
}

HpdFactor slnr_leakage_factor(const ChannelSet& ch, std::size_t k, double sigma2) {
  if (!(sigma2 > 0.0)) throw ConfigError("slnr precoder: sigma2 must be > 0");
  return HpdFactor(ridged_outer_gram(leave_one_out(ch, k), sigma2));
}

SlnrSolution slnr_from_factor(const ChannelSet& ch, const HpdFactor& factor,
                              std::size_t k) {
  const ComplexVector hk = ch.user_channel(k);
  const ComplexVector wt = factor.solve(hk);
  const double gamma = norm2(wt);
  const double lambda = dot(hk, wt).real();
  return {normalized(wt), gamma, lambda};
}

EigenPair slnr_eig_from_factor(const ChannelSet& ch, const HpdFactor& factor,
                               std::size_t k) {
  const ComplexVector hk = ch.user_channel(k);
  const LinearOperator apply = [&](const ComplexVector& v) {
    const cxd c = dot(hk, v);
    ComplexVector rhs(hk.size());
    for (std::size_t i = 0; i < hk.size(); ++i) rhs[i] = hk[i] * c;
    return factor.solve(rhs);
  };
  return dominant_eigvec(apply, ch.nt, hk);
}

}  // namespace

std::string_view method_token(Method m) {
  switch (m) {
    case Method::Zf: return "zf";
    case Method::Rzf: return "rzf";
    case Method::SlnrClosed: return "slnr";
    case Method::SlnrEig: return "slnr_eig";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view token) {
  if (token == "zf") return Method::Zf;
  if (token == "rzf") return Method::Rzf;
  if (token == "slnr" || token == "slnr_closed") return Method::SlnrClosed;
  if (token == "slnr_eig") return Method::SlnrEig;
  return std::nullopt;
}

ComplexVector zf_direction(const ChannelSet& ch, std::size_t k) {
  if (k >= ch.k_users) throw IndexOutOfRangeError("zf_direction: user index");
  return zf_from_factor(ch, zf_gram_factor(ch), k);
}

ComplexVector rzf_direction(const ChannelSet& ch, std::size_t k, double alpha) {
  if (k >= ch.k_users) throw IndexOutOfRangeError("rzf_direction: user index");
  return normalized(rzf_system_factor(ch, alpha).solve(ch.user_channel(k)));
}

SlnrSolution slnr_closed_form(const ChannelSet& ch, std::size_t k, double sigma2) {
  if (k >= ch.k_users) throw IndexOutOfRangeError("slnr_closed_form: user index");
  return slnr_from_factor(ch, slnr_leakage_factor(ch, k, sigma2), k);
}

ComplexVector slnr_eig(const ChannelSet& ch, std::size_t k, double sigma2) {
  return slnr_eig_solution(ch, k, sigma2).v;
}

EigenPair slnr_eig_solution(const ChannelSet& ch, std::size_t k, double sigma2) {
  if (k >= ch.k_users) throw IndexOutOfRangeError("slnr_eig: user index");
  return slnr_eig_from_factor(ch, slnr_leakage_factor(ch, k, sigma2), k);
}

double alignment(const ComplexVector& w1, const ComplexVector& w2) {
  if (w1.size() != w2.size()) throw DimensionMismatchError("alignment: length mismatch");
  if (std::abs(norm(w1) - 1.0) > 1e-9 || std::abs(norm(w2) - 1.0) > 1e-9)
    throw NotUnitNormError("alignment requires unit-norm inputs");
  const double a = std::abs(dot(w1, w2));
  return a > 1.0 ? 1.0 : a;
}

ComplexVector canonical_phase(const ComplexVector& w) {
  std::size_t imax = 0;
  double amax = -1.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double a = std::abs(w[i]);
    if (a > amax) {
      amax = a;
      imax = i;
    }
  }
  if (!(amax > 0.0))
    throw ZeroOperatorError("canonical_phase: zero vector has no phase");
  const cxd rot = std::conj(w[imax]) / amax;
  ComplexVector out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] * rot;
  // the pivot entry is |w[imax]| by construction; write it exactly so the
  // operation is idempotent to the bit
  out[imax] = cxd{amax, 0.0};
  return out;
}

PrecoderMatrix build_precoder_matrix(const ChannelSet& ch, Method method,
                                     double sigma2, double alpha) {
  PrecoderMatrix out;
  out.method = method;
  out.params = {sigma2, alpha};
  out.columns = ComplexMatrix(ch.nt, ch.k_users);

  // Shared factorizations: the ZF Gram and the RZF system matrix do not
  // depend on the user, so they are computed once and reused; results are
  // identical to the per-user entry points, which factor the same matrix.
  std::optional<HpdFactor> shared;
  if (method == Method::Zf)
    shared.emplace(zf_gram_factor(ch));
  else if (method == Method::Rzf)
    shared.emplace(rzf_system_factor(ch, alpha));

  for (std::size_t k = 0; k < ch.k_users; ++k) {
    try {
      switch (method) {
        case Method::Zf:
          out.columns.set_col(k, zf_from_factor(ch, *shared, k));
          break;
        case Method::Rzf:
          out.columns.set_col(k, normalized(shared->solve(ch.user_channel(k))));
          break;
        case Method::SlnrClosed:
          out.columns.set_col(k, slnr_from_factor(ch, slnr_leakage_factor(ch, k, sigma2), k).w);
          break;
        case Method::SlnrEig:
          out.columns.set_col(k, slnr_eig_from_factor(ch, slnr_leakage_factor(ch, k, sigma2), k).v);
          break;
      }
    } catch (const Error& e) {
      throw Error("precoder " + std::string(method_token(method)) + " failed for user " +
                  std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace precoderlab
