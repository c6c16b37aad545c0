#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "oracles.hpp"
#include "precoderlab/precoder.hpp"

using namespace precoderlab;

namespace {

ChannelSet seeded_channel(std::size_t nt, std::size_t k_users, std::uint64_t seed,
                          std::uint64_t stream = 0) {
  RngStream s(seed, stream);
  return sample_channel(nt, k_users, s);
}

// Mutually orthogonal columns with distinct norms: 2 e_1, 3 e_2, e_3 + e_4.
ChannelSet orthogonal_channel() {
  ChannelSet ch{4, 3, ComplexMatrix(4, 3)};
  ch.h(0, 0) = 2.0;
  ch.h(1, 1) = 3.0;
  ch.h(2, 2) = 1.0;
  ch.h(3, 2) = 1.0;
  return ch;
}

ComplexVector random_unit(std::size_t n, RngStream& s) {
  ComplexVector v(n);
  for (auto& e : v) e = s.next_cgauss();
  return normalized(v);
}

}  // namespace

TEST_CASE("zf_direction: single user and orthogonal columns") {
  const ChannelSet single = seeded_channel(4, 1, 11);
  const ComplexVector w = zf_direction(single, 0);
  CHECK(oracles::raw_alignment(w, normalized(single.user_channel(0))) >=
        1.0 - 1e-12);

  const ChannelSet orth = orthogonal_channel();
  for (std::size_t k = 0; k < 3; ++k) {
    const ComplexVector wk = zf_direction(orth, k);
    CHECK(oracles::raw_alignment(wk, normalized(orth.user_channel(k))) >=
          1.0 - 1e-12);
  }
}

TEST_CASE("zf_direction: nulling and the pseudo-inverse oracle") {
  const ChannelSet ch = seeded_channel(4, 4, 12);
  for (std::size_t k = 0; k < 4; ++k) {
    const ComplexVector w = zf_direction(ch, k);
    CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == k) continue;
      CHECK(std::abs(dot(ch.user_channel(j), w)) <=
            1e-10 * norm(ch.user_channel(j)));
    }
    CHECK(oracles::raw_alignment(w, normalized(oracles::pinv_column(ch.h, k))) >=
          1.0 - 1e-10);

    // square channel: the Gram route coincides with the (H H^H)^{-1} h_k form
    const ComplexVector outer_form = oracles::dense_inverse_apply(
        ridged_outer_gram(ch.h, 0.0), ch.user_channel(k));
    CHECK(oracles::raw_alignment(w, normalized(outer_form)) >= 1.0 - 1e-10);
  }
}

TEST_CASE("zf_direction: rejects wide and rank-deficient channels") {
  CHECK_THROWS_AS(zf_direction(seeded_channel(2, 4, 13), 0), DimensionMismatchError);

  ChannelSet dup = seeded_channel(4, 4, 14);
  for (std::size_t i = 0; i < 4; ++i) dup.h(i, 1) = dup.h(i, 0);
  CHECK_THROWS_AS(zf_direction(dup, 0), RankDeficientError);

  // nearly-duplicate columns: factorizable but far beyond the cond ceiling
  ChannelSet near = seeded_channel(4, 4, 15);
  for (std::size_t i = 0; i < 4; ++i)
    near.h(i, 1) = near.h(i, 0) * (1.0 + 1e-9) ;
  CHECK_THROWS_AS(zf_direction(near, 0), RankDeficientError);
}

TEST_CASE("rzf_direction: limits and the dense-inverse oracle") {
  const ChannelSet single = seeded_channel(4, 1, 21);
  CHECK(oracles::raw_alignment(rzf_direction(single, 0, 0.7),
                               normalized(single.user_channel(0))) >= 1.0 - 1e-12);

  // alpha-dominant limit: matched filter
  const ChannelSet ch = seeded_channel(4, 4, 22);
  const double big = 1e6 * frobenius_norm(ch.h) * frobenius_norm(ch.h);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(oracles::raw_alignment(rzf_direction(ch, k, big),
                                 normalized(ch.user_channel(k))) >= 1.0 - 1e-3);

  // seeded 4x4, alpha = 1 against a dense inverse
  for (std::size_t k = 0; k < 4; ++k) {
    const ComplexVector oracle = oracles::dense_inverse_apply(
        ridged_outer_gram(ch.h, 1.0), ch.user_channel(k));
    CHECK(oracles::raw_alignment(rzf_direction(ch, k, 1.0), normalized(oracle)) >=
          1.0 - 1e-10);
  }
}

TEST_CASE("rzf_direction: alpha = 0 needs an invertible H H^H") {
  // tall H: H H^H has rank K < nt
  CHECK_THROWS_AS(rzf_direction(seeded_channel(4, 2, 23), 0, 0.0),
                  SingularSystemError);
  // wide H: invertible almost surely
  const ChannelSet wide = seeded_channel(2, 4, 24);
  const ComplexVector w = rzf_direction(wide, 1, 0.0);
  CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("slnr_closed_form: decoupled cases") {
  const ChannelSet orth = orthogonal_channel();
  const SlnrSolution s0 = slnr_closed_form(orth, 0, 1.0);
  CHECK(oracles::raw_alignment(s0.w, normalized(orth.user_channel(0))) >=
        1.0 - 1e-12);
  CHECK(s0.lambda == doctest::Approx(4.0).epsilon(1e-12));  // ||h_1||^2

  const ChannelSet single = seeded_channel(3, 1, 31);
  const double sigma2 = 0.5;
  const SlnrSolution s1 = slnr_closed_form(single, 0, sigma2);
  const double h2 = norm2(single.user_channel(0));
  CHECK(oracles::raw_alignment(s1.w, normalized(single.user_channel(0))) >=
        1.0 - 1e-12);
  CHECK(s1.lambda == doctest::Approx(h2 / sigma2).epsilon(1e-12));
  CHECK(s1.gamma == doctest::Approx(h2 / (sigma2 * sigma2)).epsilon(1e-12));
}

TEST_CASE("slnr_closed_form: lambda equals the quadratic form of the solve") {
  const ChannelSet ch = seeded_channel(4, 4, 32);
  for (std::size_t k = 0; k < 4; ++k) {
    const SlnrSolution s = slnr_closed_form(ch, k, 1.0);
    const ComplexVector sol =
        hpd_solve(ridged_outer_gram(leave_one_out(ch, k), 1.0), ch.user_channel(k));
    const double expect = dot(ch.user_channel(k), sol).real();
    CHECK(s.lambda == doctest::Approx(expect).epsilon(1e-10));
    CHECK(s.lambda > 0.0);
    CHECK(oracles::raw_alignment(s.w, normalized(sol)) >= 1.0 - 1e-12);
  }
}

TEST_CASE("slnr_eig: agrees with the closed form") {
  const ChannelSet orth = orthogonal_channel();
  CHECK(oracles::raw_alignment(slnr_eig(orth, 1, 1.0),
                               normalized(orth.user_channel(1))) >= 1.0 - 1e-10);

  const ChannelSet single = seeded_channel(3, 1, 41);
  CHECK(oracles::raw_alignment(slnr_eig(single, 0, 1.0),
                               normalized(single.user_channel(0))) >= 1.0 - 1e-10);

  const ChannelSet ch = seeded_channel(6, 4, 42);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(alignment(slnr_eig(ch, k, 1.0), slnr_closed_form(ch, k, 1.0).w) >=
          1.0 - 1e-10);
  }
}

TEST_CASE("alignment: phase invariance and guards") {
  RngStream s(51, 0);
  const ComplexVector w = random_unit(5, s);
  CHECK(alignment(w, w) == doctest::Approx(1.0).epsilon(1e-14));

  ComplexVector e1(3, cxd{0, 0}), e2(3, cxd{0, 0});
  e1[0] = 1.0;
  e2[1] = 1.0;
  CHECK(alignment(e1, e2) == 0.0);

  for (double theta : {0.3, 1.7, -2.5}) {
    const cxd phase{std::cos(theta), std::sin(theta)};
    ComplexVector rotated(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) rotated[i] = w[i] * phase;
    CHECK(alignment(w, rotated) >= 1.0 - 1e-12);
  }

  ComplexVector too_long = w;
  for (auto& e : too_long) e *= 2.0;
  CHECK_THROWS_AS(alignment(w, too_long), NotUnitNormError);
}

TEST_CASE("canonical_phase: rotation and idempotence") {
  const ComplexVector iy = {cxd{0, 1}, cxd{0, 0}};
  const ComplexVector r = canonical_phase(iy);
  CHECK(std::abs(r[0] - cxd{1, 0}) < 1e-15);
  CHECK(std::abs(r[1]) < 1e-15);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const ComplexVector diag = {cxd{inv_sqrt2, inv_sqrt2}, cxd{0, 0}};
  const ComplexVector rd = canonical_phase(diag);
  CHECK(rd[0].real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(rd[0].imag()) < 1e-15);

  RngStream s(52, 0);
  const ComplexVector w = canonical_phase(random_unit(6, s));
  const ComplexVector w2 = canonical_phase(w);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w2[i] == w[i]);
}

TEST_CASE("build_precoder_matrix: assembles per-user directions") {
  const ChannelSet ch = seeded_channel(4, 4, 61);
  const PrecoderMatrix slnr = build_precoder_matrix(ch, Method::SlnrClosed, 1.0, 1.0);
  const PrecoderMatrix rzf = build_precoder_matrix(ch, Method::Rzf, 1.0, 1.0);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(alignment(slnr.user_vector(k), rzf.user_vector(k)) >= 1.0 - 1e-10);
    CHECK(norm(slnr.user_vector(k)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  const ChannelSet orth = orthogonal_channel();
  const PrecoderMatrix zf = build_precoder_matrix(orth, Method::Zf, 1.0, 1.0);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(oracles::raw_alignment(zf.user_vector(k),
                                 normalized(orth.user_channel(k))) >= 1.0 - 1e-12);

  const ChannelSet single = seeded_channel(3, 1, 62);
  for (Method m : {Method::Zf, Method::Rzf, Method::SlnrClosed, Method::SlnrEig}) {
    const PrecoderMatrix pm = build_precoder_matrix(single, m, 1.0, 1.0);
    CHECK(oracles::raw_alignment(pm.user_vector(0),
                                 normalized(single.user_channel(0))) >= 1.0 - 1e-10);
  }
}

TEST_CASE("build_precoder_matrix: attaches the offending user index") {
  const ChannelSet ch = seeded_channel(3, 2, 63);
  try {
    build_precoder_matrix(ch, Method::SlnrClosed, -1.0, 1.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("user 0") != std::string::npos);
  }
}

TEST_CASE("method tokens round-trip") {
  for (Method m : {Method::Zf, Method::Rzf, Method::SlnrClosed, Method::SlnrEig})
    CHECK(parse_method(method_token(m)) == m);
  CHECK(parse_method("slnr_closed") == Method::SlnrClosed);
  CHECK(!parse_method("mrt").has_value());
}

TEST_CASE("property: SLNR equals RZF(alpha=sigma2) for any shape") {
  for (std::uint64_t trial = 0; trial < 120; ++trial) {
    RngStream s(64, trial);
    const std::size_t nt = 1 + static_cast<std::size_t>(s.next_u64() % 6);
    const std::size_t k_users = 1 + static_cast<std::size_t>(s.next_u64() % 6);
    const double sigma2 = 0.3 + 2.0 * s.next_unit();
    const ChannelSet ch = sample_channel(nt, k_users, s);
    for (std::size_t k = 0; k < k_users; ++k) {
      const SlnrSolution closed = slnr_closed_form(ch, k, sigma2);
      CHECK(alignment(closed.w, rzf_direction(ch, k, sigma2)) >= 1.0 - 1e-10);
      CHECK(alignment(slnr_eig(ch, k, sigma2), closed.w) >= 1.0 - 1e-10);
    }
  }
}

TEST_CASE("property: push-through form of RZF") {
  // (alpha I + H H^H)^{-1} h_k is collinear with column k of
  // H (alpha I + H^H H)^{-1}.
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    RngStream s(65, trial);
    const std::size_t nt = 1 + static_cast<std::size_t>(s.next_u64() % 5);
    const std::size_t k_users = 1 + static_cast<std::size_t>(s.next_u64() % 5);
    const double alpha = 0.2 + s.next_unit();
    const ChannelSet ch = sample_channel(nt, k_users, s);
    const std::size_t k = s.next_u64() % k_users;

    ComplexMatrix ridged_gram = gram(ch.h);
    for (std::size_t i = 0; i < k_users; ++i)
      ridged_gram(i, i) += alpha;
    ComplexVector ek(k_users, cxd{0, 0});
    ek[k] = 1.0;
    const ComplexVector via_gram = normalized(matvec(ch.h, hpd_solve(ridged_gram, ek)));
    CHECK(alignment(rzf_direction(ch, k, alpha), via_gram) >= 1.0 - 1e-10);
  }
}

TEST_CASE("property: RZF tends to ZF as alpha vanishes (square channels)") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const ChannelSet ch = seeded_channel(4, 4, 66, trial);
    for (std::size_t k = 0; k < 4; ++k) {
      ComplexVector zf;
      try {
        zf = zf_direction(ch, k);
      } catch (const RankDeficientError&) {
        continue;  // skip the rare ill-conditioned draw
      }
      CHECK(alignment(rzf_direction(ch, k, 1e-12), zf) >= 1.0 - 1e-6);
    }
  }
}

TEST_CASE("property: ZF nulls every cross link whenever it succeeds") {
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    RngStream s(67, trial);
    const std::size_t k_users = 1 + static_cast<std::size_t>(s.next_u64() % 5);
    const std::size_t nt = k_users + static_cast<std::size_t>(s.next_u64() % 4);
    const ChannelSet ch = sample_channel(nt, k_users, s);
    for (std::size_t k = 0; k < k_users; ++k) {
      ComplexVector w;
      try {
        w = zf_direction(ch, k);
      } catch (const RankDeficientError&) {
        continue;
      }
      for (std::size_t j = 0; j < k_users; ++j) {
        if (j == k) continue;
        CHECK(std::abs(dot(ch.user_channel(j), w)) <=
              1e-9 * norm(ch.user_channel(j)));
      }
    }
  }
}
