#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "precoderlab/channel.hpp"
#include "precoderlab/rng.hpp"

using namespace precoderlab;

TEST_CASE("philox4x64: reference vectors") {
  // Frozen outputs cross-checked against an independent Philox4x64-10
  // implementation.
  struct Kat {
    std::array<std::uint64_t, 4> ctr;
    std::array<std::uint64_t, 2> key;
    std::array<std::uint64_t, 4> out;
  };
  const Kat kats[] = {
      {{0x0000000000000001ull, 0, 0, 0},
       {0, 0},
       {0x02f4ba6408e4d89bull, 0x3dd62b0b9ca8c5b2ull, 0x1c8667a55d902e79ull,
        0x907d7a052fd5b4dcull}},
      {{0, 0, 0, 0},
       {0x9e3779b97f4a7c15ull, 0xbb67ae8584caa73bull},
       {0x5fa2ca4e80f3a9d0ull, 0x32740cb878a6105dull, 0x3e0241658290f26aull,
        0x54ceff0f687a5ea4ull}},
      {{0x00000000deadbeefull, 0, 0x0000000012345678ull, 0},
       {0x0f0e0d0c0b0a0908ull, 0x0706050403020100ull},
       {0x944f94e4ea0e7e4eull, 0x9a80bce7b08fa7ebull, 0xff0e3b0734521cc4ull,
        0x2b2471d763a81063ull}},
  };
  for (const Kat& k : kats) CHECK(philox4x64(k.ctr, k.key) == k.out);
}

TEST_CASE("RngStream: determinism and stream separation") {
  RngStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  bool all_equal = true, c_differs = false, d_differs = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    c_differs = c_differs || (va != c.next_u64());
    d_differs = d_differs || (va != d.next_u64());
  }
  CHECK(all_equal);
  CHECK(c_differs);
  CHECK(d_differs);
}

TEST_CASE("RngStream: uniform ranges") {
  RngStream s(7, 0);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = s.next_unit_pos();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    const auto [b1, b2] = s.next_bit_pair();
    CHECK((b1 == 0 || b1 == 1));
    CHECK((b2 == 0 || b2 == 1));
  }
}

TEST_CASE("derive_seed: deterministic and index-separated") {
  CHECK(derive_seed(5, 0) == derive_seed(5, 0));
  CHECK(derive_seed(5, 0) != derive_seed(5, 1));
  CHECK(derive_seed(5, 0) != derive_seed(6, 0));
}

TEST_CASE("sample_channel: bit-identical for identical (seed, stream)") {
  RngStream s1(99, 12), s2(99, 12);
  const ChannelSet a = sample_channel(5, 3, s1);
  const ChannelSet b = sample_channel(5, 3, s2);
  REQUIRE(a.h.entries().size() == b.h.entries().size());
  CHECK(std::memcmp(a.h.entries().data(), b.h.entries().data(),
                    a.h.entries().size() * sizeof(cxd)) == 0);

  RngStream s3(99, 13);
  const ChannelSet c = sample_channel(5, 3, s3);
  CHECK(std::memcmp(a.h.entries().data(), c.h.entries().data(),
                    a.h.entries().size() * sizeof(cxd)) != 0);
}

TEST_CASE("sample_channel: CN(0,1) moments over 1e5 draws") {
  // 5-standard-error tolerances at n = 1e5: mean magnitude 0.016, power 0.016.
  const std::size_t nt = 10, k_users = 10, reps = 1000;
  cxd mean_acc{0.0, 0.0};
  double power_acc = 0.0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    RngStream s(2026, r);
    const ChannelSet ch = sample_channel(nt, k_users, s);
    for (const cxd& e : ch.h.entries()) {
      mean_acc += e;
      power_acc += std::norm(e);
    }
  }
  const double n = static_cast<double>(nt * k_users * reps);
  CHECK(std::abs(mean_acc / n) <= 0.02);
  CHECK(power_acc / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sample_channel: rejects empty dimensions") {
  RngStream s(1, 0);
  CHECK_THROWS_AS(sample_channel(0, 3, s), InvalidDimensionError);
  CHECK_THROWS_AS(sample_channel(3, 0, s), InvalidDimensionError);
}

TEST_CASE("leave_one_out: definition cases") {
  RngStream s(314, 0);
  const ChannelSet ch2 = sample_channel(4, 2, s);
  const ComplexMatrix m = leave_one_out(ch2, 0);
  REQUIRE(m.cols() == 1);
  for (std::size_t i = 0; i < 4; ++i) CHECK(m(i, 0) == ch2.h(i, 1));

  const ChannelSet ch1 = sample_channel(4, 1, s);
  const ComplexMatrix empty = leave_one_out(ch1, 0);
  CHECK(empty.rows() == 4);
  CHECK(empty.cols() == 0);

  const ChannelSet ch4 = sample_channel(3, 4, s);
  const ComplexMatrix m3 = leave_one_out(ch4, 2);
  REQUIRE(m3.cols() == 3);
  const std::size_t kept[] = {0, 1, 3};
  for (std::size_t out = 0; out < 3; ++out)
    for (std::size_t i = 0; i < 3; ++i) CHECK(m3(i, out) == ch4.h(i, kept[out]));

  CHECK_THROWS_AS(leave_one_out(ch4, 4), IndexOutOfRangeError);
}

TEST_CASE("leave_one_out: dropped column plus the rest spans H's columns") {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    RngStream s(2718, trial);
    const std::size_t nt = 2 + trial % 4;
    const std::size_t k_users = 1 + trial % 5;
    const ChannelSet ch = sample_channel(nt, k_users, s);
    for (std::size_t k = 0; k < k_users; ++k) {
      const ComplexMatrix rest = leave_one_out(ch, k);
      // reassemble [rest(0..k-1), h_k, rest(k..)] and compare with H
      for (std::size_t j = 0; j < k_users; ++j) {
        const ComplexVector expect = ch.h.col(j);
        const ComplexVector got = j == k   ? ch.user_channel(k)
                                  : j < k  ? rest.col(j)
                                           : rest.col(j - 1);
        for (std::size_t i = 0; i < nt; ++i) CHECK(got[i] == expect[i]);
      }
    }
  }
}
