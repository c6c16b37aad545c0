#include "precoderlab/rng.hpp"

#include <cmath>

namespace precoderlab {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) {
  std::array<std::uint64_t, 4> c = counter;
  std::uint64_t k0 = key[0];
  std::uint64_t k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return c;
}

std::uint64_t RngStream::next_u64() {
  if (pos_ >= 4) {
    buf_ = philox4x64({block_, 0, 0, 0}, key_);
    ++block_;
    pos_ = 0;
  }
  return buf_[pos_++];
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_unit_pos() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::complex<double> RngStream::next_cgauss() {
  const double u1 = next_unit_pos();
  const double u2 = next_unit();
  const double r = std::sqrt(-std::log(u1));
  const double theta = kTwoPi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::pair<int, int> RngStream::next_bit_pair() {
  const std::uint64_t x = next_u64();
  return {static_cast<int>(x & 1u), static_cast<int>((x >> 1) & 1u)};
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace precoderlab
