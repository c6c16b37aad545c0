#include "precoderlab/channel.hpp"

namespace precoderlab {

ComplexVector ChannelSet::user_channel(std::size_t k) const {
  if (k >= k_users) throw IndexOutOfRangeError("user index out of range");
  return h.col(k);
}

ChannelSet sample_channel(std::size_t nt, std::size_t k_users, RngStream& stream) {
  if (nt == 0 || k_users == 0)
    throw InvalidDimensionError("sample_channel: nt and k_users must be >= 1");
  ChannelSet ch{nt, k_users, ComplexMatrix(nt, k_users)};
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t j = 0; j < k_users; ++j) ch.h(i, j) = stream.next_cgauss();
  for (std::size_t j = 0; j < k_users; ++j) {
    while (norm2(ch.h.col(j)) == 0.0) {
      for (std::size_t i = 0; i < nt; ++i) ch.h(i, j) = stream.next_cgauss();
    }
  }
  return ch;
}

ComplexMatrix leave_one_out(const ChannelSet& ch, std::size_t k) {
  if (k >= ch.k_users) throw IndexOutOfRangeError("leave_one_out: user index out of range");
  ComplexMatrix m(ch.nt, ch.k_users - 1);
  for (std::size_t j = 0, out = 0; j < ch.k_users; ++j) {
    if (j == k) continue;
    for (std::size_t i = 0; i < ch.nt; ++i) m(i, out) = ch.h(i, j);
    ++out;
  }
  return m;
}

}  // namespace precoderlab
