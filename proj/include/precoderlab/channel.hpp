#pragma once

#include <cstddef>

#include "precoderlab/linalg.hpp"
#include "precoderlab/rng.hpp"

namespace precoderlab {

/// One channel realization: H is nt x k_users, column k is user k's channel
/// vector h_k.
struct ChannelSet {
  std::size_t nt = 0;
  std::size_t k_users = 0;
  ComplexMatrix h;

  ComplexVector user_channel(std::size_t k) const;
};

/// Draws an i.i.d. flat Rayleigh fading channel: every entry CN(0,1).
/// Consumes entries from `stream` in row-major order. The all-zero column
/// draw (probability zero) is redrawn so downstream norms are never zero.
ChannelSet sample_channel(std::size_t nt, std::size_t k_users, RngStream& stream);

/// H with column k removed, order preserved: [h_1 .. h_{k-1} h_{k+1} .. h_K].
/// k is a zero-based user index. For K = 1 the result has zero columns.
ComplexMatrix leave_one_out(const ChannelSet& ch, std::size_t k);

}  // namespace precoderlab
