"""MU-MIMO linear precoding: ZF / RZF / SLNR constructions, figures of merit,
and a reproducible Monte-Carlo link simulator."""

from precoderlab._core import (
    PrecoderlabError,
    alignment,
    build_precoder_matrix,
    canonical_phase,
    certify_equivalence,
    rzf_direction,
    sample_channel,
    simulate_ber_point,
    slnr_closed_form,
    slnr_eig,
    slnr_value,
    sum_rate,
    zf_direction,
    __version__,
)

__all__ = [
    "PrecoderlabError",
    "alignment",
    "build_precoder_matrix",
    "canonical_phase",
    "certify_equivalence",
    "rzf_direction",
    "sample_channel",
    "simulate_ber_point",
    "slnr_closed_form",
    "slnr_eig",
    "slnr_value",
    "sum_rate",
    "zf_direction",
    "__version__",
]
