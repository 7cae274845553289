# SPDX-License-Identifier: Apache-2.0
#
# relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
# ------------------------------------------------------------------------
"""Transceiver design for multi-hop amplify-and-forward MIMO relay chains."""

from collections.abc import Sequence

import numpy as np

from . import _core
from ._core import (
    ContractViolation,
    DegenerateChannel,
    lmmse_equalizer,
    pure_shaping,
    run_cli,
    shaping_exponential,
    simulate,
    waterfill,
)

__all__ = [
    "ContractViolation",
    "DegenerateChannel",
    "design",
    "lmmse_equalizer",
    "mse",
    "pure_shaping",
    "run_cli",
    "shaping_exponential",
    "simulate",
    "waterfill",
]


def _per_hop(value, hops):
    if isinstance(value, Sequence) or isinstance(value, np.ndarray):
        values = [float(v) for v in value]
        if len(values) != hops:
            raise ValueError(f"expected {hops} values, got {len(values)}")
        return values
    return [float(value)] * hops


def _complex(mats):
    return [np.asarray(m, dtype=np.complex128) for m in mats]


def design(channels, streams, power, noise_variance, objective="a_schur_concave", tau_max=None,
           shaping=None, signal_variance=1.0, weight=None):
    """Design per-hop precoders, the equalizer and the feedback matrix.

    ``power`` and ``noise_variance`` may be scalars or one value per hop. Give either
    ``tau_max`` (joint power constraints) or ``shaping`` (one R_s per hop).
    """
    channels = _complex(channels)
    K = len(channels)
    return _core.design(
        channels,
        int(streams),
        _per_hop(power, K),
        _per_hop(noise_variance, K),
        objective=objective,
        tau_max=tau_max,
        shaping=None if shaping is None else _complex(shaping),
        signal_variance=signal_variance,
        weight=None if weight is None else np.asarray(weight, dtype=np.complex128),
    )


def mse(channels, noise_variance, P, G, C=None, signal_variance=1.0):
    """Error covariance of a linear or decision-feedback design."""
    channels = _complex(channels)
    return _core.mse(
        channels,
        _per_hop(noise_variance, len(channels)),
        _complex(P),
        np.asarray(G, dtype=np.complex128),
        C=None if C is None else np.asarray(C, dtype=np.complex128),
        signal_variance=signal_variance,
    )
