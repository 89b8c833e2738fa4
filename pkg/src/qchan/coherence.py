"""Relative-entropy and l1 coherence of a channel via its normalized Choi state."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bases import QubitBasis, inner
from .channels import KrausChannel, choi
from .errors import CoherenceConsistencyError, NotUnitaryChannel, QchanError
from .numerics import shannon_entropy, von_neumann_entropy

NEGATIVE_CLAMP = 1e-10


class Measure(str, enum.Enum):
    REL = "rel"
    L1 = "l1"

    @classmethod
    def parse(cls, value) -> "Measure":
        if isinstance(value, cls):
            return value
        aliases = {"rel": cls.REL, "relative_entropy": cls.REL, "l1": cls.L1, "l1_norm": cls.L1}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise QchanError(f"unknown measure {value!r}; use 'rel' or 'l1'") from None


@dataclass(frozen=True, eq=False)
class CoherenceValue:
    measure: Measure
    value: float
    basis: QubitBasis
    diag_entropy: float | None = None
    state_entropy: float | None = None

    def to_dict(self) -> dict:
        out = {"measure": self.measure.value, "value": self.value}
        if self.diag_entropy is not None:
            out["diag_entropy"] = self.diag_entropy
        if self.state_entropy is not None:
            out["state_entropy"] = self.state_entropy
        out["basis"] = self.basis.to_dict()
        return out


def _clamp(value: float) -> float:
    if value < -NEGATIVE_CLAMP:
        raise CoherenceConsistencyError(f"coherence evaluated to {value:.3e}")
    return max(value, 0.0)


def rel_entropy_coherence(channel: KrausChannel, basis: QubitBasis) -> CoherenceValue:
    """C_rel = S(diag(J/2)) - S(J/2), in bits."""
    state = choi(channel, basis).matrix
    diag_s = shannon_entropy(np.diag(state).real)
    state_s = von_neumann_entropy(state)
    return CoherenceValue(Measure.REL, _clamp(diag_s - state_s), basis, diag_s, state_s)


def l1_coherence(channel: KrausChannel, basis: QubitBasis) -> CoherenceValue:
    """Sum of |rho_ij| over i != j for rho = J/2."""
    state = choi(channel, basis).matrix
    mags = np.abs(state)
    value = float(mags.sum() - np.trace(mags))
    return CoherenceValue(Measure.L1, _clamp(value), basis)


def coherence(channel: KrausChannel, basis: QubitBasis, measure) -> CoherenceValue:
    if Measure.parse(measure) is Measure.REL:
        return rel_entropy_coherence(channel, basis)
    return l1_coherence(channel, basis)


def unitary_l1_closed_form(channel: KrausChannel, basis: QubitBasis) -> float:
    """l1 coherence of a unitary channel from the single overlap |<x|U|0>|.

    With |<x|U|0>| = cos(alpha/2) the Choi state's off-diagonal mass is
    2 sin(alpha) + 1, where x is the first vector of ``basis``.
    """
    if not channel.unitary_flag:
        raise NotUnitaryChannel("closed form applies to single-unitary channels only")
    u = channel.operators[0]
    amp = abs(inner(basis.first, u[:, 0]))
    alpha = 2.0 * math.acos(min(1.0, amp))
    return 2.0 * math.sin(alpha) + 1.0
