"""Qubit channels in Kraus form, their Choi states, and named presets."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bases import QubitBasis, computational
from .errors import DomainError, EmptyOperatorList, NotTracePreserving, NotUnitary, QchanError
from .numerics import STRUCT_TOL, as_matrix, is_unitary

MAX_KRAUS = 8
ZERO_KRAUS_NORM = 1e-12


def _pairs(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


@dataclass(frozen=True, eq=False)
class KrausChannel:
    operators: tuple[np.ndarray, ...]
    unitary_flag: bool
    name: str | None = None
    params: dict | None = None

    def apply(self, rho) -> np.ndarray:
        rho = as_matrix(rho, dims=(2,))
        return sum(m @ rho @ m.conj().T for m in self.operators)

    def to_dict(self) -> dict:
        out: dict = {"kraus": [_pairs(m) for m in self.operators]}
        if self.name is not None:
            params = {
                k: _pairs(v) if isinstance(v, np.ndarray) else v
                for k, v in (self.params or {}).items()
            }
            out["preset"] = {"name": self.name, "params": params}
        return out


def validate_cptp(operators, name: str | None = None, params: dict | None = None) -> KrausChannel:
    """Certify a list of 2x2 Kraus operators as a CPTP map.

    Operators with Frobenius norm below 1e-12 are dropped. The channel is
    flagged unitary iff exactly one operator remains and it is unitary.
    """
    if isinstance(operators, np.ndarray) and operators.ndim == 2:
        operators = [operators]
    ops = [as_matrix(m, dims=(2,)).copy() for m in operators]
    if not ops:
        raise EmptyOperatorList("a channel needs at least one Kraus operator")
    if len(ops) > MAX_KRAUS:
        raise QchanError(f"at most {MAX_KRAUS} Kraus operators are accepted, got {len(ops)}")
    ops = [m for m in ops if np.linalg.norm(m) >= ZERO_KRAUS_NORM]
    if not ops:
        raise NotTracePreserving(1.0)
    total = sum(m.conj().T @ m for m in ops)
    residual = float(np.max(np.abs(total - np.eye(2))))
    if residual > STRUCT_TOL:
        raise NotTracePreserving(residual)
    unitary = len(ops) == 1 and is_unitary(ops[0], STRUCT_TOL)
    for m in ops:
        m.setflags(write=False)
    return KrausChannel(tuple(ops), unitary, name, params)


@dataclass(frozen=True, eq=False)
class ChoiState:
    """Normalized Choi matrix J/2 in the product basis {|j> (x) |b_m>}."""

    matrix: np.ndarray
    output_basis: QubitBasis
    source: KrausChannel

    def output_partial_trace(self) -> np.ndarray:
        """Trace over the output factor; equals I/2 for trace-preserving maps."""
        return np.trace(self.matrix.reshape(2, 2, 2, 2), axis1=1, axis2=3)


def choi(channel: KrausChannel, basis: QubitBasis | None = None) -> ChoiState:
    """J_Phi/2 with the input factor computational and the output factor in ``basis``.

    Entry ((j, m), (k, n)) is <b_m| Phi(|j><k|) |b_n> / 2, at row index 2*j + m.
    """
    basis = basis if basis is not None else computational()
    v_dag = basis.matrix.conj().T
    mat = np.zeros((4, 4), dtype=complex)
    for m in channel.operators:
        # vec[2*j + m] = <b_m| M |j>
        vec = (v_dag @ m).T.reshape(4)
        mat += np.outer(vec, vec.conj())
    mat *= 0.5
    mat.setflags(write=False)
    return ChoiState(mat, basis, channel)


def _prob(value: float, label: str) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise DomainError(f"{label}={value} outside [0, 1]")
    return value


I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def bit_flip(p: float) -> KrausChannel:
    """{sqrt(p) I, sqrt(1-p) X}: the state is kept with probability p."""
    p = _prob(p, "p")
    return validate_cptp([math.sqrt(p) * I2, math.sqrt(1 - p) * SIGMA_X], "bit_flip", {"p": p})


def phase_damping(lam: float) -> KrausChannel:
    lam = _prob(lam, "lambda")
    e0 = np.diag([1.0, math.sqrt(1 - lam)]).astype(complex)
    e1 = np.diag([0.0, math.sqrt(lam)]).astype(complex)
    return validate_cptp([e0, e1], "phase_damping", {"lambda": lam})


def rotation(alpha: float) -> KrausChannel:
    """Unitary channel with the real rotation [[cos a, -sin a], [sin a, cos a]]."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError("alpha must be finite")
    c, s = math.cos(alpha), math.sin(alpha)
    return validate_cptp([np.array([[c, -s], [s, c]], dtype=complex)], "rotation", {"alpha": alpha})


def pauli_x() -> KrausChannel:
    return validate_cptp([SIGMA_X.copy()], "pauli_x", {})


def identity() -> KrausChannel:
    return validate_cptp([I2.copy()], "identity", {})


def unitary(u) -> KrausChannel:
    u = as_matrix(u, dims=(2,))
    if not is_unitary(u, STRUCT_TOL):
        raise NotUnitary("matrix is not unitary within 1e-10")
    return validate_cptp([u.copy()], "unitary", {"U": u})


def mix(weighted: list[tuple[float, KrausChannel]]) -> KrausChannel:
    """Convex combination sum_i t_i Phi_i via the weighted Kraus union."""
    total = sum(t for t, _ in weighted)
    if any(t < 0 for t, _ in weighted) or abs(total - 1.0) > STRUCT_TOL:
        raise DomainError("mixing weights must be nonnegative and sum to 1")
    ops = [math.sqrt(t) * m for t, ch in weighted for m in ch.operators]
    return validate_cptp(ops)


# name -> (factory, ordered parameter names)
PRESETS = {
    "bit_flip": (bit_flip, ("p",)),
    "phase_damping": (phase_damping, ("lambda",)),
    "rotation": (rotation, ("alpha",)),
    "pauli_x": (pauli_x, ()),
    "identity": (identity, ()),
    "unitary": (unitary, ("U",)),
}


def _matrix_from_pairs(obj) -> np.ndarray:
    try:
        return np.array([[complex(float(re), float(im)) for re, im in row] for row in obj])
    except (TypeError, ValueError):
        raise QchanError("matrices must be 2x2 arrays of [re, im] pairs") from None


def make_preset(name: str, params: dict | None = None) -> KrausChannel:
    params = dict(params or {})
    if name not in PRESETS:
        raise QchanError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
    factory, names = PRESETS[name]
    extra = set(params) - set(names)
    missing = [n for n in names if n not in params]
    if extra or missing:
        raise QchanError(f"preset {name!r} takes parameters {list(names)}")
    if name == "unitary":
        u = params["U"]
        return factory(u if isinstance(u, np.ndarray) else _matrix_from_pairs(u))
    try:
        args = [float(params[n]) for n in names]
    except (TypeError, ValueError):
        raise QchanError(f"non-numeric parameter for preset {name!r}") from None
    return factory(*args)


def channel_from_json(obj) -> KrausChannel:
    """Parse ``{"preset": {"name": ..., "params": {...}}}`` or ``{"kraus": [...]}``."""
    if not isinstance(obj, dict):
        raise QchanError("channel spec must be a JSON object")
    if "preset" in obj:
        preset = obj["preset"]
        if isinstance(preset, str):
            return make_preset(preset)
        if not isinstance(preset, dict) or "name" not in preset:
            raise QchanError("'preset' needs a 'name'")
        return make_preset(preset["name"], preset.get("params"))
    if "kraus" in obj:
        ops = obj["kraus"]
        if not isinstance(ops, list):
            raise QchanError("'kraus' must be a list of operators")
        return validate_cptp([_matrix_from_pairs(m) for m in ops])
    raise QchanError("channel spec needs a 'preset' or 'kraus' key")
