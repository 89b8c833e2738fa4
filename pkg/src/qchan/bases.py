"""Qubit measurement bases and their mutual overlaps."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidBasis

BASIS_TOL = 1e-10


def _vec(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex).reshape(-1)
    if arr.shape != (2,):
        raise InvalidBasis(f"basis vectors must have 2 entries, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidBasis("basis vector has non-finite entries")
    return arr


@dataclass(frozen=True, eq=False)
class QubitBasis:
    """Ordered orthonormal pair of qubit vectors.

    ``bloch`` holds the (theta, phi) angles when the basis came from
    :func:`from_bloch`; it is informational only.
    """

    first: np.ndarray
    second: np.ndarray
    bloch: tuple[float, float] | None = None
    name: str | None = None

    def __post_init__(self):
        first, second = _vec(self.first), _vec(self.second)
        for label, v in (("first", first), ("second", second)):
            if abs(np.vdot(v, v).real - 1.0) > BASIS_TOL:
                raise InvalidBasis(f"{label} vector is not normalized")
        if abs(np.vdot(first, second)) > BASIS_TOL:
            raise InvalidBasis("basis vectors are not orthogonal")
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)

    @property
    def vectors(self) -> tuple[np.ndarray, np.ndarray]:
        return self.first, self.second

    @property
    def matrix(self) -> np.ndarray:
        """Unitary whose columns are the basis vectors."""
        return np.column_stack([self.first, self.second])

    def to_dict(self) -> dict:
        out: dict = {
            "vectors": [[[float(z.real), float(z.imag)] for z in v] for v in self.vectors]
        }
        if self.bloch is not None:
            out["bloch"] = [float(self.bloch[0]), float(self.bloch[1])]
        if self.name is not None:
            out["name"] = self.name
        return out


def from_bloch(theta: float, phi: float) -> QubitBasis:
    """Basis {|n>, |-n>} for the Bloch direction (theta, phi)."""
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta={theta} outside [0, pi]")
    if not (0.0 <= phi < 2 * math.pi):
        raise DomainError(f"phi={phi} outside [0, 2pi)")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e = complex(math.cos(phi), math.sin(phi))
    return QubitBasis(
        np.array([c, e * s]),
        np.array([-e.conjugate() * s, c]),
        bloch=(float(theta), float(phi)),
    )


def computational() -> QubitBasis:
    return QubitBasis(np.array([1, 0]), np.array([0, 1]), name="computational")


def plus_minus() -> QubitBasis:
    r = 1 / math.sqrt(2)
    return QubitBasis(np.array([r, r]), np.array([r, -r]), name="plus-minus")


GOLDEN_C = (3 - math.sqrt(5)) / 2


def example2_golden() -> QubitBasis:
    """{|y1>, |y2>} with |<1|y1>|^2 = (3 - sqrt 5)/2."""
    c = GOLDEN_C
    return QubitBasis(
        np.array([math.sqrt(1 - c), math.sqrt(c)]),
        np.array([-math.sqrt(c), math.sqrt(1 - c)]),
        name="example2-golden",
    )


def example3_yprime() -> QubitBasis:
    """Complex basis whose squared overlaps with |0>, |1> are 9/16 and 7/16."""
    r2, r3, r5, r6 = (math.sqrt(k) for k in (2, 3, 5, 6))
    return QubitBasis(
        np.array([complex(r3, r6) / 4, complex(r2, r5) / 4]),
        np.array([complex(r2, -r5) / 4, complex(-r3, r6) / 4]),
        name="example3-yprime",
    )


NAMED_BASES = {
    "computational": computational,
    "plus-minus": plus_minus,
    "example2-golden": example2_golden,
    "example3-yprime": example3_yprime,
}


def named_basis(name: str) -> QubitBasis:
    try:
        return NAMED_BASES[name]()
    except KeyError:
        raise InvalidBasis(f"unknown basis {name!r}; known: {sorted(NAMED_BASES)}") from None


def basis_from_json(obj) -> QubitBasis:
    """Parse ``{"bloch": [theta, phi]}`` or ``{"vectors": [[[re, im], ...], ...]}``."""
    if isinstance(obj, str):
        return named_basis(obj)
    if not isinstance(obj, dict):
        raise InvalidBasis(f"basis spec must be a name or an object, got {type(obj).__name__}")
    if "bloch" in obj:
        try:
            theta, phi = (float(t) for t in obj["bloch"])
        except (TypeError, ValueError):
            raise InvalidBasis("'bloch' must be [theta, phi]") from None
        return from_bloch(theta, phi)
    if "vectors" in obj:
        try:
            vecs = [[complex(float(re), float(im)) for re, im in v] for v in obj["vectors"]]
        except (TypeError, ValueError):
            raise InvalidBasis("'vectors' must be two lists of [re, im] pairs") from None
        if len(vecs) != 2:
            raise InvalidBasis("'vectors' must hold exactly two vectors")
        return QubitBasis(np.array(vecs[0]), np.array(vecs[1]))
    if "name" in obj:
        return named_basis(obj["name"])
    raise InvalidBasis("basis spec needs a 'bloch' or 'vectors' key")


@dataclass(frozen=True)
class BasisOverlap:
    c_max: float
    c_min: float
    argmax: tuple[int, int]


def _abs2(z: complex) -> float:
    return z.real * z.real + z.imag * z.imag


def inner(x: np.ndarray, z: np.ndarray) -> complex:
    # Plain complex arithmetic so that <x|z> and <z|x> are exact conjugates.
    return complex(x[0]).conjugate() * complex(z[0]) + complex(x[1]).conjugate() * complex(z[1])


def overlap(b1: QubitBasis, b2: QubitBasis) -> BasisOverlap:
    """Largest and smallest |<x|z>|^2 over x in b1, z in b2.

    Ties in the maximum go to the first pair in (b1 index, b2 index) order.
    """
    best, worst, arg = -1.0, 2.0, (0, 0)
    for i, x in enumerate(b1.vectors):
        for j, z in enumerate(b2.vectors):
            v = _abs2(inner(x, z))
            if v > best:
                best, arg = v, (i, j)
            worst = min(worst, v)
    # rounding can push |<x|z>|^2 of unit vectors just past [0, 1]
    return BasisOverlap(c_max=min(best, 1.0), c_min=max(worst, 0.0), argmax=arg)
