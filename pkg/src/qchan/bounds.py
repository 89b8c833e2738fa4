"""Lower bounds on the two-basis coherence sum of qubit channels.

Two relations are evaluated here:

* relative entropy, any channel:
  ``C_rel^X + C_rel^Z >= H(sqrt(c_max)) - 2 S(J/2) + 2``
* l1 norm, unitary channels only:
  ``C_l1^X + C_l1^Z >= 4 sqrt(c_max (1 - c_max)) + 2``

together with the two geometric inequalities they rest on and a grid
minimizer of the entropy function whose minimum yields the first bound.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .bases import QubitBasis, inner, overlap
from .channels import KrausChannel, choi
from .coherence import Measure, coherence
from .errors import DomainError, TheoremScopeError
from .numerics import as_matrix, binary_entropy, is_density, von_neumann_entropy

SATURATION_TOL = 1e-6
CONDITION_TOL = 1e-8
LEMMA_TOL = 1e-10


@dataclass(frozen=True)
class UncertaintyReport:
    measure: str
    sum_coherence: float
    lower_bound: float
    slack: float
    c_max_used: float
    saturated: bool
    coherence_1: float
    coherence_2: float

    def to_dict(self) -> dict:
        return asdict(self)


def pair_entropy(x, y):
    """f(x, y) = (H(x) + H(y)) / 2."""
    return 0.5 * (binary_entropy(x) + binary_entropy(y))


def g_value(a1, b1, a2, b2):
    """Diagonal-entropy sum S(diag^X) + S(diag^Z) in terms of the output populations."""
    return pair_entropy(a1, b1) + pair_entropy(a2, b2) + 2.0


def in_lemma1_region(a: float, b: float, c: float, tol: float = LEMMA_TOL) -> bool:
    root = math.sqrt(c)
    return (
        1.0 - root - tol <= a + b <= 1.0 + root + tol
        and abs(a - b) <= math.sqrt(max(0.0, 1.0 - c)) + tol
    )


@dataclass(frozen=True)
class GFeasiblePoint:
    a1: float
    a2: float
    b1: float
    b2: float

    def is_feasible(self, c: float, tol: float = LEMMA_TOL) -> bool:
        coords = (self.a1, self.a2, self.b1, self.b2)
        if any(v < -tol or v > 1.0 + tol for v in coords):
            return False
        return in_lemma1_region(self.a1, self.b1, c, tol) and in_lemma1_region(self.a2, self.b2, c, tol)

    def g(self) -> float:
        return float(g_value(self.a1, self.b1, self.a2, self.b2))


def _check_c(c_max: float, lo_open: bool = True) -> float:
    c = float(c_max)
    ok = (0.0 < c <= 1.0) if lo_open else (0.0 <= c <= 1.0)
    if not ok or math.isnan(c):
        raise DomainError(f"c_max={c_max} outside {'(0, 1]' if lo_open else '[0, 1]'}")
    return c


def rel_entropy_bound(channel: KrausChannel, c_max: float) -> float:
    """H(sqrt(c_max)) - 2 S(J/2) + 2, in bits. May be negative for very noisy channels."""
    c = _check_c(c_max)
    s = von_neumann_entropy(choi(channel).matrix)
    return binary_entropy(math.sqrt(c)) - 2.0 * s + 2.0


def l1_unitary_bound(c_max: float) -> float:
    c = _check_c(c_max, lo_open=False)
    return 4.0 * math.sqrt(c * (1.0 - c)) + 2.0


def check_relation(
    channel: KrausChannel,
    basis1: QubitBasis,
    basis2: QubitBasis,
    measure,
    c_override: float | None = None,
) -> UncertaintyReport:
    """Evaluate both sides of the matching uncertainty relation.

    ``c_max`` defaults to the measured maximum overlap of the two bases.
    Negative slack is reported as-is; callers decide what a violation is.
    """
    measure = Measure.parse(measure)
    if measure is Measure.L1 and not channel.unitary_flag:
        raise TheoremScopeError("the l1 relation holds for unitary channels only")
    c = overlap(basis1, basis2).c_max if c_override is None else _check_c(c_override)
    first = coherence(channel, basis1, measure).value
    second = coherence(channel, basis2, measure).value
    total = first + second
    if measure is Measure.REL:
        bound = rel_entropy_bound(channel, c)
    else:
        bound = l1_unitary_bound(c)
    slack = total - bound
    return UncertaintyReport(
        measure=measure.value,
        sum_coherence=total,
        lower_bound=bound,
        slack=slack,
        c_max_used=c,
        saturated=slack <= SATURATION_TOL,
        coherence_1=first,
        coherence_2=second,
    )


@dataclass(frozen=True)
class SaturationChoice:
    input_index: int
    x_index: int
    y_index: int
    # "xy": the basis1 population equals 1 - sqrt(c) and the basis2 one vanishes;
    # "yx": the roles of the two bases are exchanged.
    orientation: str
    x_population: float
    y_population: float
    satisfied: bool


@dataclass(frozen=True)
class SaturationResult:
    holds: bool
    c_max_used: float
    target: float
    choices: list[SaturationChoice] = field(default_factory=list)


def _population(channel: KrausChannel, vec: np.ndarray, i: int) -> float:
    return float(sum(abs(inner(vec, m[:, i])) ** 2 for m in channel.operators))


def saturation_condition(
    channel: KrausChannel,
    basis1: QubitBasis,
    basis2: QubitBasis,
    c_override: float | None = None,
    tol: float = CONDITION_TOL,
) -> SaturationResult:
    """Sufficient condition for equality in the relative-entropy relation.

    For input |i>, let p_x = sum_m |<x|M_m|i>|^2 and p_y likewise. The
    condition asks p_x + p_y = p_x - p_y = 1 - sqrt(c_max), i.e. p_x equals
    the target and p_y vanishes. It must hold for both i = 0 and i = 1, with
    the vectors x, y free to differ between the two inputs since the binary
    entropy is blind to x <-> x_perp. Swapping the roles of the two bases is
    also accepted, as the relation is symmetric in them.
    """
    c = overlap(basis1, basis2).c_max if c_override is None else _check_c(c_override)
    target = 1.0 - math.sqrt(c)
    choices = []
    per_input = []
    for i in (0, 1):
        found = False
        for xi, x in enumerate(basis1.vectors):
            px = _population(channel, x, i)
            for yi, y in enumerate(basis2.vectors):
                py = _population(channel, y, i)
                for orient, hi, lo in (("xy", px, py), ("yx", py, px)):
                    ok = abs((hi + lo) - target) <= tol and abs((hi - lo) - target) <= tol
                    found = found or ok
                    choices.append(SaturationChoice(i, xi, yi, orient, px, py, ok))
        per_input.append(found)
    return SaturationResult(all(per_input), c, target, choices)


@dataclass(frozen=True)
class Lemma1Result:
    a: float
    b: float
    c: float
    sum_upper: bool
    difference: bool
    sum_lower: bool

    @property
    def slack(self) -> float:
        """Smallest margin over the three inequalities."""
        root = math.sqrt(self.c)
        return min(
            1.0 + root - (self.a + self.b),
            math.sqrt(max(0.0, 1.0 - self.c)) - abs(self.a - self.b),
            (self.a + self.b) - (1.0 - root),
        )

    @property
    def holds(self) -> bool:
        return self.sum_upper and self.difference and self.sum_lower


def lemma1_check(density, x, z) -> Lemma1Result:
    """a = <x|A|x>, b = <z|A|z>, c = |<x|z>|^2 and the three qubit inequalities."""
    a_mat = as_matrix(density, dims=(2,))
    if not is_density(a_mat):
        raise DomainError("lemma 1 needs a density matrix")
    x = np.asarray(x, dtype=complex)
    z = np.asarray(z, dtype=complex)
    for v in (x, z):
        if abs(np.vdot(v, v).real - 1.0) > LEMMA_TOL:
            raise DomainError("lemma 1 vectors must be normalized")
    a = float(np.vdot(x, a_mat @ x).real)
    b = float(np.vdot(z, a_mat @ z).real)
    c = min(1.0, abs(inner(x, z)) ** 2)
    root = math.sqrt(c)
    return Lemma1Result(
        a,
        b,
        c,
        sum_upper=a + b <= 1.0 + root + LEMMA_TOL,
        difference=abs(a - b) <= math.sqrt(1.0 - c) + LEMMA_TOL,
        sum_lower=1.0 - root <= a + b + LEMMA_TOL,
    )


def vector_angle(u, v) -> float:
    """Angle in [0, pi] between two nonzero vectors of R^3."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise DomainError("vectors must be nonzero")
    cos = float(np.dot(u, v) / (nu * nv))
    return math.acos(min(1.0, max(-1.0, cos)))


def triangle_angles(a, b, c) -> tuple[float, float, float]:
    """Angles (a,b), (b,c), (c,a) of three nonzero vectors in R^3."""
    return vector_angle(a, b), vector_angle(b, c), vector_angle(c, a)


def lemma2_slack(alpha: float, beta: float, gamma: float) -> float:
    return math.sin(alpha) + math.sin(beta) - math.sin(gamma)


def lemma2_check(alpha: float, beta: float, gamma: float) -> bool:
    """sin(alpha) + sin(beta) >= sin(gamma) for realizable angle triples.

    Angles must come from actual vectors (see :func:`triangle_angles`); the
    inequality is false for arbitrary triples such as (0, 0, pi/2).
    """
    for t in (alpha, beta, gamma):
        if not (0.0 <= t <= math.pi):
            raise DomainError(f"angle {t} outside [0, pi]")
    return lemma2_slack(alpha, beta, gamma) + LEMMA_TOL >= 0.0


def minimize_g_bruteforce(c_max: float, grid_step: float = 1e-3) -> float:
    """Grid minimum of f(a1, b1) + f(a2, b2) + 2 over the Lemma-1 region.

    The search runs in the coordinates A = a + b, B = b - a with
    A in [1 - sqrt(c), 1] (f is symmetric about A = 1), B in [0, sqrt(1 - c)]
    and B <= A so that a >= 0. Grid lines are closed off with the region's
    boundary values. The two pairs are independent, so the 4-d minimum is
    twice the 2-d minimum plus 2.
    """
    c = float(c_max)
    if not (0.5 <= c < 1.0):
        raise DomainError(f"c_max={c_max} outside [1/2, 1)")
    step = float(grid_step)
    if not (1e-4 <= step <= 1e-2):
        raise DomainError(f"grid_step={grid_step} outside [1e-4, 1e-2]")
    root = math.sqrt(c)
    a_lo, b_hi = 1.0 - root, math.sqrt(1.0 - c)
    big_a = np.append(np.arange(a_lo, 1.0, step), 1.0)
    big_b = np.append(np.arange(0.0, b_hi, step), b_hi)

    best = math.inf
    rows = max(1, 2_000_000 // big_b.size)
    for start in range(0, big_a.size, rows):
        aa = big_a[start:start + rows, None]
        bb = np.broadcast_to(big_b[None, :], (aa.shape[0], big_b.size))
        feasible = bb <= aa
        low = np.clip((aa - bb) / 2.0, 0.0, None)
        vals = pair_entropy(low, np.minimum((aa + bb) / 2.0, 1.0))
        vals = np.where(feasible, vals, np.inf)
        best = min(best, float(vals.min()))
    # boundary B = min(A, sqrt(1 - c)) for every A on the grid
    edge = np.minimum(big_a, b_hi)
    best = min(best, float(np.min(pair_entropy((big_a - edge) / 2.0, (big_a + edge) / 2.0))))
    return 2.0 * best + 2.0


def g_minimum_closed_form(c_max: float) -> float:
    return binary_entropy(math.sqrt(_check_c(c_max))) + 2.0
