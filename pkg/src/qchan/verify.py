"""Seeded random generators and randomized falsification of the relations.

Every trial draws from its own generator, seeded by ``(master_seed, index)``
through :class:`numpy.random.SeedSequence`, so a run gives the same report
whatever the number of worker processes.
"""
from __future__ import annotations

import enum
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bases import QubitBasis
from .bounds import (
    GFeasiblePoint,
    check_relation,
    g_minimum_closed_form,
    lemma1_check,
    lemma2_slack,
    minimize_g_bruteforce,
    triangle_angles,
)
from .channels import KrausChannel, validate_cptp
from .coherence import Measure

log = logging.getLogger(__name__)

VIOLATION_TOL = 1e-9
NEAR_SATURATION = 1e-3
GRID_STEP = 1e-3
GRID_AGREEMENT = 2e-3


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(index)]))


def _haar_isometry(rows: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((rows, 2)) + 1j * rng.standard_normal((rows, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unitary(seed=None) -> np.ndarray:
    """Haar-random 2x2 unitary (QR of a Ginibre matrix with phase fix)."""
    return _haar_isometry(2, _rng(seed))


def random_cptp(kraus_count: int, seed=None) -> KrausChannel:
    """Channel from a Haar-random isometry C^2 -> C^(2k), cut into k blocks."""
    if not (1 <= int(kraus_count) <= 4):
        raise ValueError(f"kraus_count must be in 1..4, got {kraus_count}")
    k = int(kraus_count)
    v = _haar_isometry(2 * k, _rng(seed))
    return validate_cptp([v[2 * i:2 * i + 2, :] for i in range(k)])


def random_density(rank: int, seed=None) -> np.ndarray:
    if rank not in (1, 2):
        raise ValueError(f"rank must be 1 or 2, got {rank}")
    rng = _rng(seed)
    g = rng.standard_normal((2, rank)) + 1j * rng.standard_normal((2, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_basis(seed=None) -> QubitBasis:
    """Basis along a uniformly random Bloch direction."""
    rng = _rng(seed)
    u, v = rng.random(2)
    theta = math.acos(1.0 - 2.0 * u)
    phi = 2.0 * math.pi * v
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    e = complex(math.cos(phi), math.sin(phi))
    return QubitBasis(np.array([c, e * s]), np.array([-e.conjugate() * s, c]), bloch=(theta, phi))


def random_state(seed=None) -> np.ndarray:
    return random_basis(seed).first


class Target(str, enum.Enum):
    THEOREM1 = "theorem1"
    THEOREM2 = "theorem2"
    LEMMA1 = "lemma1"
    LEMMA2 = "lemma2"
    GMIN = "gmin"


def _cplx(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v).reshape(-1)]


def _basis_json(b: QubitBasis) -> list:
    return [_cplx(b.first), _cplx(b.second)]


def _trial_theorem1(rng, c_max):
    channel = random_cptp(int(rng.integers(1, 5)), rng)
    b1, b2 = random_basis(rng), random_basis(rng)
    rep = check_relation(channel, b1, b2, Measure.REL)
    inputs = {"kraus": [[_cplx(row) for row in m] for m in channel.operators],
              "basis1": _basis_json(b1), "basis2": _basis_json(b2)}
    return rep.slack, inputs


def _trial_theorem2(rng, c_max):
    u = random_unitary(rng)
    channel = validate_cptp([u])
    b1, b2 = random_basis(rng), random_basis(rng)
    rep = check_relation(channel, b1, b2, Measure.L1)
    inputs = {"unitary": [_cplx(row) for row in u], "basis1": _basis_json(b1), "basis2": _basis_json(b2)}
    return rep.slack, inputs


def _trial_lemma1(rng, c_max):
    rank = int(rng.integers(1, 3))
    rho = random_density(rank, rng)
    x, z = random_state(rng), random_state(rng)
    res = lemma1_check(rho, x, z)
    inputs = {"rank": rank, "density": [_cplx(row) for row in rho], "x": _cplx(x), "z": _cplx(z)}
    return res.slack, inputs


def _trial_lemma2(rng, c_max):
    vecs = rng.standard_normal((3, 3))
    alpha, beta, gamma = triangle_angles(*vecs)
    slack = min(
        lemma2_slack(alpha, beta, gamma),
        lemma2_slack(beta, gamma, alpha),
        lemma2_slack(gamma, alpha, beta),
    )
    return slack, {"vectors": vecs.tolist()}


def _feasible_pair(rng, c):
    root, width = math.sqrt(c), math.sqrt(1.0 - c)
    while True:
        a, b = rng.random(2)
        if 1.0 - root <= a + b <= 1.0 + root and abs(a - b) <= width:
            return float(a), float(b)


def _trial_gmin(rng, c_max):
    c = float(c_max) if c_max is not None else 0.5 + 0.5 * float(rng.random())
    (a1, b1), (a2, b2) = _feasible_pair(rng, c), _feasible_pair(rng, c)
    point = GFeasiblePoint(a1, a2, b1, b2)
    slack = point.g() - g_minimum_closed_form(c)
    return slack, {"c_max": c, "a1": a1, "a2": a2, "b1": b1, "b2": b2}


_TRIALS = {
    Target.THEOREM1: _trial_theorem1,
    Target.THEOREM2: _trial_theorem2,
    Target.LEMMA1: _trial_lemma1,
    Target.LEMMA2: _trial_lemma2,
    Target.GMIN: _trial_gmin,
}


def run_trial(target: Target, master_seed: int, index: int, c_max: float | None = None):
    return _TRIALS[Target(target)](trial_rng(master_seed, index), c_max)


def _run_chunk(args):
    target, master_seed, start, stop, c_max = args
    return [run_trial(target, master_seed, i, c_max) for i in range(start, stop)]


@dataclass
class Violation:
    trial: int
    inputs: dict
    slack: float


@dataclass
class VerificationReport:
    target: str
    trials: int
    min_slack: float
    violations: list[Violation]
    master_seed: int
    near_saturation: list[int] = field(default_factory=list)
    grid_check: dict | None = None

    @property
    def passed(self) -> bool:
        grid_ok = self.grid_check is None or self.grid_check["passed"]
        return not self.violations and grid_ok

    def to_dict(self) -> dict:
        out = {
            "target": self.target,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "min_slack": self.min_slack,
            "violations": [v.__dict__ for v in self.violations],
            "near_saturation": self.near_saturation,
            "passed": self.passed,
        }
        if self.grid_check is not None:
            out["grid_check"] = self.grid_check
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def run_falsification(
    target,
    trials: int,
    master_seed: int,
    parallelism: int = 1,
    c_max: float | None = None,
) -> VerificationReport:
    """Run ``trials`` independent seeded checks of ``target`` and aggregate them.

    Violations (slack below -1e-9) are collected, not raised. For ``gmin``
    with an explicit ``c_max`` the report also carries a grid-search
    comparison against the closed-form minimum.
    """
    target = Target(target)
    trials = int(trials)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    jobs = max(1, int(parallelism))
    if jobs == 1:
        results = _run_chunk((target, master_seed, 0, trials, c_max))
    else:
        size = math.ceil(trials / jobs)
        chunks = [(target, master_seed, s, min(s + size, trials), c_max) for s in range(0, trials, size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for part in pool.map(_run_chunk, chunks) for r in part]

    min_slack = math.inf
    violations, near = [], []
    for i, (slack, inputs) in enumerate(results):
        min_slack = min(min_slack, slack)
        if slack < -VIOLATION_TOL:
            violations.append(Violation(i, inputs, slack))
        elif slack < NEAR_SATURATION:
            near.append(i)
    log.info("%s: %d trials, min slack %.3e, %d violations", target.value, trials, min_slack, len(violations))

    grid = None
    if target is Target.GMIN and c_max is not None:
        found = minimize_g_bruteforce(c_max, GRID_STEP)
        exact = g_minimum_closed_form(c_max)
        grid = {
            "c_max": float(c_max),
            "grid_step": GRID_STEP,
            "grid_minimum": found,
            "closed_form": exact,
            "difference": found - exact,
            "passed": abs(found - exact) <= GRID_AGREEMENT,
        }
    return VerificationReport(target.value, trials, min_slack, violations, int(master_seed), near, grid)
