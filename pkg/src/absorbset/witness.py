"""Hunting and certifying construction instances with no absorbing set of size ``p - 1``.

A certificate names ``(n, m, seed)``; anyone can regenerate the instance, check
its FNV-1a digest, and refute every candidate set of size below the claimed
optimum by enumeration. Verification uses the general absorption algorithm and
never the solver, so hunting and checking share no search code.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .absorption import AbsorptionRelation, absorbed_by, absorbed_by_construction
from .bounds import binomial, family_size
from .construction import ConstructionParams, generate, validate_structure
from .solver import DEFAULT_NODE_BUDGET, BudgetExhausted, exists_absorbing_of_size
from .tournament import ColouredTournament, serialize

log = logging.getLogger(__name__)

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
REFUTATION_LIMIT = 10**8
CROSS_CHECK_LIMIT = 200


class WitnessError(Exception):
    pass


class DigestMismatch(WitnessError):
    pass


class GuardError(WitnessError):
    pass


class ClaimRefuted(WitnessError):
    def __init__(self, counterexample: tuple[int, ...]):
        super().__init__(f"absorbing set of size {len(counterexample)} exists: "
                         f"{','.join(map(str, counterexample)) or '(empty)'}")
        self.counterexample = counterexample


class CertificateFormatError(ValueError):
    pass


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def instance_digest(t: ColouredTournament) -> int:
    """FNV-1a over the canonical serialization without bag metadata."""
    return fnv1a64(serialize(t).encode("ascii"))


@dataclass(frozen=True)
class Certificate:
    n: int
    m: int
    seed: int
    p: int
    optimum_at_least: int
    digest: int
    solver_nodes: int = 0

    def to_text(self) -> str:
        return (f"cert 1\nn {self.n}\nm {self.m}\nseed {self.seed}\np {self.p}\n"
                f"optimum-at-least {self.optimum_at_least}\ndigest {self.digest:016x}\n"
                f"solver-nodes {self.solver_nodes}\n")

    @classmethod
    def from_text(cls, text: str) -> "Certificate":
        keys = ["n", "m", "seed", "p", "optimum-at-least", "digest", "solver-nodes"]
        lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or lines[0] != ["cert", "1"]:
            raise CertificateFormatError("expected 'cert 1' header")
        if [ln[0] for ln in lines[1:]] != keys or any(len(ln) != 2 for ln in lines[1:]):
            raise CertificateFormatError(f"expected fields in order: {' '.join(keys)}")
        values = dict(lines[1:])
        digest = values.pop("digest")
        if len(digest) != 16:
            raise CertificateFormatError("digest must be 16 hex digits")
        try:
            nums = {k: int(v, 10) for k, v in values.items()}
            d = int(digest, 16)
        except ValueError as exc:
            raise CertificateFormatError(str(exc)) from None
        return cls(nums["n"], nums["m"], nums["seed"], nums["p"],
                   nums["optimum-at-least"], d, nums["solver-nodes"])


@dataclass(frozen=True)
class TrialOutcome:
    seed: int
    refuted: bool
    detail: str
    nodes: int = 0
    digest: int = 0


@dataclass
class HuntReport:
    certificate: Optional[Certificate]
    outcomes: list[TrialOutcome] = field(default_factory=list)

    def summary(self) -> str:
        lines = [f"seed {o.seed}: {o.detail}" for o in self.outcomes]
        return "\n".join(lines)


def refutation_size(N: int, k: int) -> int:
    """Number of ``k``-subsets the checker must enumerate."""
    return binomial(N, k)


def _check_guard(N: int, k: int) -> None:
    count = refutation_size(N, k)
    if count > REFUTATION_LIMIT:
        raise GuardError(f"C({N}, {k}) = {count} candidate sets exceeds {REFUTATION_LIMIT}; "
                         "not certified exhaustively")


def _trial(n: int, m: int, seed: int, node_budget: Optional[int]) -> TrialOutcome:
    p = family_size(n)
    t, layout = generate(ConstructionParams(n, m, seed))
    report = validate_structure(t, layout)
    if not report.ok:
        return TrialOutcome(seed, False, "structure violation: " + report.summary())
    rel = absorbed_by_construction(t, layout)
    if t.vertex_count <= CROSS_CHECK_LIMIT and rel != absorbed_by(t):
        raise RuntimeError(f"fast-path absorption disagrees with the general closure (seed {seed})")
    try:
        found, witness, nodes = exists_absorbing_of_size(rel, p - 1, node_budget)
    except BudgetExhausted as exc:
        return TrialOutcome(seed, False, "budget exhausted", exc.nodes)
    digest = instance_digest(t)
    if found:
        return TrialOutcome(seed, False, f"absorbed by {','.join(map(str, witness))}", nodes, digest)
    return TrialOutcome(seed, True, f"no absorbing set of size {p - 1}", nodes, digest)


def hunt(n: int, m: int, seed_start: int = 1, max_trials: int = 10,
         node_budget: Optional[int] = DEFAULT_NODE_BUDGET, jobs: int = 1) -> HuntReport:
    """Try seeds ``seed_start, seed_start + 1, ...`` until one yields a certificate.

    With ``jobs > 1`` seeds are evaluated in parallel batches; the certificate is
    always the one for the smallest successful seed.
    """
    if n < 1 or m < 1 or max_trials < 1:
        raise ValueError("need n >= 1, m >= 1 and max_trials >= 1")
    p = family_size(n)
    _check_guard(m * p, p - 1)
    seeds = [seed_start + i for i in range(max_trials)]
    report = HuntReport(None)
    step = max(1, jobs)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for start in range(0, len(seeds), step):
            batch = seeds[start:start + step]
            if pool is None:
                results = [_trial(n, m, s, node_budget) for s in batch]
            else:
                results = list(pool.map(_trial, [n] * len(batch), [m] * len(batch),
                                        batch, [node_budget] * len(batch)))
            for outcome in results:
                report.outcomes.append(outcome)
                log.info("seed %d: %s", outcome.seed, outcome.detail)
                if outcome.refuted:
                    report.certificate = Certificate(n, m, outcome.seed, p, p,
                                                     outcome.digest, outcome.nodes)
                    return report
    finally:
        if pool is not None:
            pool.shutdown()
    return report


def _find_cover(rel: AbsorptionRelation, k: int) -> Optional[tuple[int, ...]]:
    """Exhaustively look for an absorbing set of exactly ``k`` vertices."""
    cover, full, N = rel.coverage, rel.full, rel.vertex_count
    chosen: list[int] = []

    def rec(start: int, covered: int) -> bool:
        if len(chosen) == k:
            return covered == full
        for y in range(start, N - (k - len(chosen)) + 1):
            chosen.append(y)
            if rec(y + 1, covered | cover[y]):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if rec(0, 0) else None


def verify(cert: Certificate, instance: Optional[ColouredTournament] = None) -> bool:
    """Re-check a certificate from scratch.

    Every vertex set of size below ``optimum_at_least`` is enumerated and shown
    not to absorb. Raises ``DigestMismatch``, ``GuardError`` or ``ClaimRefuted``.
    """
    p = family_size(cert.n)
    if cert.p != p:
        raise WitnessError(f"certificate claims p={cert.p}, but p({cert.n}) = {p}")
    if not 0 <= cert.optimum_at_least <= p:
        raise WitnessError(f"optimum-at-least {cert.optimum_at_least} outside [0, {p}]")
    if instance is None:
        instance, _ = generate(ConstructionParams(cert.n, cert.m, cert.seed))
    digest = instance_digest(instance)
    if digest != cert.digest:
        raise DigestMismatch(f"instance digest {digest:016x} != certificate digest {cert.digest:016x}")
    if instance.colour_count != cert.n or instance.vertex_count != cert.m * p:
        raise WitnessError("instance dimensions disagree with (n, m)")
    k = cert.optimum_at_least
    N = instance.vertex_count
    if k == 0:
        return True
    _check_guard(N, k - 1)
    rel = absorbed_by(instance)
    for size in range(k):
        S = _find_cover(rel, size)
        if S is not None:
            raise ClaimRefuted(S)
    return True
