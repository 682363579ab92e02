"""Monte Carlo verification harness: seeded rank measurements vs predictions.

Every case draws random instances over GF(p) and measures the rank of the
resulting condition matrix.  Rank is lower semicontinuous in the data, so

* a full-rank claim PASSes as soon as one trial reaches the predicted rank
  (a single witness certifies the general configuration);
* a deficiency claim PASSes only when every trial measures exactly the
  claimed nullspace dimension -- random instances bound the generic
  dimension from above, so the verdict is a confirmation, with the matching
  lower bound supplied by theory where available (the cone bound for
  quadrics).

Per-case seeds are derived as sha256(root_seed:label:trial), so cases are
independent jobs and execution order never changes any measurement.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from math import comb

from . import theory
from .gf import DEFAULT_PRIME
from .linalg import rank
from .monomials import CoordinateSubspace, build_basis, vanishing_basis, HOMOGENEOUS
from .schemes import (
    GENERAL,
    ComponentSpec,
    condition_matrix_affine,
    condition_matrix_projective,
    random_affine_problem,
    random_instance,
)

DEFAULT_SEED = 1000003

PASS = "PASS"
SUSPECT = "SUSPECT"


@dataclass(frozen=True)
class TrialPolicy:
    trials: int = 3
    prime: int = DEFAULT_PRIME
    seed: int = DEFAULT_SEED


@dataclass
class CaseReport:
    case: str
    kind: str  # 'rank' | 'dim' | 'enumeration'
    predicted: int
    measured: list
    verdict: str
    seed: int
    prime: int
    millis: float = 0.0
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self, with_timing: bool = False) -> dict:
        doc = {
            "case": self.case,
            "kind": self.kind,
            "predicted": self.predicted,
            "measured": list(self.measured),
            "verdict": self.verdict,
            "seed": self.seed,
            "prime": self.prime,
        }
        if self.note:
            doc["note"] = self.note
        if self.extra:
            doc["extra"] = self.extra
        if with_timing:
            doc["millis"] = self.millis
        return doc


def child_seed(root_seed: int, label: str, trial: int) -> int:
    """Per-trial seed: first 8 bytes of sha256('root:label:trial'), big endian."""
    digest = hashlib.sha256(f"{root_seed}:{label}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t0) * 1000.0


def run_rank_case(policy: TrialPolicy, label: str, target: int, build, extra=None) -> CaseReport:
    """Full-rank claim: PASS iff some trial reaches the target rank."""
    measured = []

    def go():
        for t in range(policy.trials):
            r = rank(build(child_seed(policy.seed, label, t)), policy.prime)
            assert r <= target, "measured rank above the theoretical bound"
            measured.append(r)
            if r == target:
                return True
        return False

    ok, ms = _timed(go)
    return CaseReport(
        label, "rank", target, measured, PASS if ok else SUSPECT,
        policy.seed, policy.prime, ms, extra=extra or {},
    )


def run_dim_case(policy: TrialPolicy, label: str, claimed: int, build,
                 lower_bound: int | None = None, extra=None) -> CaseReport:
    """Deficiency claim: PASS iff every trial measures the claimed nullity."""
    measured = []

    def go():
        for t in range(policy.trials):
            m = build(child_seed(policy.seed, label, t))
            cols = m.shape[1] if hasattr(m, "shape") else len(m[0])
            measured.append(cols - rank(m, policy.prime))
        return all(v == claimed for v in measured)

    ok, ms = _timed(go)
    if lower_bound is not None and lower_bound >= claimed:
        note = (
            f"dim <= {claimed} certified by {policy.trials} random instances;"
            f" dim >= {claimed} by the cone bound"
        )
    else:
        note = (
            f"confirmed at {policy.trials} random instances (upper bound by"
            " semicontinuity); the matching lower bound is the asserted deficiency"
        )
        if lower_bound is not None:
            note += f"; cone bound {lower_bound} does not reach the claim"
    return CaseReport(
        label, "dim", claimed, measured, PASS if ok else SUSPECT,
        policy.seed, policy.prime, ms, note=note, extra=extra or {},
    )


# ---------------------------------------------------------------------------
# P^8 cubic cases on three disjoint codimension-3 subspaces

P8_SUBSPACES = (
    CoordinateSubspace({0, 1, 2}),
    CoordinateSubspace({3, 4, 5}),
    CoordinateSubspace({6, 7, 8}),
)
P8_TRIPLES = ((6, 9, 12), (3, 12, 12), (0, 12, 15), (6, 6, 15), (0, 9, 18))
P8_LEFTOVER_TRIPLES = (
    (10, 14, 39), (11, 13, 39), (11, 14, 38),
    (7, 17, 39), (8, 16, 39), (8, 17, 38),
    (7, 14, 42), (8, 13, 42), (8, 14, 41),
)

# residual r realized by the canonical component of length n+1-(3-r)
_RESIDUAL_LENGTH_OFFSET = {3: 0, 2: 1, 1: 2}


def specs_on_subspace(n: int, idx: int, tdu) -> list:
    t, d, u = tdu
    out = []
    for r, count in ((3, t), (2, d), (1, u)):
        out += [ComponentSpec(n + 1 - _RESIDUAL_LENGTH_OFFSET[r], idx, r)] * count
    return out


def specs_free(n: int, xo_vector) -> list:
    out = []
    for slot, count in enumerate(xo_vector):
        out += [ComponentSpec(n + 1 - slot)] * count
    return out


def _projective_builder(n, specs, subspaces, basis, prime):
    def build(seed):
        inst = random_instance(n, specs, subspaces, prime, seed)
        return condition_matrix_projective(inst, basis)

    return build


def verify_prop45(policy: TrialPolicy) -> list:
    """The five residual-degree triples on three disjoint P^8 subspaces.

    Every residual partition combo must fill all 27 conditions on the cubics
    through the three subspaces.
    """
    basis = vanishing_basis(8, 3, P8_SUBSPACES)
    reports = []
    for triple in P8_TRIPLES:
        trip = "({},{},{})".format(*triple)
        parts = [theory.enumerate_triple_partitions(x).parts for x in triple]
        for pl in parts[0]:
            for pm in parts[1]:
                for pn in parts[2]:
                    label = (
                        f"4.5 {trip} L={','.join(map(str, pl))}"
                        f" M={','.join(map(str, pm))} N={','.join(map(str, pn))}"
                    )
                    specs = (
                        specs_on_subspace(8, 0, pl)
                        + specs_on_subspace(8, 1, pm)
                        + specs_on_subspace(8, 2, pn)
                    )
                    reports.append(run_rank_case(
                        policy, label, len(basis),
                        _projective_builder(8, specs, P8_SUBSPACES, basis, policy.prime),
                    ))
    return reports


def verify_remark46(policy: TrialPolicy) -> list:
    """The boundary cases around the triple list: (0,0,27) works, (0,6,21) does not."""
    basis = vanishing_basis(8, 3, P8_SUBSPACES)
    dp = lambda idx, k: [ComponentSpec(9, idx, 3)] * k
    reports = [
        run_rank_case(
            policy, "4.6 (0,0,27)", 27,
            _projective_builder(8, dp(2, 9), P8_SUBSPACES, basis, policy.prime),
        ),
        run_dim_case(
            policy, "4.6 (0,6,21)", 2,
            _projective_builder(8, dp(1, 2) + dp(2, 7), P8_SUBSPACES, basis, policy.prime),
        ),
        run_rank_case(
            policy, "4.6 (0,6,18) subscheme", 24,
            _projective_builder(8, dp(1, 2) + dp(2, 6), P8_SUBSPACES, basis, policy.prime),
        ),
    ]
    return reports


def verify_prop48_leftovers(policy: TrialPolicy, sample: int | None = None) -> list:
    """The nine two-subspace P^8 triples, every partition combo, rank 63.

    ``sample`` caps the number of combos per triple (seeded choice) for a
    quick pass; the default checks the full enumeration.
    """
    L, M = P8_SUBSPACES[0], P8_SUBSPACES[1]
    basis = vanishing_basis(8, 3, (L, M))
    reports = []
    for l, m, f in P8_LEFTOVER_TRIPLES:
        combos = [
            (pl, pm, xo)
            for pl in theory.enumerate_triple_partitions(l).parts
            for pm in theory.enumerate_triple_partitions(m).parts
            for xo in theory.enumerate_xo_partitions(f, 8).parts
        ]
        if sample is not None and sample < len(combos):
            rng = random.Random(child_seed(policy.seed, f"4.8 sample {(l, m, f)}", 0))
            combos = rng.sample(combos, sample)
        for pl, pm, xo in combos:
            label = (
                f"4.8 ({l},{m},{f}) L={','.join(map(str, pl))}"
                f" M={','.join(map(str, pm))} XO={','.join(map(str, xo))}"
            )
            specs = (
                specs_on_subspace(8, 0, pl)
                + specs_on_subspace(8, 1, pm)
                + specs_free(8, xo)
            )
            reports.append(run_rank_case(
                policy, label, 63,
                _projective_builder(8, specs, (L, M), basis, policy.prime),
            ))
    return reports


# ---------------------------------------------------------------------------
# base cases n = 5, 6, 7 for the codimension-3 restriction arguments

def _two_subspace_triples(n: int):
    total = 9 * (n - 1)
    for f in range(3 * n + 3, 5 * n + 3):
        lm = total - f
        for l in range(max(n - 2, lm - (4 * n - 6)), lm // 2 + 1):
            yield l, lm - l, f


def verify_props47_413_base(policy: TrialPolicy, n: int) -> list:
    """Exhaustive cubic rank checks in P^n (n = 5, 6, 7).

    Two sweeps: schemes split over two disjoint codimension-3 subspaces plus
    a free part (9(n-1) conditions), and schemes over a single subspace plus
    a free part of degree (n+1)^2 + alpha (C(n+3,3) - C(n,3) conditions).
    """
    if n < 5:
        raise ValueError("base cases start at n = 5")
    L = CoordinateSubspace({0, 1, 2})
    M = CoordinateSubspace({3, 4, 5})
    reports = []

    basis2 = vanishing_basis(n, 3, (L, M))
    for l, m, f in _two_subspace_triples(n):
        prop = "4.7" if f <= 3 * n + 6 else "4.8"
        for pl in theory.enumerate_triple_partitions(l).parts:
            for pm in theory.enumerate_triple_partitions(m).parts:
                for xo in theory.enumerate_xo_partitions(f, n).parts:
                    label = (
                        f"{prop} n={n} ({l},{m},{f}) L={','.join(map(str, pl))}"
                        f" M={','.join(map(str, pm))} XO={','.join(map(str, xo))}"
                    )
                    specs = (
                        specs_on_subspace(n, 0, pl)
                        + specs_on_subspace(n, 1, pm)
                        + specs_free(n, xo)
                    )
                    reports.append(run_rank_case(
                        policy, label, len(basis2),
                        _projective_builder(n, specs, (L, M), basis2, policy.prime),
                    ))

    basis1 = vanishing_basis(n, 3, (L,))
    total = comb(n + 3, 3) - comb(n, 3)
    for alpha in range(n):
        f = (n + 1) ** 2 + alpha
        l = total - f
        for pl in theory.enumerate_triple_partitions(l).parts:
            for xo in theory.enumerate_xo_partitions(f, n).parts:
                label = (
                    f"4.13 n={n} alpha={alpha} L={','.join(map(str, pl))}"
                    f" XO={','.join(map(str, xo))}"
                )
                specs = specs_on_subspace(n, 0, pl) + specs_free(n, xo)
                reports.append(run_rank_case(
                    policy, label, len(basis1),
                    _projective_builder(n, specs, (L,), basis1, policy.prime),
                ))
    return reports


# ---------------------------------------------------------------------------
# degree-2 exception tables

EXPECTED_QUADRIC_EXCEPTIONS = {
    # golden fixtures: (length profile, dim of quadrics through the scheme)
    3: (
        ((4, 4, 4), 1),
        ((4, 4, 3), 1),
        ((4, 4, 2), 1),
        ((4, 4, 1, 1), 1),
        ((4, 4, 1), 2),
        ((4, 4), 3),
        ((4, 3, 3), 1),
    ),
    4: (
        ((5, 5, 5, 5), 1),
        ((5, 5, 5, 4), 1),
        ((5, 5, 5, 3), 1),
        ((5, 5, 5, 2), 1),
        ((5, 5, 5, 1, 1), 1),
        ((5, 5, 5, 1), 2),
        ((5, 5, 5), 3),
        ((5, 5, 4, 4), 1),
        ((5, 5, 4, 3), 1),
        ((5, 5, 4, 2), 1),
        ((5, 5, 4, 1, 1), 1),
        ((5, 5, 4, 1), 2),
        ((5, 5, 4), 3),
        ((5, 5, 3, 3), 1),
        ((5, 5, 3, 2), 1),
        ((5, 5, 3, 1, 1), 1),
        ((5, 5, 3, 1), 2),
        ((5, 5, 3), 3),
        ((5, 5, 2, 2, 1), 1),
        ((5, 5, 2, 2), 2),
        ((5, 5, 2, 1, 1, 1), 1),
        ((5, 5, 2, 1, 1), 2),
        ((5, 5, 2, 1), 3),
        ((5, 5, 2), 4),
        ((5, 5, 1, 1, 1, 1, 1), 1),
        ((5, 5, 1, 1, 1, 1), 2),
        ((5, 5, 1, 1, 1), 3),
        ((5, 5, 1, 1), 4),
        ((5, 5, 1), 5),
        ((5, 5), 6),
        ((5, 4, 4, 2), 1),
        ((5, 4, 4, 1, 1), 1),
        ((5, 4, 4, 1), 2),
        ((5, 4, 4), 3),
        ((4, 4, 4, 4), 1),
        ((4, 4, 4, 3), 1),
    ),
}


def _general_scheme_builder(n, lengths, d, prime):
    basis = build_basis(HOMOGENEOUS, n, d)
    specs = [ComponentSpec(l) for l in lengths]

    def build(seed):
        inst = random_instance(n, specs, (), prime, seed)
        return condition_matrix_projective(inst, basis)

    return build


def verify_tables(policy: TrialPolicy, n: int) -> list:
    """Regenerate the degree-2 exception list for P^n and measure every dim."""
    fixture = EXPECTED_QUADRIC_EXCEPTIONS[n]
    rows = theory.enumerate_quadric_exceptions(n)

    def check():
        return [r.lengths for r in rows] == [prof for prof, _ in fixture]

    ok, ms = _timed(check)
    reports = [CaseReport(
        f"P{n} exception enumeration", "enumeration",
        len(fixture), [len(rows)],
        PASS if ok else SUSPECT, policy.seed, policy.prime, ms,
        note="profiles compared in descending order against the frozen table",
    )]
    by_profile = {r.lengths: r for r in rows}
    for prof, dim in fixture:
        row = by_profile.get(prof)
        extra = {}
        if row is not None:
            extra = {
                "profile": list(prof),
                "degree": row.degree,
                "max_delta": row.max_delta,
                "type_vector": list(row.type_vector),
                "dim_expected": dim,
            }
        reports.append(run_dim_case(
            policy, f"P{n} {','.join(map(str, prof))}", dim,
            _general_scheme_builder(n, prof, 2, policy.prime),
            lower_bound=theory.best_cone_lower_bound(n, prof),
            extra=extra,
        ))
    return reports


# ---------------------------------------------------------------------------
# the five deficient patterns for degrees other than 2

AH_EXCEPTION_SCHEMES = {
    "a": (2, 4, (3,) * 5),
    "b": (3, 4, (4,) * 9),
    "b'": (3, 4, (4,) * 8 + (3,)),
    "c": (4, 3, (5,) * 7),
    "d": (4, 4, (5,) * 14),
}


def verify_ah_exceptions(policy: TrialPolicy) -> list:
    """Each deficient pattern must measure exactly one missing condition."""
    reports = []
    for tag, (n, d, lengths) in AH_EXCEPTION_SCHEMES.items():
        reports.append(run_dim_case(
            policy, f"1.1{tag} n={n} d={d}", 1,
            _general_scheme_builder(n, lengths, d, policy.prime),
        ))
    return reports


# ---------------------------------------------------------------------------
# user-driven generic verification and the random sweep

def verify_generic(policy: TrialPolicy, n: int, d: int, a=None, lengths=None) -> CaseReport:
    """Predicted vs measured rank for one configuration.

    ``a`` verifies the affine problem (one evaluation row plus directional
    rows per point); ``lengths`` verifies the projective scheme against the
    full degree-d basis.  Exactly one of the two must be given.
    """
    if (a is None) == (lengths is None):
        raise ValueError("give exactly one of a= or lengths=")
    if lengths is not None:
        lengths = tuple(sorted(lengths, reverse=True))
        profile = tuple(l - 1 for l in lengths)
        label = f"generic n={n} d={d} lengths={','.join(map(str, lengths))}"
        builder = _general_scheme_builder(n, lengths, d, policy.prime)
    else:
        profile = tuple(sorted(a, reverse=True))
        label = f"generic n={n} d={d} a={','.join(map(str, profile))}"

        def builder(seed):
            prob = random_affine_problem(n, d, profile, policy.prime, seed)
            return condition_matrix_affine(prob, prime=policy.prime)

    prediction = theory.predict_profile(n, d, profile)
    expected = prediction.expected_codim
    if not prediction.exceptional:
        report = run_rank_case(policy, label, expected, builder)
    else:
        measured = []

        def go():
            for t in range(policy.trials):
                measured.append(rank(builder(child_seed(policy.seed, label, t)), policy.prime))
            return all(r < expected for r in measured)

        ok, ms = _timed(go)
        report = CaseReport(
            label, "rank", expected, measured,
            PASS if ok else SUSPECT, policy.seed, policy.prime, ms,
            note=f"deficient pattern {prediction.exception_id}:"
                 " every trial must fall short of the expected rank",
        )
    report.extra["prediction"] = prediction.to_json()
    return report


def sweep_nonexceptional(policy: TrialPolicy, count: int = 200,
                         n_range=(1, 4), d_range=(3, 5)) -> list:
    """Seeded random profiles away from the exception list: rank must be full.

    Configurations satisfy sum(a_i + 1) <= C(n+d, d), so the measured rank
    must equal the condition count in every case.
    """
    rng = random.Random(child_seed(policy.seed, "sweep-config", 0))
    reports = []
    idx = 0
    while len(reports) < count:
        n = rng.randint(*n_range)
        d = rng.randint(*d_range)
        cap = comb(n + d, d)
        k = rng.randint(1, 40)
        a = sorted((rng.randint(0, n) for _ in range(k)), reverse=True)
        while a and sum(x + 1 for x in a) > cap:
            a.pop()
        if not a:
            continue
        if (n, d, tuple(a)) in theory.EXCEPTION_PATTERNS:
            continue
        target = sum(x + 1 for x in a)
        label = f"sweep#{idx:03d} n={n} d={d} a={','.join(map(str, a))}"
        idx += 1

        def builder(seed, n=n, d=d, a=tuple(a)):
            prob = random_affine_problem(n, d, a, policy.prime, seed)
            return condition_matrix_affine(prob, prime=policy.prime)

        reports.append(run_rank_case(policy, label, target, builder))
    return reports


def quadric_bruteforce(policy: TrialPolicy, ns=(1, 2, 3, 4), extra_degree: int = 3) -> list:
    """Exhaustive agreement check: delta-criterion verdict == Monte Carlo verdict.

    Covers every length profile with parts <= n+1 and degree up to
    C(n+2,2) + extra_degree; one aggregated report per ambient dimension.
    """
    reports = []
    for n in ns:
        dim = comb(n + 2, 2)
        profiles = theory._profiles_up_to(n, dim + extra_degree)
        mismatches = []

        def go():
            for prof in profiles:
                predicted = theory.predict_quadric_scheme(n, prof).independent
                expected_rank = min(sum(prof), dim)
                build = _general_scheme_builder(n, prof, 2, policy.prime)
                best = 0
                for t in range(policy.trials):
                    seed = child_seed(policy.seed, f"bf P{n} {prof}", t)
                    best = max(best, rank(build(seed), policy.prime))
                    if best == expected_rank:
                        break
                if (best == expected_rank) != predicted:
                    mismatches.append(prof)
            return not mismatches

        ok, ms = _timed(go)
        reports.append(CaseReport(
            f"quadric brute force P{n} deg<= {dim + extra_degree}", "enumeration",
            len(profiles), [len(profiles) - len(mismatches)],
            PASS if ok else SUSPECT, policy.seed, policy.prime, ms,
            note="" if ok else f"disagreeing profiles: {mismatches[:5]}",
        ))
    return reports


# ---------------------------------------------------------------------------
# suite aggregation

SUITES = ("tables", "ah", "p8", "base", "sweep", "quadrics")


def run_suite(policy: TrialPolicy, which: str = "all", deep: bool = False) -> list:
    """Run one named suite or everything at desk scale (the default)."""
    reports = []
    if which in ("all", "tables"):
        reports += verify_tables(policy, 3)
        reports += verify_tables(policy, 4)
    if which in ("all", "ah"):
        reports += verify_ah_exceptions(policy)
    if which in ("all", "p8"):
        reports += verify_prop45(policy)
        reports += verify_remark46(policy)
        reports += verify_prop48_leftovers(policy)
    if which in ("all", "base"):
        reports += verify_props47_413_base(policy, 5)
        if deep:
            for n in (6, 7):
                reports += verify_props47_413_base(policy, n)
    if which in ("all", "sweep"):
        reports += sweep_nonexceptional(policy)
    if which in ("all", "quadrics"):
        reports += quadric_bruteforce(policy)
    if not reports:
        raise ValueError(f"unknown suite {which!r}; pick one of {('all',) + SUITES}")
    return reports
