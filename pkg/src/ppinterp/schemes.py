"""Zero-dimensional schemes inside unions of double points and their condition matrices.

Two settings share this module:

* the affine interpolation problem (points in K^n, per-point direction sets,
  optional assigned values), whose condition matrix stacks one evaluation
  row and one directional-derivative row per direction for every point;

* the projective Monte Carlo verification problems, where a component is
  either freely supported (one evaluation row plus random combinations of
  the jacobian rows, or the full jacobian for a double point) or supported
  on a coordinate subspace with a prescribed residual r (r random jacobian
  combinations against a basis of forms vanishing on the subspace).

Random instances are drawn from one seed; replaying (seed, prime, specs)
reproduces the instance bit for bit.  Degenerate draws (coincident points,
dependent direction sets) are resampled a bounded number of times: each has
probability about 1/p, so a handful of retries is already overkill.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

import numpy as np

from .gf import DEFAULT_PRIME
from .linalg import rank
from .monomials import (
    AFFINE,
    HOMOGENEOUS,
    CoordinateSubspace,
    MonomialBasis,
    build_basis,
    derivative_row,
    eval_row,
)

MAX_REDRAWS = 16
GENERAL = "general"


class DegenerateDrawError(RuntimeError):
    """Random sampling kept producing degenerate data (wrong prime? tiny field?)."""


# ---------------------------------------------------------------------------
# fast GF(p) evaluation/jacobian rows (vectorized over the monomials)

def _pow_table(point, d, p):
    t = np.ones((point.size, d + 1), dtype=np.int64)
    for e in range(1, d + 1):
        t[:, e] = t[:, e - 1] * point % p
    return t


def _eval_row_mod(exps, powtab, p):
    row = np.ones(exps.shape[0], dtype=np.int64)
    for v in range(exps.shape[1]):
        row = row * powtab[v, exps[:, v]] % p
    return row


def _jacobian_mod(exps, powtab, p):
    nv = exps.shape[1]
    jac = np.empty((nv, exps.shape[0]), dtype=np.int64)
    for k in range(nv):
        ek = exps[:, k]
        row = ek * powtab[k, np.maximum(ek - 1, 0)] % p
        for v in range(nv):
            if v != k:
                row = row * powtab[v, exps[:, v]] % p
        jac[k] = row
    return jac


def _basis_exponent_array(basis: MonomialBasis):
    return np.array(basis.exponents, dtype=np.int64)


# ---------------------------------------------------------------------------
# component specs and scheme instances (projective setting)

@dataclass(frozen=True)
class ComponentSpec:
    """One component: its length, where it sits, and (on a subspace) its residual.

    ``support`` is either GENERAL or the index of a coordinate subspace; the
    residual counts the component's directions transversal to that subspace.
    A double point (length n+1) sits fully transversal (residual 3 for a
    codimension-3 subspace); shorter components may give up transversal
    directions one at a time, down to the window allowed for their length.
    """

    length: int
    support: object = GENERAL  # GENERAL or int index into the subspace list
    residual: int | None = None

    def validate(self, n: int, n_subspaces: int) -> None:
        if not 1 <= self.length <= n + 1:
            raise ValueError(f"length must lie in [1, {n + 1}]: {self.length}")
        if self.support == GENERAL:
            if self.residual is not None:
                raise ValueError("free components carry no residual prescription")
            return
        if not isinstance(self.support, int) or not 0 <= self.support < n_subspaces:
            raise ValueError(f"unknown subspace index {self.support!r}")
        r = self.residual
        if r is None:
            raise ValueError("components on a subspace need a residual in [0, 3]")
        lo = max(0, 3 - (n + 1 - self.length))
        if not lo <= r <= min(3, self.length):
            raise ValueError(
                f"residual {r} impossible for length {self.length} in P^{n}"
            )


@dataclass(frozen=True)
class ComponentInstance:
    spec: ComponentSpec
    point: tuple
    combo: tuple | None  # rows of the random combination matrix, or None = full jacobian


@dataclass(frozen=True)
class SchemeInstance:
    n: int
    prime: int
    seed: int
    subspaces: tuple
    components: tuple

    @property
    def degree(self) -> int:
        return sum(c.spec.length for c in self.components)


def scheme_degree(specs) -> int:
    return sum(s.length for s in specs)


def type_of(specs, n: int) -> tuple:
    return tuple(sum(1 for s in specs if s.length == i) for i in range(1, n + 2))


def degree_bookkeeping(specs, subspaces, which) -> tuple:
    """(deg X, deg(X cap S), deg(X:S)) for S a subspace index or an iterable of them.

    Components on a subspace meet it in length - residual; at general points
    the listed subspaces are pairwise disjoint from each other's supports and
    from free components, so the union rule has no correction terms.
    """
    if isinstance(which, int):
        which = (which,)
    which = set(which)
    deg = scheme_degree(specs)
    trace = sum(
        s.length - s.residual
        for s in specs
        if s.support != GENERAL and s.support in which
    )
    return deg, trace, deg - trace


def _draw_point(rng, n, prime, zeroed):
    while True:
        pt = [0 if i in zeroed else rng.randrange(prime) for i in range(n + 1)]
        if any(pt):
            return tuple(pt)


def _combo_rank(combo, prime, columns=None):
    m = [list(r) for r in combo]
    if columns is not None:
        m = [[r[j] for j in columns] for r in m]
    return rank(m, prime)


def random_instance(n, specs, subspaces=(), prime=DEFAULT_PRIME, seed=0) -> SchemeInstance:
    """Draw a concrete scheme: uniform coordinates, independent direction data.

    Support points on a subspace have its zeroed coordinates pinned to 0.
    Residual-r components must meet the subspace transversally in exactly r
    directions, which is enforced on the combination rows restricted to the
    zeroed coordinates.
    """
    subspaces = tuple(subspaces)
    for sub in subspaces:
        if sub.codim > n:
            raise ValueError(f"subspace {sorted(sub.zeroed)} has no points in P^{n}")
    specs = tuple(specs)
    for s in specs:
        s.validate(n, len(subspaces))
    rng = random.Random(seed)
    instances = []
    seen_points = set()
    for s in specs:
        zeroed = subspaces[s.support].zeroed if s.support != GENERAL else frozenset()
        for attempt in range(MAX_REDRAWS + 1):
            point = _draw_point(rng, n, prime, zeroed)
            if point not in seen_points:
                break
        else:
            raise DegenerateDrawError("could not draw distinct support points")
        seen_points.add(point)

        if s.support == GENERAL:
            n_rows = 0 if s.length == n + 1 else s.length - 1
            check_cols = None
        else:
            n_rows = s.residual
            check_cols = sorted(zeroed)
        combo = None
        if n_rows:
            for attempt in range(MAX_REDRAWS + 1):
                combo = tuple(
                    tuple(rng.randrange(prime) for _ in range(n + 1))
                    for _ in range(n_rows)
                )
                if _combo_rank(combo, prime, check_cols) == n_rows:
                    break
            else:
                raise DegenerateDrawError("could not draw independent directions")
        instances.append(ComponentInstance(s, point, combo))
    return SchemeInstance(n, prime, seed, subspaces, tuple(instances))


def _component_rows(comp, exps, basis, subspaces, prime):
    spec = comp.spec
    point = np.array(comp.point, dtype=np.int64)
    powtab = _pow_table(point, basis.d, prime)
    if spec.support != GENERAL:
        zeroed = subspaces[spec.support].zeroed
        if any(all(e[i] == 0 for i in zeroed) for e in basis.exponents):
            raise ValueError(
                "components on a subspace need a basis of forms vanishing on it"
            )
        if spec.residual == 0:
            return np.empty((0, exps.shape[0]), dtype=np.int64)
        jac = _jacobian_mod(exps, powtab, prime)
        return np.array(comp.combo, dtype=np.int64) @ jac % prime
    if spec.length == basis.n + 1:
        return _jacobian_mod(exps, powtab, prime)
    rows = [_eval_row_mod(exps, powtab, prime)]
    if comp.combo is not None:
        jac = _jacobian_mod(exps, powtab, prime)
        rows.extend(np.array(comp.combo, dtype=np.int64) @ jac % prime)
    return np.vstack(rows)


def condition_matrix_projective(instance: SchemeInstance, basis: MonomialBasis):
    """Stack every component's condition rows against the given form basis.

    A free component of length l contributes l rows (the full jacobian when
    l = n+1, since the value row is a combination of it); a component on a
    subspace contributes its residual many rows.
    """
    if basis.mode != HOMOGENEOUS or basis.n != instance.n:
        raise ValueError("basis/scheme mismatch")
    exps = _basis_exponent_array(basis)
    blocks = [
        _component_rows(c, exps, basis, instance.subspaces, instance.prime)
        for c in instance.components
    ]
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return np.empty((0, len(basis)), dtype=np.int64)
    return np.vstack(blocks)


def expected_row_count(specs) -> int:
    return sum(
        s.length if s.support == GENERAL else s.residual for s in specs
    )


def hilbert_function(instance: SchemeInstance, d: int, subspaces=None) -> int:
    """Conditions actually imposed on degree-d forms (through the given subspaces).

    Equals the scheme degree exactly when the instance imposes independent
    conditions.
    """
    from .monomials import vanishing_basis

    if subspaces:
        basis = vanishing_basis(instance.n, d, subspaces)
    else:
        basis = build_basis(HOMOGENEOUS, instance.n, d)
    return rank(condition_matrix_projective(instance, basis), instance.prime)


# ---------------------------------------------------------------------------
# the affine interpolation problem

@dataclass
class InterpolationProblem:
    """Points, per-point direction sets, and optionally the assigned values.

    ``values[i]`` holds the value at the i-th point followed by one assigned
    directional derivative per direction.  Entries are exact scalars (ints,
    Fractions, or residues when ``prime`` is set).
    """

    n: int
    d: int
    points: list
    directions: list
    values: list | None = None
    prime: int | None = None

    def __post_init__(self):
        if len(self.directions) != len(self.points):
            raise ValueError("one direction set per point required")
        for p in self.points:
            if len(p) != self.n:
                raise ValueError(f"point {p} does not live in K^{self.n}")
        for ds in self.directions:
            if len(ds) > self.n:
                raise ValueError(f"at most n={self.n} directions per point")
            for v in ds:
                if len(v) != self.n:
                    raise ValueError("direction/ambient dimension mismatch")
        if self.values is not None:
            if len(self.values) != len(self.points):
                raise ValueError("one value group per point required")
            for vals, ds in zip(self.values, self.directions):
                if len(vals) != len(ds) + 1:
                    raise ValueError("each point takes one value plus one per direction")

    @property
    def a_profile(self) -> tuple:
        return tuple(len(ds) for ds in self.directions)

    def condition_count(self) -> int:
        return sum(a + 1 for a in self.a_profile)


def condition_matrix_affine(prob: InterpolationProblem, basis: MonomialBasis | None = None,
                            prime: int | None = None):
    """One evaluation row per point followed by its directional-derivative rows."""
    if basis is None:
        basis = build_basis(AFFINE, prob.n, prob.d)
    if basis.mode != AFFINE or basis.n != prob.n or basis.d != prob.d:
        raise ValueError("basis/problem mismatch")
    if prime is None:
        prime = prob.prime
    rows = []
    for pt, ds in zip(prob.points, prob.directions):
        rows.append(eval_row(basis, pt, prime))
        for v in ds:
            rows.append(derivative_row(basis, pt, v, prime))
    return rows


def condition_rhs(prob: InterpolationProblem) -> list:
    if prob.values is None:
        raise ValueError("problem carries no assigned values")
    rhs = []
    for vals in prob.values:
        rhs.extend(vals)
    return rhs


def random_affine_problem(n, d, a_profile, prime=DEFAULT_PRIME, seed=0) -> InterpolationProblem:
    """A random affine problem over GF(p) with the given derivative counts."""
    rng = random.Random(seed)
    points = []
    seen = set()
    for _ in a_profile:
        for attempt in range(MAX_REDRAWS + 1):
            pt = tuple(rng.randrange(prime) for _ in range(n))
            if pt not in seen:
                break
        else:
            raise DegenerateDrawError("could not draw distinct points")
        seen.add(pt)
        points.append(list(pt))
    directions = []
    for a in a_profile:
        if a > n:
            raise ValueError(f"at most n={n} directions per point")
        for attempt in range(MAX_REDRAWS + 1):
            ds = [[rng.randrange(prime) for _ in range(n)] for _ in range(a)]
            if rank(ds, prime) == a:
                break
        else:
            raise DegenerateDrawError("could not draw independent directions")
        directions.append(ds)
    return InterpolationProblem(n, d, points, directions, prime=prime)


# ---------------------------------------------------------------------------
# JSON shape for scheme specs

def scheme_to_json(n, specs, subspaces, prime, seed, d=None) -> dict:
    doc = {
        "n": n,
        "prime": prime,
        "seed": seed,
        "components": [
            {
                "length": s.length,
                "support": s.support if s.support == GENERAL else int(s.support),
                **({"residual": s.residual} if s.support != GENERAL else {}),
            }
            for s in specs
        ],
        "subspaces": [{"zeroed": sorted(s.zeroed)} for s in subspaces],
    }
    if d is not None:
        doc["d"] = d
    return doc


def scheme_from_json(doc):
    specs = tuple(
        ComponentSpec(c["length"], c.get("support", GENERAL), c.get("residual"))
        for c in doc["components"]
    )
    subspaces = tuple(CoordinateSubspace(s["zeroed"]) for s in doc.get("subspaces", []))
    return (
        doc["n"],
        specs,
        subspaces,
        doc.get("prime", DEFAULT_PRIME),
        doc.get("seed", 0),
        doc.get("d"),
    )


def load_scheme(path):
    with open(path) as fh:
        return scheme_from_json(json.load(fh))
