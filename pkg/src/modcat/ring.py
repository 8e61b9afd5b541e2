"""Fusion ring core: exact quadratic irrationals, axiom verification,
Frobenius-Perron dimensions, subrings and gradings.

A fusion ring is stored as an ordered basis (index 0 = unit), a dual
involution and the integer tensor N[i, j, k] = multiplicity of X_k in
X_i (x) X_j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from ._abelian import (
    assignment,
    element_order,
    invariant_factors,
    squarefree_part,
)
from .errors import (
    DegenerateInputError,
    InternalConsistencyError,
    MalformedInputError,
    NumericalError,
    UnsupportedInputError,
)

FP_TOL = 1e-9
FP_CONVERGENCE = 1e-12
FP_MAX_ITER = 100_000


# ---------------------------------------------------------------------------
# exact scalars a + b*sqrt(t)


@dataclass(frozen=True)
class AlgebraicReal:
    """Exact real of the form a + b*sqrt(t) with t square-free positive.

    Canonical form: b == 0 implies t == 1.  Products are defined whenever
    they stay in the same quadratic field (equal t, or one factor rational),
    which covers every dimension appearing in the metaplectic family.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    t: int = 1

    def __post_init__(self):
        if self.t < 1 or squarefree_part(self.t) != self.t:
            raise MalformedInputError(f"radicand {self.t} is not square-free positive")
        if self.b == 0 and self.t != 1:
            object.__setattr__(self, "t", 1)
        if self.b != 0 and self.t == 1:
            object.__setattr__(self, "a", self.a + self.b)
            object.__setattr__(self, "b", Fraction(0))

    @classmethod
    def of(cls, x) -> "AlgebraicReal":
        if isinstance(x, AlgebraicReal):
            return x
        return cls(Fraction(x))

    @classmethod
    def sqrt(cls, n: int) -> "AlgebraicReal":
        if n < 0:
            raise MalformedInputError("sqrt of a negative integer")
        if n == 0:
            return cls(Fraction(0))
        t = squarefree_part(n)
        return cls(Fraction(0), Fraction(isqrt(n // t)), t)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * float(self.t) ** 0.5

    def __add__(self, other) -> "AlgebraicReal":
        other = AlgebraicReal.of(other)
        if self.b == 0:
            return AlgebraicReal(self.a + other.a, other.b, other.t)
        if other.b == 0:
            return AlgebraicReal(self.a + other.a, self.b, self.t)
        if self.t != other.t:
            raise UnsupportedInputError("sum leaves the quadratic field")
        return AlgebraicReal(self.a + other.a, self.b + other.b, self.t)

    def __mul__(self, other) -> "AlgebraicReal":
        other = AlgebraicReal.of(other)
        if self.b == 0:
            return AlgebraicReal(self.a * other.a, self.a * other.b, other.t)
        if other.b == 0:
            return AlgebraicReal(self.a * other.a, self.b * other.a, self.t)
        if self.t != other.t:
            raise UnsupportedInputError("product leaves the quadratic field")
        return AlgebraicReal(
            self.a * other.a + self.b * other.b * self.t,
            self.a * other.b + self.b * other.a,
            self.t,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __sub__(self, other) -> "AlgebraicReal":
        other = AlgebraicReal.of(other)
        return self + AlgebraicReal(-other.a, -other.b, other.t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicReal):
            try:
                other = AlgebraicReal.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return (self.a, self.b, self.t) == (other.a, other.b, other.t)

    def __hash__(self):
        return hash((self.a, self.b, self.t))

    def squared(self) -> "AlgebraicReal":
        return self * self

    def __repr__(self) -> str:
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.t})"
        s = rad if self.b == 1 else f"{self.b}*{rad}"
        return s if self.a == 0 else f"{self.a}+{s}"

    def to_json(self) -> list[int]:
        return [
            self.a.numerator, self.a.denominator,
            self.b.numerator, self.b.denominator,
            self.t,
        ]

    @classmethod
    def from_json(cls, row) -> "AlgebraicReal":
        an, ad, bn, bd, t = row
        return cls(Fraction(an, ad), Fraction(bn, bd), t)


ONE = AlgebraicReal(Fraction(1))


# ---------------------------------------------------------------------------
# the ring itself


@dataclass(frozen=True)
class FusionRing:
    labels: tuple[str, ...]
    dual: tuple[int, ...]
    fusion: np.ndarray  # shape (r, r, r), N[i, j, k]
    exact_dims: tuple[AlgebraicReal, ...] | None = None

    def __post_init__(self):
        r = len(self.labels)
        fusion = np.asarray(self.fusion, dtype=np.int64)
        object.__setattr__(self, "fusion", fusion)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dual", tuple(self.dual))
        if fusion.shape != (r, r, r):
            raise MalformedInputError(
                f"fusion tensor shape {fusion.shape} does not match rank {r}"
            )
        if len(self.dual) != r or sorted(self.dual) != list(range(r)):
            raise MalformedInputError("dual must be a permutation of the indices")
        if any(self.dual[self.dual[i]] != i for i in range(r)):
            raise MalformedInputError("dual must be an involution")
        if np.any(fusion < 0):
            raise MalformedInputError("fusion multiplicities must be nonnegative")
        if len(set(self.labels)) != r:
            raise MalformedInputError("labels must be distinct")
        if self.exact_dims is not None and len(self.exact_dims) != r:
            raise MalformedInputError("exact_dims length does not match rank")
        fusion.setflags(write=False)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def fusion_matrix(self, i: int) -> np.ndarray:
        """Left-multiplication matrix (N_i)_{k,j} = N[i, j, k]."""
        return self.fusion[i].T

    # -- JSON wire format: only nonzero entries are listed --

    def to_json_dict(self) -> dict:
        entries = [
            [int(i), int(j), int(k), int(self.fusion[i, j, k])]
            for i, j, k in zip(*np.nonzero(self.fusion))
        ]
        out = {
            "labels": list(self.labels),
            "dual": list(self.dual),
            "fusion": sorted(entries),
        }
        if self.exact_dims is not None:
            out["dims"] = [d.to_json() for d in self.exact_dims]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "FusionRing":
        labels = tuple(data["labels"])
        r = len(labels)
        fusion = np.zeros((r, r, r), dtype=np.int64)
        for i, j, k, m in data["fusion"]:
            if not (0 <= i < r and 0 <= j < r and 0 <= k < r):
                raise MalformedInputError(f"fusion entry index out of range: {(i, j, k)}")
            fusion[i, j, k] = m
        dims = None
        if "dims" in data:
            dims = tuple(AlgebraicReal.from_json(row) for row in data["dims"])
        return cls(labels, tuple(data["dual"]), fusion, dims)

    @classmethod
    def loads(cls, text: str) -> "FusionRing":
        return cls.from_json_dict(json.loads(text))


@dataclass
class AxiomReport:
    violations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_axioms(ring: FusionRing) -> AxiomReport:
    """Check the based-ring axioms; returns every violation with a witness."""
    N = ring.fusion
    r = ring.rank
    report = AxiomReport()
    dual = ring.dual

    if dual[0] != 0:
        report.violations.append(("dual_of_unit", (0,)))
    for i in range(r):
        if dual[dual[i]] != i:
            report.violations.append(("dual_involution", (i,)))

    eye = np.eye(r, dtype=np.int64)
    for j, k in zip(*np.nonzero(N[0] != eye)):
        report.violations.append(("unit_left", (0, int(j), int(k))))
    for j, k in zip(*np.nonzero(N[:, 0, :] != eye)):
        report.violations.append(("unit_right", (int(j), 0, int(k))))

    pairing = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        pairing[i, dual[i]] = 1
    for i, j in zip(*np.nonzero(N[:, :, 0] != pairing)):
        report.violations.append(("duality_pairing", (int(i), int(j), 0)))

    # Frobenius reciprocity: N_{ij}^k = N_{i*k}^j = N_{kj*}^i
    d = np.asarray(dual)
    if not np.array_equal(N, N[d][:, :, :].transpose(0, 2, 1)[:, :, :][:, :, :]):
        # N_{i*k}^j as a tensor indexed (i, j, k)
        alt = N[d].transpose(0, 2, 1)
        for i, j, k in zip(*np.nonzero(N != alt)):
            report.violations.append(("frobenius_left", (int(i), int(j), int(k))))
    alt2 = N[:, d, :].transpose(2, 1, 0)  # N_{k j*}^i indexed (i, j, k)
    if not np.array_equal(N, alt2):
        for i, j, k in zip(*np.nonzero(N != alt2)):
            report.violations.append(("frobenius_right", (int(i), int(j), int(k))))

    # associativity: sum_m N_{ij}^m N_{mk}^l = sum_m N_{jk}^m N_{im}^l
    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    for i, j, k, l in zip(*np.nonzero(lhs != rhs)):
        report.violations.append(("associativity", (int(i), int(j), int(k), int(l))))

    return report


def is_commutative(ring: FusionRing) -> bool:
    return bool(np.array_equal(ring.fusion, ring.fusion.transpose(1, 0, 2)))


def fp_dimensions(ring: FusionRing) -> np.ndarray:
    """Frobenius-Perron dimension of every simple object.

    Power iteration on M = sum_i N_i (strictly positive for a fusion ring);
    the common Perron eigenvector normalized to d_0 = 1 carries every d_i
    at once.
    """
    if not is_commutative(ring):
        raise UnsupportedInputError("fp_dimensions requires a commutative fusion ring")
    M = ring.fusion.sum(axis=0).T.astype(float)
    v = np.ones(ring.rank)
    for it in range(FP_MAX_ITER):
        w = M @ v
        w /= np.max(w)
        if np.max(np.abs(w - v)) < FP_CONVERGENCE:
            v = w
            break
        v = w
    else:
        raise NumericalError(f"power iteration did not converge in {FP_MAX_ITER} steps")
    dims = v / v[0]
    if ring.exact_dims is not None:
        for i, d in enumerate(ring.exact_dims):
            if abs(float(d) - dims[i]) >= FP_TOL:
                raise InternalConsistencyError(
                    f"exact dimension of {ring.labels[i]} disagrees with eigenvector"
                )
    return dims


def global_fp_dim(ring: FusionRing) -> float:
    dims = fp_dimensions(ring)
    return float(np.sum(dims**2))


def hom_space_dim(ring: FusionRing, word: list[int], target: int) -> int:
    """Multiplicity of X_target in the ordered product of the word.

    Exact integer arithmetic (tensor powers overflow int64 quickly).
    """
    if not word:
        raise MalformedInputError("tensor word must be nonempty")
    r = ring.rank
    N = ring.fusion
    v = [0] * r
    v[word[0]] = 1
    for w in word[1:]:
        v = [
            sum(v[a] * int(N[a, w, k]) for a in range(r) if v[a])
            for k in range(r)
        ]
    return v[target]


def asymptotic_dim_ratio(ring: FusionRing, i: int, n: int) -> float:
    """Growth ratio of invariants in consecutive nonvanishing tensor powers."""
    if n < 2:
        raise MalformedInputError("asymptotic ratio needs n >= 2")
    k = next(
        (k for k in range(1, ring.rank + 1) if hom_space_dim(ring, [i] * k, 0) > 0),
        None,
    )
    if k is None:
        raise DegenerateInputError(
            f"no tensor power of {ring.labels[i]} up to the rank contains the unit"
        )
    hi = hom_space_dim(ring, [i] * (k * n), 0)
    lo = hom_space_dim(ring, [i] * (k * (n - 1)), 0)
    if lo == 0:
        raise DegenerateInputError("vanishing invariants at the detected period")
    return float(Fraction(hi, lo))


# ---------------------------------------------------------------------------
# invertibles and subrings


@dataclass(frozen=True)
class InvertibleGroup:
    """A set of invertible indices together with its fusion group law."""

    elements: tuple[int, ...]
    product: dict  # (i, j) -> k on elements

    def __contains__(self, i: int) -> bool:
        return i in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def _table(self) -> tuple[list[list[int]], int]:
        pos = {g: n for n, g in enumerate(self.elements)}
        table = [
            [pos[self.product[(a, b)]] for b in self.elements] for a in self.elements
        ]
        return table, pos[self.elements[0]] if 0 not in pos else pos[0]

    def invariant_factors(self) -> list[int]:
        table, e = self._table()
        return invariant_factors(table, e)

    def element_orders(self) -> dict[int, int]:
        table, e = self._table()
        return {
            g: element_order(table, e, n) for n, g in enumerate(self.elements)
        }


def _dims_for(ring: FusionRing) -> np.ndarray:
    return fp_dimensions(ring)


def invertibles(ring: FusionRing) -> InvertibleGroup:
    dims = _dims_for(ring)
    elems = tuple(i for i in range(ring.rank) if dims[i] <= 1 + FP_TOL)
    product = {}
    for a in elems:
        for b in elems:
            ks = np.nonzero(ring.fusion[a, b])[0]
            if len(ks) != 1 or ring.fusion[a, b, ks[0]] != 1 or ks[0] not in elems:
                raise InternalConsistencyError(
                    "invertible objects are not closed under fusion"
                )
            product[(a, b)] = int(ks[0])
    return InvertibleGroup(elems, product)


def fixing_group(ring: FusionRing, i: int) -> InvertibleGroup:
    """Subgroup of invertibles Y with Y (x) X_i = X_i."""
    inv = invertibles(ring)
    elems = tuple(g for g in inv.elements if ring.fusion[g, i, i] == 1)
    product = {(a, b): inv.product[(a, b)] for a in elems for b in elems}
    return InvertibleGroup(elems, product)


def subring_generated(ring: FusionRing, seeds) -> tuple[int, ...]:
    """Smallest fusion- and dual-closed sub-basis containing the unit and seeds."""
    current = {0, *seeds}
    current |= {ring.dual[i] for i in current}
    while True:
        new = set(current)
        for i in current:
            for j in current:
                new |= {int(k) for k in np.nonzero(ring.fusion[i, j])[0]}
        new |= {ring.dual[i] for i in new}
        if new == current:
            return tuple(sorted(current))
        current = new


def adjoint_subring(ring: FusionRing) -> tuple[int, ...]:
    """Sub-basis generated by all X (x) X*."""
    seeds = set()
    for i in range(ring.rank):
        seeds |= {int(k) for k in np.nonzero(ring.fusion[i, ring.dual[i]])[0]}
    return subring_generated(ring, seeds)


# ---------------------------------------------------------------------------
# gradings


@dataclass(frozen=True)
class Grading:
    """Faithful grading: invariant factors of the group and the degree of
    each simple object as an exponent tuple."""

    group: tuple[int, ...]
    assignment: tuple[tuple[int, ...], ...]

    def components(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        out: dict[tuple[int, ...], list[int]] = {}
        for i, g in enumerate(self.assignment):
            out.setdefault(g, []).append(i)
        return {g: tuple(v) for g, v in out.items()}

    @property
    def order(self) -> int:
        n = 1
        for d in self.group:
            n *= d
        return n

    @property
    def is_faithful(self) -> bool:
        return len(self.components()) == self.order

    def check_tensor_compatible(self, ring: FusionRing) -> bool:
        for i, j, k in zip(*np.nonzero(ring.fusion)):
            gi, gj, gk = (self.assignment[x] for x in (int(i), int(j), int(k)))
            s = tuple((a + b) % d for a, b, d in zip(gi, gj, self.group))
            if s != gk:
                return False
        return True


def universal_grading(ring: FusionRing) -> Grading:
    """Finest faithful grading; trivial component = adjoint subring."""
    r = ring.rank
    adj = adjoint_subring(ring)

    parent = list(range(r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for j in range(r):
        for a in adj:
            for k in np.nonzero(ring.fusion[j, a])[0]:
                union(j, int(k))

    comp_of = [find(i) for i in range(r)]
    roots = sorted(set(comp_of))
    pos = {root: n for n, root in enumerate(roots)}
    members = {n: [i for i in range(r) if pos[comp_of[i]] == n] for n in range(len(roots))}

    if set(members[pos[comp_of[0]]]) != set(adj):
        raise InternalConsistencyError("trivial component differs from adjoint subring")

    n_comp = len(roots)
    table = [[-1] * n_comp for _ in range(n_comp)]
    for c1 in range(n_comp):
        for c2 in range(n_comp):
            targets = set()
            for i in members[c1]:
                for j in members[c2]:
                    targets |= {pos[comp_of[int(k)]] for k in np.nonzero(ring.fusion[i, j])[0]}
            if len(targets) != 1:
                raise InternalConsistencyError(
                    f"component product not well defined for components {c1}, {c2}"
                )
            table[c1][c2] = targets.pop()

    e = pos[comp_of[0]]
    invs = invariant_factors(table, e)
    comp_assign = assignment(table, e, invs)
    return Grading(
        group=tuple(invs),
        assignment=tuple(comp_assign[pos[comp_of[i]]] for i in range(r)),
    )


def gn_grading(ring: FusionRing) -> Grading:
    """Grading by square-free parts of squared dimensions (elementary 2-group)."""
    parts = []
    if ring.exact_dims is not None:
        for d in ring.exact_dims:
            sq = d.squared()
            if not sq.is_rational or sq.a.denominator != 1:
                raise UnsupportedInputError("ring is not weakly integral")
            parts.append(squarefree_part(int(sq.a)))
    else:
        dims = fp_dimensions(ring)
        for x in dims**2:
            if abs(x - round(x)) >= FP_TOL:
                raise UnsupportedInputError("ring is not weakly integral")
            parts.append(squarefree_part(int(round(x))))

    values = sorted(set(parts))
    pos = {t: n for n, t in enumerate(values)}
    table = [[-1] * len(values) for _ in values]
    for t1 in values:
        for t2 in values:
            t3 = squarefree_part(t1 * t2)
            if t3 not in pos:
                raise InternalConsistencyError("square-free parts are not closed")
            table[pos[t1]][pos[t2]] = pos[t3]
    invs = invariant_factors(table, pos[1])
    comp_assign = assignment(table, pos[1], invs)
    return Grading(
        group=tuple(invs),
        assignment=tuple(comp_assign[pos[t]] for t in parts),
    )
