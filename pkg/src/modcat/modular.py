"""Ribbon data on a fusion ring: twists as exact roots of unity, the
S-matrix from the balancing relation, modularity and centralizers.

The only S-matrix definition in this package is the balancing relation

    S[i, j] = (theta_i * theta_j)^(-1) * sum_k N[i*, j, k] * d_k * theta_k,

evaluated in complex double precision from exact inputs.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import MalformedInputError, PreconditionError
from .ring import FP_TOL, AlgebraicReal, FusionRing, fp_dimensions

S_TOL = 1e-6


@dataclass(frozen=True)
class Phase:
    """Root of unity e^{2 pi i r} stored as the reduced fraction r in [0, 1)."""

    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r) % 1)

    @classmethod
    def of(cls, num: int, den: int = 1) -> "Phase":
        return cls(Fraction(num, den))

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.r + other.r)

    def inverse(self) -> "Phase":
        return Phase(-self.r)

    def __pow__(self, n: int) -> "Phase":
        return Phase(self.r * n)

    def __complex__(self) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.r))

    def __repr__(self) -> str:
        return f"e(2pi*{self.r})"


@dataclass(frozen=True)
class RibbonData:
    ring: FusionRing
    dims: tuple[AlgebraicReal, ...]
    twists: tuple[Phase, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(AlgebraicReal.of(d) for d in self.dims))
        object.__setattr__(self, "twists", tuple(self.twists))
        r = self.ring.rank
        if len(self.dims) != r or len(self.twists) != r:
            raise MalformedInputError("dims/twists length does not match rank")

    def validate(self) -> None:
        """Raise unless the ribbon invariants hold exactly."""
        dual = self.ring.dual
        if self.twists[0].r != 0:
            raise MalformedInputError("twist of the unit must be 1")
        for i in range(self.ring.rank):
            if self.twists[dual[i]] != self.twists[i]:
                raise MalformedInputError(f"twist of dual differs at index {i}")
            if self.dims[dual[i]] != self.dims[i]:
                raise MalformedInputError(f"dimension of dual differs at index {i}")
        d = np.array([float(x) for x in self.dims])
        lhs = np.outer(d, d)
        rhs = np.einsum("ijk,k->ij", self.ring.fusion.astype(float), d)
        if np.max(np.abs(lhs - rhs)) >= FP_TOL:
            raise MalformedInputError("dims do not satisfy the fusion homomorphism")

    @property
    def global_dim(self) -> float:
        return float(sum(float(d) ** 2 for d in self.dims))

    # -- JSON: the ring format plus "dims" and "twists" rows --

    def to_json_dict(self) -> dict:
        out = self.ring.to_json_dict()
        out["dims"] = [d.to_json() for d in self.dims]
        out["twists"] = [[t.r.numerator, t.r.denominator] for t in self.twists]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "RibbonData":
        ring = FusionRing.from_json_dict(data)
        dims = tuple(AlgebraicReal.from_json(row) for row in data["dims"])
        twists = tuple(Phase(Fraction(n, d)) for n, d in data["twists"])
        return cls(ring, dims, twists)

    @classmethod
    def loads(cls, text: str) -> "RibbonData":
        return cls.from_json_dict(json.loads(text))


@dataclass(frozen=True)
class SMatrix:
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", entries)
        if np.max(np.abs(entries - entries.T)) >= FP_TOL:
            raise MalformedInputError("S-matrix is not symmetric")

    @property
    def rank(self) -> int:
        return self.entries.shape[0]


def s_matrix(rd: RibbonData) -> SMatrix:
    """Balancing-relation S-matrix in complex doubles."""
    rd.validate()
    r = rd.ring.rank
    dual = rd.ring.dual
    d = np.array([float(x) for x in rd.dims])
    th = np.array([complex(t) for t in rd.twists])
    dt = d * th
    S = np.empty((r, r), dtype=complex)
    for i in range(r):
        for j in range(r):
            S[i, j] = (rd.ring.fusion[dual[i], j] @ dt) / (th[i] * th[j])
    return SMatrix(S)


def is_modular(rd: RibbonData) -> bool:
    """Invertibility of S, scale-aware: for modular data |det S| = D^{r/2}."""
    S = s_matrix(rd)
    expected = rd.global_dim ** (S.rank / 2)
    return bool(abs(np.linalg.det(S.entries)) > 0.5 * expected)


def centralizer(rd: RibbonData, sub) -> tuple[int, ...]:
    """Indices i with S[i, j] = d_i d_j for every j in the sub-basis."""
    sub = sorted(set(sub))
    N = rd.ring.fusion
    for i in sub:
        for j in sub:
            for k in np.nonzero(N[i, j])[0]:
                if int(k) not in sub:
                    raise MalformedInputError("sub-basis is not fusion-closed")
    S = s_matrix(rd).entries
    d = np.array([float(x) for x in rd.dims])
    out = [
        i
        for i in range(rd.ring.rank)
        if all(abs(S[i, j] - d[i] * d[j]) < S_TOL for j in sub)
    ]
    return tuple(out)


def muger_center(rd: RibbonData) -> tuple[int, ...]:
    return centralizer(rd, range(rd.ring.rank))


def classify_invertible(rd: RibbonData, i: int) -> tuple[str, Phase]:
    """Verdict ('boson' | 'fermion' | 'not-order-2') plus the twist."""
    if not (rd.dims[i] == AlgebraicReal.of(1)) and abs(float(rd.dims[i]) - 1) >= FP_TOL:
        raise PreconditionError(f"object {rd.ring.labels[i]} is not invertible")
    t = rd.twists[i]
    if rd.ring.fusion[i, i, 0] == 1:
        if t.r == 0:
            return ("boson", t)
        if t.r == Fraction(1, 2):
            return ("fermion", t)
    return ("not-order-2", t)


def transparency_constraint(ring: FusionRing, dims, g: int, x: int) -> Phase:
    """Twist of an invertible g forced by transparency against a fixed object x.

    When g fixes x (g (x) x = x) the balancing relation collapses to
    S[x, g] = d_x / theta_g independently of theta_x, so S[x, g] = d_x d_g
    forces theta_g = 1.
    """
    dims = tuple(AlgebraicReal.of(d) for d in dims)
    if abs(float(dims[g]) - 1) >= FP_TOL:
        raise PreconditionError(f"object {ring.labels[g]} is not invertible")
    if ring.fusion[g, x, x] != 1:
        raise PreconditionError(
            f"{ring.labels[g]} does not fix {ring.labels[x]}"
        )
    xd = ring.dual[x]
    col = ring.fusion[xd, g]
    if col[xd] != 1 or col.sum() != 1:
        raise PreconditionError("fixing relation fails on the dual object")
    return Phase(Fraction(0))


def gauss_sums(rd: RibbonData) -> tuple[complex, complex]:
    """(tau_plus, tau_minus) = sum_i d_i^2 theta_i^{+-1}."""
    plus = sum(float(d) ** 2 * complex(t) for d, t in zip(rd.dims, rd.twists))
    minus = sum(
        float(d) ** 2 * complex(t.inverse()) for d, t in zip(rd.dims, rd.twists)
    )
    return (complex(plus), complex(minus))


def ribbon_from_ring(ring: FusionRing, twists) -> RibbonData:
    """Attach twists to a ring whose exact dims are known (or computable)."""
    if ring.exact_dims is not None:
        dims = ring.exact_dims
    else:
        dims = tuple(_to_exact(x) for x in fp_dimensions(ring))
    return RibbonData(ring, dims, tuple(twists))


def _to_exact(x: float) -> AlgebraicReal:
    if abs(x - round(x)) < FP_TOL:
        return AlgebraicReal(Fraction(round(x)))
    sq = x * x
    if abs(sq - round(sq)) < FP_TOL:
        return AlgebraicReal.sqrt(round(sq))
    raise MalformedInputError(f"dimension {x} is not a supported quadratic integer")


def format_complex(z: complex, tol: float = FP_TOL) -> str:
    """Exact-looking string when z rounds to a Gaussian rational, else decimals."""
    for den in (1, 2, 4, 8):
        re, im = round(z.real * den), round(z.imag * den)
        if abs(z.real - re / den) < tol and abs(z.imag - im / den) < tol:
            re_s = str(Fraction(re, den))
            im_s = str(Fraction(im, den))
            if im == 0:
                return re_s
            if re == 0:
                return f"{im_s}i"
            sign = "+" if im > 0 else "-"
            return f"{re_s}{sign}{str(Fraction(abs(im), den))}i"
    return f"{z.real:.6f}{z.imag:+.6f}i"
