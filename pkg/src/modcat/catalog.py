"""Explicit constructors and censuses for the metaplectic family SO(N)_2,
the Ising x Ising modular data, and the dimension-16m component census.

The 4|N fusion rules are hand-coded from the generator relations of the
family (V1^2 = 1 + f + sum X_i, the X/Y index case formulas, and f/g
translation); rings for 4-nondividing N are produced by the particle-hole
gauging construction.  The two routes share no fusion arithmetic, which is
what makes the based-ring isomorphism check between them meaningful.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._abelian import squarefree_part
from .errors import InternalConsistencyError, ParameterError
from .gauging import assemble_ring, count_gaugings_per_form, gauge_particle_hole
from .metric import classify_forms, enumerate_cyclic_metric_groups, enumerate_forms
from .modular import Phase, RibbonData, transparency_constraint
from .ring import (
    FP_TOL,
    AlgebraicReal,
    FusionRing,
    fp_dimensions,
    universal_grading,
)


# ---------------------------------------------------------------------------
# small example rings


def fibonacci_ring() -> FusionRing:
    fusion = np.zeros((2, 2, 2), dtype=np.int64)
    fusion[0, 0, 0] = fusion[0, 1, 1] = fusion[1, 0, 1] = 1
    fusion[1, 1, 0] = fusion[1, 1, 1] = 1
    phi = AlgebraicReal(Fraction(1, 2), Fraction(1, 2), 5)
    return FusionRing(("1", "X"), (0, 1), fusion, (AlgebraicReal.of(1), phi))


def ising_ring() -> FusionRing:
    # basis 1, psi, sig with sig^2 = 1 + psi
    fusion = np.zeros((3, 3, 3), dtype=np.int64)
    table = {
        (0, 0): [0], (0, 1): [1], (0, 2): [2],
        (1, 0): [1], (1, 1): [0], (1, 2): [2],
        (2, 0): [2], (2, 1): [2], (2, 2): [0, 1],
    }
    for (i, j), ks in table.items():
        for k in ks:
            fusion[i, j, k] = 1
    dims = (AlgebraicReal.of(1), AlgebraicReal.of(1), AlgebraicReal.sqrt(2))
    return FusionRing(("1", "psi", "sig"), (0, 1, 2), fusion, dims)


# ---------------------------------------------------------------------------
# SO(N)_2


def _build_four_divides(n: int) -> FusionRing:
    """The 4|N metaplectic ring from its listed fusion rules.

    Basis 1, f, g, fg, X_0..X_{r-1}, Y_0..Y_r, V_1, V_2, W_1, W_2 with
    r = N/4 - 1; X_i and Y_i have dimension 2, V/W have dimension
    sqrt(N/2).  Index reflections xi (X-range) and rho (Y-range) fold
    out-of-range sums back into the basis.
    """
    r = n // 4 - 1
    h = n // 2
    klein = {
        ("1", "1"): "1", ("1", "f"): "f", ("1", "g"): "g", ("1", "fg"): "fg",
        ("f", "f"): "1", ("f", "g"): "fg", ("f", "fg"): "g",
        ("g", "g"): "1", ("g", "fg"): "f", ("fg", "fg"): "1",
    }

    def gmul(a, b):
        return klein.get((a, b)) or klein[(b, a)]

    objects = {("i", a): a for a in ("1", "f", "g", "fg")}
    dims = {k: AlgebraicReal.of(1) for k in objects}
    wx = max(len(str(max(r - 1, 0))), 1)
    wy = len(str(r))
    for i in range(r):
        objects[("X", i)] = f"X{i:0{wx}d}"
        dims[("X", i)] = AlgebraicReal.of(2)
    for i in range(r + 1):
        objects[("Y", i)] = f"Y{i:0{wy}d}"
        dims[("Y", i)] = AlgebraicReal.of(2)
    for s in ("V", "W"):
        for j in (1, 2):
            objects[(s, j)] = f"{s}{j}"
            dims[(s, j)] = AlgebraicReal.sqrt(h)

    def xi(m: int) -> Counter:
        # X-index m folds at the boundary: index r is the f + g fixed point
        if m == r:
            return Counter({("i", "f"): 1, ("i", "g"): 1})
        if m > r:
            m = 2 * r - m
        return Counter({("X", m): 1})

    def rho(m: int) -> int:
        if m < 0:
            return -m - 1
        if m > r:
            return 2 * r + 1 - m
        return m

    all_x = Counter({("X", i): 1 for i in range(r)})
    all_y = Counter({("Y", i): 1 for i in range(r + 1)})

    def prod(x, y) -> Counter:
        if x[0] != "i" and y[0] == "i":
            x, y = y, x
        if x[0] == "i":
            a = x[1]
            if y[0] == "i":
                return Counter({("i", gmul(a, y[1])): 1})
            if y[0] == "X":
                return Counter({("X", y[1] if a in ("1", "fg") else r - 1 - y[1]): 1})
            if y[0] == "Y":
                return Counter({("Y", y[1] if a in ("1", "fg") else r - y[1]): 1})
            s, j = y
            fixer = "f" if s == "V" else "g"
            if a == "1" or a == fixer:
                return Counter({(s, j): 1})
            return Counter({(s, 3 - j): 1})
        order = {"X": 0, "Y": 1, "V": 2, "W": 2}
        if order[x[0]] > order[y[0]]:
            x, y = y, x
        if x[0] == "X":
            if y[0] == "X":
                i, j = sorted((x[1], y[1]))
                out = xi(i + j + 1)
                if i == j:
                    out.update({("i", "1"): 1, ("i", "fg"): 1})
                else:
                    out[("X", j - i - 1)] += 1
                return out
            if y[0] == "Y":
                i, j = x[1], y[1]
                return Counter({("Y", rho(j - i - 1)): 1}) + Counter(
                    {("Y", rho(i + j + 1)): 1}
                )
            return Counter({(y[0], 1): 1, (y[0], 2): 1})
        if x[0] == "Y":
            if y[0] == "Y":
                i, j = sorted((x[1], y[1]))
                out = xi(i + j)
                if i == j:
                    out.update({("i", "1"): 1, ("i", "fg"): 1})
                else:
                    out[("X", j - i - 1)] += 1
                return out
            other = "W" if y[0] == "V" else "V"
            return Counter({(other, 1): 1, (other, 2): 1})
        # V/W products
        if x[0] == y[0]:
            fixer = "f" if x[0] == "V" else "g"
            out = all_x.copy()
            if x[1] == y[1]:
                out.update({("i", "1"): 1, ("i", fixer): 1})
            else:
                out.update({("i", gmul("fg", fixer)): 1, ("i", "fg"): 1})
            return out
        return all_y.copy()

    return assemble_ring(objects, dims, prod, unit=("i", "1"))


_RELABEL_ODD = {"z": "Z", "s1": "V+", "s2": "V-"}
_RELABEL_EVEN = {
    "z": "Z", "u1": "U1", "u2": "U2",
    "v1": "V+", "v2": "V-", "w1": "W+", "w2": "W-",
}


def build_so_n2(n: int) -> FusionRing:
    """Metaplectic fusion ring of SO(N)_2 with exact dimensions attached."""
    if n < 2:
        raise ParameterError("SO(N)_2 needs N >= 2")
    if n % 4 == 0:
        return _build_four_divides(n)
    base = gauge_particle_hole(enumerate_cyclic_metric_groups(n)[0])
    table = _RELABEL_ODD if n % 2 else _RELABEL_EVEN
    labels = tuple(
        table.get(lab, lab.replace("O", "X")) for lab in base.labels
    )
    return FusionRing(labels, base.dual, base.fusion, base.exact_dims)


# ---------------------------------------------------------------------------
# censuses


@dataclass
class MetaplecticCensus:
    n: int
    rank: int
    invertible_count: int
    dim2_count: int
    spinor_count: int
    spinor_dim: AlgebraicReal | None
    self_dual: tuple[bool, ...]
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _sector_of(label: str, d: float) -> str:
    # dimension classifies except in the degenerate cases N = 2 and N = 8,
    # where the defect dimension collides with 1 or 2; there the V/W labels
    # carried by every constructed metaplectic ring decide
    if label[0] in ("V", "W"):
        return "spinor"
    if abs(d - 1) < FP_TOL:
        return "invertible"
    if abs(d - 2) < FP_TOL:
        return "dim2"
    return "spinor"


def structure_census(ring: FusionRing, n: int | None = None) -> MetaplecticCensus:
    """Count sectors of a metaplectic ring against the three-case table."""
    dims = fp_dimensions(ring)
    if n is None:
        total = float(np.sum(dims**2))
        n = round(total / 4)
    sectors = [_sector_of(lab, d) for lab, d in zip(ring.labels, dims)]
    inv = sectors.count("invertible")
    dim2 = sectors.count("dim2")
    spin = sectors.count("spinor")
    spinor_dims = {
        ring.exact_dims[i] if ring.exact_dims else None
        for i, s in enumerate(sectors)
        if s == "spinor"
    }
    spinor_dim = spinor_dims.pop() if len(spinor_dims) == 1 else None
    self_dual = tuple(ring.dual[i] == i for i in range(ring.rank))

    census = MetaplecticCensus(
        n=n, rank=ring.rank, invertible_count=inv, dim2_count=dim2,
        spinor_count=spin, spinor_dim=spinor_dim, self_dual=self_dual,
    )
    if n % 2:
        expected = (2, (n - 1) // 2, 2, AlgebraicReal.sqrt(n))
    else:
        expected = (4, n // 2 - 1, 4, AlgebraicReal.sqrt(n // 2))
    for name, got, want in (
        ("invertible_count", inv, expected[0]),
        ("dim2_count", dim2, expected[1]),
        ("spinor_count", spin, expected[2]),
    ):
        if got != want:
            census.mismatches.append(f"{name}: got {got}, expected {want}")
    if spinor_dim is not None and spinor_dim != expected[3]:
        census.mismatches.append(
            f"spinor_dim: got {spinor_dim}, expected {expected[3]}"
        )
    if len(spinor_dims) > 1:
        census.mismatches.append("spinor dimensions are not all equal")
    total = float(np.sum(dims**2))
    if abs(total - 4 * n) >= 1e-6:
        census.mismatches.append(f"global dimension {total} != 4N = {4 * n}")
    non_self_dual = [i for i in range(ring.rank) if ring.dual[i] != i]
    if n % 4 == 2 and n > 2:
        bad = [i for i in non_self_dual if sectors[i] == "dim2"]
        if len(non_self_dual) != 6 or bad:
            census.mismatches.append(
                "expected exactly one invertible pair and all four spinors "
                "to be non-self-dual"
            )
    elif n != 2 and non_self_dual:
        census.mismatches.append("all objects should be self-dual")
    return census


def boson_fermion_census(n: int) -> dict[str, str]:
    """Expected boson/fermion verdicts for f, g, fg, with structural checks."""
    if n % 4:
        raise ParameterError("the boson/fermion census applies only for 4 | N")
    ring = build_so_n2(n)
    fg = ring.index("fg")
    r = n // 4 - 1
    # transparency against any fg-fixed object forces the fg twist to 1
    witness = ring.index("Y0") if r == 0 else next(
        i for i, lab in enumerate(ring.labels) if lab.startswith("X")
    )
    if transparency_constraint(ring, ring.exact_dims, fg, witness).r != 0:
        raise InternalConsistencyError("transparency did not force twist 1 on fg")
    all_bosons = n % 8 == 0
    # structural cross-check: r is even iff 8 does not divide N, and then the
    # middle Y is fixed by every invertible, so its square sees all four
    if (r % 2 == 0) != (n % 8 != 0):
        raise InternalConsistencyError("parity bookkeeping broke")
    if r % 2 == 0:
        mid = ring.index(f"Y{r // 2:0{len(str(r))}d}")
        hits = {
            ring.labels[int(k)] for k in np.nonzero(ring.fusion[mid, mid])[0]
        }
        if not {"1", "f", "g", "fg"} <= hits:
            raise InternalConsistencyError(
                "middle Y square does not reach all invertibles"
            )
    verdict = "boson" if all_bosons else "fermion"
    return {"fg": "boson", "f": verdict, "g": verdict}


# ---------------------------------------------------------------------------
# Ising x Ising


@dataclass(frozen=True)
class IsingParams:
    nu1: int
    nu2: int

    def __post_init__(self):
        if self.nu1 % 2 == 0 or self.nu2 % 2 == 0:
            raise ParameterError("Ising parameters must be odd residues mod 16")
        object.__setattr__(self, "nu1", self.nu1 % 16)
        object.__setattr__(self, "nu2", self.nu2 % 16)


def _ising_squared_ring() -> FusionRing:
    ising = ising_ring()
    names = ising.labels
    objects = {}
    dims = {}
    for a in range(3):
        for b in range(3):
            objects[(a, b)] = f"{names[a]}*{names[b]}"
            dims[(a, b)] = ising.exact_dims[a] * ising.exact_dims[b]

    def prod(x, y) -> Counter:
        out = Counter()
        for k1 in np.nonzero(ising.fusion[x[0], y[0]])[0]:
            for k2 in np.nonzero(ising.fusion[x[1], y[1]])[0]:
                out[(int(k1), int(k2))] += 1
        return out

    return assemble_ring(objects, dims, prod, unit=(0, 0))


def ising_squared_data(p: IsingParams) -> RibbonData:
    """Ribbon data of Ising^{nu1} x Ising^{nu2}: factor twists multiply,
    with theta_sig = e^{pi i nu / 8}."""
    ring = _ising_squared_ring()
    names = ("1", "psi", "sig")
    factor_twists = {
        "1": Fraction(0),
        "psi": Fraction(1, 2),
    }
    twists = []
    for label in ring.labels:
        a, b = label.split("*")
        t = Fraction(0)
        for part, nu in ((a, p.nu1), (b, p.nu2)):
            t += factor_twists.get(part, Fraction(nu, 16))
        twists.append(Phase(t))
    assert set(names) == {"1", "psi", "sig"}
    return RibbonData(ring, ring.exact_dims, tuple(twists))


def ising_squared_enumeration() -> dict:
    """Orbits of odd parameter pairs under swap and the joint +8 shift."""
    units = [1, 3, 5, 7, 9, 11, 13, 15]
    seen = set()
    orbits = []
    for nu1 in units:
        for nu2 in units:
            if (nu1, nu2) in seen:
                continue
            orbit = {
                (nu1, nu2),
                (nu2, nu1),
                ((nu1 + 8) % 16, (nu2 + 8) % 16),
                ((nu2 + 8) % 16, (nu1 + 8) % 16),
            }
            seen |= orbit
            orbits.append(sorted(orbit))
    histogram = Counter(len(o) for o in orbits)
    return {
        "orbits": orbits,
        "count": len(orbits),
        "histogram": dict(histogram),
    }


def ising_squared_total_count() -> dict:
    """20 = 12 particle-hole gaugings of (Z_4, q) + 8 gaugings of the four
    fermion-bearing Klein metric groups."""
    cyclic = len(enumerate_cyclic_metric_groups(4)) * count_gaugings_per_form(4)
    klein_classes = classify_forms(enumerate_forms((2, 2)))
    with_fermion = [
        cls
        for cls in klein_classes
        if any(x == Fraction(1, 2) for x in cls[0].q)
    ]
    klein = 2 * len(with_fermion)
    return {"cyclic-gauged": cyclic, "klein-gauged": klein, "total": cyclic + klein}


# ---------------------------------------------------------------------------
# dimension-16m component census


def sixteen_m_component_census(m: int) -> dict:
    """Per-component census of SO(4m)_2 for odd square-free m > 1."""
    if m <= 1 or m % 2 == 0 or squarefree_part(m) != m:
        raise ParameterError("m must be odd, square-free and > 1")
    n = 4 * m
    ring = build_so_n2(n)
    dims = fp_dimensions(ring)
    grading = universal_grading(ring)
    if grading.group != (2, 2):
        raise InternalConsistencyError("universal grading is not Z2 x Z2")
    comps = grading.components()
    trivial = comps[(0, 0)]
    report = {"m": m, "n": n, "rank": ring.rank, "checks": [], "ok": True}

    def check(name, cond):
        report["checks"].append((name, bool(cond)))
        if not cond:
            report["ok"] = False

    inv0 = [i for i in trivial if abs(dims[i] - 1) < FP_TOL]
    dim2_0 = [i for i in trivial if abs(dims[i] - 2) < FP_TOL]
    check("C0 has 4 invertibles", len(inv0) == 4)
    check("C0 has m-1 objects of dimension 2", len(dim2_0) == m - 1)
    bf = boson_fermion_census(n)
    check("one boson and two fermions expected among f, g, fg",
          sorted(bf.values()) == ["boson", "fermion", "fermion"])

    others = [comps[g] for g in comps if g != (0, 0)]
    dim2_comps = [c for c in others if all(abs(dims[i] - 2) < FP_TOL for i in c)]
    spinor_comps = [c for c in others if c not in dim2_comps]
    check("one component of m dimension-2 objects",
          len(dim2_comps) == 1 and len(dim2_comps[0]) == m)
    target = AlgebraicReal.sqrt(2 * m)
    check(
        "two components of 2 objects of dimension sqrt(2m)",
        len(spinor_comps) == 2
        and all(
            len(c) == 2
            and all(ring.exact_dims[i] == target for i in c)
            for c in spinor_comps
        ),
    )
    report["spinor_dim"] = target
    report["twist_pairing"] = "not-checked"
    return report


# ---------------------------------------------------------------------------
# based-ring isomorphism search


def based_ring_isomorphism(r1: FusionRing, r2: FusionRing):
    """A label bijection carrying one fusion tensor onto the other, or None.

    Backtracking over dimension-preserving assignments, pruning with every
    fusion entry among already-assigned objects.
    """
    if r1.rank != r2.rank:
        return None
    d1 = fp_dimensions(r1)
    d2 = fp_dimensions(r2)
    rank = r1.rank
    candidates = [
        [j for j in range(rank) if abs(d1[i] - d2[j]) < 1e-6] for i in range(rank)
    ]
    candidates[0] = [0]  # the unit must map to the unit
    if any(not c for c in candidates):
        return None
    phi = [-1] * rank
    used = [False] * rank

    def consistent(i: int) -> bool:
        di = r1.dual[i]
        if phi[di] != -1 and phi[di] != r2.dual[phi[i]]:
            return False
        assigned = [a for a in range(rank) if phi[a] != -1]
        for a in assigned:
            for b in assigned:
                if i in (a, b):
                    for c in assigned:
                        if r1.fusion[a, b, c] != r2.fusion[phi[a], phi[b], phi[c]]:
                            return False
                elif r1.fusion[a, b, i] != r2.fusion[phi[a], phi[b], phi[i]]:
                    return False
        return True

    order = sorted(range(rank), key=lambda i: (len(candidates[i]), i))

    def search(pos: int) -> bool:
        if pos == rank:
            return True
        i = order[pos]
        for j in candidates[i]:
            if used[j]:
                continue
            phi[i] = j
            used[j] = True
            if consistent(i) and search(pos + 1):
                return True
            phi[i] = -1
            used[j] = False
        return False

    return tuple(phi) if search(0) else None
