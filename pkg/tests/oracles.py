"""Independent brute-force oracles used to cross-check the library.

Each oracle deliberately uses a different algorithm from the production
code: hom-space dimensions by divide-and-conquer multiset expansion,
Z2-cohomology by direct evaluation of the inhomogeneous cochain
differential, and quadratic-form classification on Z_N by exhaustive
parametrization plus unit-permutation canonicalization.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product


# ---------------------------------------------------------------------------
# hom-space dimensions


def hom_dim_bruteforce(ring, word, target):
    """dim Hom(x_1 (x) ... (x) x_n, target) by recursive halving.

    Splits the word in the middle, fully decomposes each half into a
    multiset of simples, then contracts the two multisets through the
    fusion tensor directly.
    """
    counts = _expand(ring, list(word))
    return counts.get(target, 0)


def _expand(ring, word) -> Counter:
    if len(word) == 1:
        return Counter({word[0]: 1})
    mid = len(word) // 2
    left = _expand(ring, word[:mid])
    right = _expand(ring, word[mid:])
    out: Counter = Counter()
    for a, ma in left.items():
        for b, mb in right.items():
            row = ring.fusion[a, b]
            for k in range(ring.rank):
                if row[k]:
                    out[k] += ma * mb * int(row[k])
    return out


# ---------------------------------------------------------------------------
# Z2 cohomology by cochain enumeration


def _coboundary(mod, n, f):
    """The inhomogeneous differential d: C^n(Z2, M) -> C^{n+1}(Z2, M).

    (df)(g_1..g_{n+1}) = g_1 f(g_2..g_{n+1})
                         + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
                         + (-1)^{n+1} f(g_1..g_n).
    Cochains are dicts keyed by tuples in {0,1}^n.
    """
    out = {}
    for args in product((0, 1), repeat=n + 1):
        head = f[args[1:]]
        val = mod.rho(head) if args[0] else head
        for i in range(1, n + 1):
            merged = args[: i - 1] + ((args[i - 1] + args[i]) % 2,) + args[i + 1 :]
            term = f[merged]
            val = mod.add(val, term if i % 2 == 0 else mod.neg(term))
        tail = f[args[:-1]]
        val = mod.add(val, tail if (n + 1) % 2 == 0 else mod.neg(tail))
        out[args] = val
    return out


def _normalized_cochains(mod, n):
    """All cochains vanishing when any argument is the identity.

    On Z2 such a cochain is determined by its value at (1, ..., 1)."""
    zero = tuple(0 for _ in mod.facs)
    ones = tuple(1 for _ in range(n))
    for m in mod.elements():
        f = {args: (m if args == ones else zero) for args in product((0, 1), repeat=n)}
        yield m, f


def cohomology_bruteforce(mod, n):
    """H^n(Z2, M) for finite M as invariant factors, via normalized cochains."""
    zero = tuple(0 for _ in mod.facs)
    ones = tuple(1 for _ in range(n))
    cocycles = set()
    for m, f in _normalized_cochains(mod, n):
        if all(v == zero for v in _coboundary(mod, n, f).values()):
            cocycles.add(m)
    boundaries = set()
    for _, f in _normalized_cochains(mod, n - 1):
        boundaries.add(_coboundary(mod, n - 1, f)[ones])
    assert boundaries <= cocycles
    return _subquotient_invariants(mod, cocycles, boundaries)


def _subquotient_invariants(mod, top, bottom):
    """Invariant factors of top/bottom, both subgroups of the module."""
    elems = sorted(top)
    cosets = {}
    reps = []
    for a in elems:
        for b in bottom:
            key = mod.add(a, b)
            if key in cosets:
                cosets[a] = cosets[key]
                break
        else:
            cosets[a] = len(reps)
            reps.append(a)
    order = len(reps)
    if order == 1:
        return ()
    # element orders in the quotient determine a finite abelian group
    quot_order = {}
    for a in reps:
        k, acc = 1, a
        while cosets[acc] != cosets[mod.add(a, mod.neg(a))]:
            acc = mod.add(acc, a)
            k += 1
        quot_order[cosets[a]] = k
    return _invariants_from_orders(order, sorted(quot_order.values()))


def _invariants_from_orders(order, orders):
    """Reconstruct invariant factors from the multiset of element orders."""
    target = Counter(orders)
    for chain in _chains(order):
        got = Counter()
        for elem in product(*[range(d) for d in chain]):
            got[_lcm_order(chain, elem)] += 1
        if got == target:
            return tuple(chain)
    raise AssertionError(f"no abelian group of order {order} matches {orders}")


def _lcm_order(chain, elem):
    from math import gcd

    out = 1
    for d, x in zip(chain, elem):
        o = d // gcd(d, x) if x else 1
        out = out * o // gcd(out, o)
    return out


def _chains(order):
    """All invariant-factor chains (d_1 | d_2 | ... , product = order)."""
    if order == 1:
        yield ()
        return
    from modcat._abelian import divisors

    def rec(remaining, max_d):
        if remaining == 1:
            yield ()
            return
        for d in divisors(remaining):
            if d > 1 and max_d % d == 0:
                for rest in rec(remaining // d, d):
                    yield rest + (d,)

    yield from rec(order, order)


# ---------------------------------------------------------------------------
# quadratic forms on Z_N by exhaustive parametrization


def all_forms_bruteforce(n):
    """Every q: Z_N -> Q/Z with q(-a) = q(a) and bilinear polarization.

    Enumerates q(1) in (1/2N)Z and sigma(1,1) in (1/N)Z, extends by the
    quadratic recurrence q(a+1) = q(a) + q(1) + a*sigma(1,1), and keeps the
    tables that close up consistently.  Returns a sorted list of q-tuples.
    """
    seen = set()
    for j in range(2 * n):
        q1 = Fraction(j, 2 * n)
        for t in range(n):
            s = Fraction(t, n)
            q = [Fraction(0)]
            for a in range(1, n + 1):
                q.append((q[a - 1] + q1 + (a - 1) * s) % 1)
            if q[n] != 0:
                continue
            q = q[:n]
            if any(q[(-a) % n] != q[a] for a in range(n)):
                continue
            if not _polarization_bilinear(q, n):
                continue
            seen.add(tuple(q))
    return sorted(seen)


def _polarization_bilinear(q, n):
    sig = [(q[(a + 1) % n] - q[a] - q[1]) % 1 for a in range(n)]
    return all(
        (sig[(a + b) % n] - sig[a] - sig[b]) % 1 == 0
        for a in range(n)
        for b in range(n)
    )


def is_nondegenerate_bruteforce(q, n):
    for a in range(1, n):
        if all((q[(a + b) % n] - q[a] - q[b]) % 1 == 0 for b in range(n)):
            return False
    return True


def classify_forms_bruteforce(n):
    """Partition all nondegenerate forms on Z_N into unit-equivalence classes.

    Two forms are equivalent iff some unit u of Z_N carries one q-table onto
    the other; each class is keyed by its lexicographically least member.
    """
    units = [u for u in range(1, n) if _gcd(u, n) == 1] or [1]
    classes = set()
    for q in all_forms_bruteforce(n):
        if not is_nondegenerate_bruteforce(q, n):
            continue
        rep = min(tuple(q[(u * a) % n] for a in range(n)) for u in units)
        classes.add(rep)
    return sorted(classes)


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)
