"""Exact linear algebra for even integral lattices.

Everything here runs over Python ints and fractions.Fraction; no floating
point is used anywhere.  A lattice is a labelled basis together with an
integer Gram matrix (symmetric, even diagonal).  The matrix may be
degenerate; the radical is then computed exactly.

Conventions: root lattices (A, D, E) are negative definite, U is the
hyperbolic plane [[0,1],[1,0]], and determinants are reported with sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]
IntMatrix = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


class EnumerationCap(RuntimeError):
    """Raised when a vector enumeration exceeds its configured budget."""


def _freeze(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class GramLattice:
    """Finitely generated free module with an even symmetric integer form."""

    labels: tuple[str, ...]
    gram: IntMatrix

    def __post_init__(self):
        n = len(self.labels)
        g = self.gram
        if len(g) != n or any(len(row) != n for row in g):
            raise LatticeError("gram matrix shape does not match label count")
        for i in range(n):
            if g[i][i] % 2 != 0:
                raise LatticeError(f"odd diagonal entry at {self.labels[i]!r}")
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError("gram matrix is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def pairing(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        g = self.gram
        gy = [sum(g[i][j] * y[j] for j in range(len(y))) for i in range(len(y))]
        return sum(x[i] * gy[i] for i in range(len(x)))

    def norm(self, x: Sequence[Fraction]) -> Fraction:
        return self.pairing(x, x)

    def in_dual(self, x: Sequence[Fraction]) -> bool:
        g = self.gram
        n = self.rank
        return all(sum(g[i][j] * x[j] for j in range(n)).denominator == 1 for i in range(n))


def make_lattice(labels: Sequence[str], gram: Iterable[Iterable[int]]) -> GramLattice:
    return GramLattice(tuple(labels), _freeze(gram))


# ---------------------------------------------------------------------------
# standard lattices


def root_lattice(kind: str, rank: int) -> GramLattice:
    """Negative definite root lattice of the given ADE kind."""
    kind = kind.upper()
    if kind == "A" and rank >= 1:
        adj = {(i, i + 1) for i in range(rank - 1)}
    elif kind == "D" and rank >= 4:
        adj = {(i, i + 1) for i in range(rank - 2)} | {(rank - 3, rank - 1)}
    elif kind == "E" and rank in (6, 7, 8):
        # chain 0-1-2-3-4(-5)(-6) with the branch node attached at position 2
        adj = {(i, i + 1) for i in range(rank - 2)} | {(2, rank - 1)}
    else:
        raise LatticeError(f"unsupported root lattice ({kind}, {rank})")
    g = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        g[i][i] = -2
    for i, j in adj:
        g[i][j] = g[j][i] = 1
    labels = tuple(f"{kind.lower()}{rank}.{i}" for i in range(1, rank + 1))
    return GramLattice(labels, _freeze(g))


def hyperbolic_u() -> GramLattice:
    return GramLattice(("u1", "u2"), ((0, 1), (1, 0)))


def k3_lattice() -> GramLattice:
    """2E8 + 3U, the rank-22 even unimodular lattice of signature (3,19)."""
    return direct_sum(
        root_lattice("E", 8), root_lattice("E", 8),
        hyperbolic_u(), hyperbolic_u(), hyperbolic_u(),
    )


def direct_sum(*lattices: GramLattice) -> GramLattice:
    labels: list[str] = []
    seen: dict[str, int] = {}
    for latt in lattices:
        for lab in latt.labels:
            if lab in seen:
                seen[lab] += 1
                lab = f"{lab}#{seen[lab]}"
            else:
                seen[lab] = 0
            labels.append(lab)
    n = sum(latt.rank for latt in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for latt in lattices:
        r = latt.rank
        for i in range(r):
            for j in range(r):
                g[off + i][off + j] = latt.gram[i][j]
        off += r
    return GramLattice(tuple(labels), _freeze(g))


def scale(latt: GramLattice, m: int) -> GramLattice:
    if m == 0:
        raise LatticeError("scaling factor must be nonzero")
    g = [[m * x for x in row] for row in latt.gram]
    return GramLattice(latt.labels, _freeze(g))


# ---------------------------------------------------------------------------
# exact elimination: determinant, signature, radical


def det(latt: GramLattice) -> int:
    """Signed determinant of the Gram matrix (exact)."""
    d = _det_int(latt.gram)
    return d


def _det_int(m: IntMatrix) -> int:
    # Bareiss fraction-free elimination.
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def signature(latt: GramLattice) -> tuple[int, int, int]:
    """Inertia indices (positive, negative, zero) by rational elimination."""
    n = latt.rank
    a = [[Fraction(x) for x in row] for row in latt.gram]
    pos = neg = 0
    live = list(range(n))
    while live:
        piv = next((i for i in live if a[i][i] != 0), None)
        if piv is None:
            # all live diagonal entries vanish; look for an off-diagonal pivot
            pair = None
            for i in live:
                for j in live:
                    if j != i and a[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                break  # remaining block is zero: the radical
            i, j = pair
            # row/col i += row/col j makes a[i][i] = 2 a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        live.remove(piv)
        prow = [a[piv][j] for j in range(n)]
        for i in live:
            f = a[i][piv] / p
            if f == 0:
                continue
            for j in live:
                a[i][j] -= f * prow[j]
        for i in live:
            a[i][piv] = Fraction(0)
            a[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def radical(latt: GramLattice) -> tuple[tuple[int, ...], ...]:
    """Basis of the integral kernel of the form, in Hermite normal form."""
    d_diag, u, _v = smith_normal_form(latt.gram)
    rows = [u[i] for i in range(latt.rank) if _diag(d_diag, i) == 0]
    if not rows:
        return ()
    h, _t = hermite_normal_form(rows)
    return tuple(tuple(r) for r in h if any(r))


def quotient_by_radical(latt: GramLattice) -> GramLattice:
    """Induced nondegenerate lattice on a saturated complement of the radical."""
    d_diag, u, _v = smith_normal_form(latt.gram)
    rows = [u[i] for i in range(latt.rank) if _diag(d_diag, i) != 0]
    g = [[0] * len(rows) for _ in rows]
    for i, ri in enumerate(rows):
        for j, rj in enumerate(rows):
            g[i][j] = int(latt.pairing([Fraction(x) for x in ri], [Fraction(x) for x in rj]))
    labels = tuple(f"q{i}" for i in range(1, len(rows) + 1))
    return GramLattice(labels, _freeze(g))


def _diag(m: IntMatrix, i: int) -> int:
    return m[i][i] if i < len(m) and i < len(m[0]) else 0


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms with transforms


def smith_normal_form(mat: Iterable[Iterable[int]]):
    """Return (D, U, V) with U*mat*V = D diagonal, d1 | d2 | ..., U,V unimodular."""
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row i -= q * row j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col i -= q * col j
        for r in range(rows):
            a[r][i] -= q * a[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(rows, cols):
        # find a pivot of least absolute value in the trailing block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, piv = x, (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                row_op(i, t, q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                col_op(j, t, q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility fix-up: pivot must divide the trailing block
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, -1)  # add row bad to row t
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    d = [[0] * cols for _ in range(rows)]
    for i in range(min(rows, cols)):
        d[i][i] = a[i][i]
    return _freeze(d), _freeze(u), _freeze(v)


def hermite_normal_form(mat: Iterable[Iterable[int]]):
    """Row-style HNF: returns (H, U) with U*mat = H, U unimodular."""
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        u[r], u[piv] = u[piv], u[r]
        while True:
            live = [i for i in range(r + 1, rows) if a[i][c]]
            if not live:
                break
            for i in live:
                q = a[i][c] // a[r][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                if a[i][c]:  # remainder smaller than pivot: rotate it up
                    a[r], a[i] = a[i], a[r]
                    u[r], u[i] = u[i], u[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
        if r == rows:
            break
    return _freeze(a), _freeze(u)


def unimodular_inverse(mat: Iterable[Iterable[int]]) -> IntMatrix:
    """Exact inverse of a matrix with det +-1."""
    a = [list(map(Fraction, row)) for row in mat]
    n = len(a)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        inv[c] = [x / p for x in inv[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[c])]
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise LatticeError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def fraction_inverse(mat: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    a = [[Fraction(x) for x in row] for row in mat]
    n = len(a)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise LatticeError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        inv[c] = [x / p for x in inv[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[c])]
    return tuple(tuple(row) for row in inv)


# ---------------------------------------------------------------------------
# bounded vector enumeration (Fincke-Pohst on the negated form)


def _ldl(q: Sequence[Sequence[Fraction]]):
    """LDL^T decomposition of a positive definite rational matrix."""
    n = len(q)
    d = [Fraction(0)] * n
    l = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        l[i][i] = Fraction(1)
    for j in range(n):
        s = q[j][j] - sum(d[k] * l[j][k] * l[j][k] for k in range(j))
        if s <= 0:
            raise LatticeError("form is not positive definite")
        d[j] = s
        for i in range(j + 1, n):
            t = q[i][j] - sum(d[k] * l[i][k] * l[j][k] for k in range(j))
            l[i][j] = t / d[j]
    return d, l

def enumerate_by_gram(
    gram: Sequence[Sequence[Fraction]],
    norm: Fraction | int,
    shift: Sequence[Fraction] | None = None,
    cap: int = 10**7,
) -> list[tuple[Fraction, ...]]:
    """All vectors v in (shift + Z^n) with v^T gram v == norm.

    gram must be negative definite (rational entries allowed); norm <= 0.
    The search recursion is exact; cap bounds the number of visited nodes.
    """
    n = len(gram)
    norm = Fraction(norm)
    if norm > 0:
        raise LatticeError("negative definite form cannot represent positive norms")
    q = [[-Fraction(x) for x in row] for row in gram]
    target = -norm
    d, l = _ldl(q)  # raises if not definite
    if shift is None:
        shift = [Fraction(0)] * n
    shift = [Fraction(x) for x in shift]
    out: list[tuple[Fraction, ...]] = []
    coords = [Fraction(0)] * n
    budget = [cap]

    # positive form Q(v) = sum_j d_j (v_j + sum_{i>j} l_ij v_i)^2, recurse from i=n-1 down
    def rec(i: int, rem: Fraction):
        if budget[0] <= 0:
            raise EnumerationCap(f"enumeration exceeded cap of {cap} nodes")
        budget[0] -= 1
        if i < 0:
            if rem == 0:
                out.append(tuple(coords))
            return
        # bound: d_i * (v_i + c)^2 <= rem with c = sum_{k>i} l_ki... using column i of L
        c = sum(l[k][i] * coords[k] for k in range(i + 1, n))
        base = shift[i]
        # v_i = base + t, t integer; d_i (base + t + c)^2 <= rem
        bound = rem / d[i]
        #  |base + t + c| <= sqrt(bound)
        lo, hi = _integer_window(base + c, bound)
        for t in range(lo, hi + 1):
            vi = base + t
            coords[i] = vi
            used = d[i] * (vi + c) ** 2
            if used <= rem:
                rec(i - 1, rem - used)
        coords[i] = Fraction(0)

    rec(n - 1, target)
    return sorted(out)


def _integer_window(offset: Fraction, bound: Fraction) -> tuple[int, int]:
    """Integers t with (offset + t)^2 <= bound."""
    if bound < 0:
        return 0, -1
    r = _isqrt_fraction(bound)
    lo = _ceil_fraction(-r - offset)
    hi = _floor_fraction(r - offset)
    # exact boundary fix-up (isqrt is a rational over-approximation)
    while (offset + lo) ** 2 > bound:
        lo += 1
        if lo > hi:
            return 0, -1
    while (offset + hi) ** 2 > bound:
        hi -= 1
        if hi < lo:
            return 0, -1
    return lo, hi


def _isqrt_fraction(x: Fraction) -> Fraction:
    # rational upper bound for sqrt(x)
    from math import isqrt

    num, den = x.numerator, x.denominator
    return Fraction(isqrt(num * den) + 1, den)


def _floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def enumerate_vectors(
    latt: GramLattice,
    norm: int,
    linear_constraints: Sequence[tuple[Sequence[Fraction], Fraction]] = (),
    cap: int = 10**7,
) -> list[tuple[int, ...]]:
    """All integral v with v*v = norm (and functional(v) = value for each constraint).

    The lattice must be negative definite; constraint functionals are given as
    dual coefficient rows (applied to v by the Gram pairing).
    """
    pos, neg, zero = signature(latt)
    if pos or zero:
        raise LatticeError("enumerate_vectors requires a negative definite lattice")
    sols = enumerate_by_gram(latt.gram, Fraction(norm), cap=cap)
    out = []
    for v in sols:
        vi = tuple(int(x) for x in v)
        ok = True
        for functional, value in linear_constraints:
            if latt.pairing([Fraction(f) for f in functional], [Fraction(x) for x in vi]) != value:
                ok = False
                break
        if ok:
            out.append(vi)
    return out


@lru_cache(maxsize=None)
def dual_gram(latt: GramLattice) -> tuple[tuple[Fraction, ...], ...]:
    """Gram matrix of the dual basis (inverse of the Gram matrix)."""
    return fraction_inverse([[Fraction(x) for x in row] for row in latt.gram])
