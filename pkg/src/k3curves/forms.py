"""Discriminant forms of even lattices.

A FiniteQuadraticForm is a finite abelian group with a Q/Z-valued pairing b
and a Q/2Z-valued quadratic refinement q, presented by independent generators
whose orders are the invariant factors.  Values are stored as reduced
Fractions, normalized into [0,1) for b and [0,2) for q; equality is always
modular equality, never raw fraction equality.

Group elements are coefficient tuples modulo the generator orders.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .exact import (
    GramLattice,
    LatticeError,
    det,
    fraction_inverse,
    hermite_normal_form,
    smith_normal_form,
    unimodular_inverse,
)

Element = tuple[int, ...]

ELEMENT_CAP = 2**20  # default budget for element enumeration


class FormError(ValueError):
    pass


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _mod2(x: Fraction) -> Fraction:
    f = _mod1(x / 2) * 2
    return f


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple[int, ...]
    bilinear: tuple[tuple[Fraction, ...], ...]   # values mod 1
    quadratic: tuple[Fraction, ...]              # values mod 2

    def __post_init__(self):
        g = len(self.orders)
        object.__setattr__(self, "bilinear", tuple(tuple(_mod1(Fraction(x)) for x in row) for row in self.bilinear))
        object.__setattr__(self, "quadratic", tuple(_mod2(Fraction(x)) for x in self.quadratic))
        if any(o < 2 for o in self.orders):
            raise FormError("generator orders must be >= 2")
        if len(self.bilinear) != g or any(len(r) != g for r in self.bilinear):
            raise FormError("bilinear matrix shape mismatch")
        if len(self.quadratic) != g:
            raise FormError("quadratic value count mismatch")
        for i in range(g):
            if _mod1(self.quadratic[i]) != self.bilinear[i][i]:
                raise FormError("q(g) must reduce to b(g,g) mod Z")
            if _mod2(self.orders[i] ** 2 * self.quadratic[i]) != 0:
                raise FormError("q(g) incompatible with generator order")
            for j in range(g):
                if self.bilinear[i][j] != self.bilinear[j][i]:
                    raise FormError("bilinear matrix not symmetric")
                if _mod1(self.orders[i] * self.bilinear[i][j]) != 0:
                    raise FormError("pairing incompatible with generator order")

    # -- group structure ---------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.orders)

    def order(self) -> int:
        return math.prod(self.orders)

    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def zero(self) -> Element:
        return (0,) * self.ngens

    def reduce(self, coeffs: Sequence[int]) -> Element:
        return tuple(c % o for c, o in zip(coeffs, self.orders))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % o for a, b, o in zip(x, y, self.orders))

    def neg(self, x: Element) -> Element:
        return tuple((-a) % o for a, o in zip(x, self.orders))

    def smul(self, m: int, x: Element) -> Element:
        return tuple((m * a) % o for a, o in zip(x, self.orders))

    def element_order(self, x: Element) -> int:
        return math.lcm(*(o // math.gcd(o, c) for c, o in zip(x, self.orders))) if self.orders else 1

    def elements(self, cap: int = ELEMENT_CAP) -> Iterator[Element]:
        if self.order() > cap:
            raise FormError(f"group of order {self.order()} exceeds enumeration cap {cap}")
        idx = [0] * self.ngens
        while True:
            yield tuple(idx)
            i = 0
            while i < self.ngens:
                idx[i] += 1
                if idx[i] < self.orders[i]:
                    break
                idx[i] = 0
                i += 1
            else:
                return
            if self.ngens == 0:
                return

    # -- form values --------------------------------------------------------

    def b(self, x: Element, y: Element) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.bilinear[i]
            for j, c in enumerate(y):
                if c:
                    total += a * c * row[j]
        return _mod1(total)

    def q(self, x: Element) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(x):
            if not a:
                continue
            total += a * a * self.quadratic[i]
            row = self.bilinear[i]
            for j in range(i + 1, self.ngens):
                if x[j]:
                    total += 2 * a * x[j] * row[j]
        return _mod2(total)

    def is_isotropic(self, x: Element) -> bool:
        return self.q(x) == 0

    def is_nondegenerate(self) -> bool:
        # x -> b(x,.) is injective iff the scaled pairing matrix presents a
        # group of the same order.
        t = self.exponent()
        g = self.ngens
        rows = [[int(self.bilinear[i][j] * t) for j in range(g)] for i in range(g)]
        # kernel of pairing = {x : B x = 0 mod t, coefficients mod orders}
        for x in _pairing_kernel(self.orders, rows, t):
            if any(x):
                return False
        return True

    def gram_summary(self) -> str:
        rows = [" ".join(str(v) for v in row) for row in self.bilinear]
        return f"orders={self.orders} q={self.quadratic} b=[{'; '.join(rows)}]"


def _pairing_kernel(orders: Sequence[int], scaled_rows: Sequence[Sequence[int]], t: int) -> list[Element]:
    """Solve B x == 0 mod t with x_i taken mod orders[i]; returns all solutions."""
    g = len(orders)
    if g == 0:
        return [()]
    # small-group brute force; callers only use this on small forms
    total = math.prod(orders)
    if total > ELEMENT_CAP:
        raise FormError("nondegeneracy check exceeds enumeration cap")
    out = []
    idx = [0] * g
    for _ in range(total):
        if all(sum(scaled_rows[i][j] * idx[j] for j in range(g)) % t == 0 for i in range(g)):
            out.append(tuple(idx))
        i = 0
        while i < g:
            idx[i] += 1
            if idx[i] < orders[i]:
                break
            idx[i] = 0
            i += 1
    return out


def trivial_form() -> FiniteQuadraticForm:
    return FiniteQuadraticForm((), (), ())


# ---------------------------------------------------------------------------
# discriminant group of an even nondegenerate lattice


@dataclass(frozen=True)
class DiscriminantGroup:
    """discr L = L^vee / L with its quadratic form and explicit dual generators.

    gen_vectors[i] is a dual vector (rational coordinates in the basis of L)
    whose class generates the i-th cyclic factor, of order orders[i].
    """

    lattice: GramLattice
    form: FiniteQuadraticForm
    gen_vectors: tuple[tuple[Fraction, ...], ...]
    _vinv: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _dall: tuple[int, ...] = field(repr=False, default=())

    @property
    def orders(self) -> tuple[int, ...]:
        return self.form.orders

    def order(self) -> int:
        return self.form.order()

    def class_of(self, dual_vector: Sequence[Fraction]) -> Element:
        """Coefficients of cl[v] with respect to the generators."""
        n = self.lattice.rank
        v = [Fraction(x) for x in dual_vector]
        a = []
        for i in range(n):
            s = sum(self._vinv[i][j] * v[j] for j in range(n))
            s *= self._dall[i]
            if s.denominator != 1:
                raise FormError("vector is not in the dual lattice")
            a.append(int(s))
        # keep only coordinates of nontrivial cyclic factors
        kept = [a[i] % self._dall[i] for i in range(n) if self._dall[i] > 1]
        return tuple(kept)

    def vector_of(self, x: Element) -> tuple[Fraction, ...]:
        """Standard dual-vector representative of a class."""
        n = self.lattice.rank
        v = [Fraction(0)] * n
        for c, gen in zip(x, self.gen_vectors):
            if c:
                for j in range(n):
                    v[j] += c * gen[j]
        return tuple(v)


def discriminant_group(latt: GramLattice) -> DiscriminantGroup:
    if det(latt) == 0:
        raise FormError("lattice is degenerate")
    n = latt.rank
    d, _u, v = smith_normal_form(latt.gram)
    dall = tuple(d[i][i] for i in range(n))
    gens = []
    orders = []
    for i in range(n):
        if dall[i] > 1:
            orders.append(dall[i])
            gens.append(tuple(Fraction(v[j][i], dall[i]) for j in range(n)))
    gram = latt.gram
    bil = [[_mod1(Fraction(sum(gens[i][r] * sum(gram[r][s] * gens[j][s] for s in range(n)) for r in range(n))))
            for j in range(len(gens))] for i in range(len(gens))]
    # recompute exactly (the comprehension above is O(n^2) per entry; fine at our ranks)
    quad = []
    for i, g in enumerate(gens):
        val = Fraction(0)
        for r in range(n):
            if g[r]:
                for s in range(n):
                    if g[s]:
                        val += g[r] * gram[r][s] * g[s]
        quad.append(_mod2(val))
        bil[i][i] = _mod1(val)
    for i in range(len(gens)):
        for j in range(len(gens)):
            if i != j:
                val = Fraction(0)
                for r in range(n):
                    if gens[i][r]:
                        for s in range(n):
                            if gens[j][s]:
                                val += gens[i][r] * gram[r][s] * gens[j][s]
                bil[i][j] = _mod1(val)
    form = FiniteQuadraticForm(tuple(orders), tuple(tuple(row) for row in bil), tuple(quad))
    vinv = unimodular_inverse(v)
    return DiscriminantGroup(latt, form, tuple(gens), vinv, dall)


def discriminant_form(latt: GramLattice) -> FiniteQuadraticForm:
    """discr L as a finite quadratic form; |discr L| = |det L|."""
    return discriminant_group(latt).form


# ---------------------------------------------------------------------------
# primary decomposition


def p_part_with_map(form: FiniteQuadraticForm, p: int) -> tuple[FiniteQuadraticForm, tuple[tuple[int, int], ...]]:
    """The p-primary summand plus, per new generator, (ambient index, multiplier).

    new_gen[j] = multiplier * ambient_gen[index]; multipliers are the
    prime-to-p parts of the ambient orders.
    """
    gens: list[tuple[int, int]] = []
    orders: list[int] = []
    for i, o in enumerate(form.orders):
        pk = 1
        while o % p == 0:
            o //= p
            pk *= p
        if pk > 1:
            gens.append((i, o))  # o is now the prime-to-p part
            orders.append(pk)
    g = len(gens)
    bil = [[Fraction(0)] * g for _ in range(g)]
    quad = [Fraction(0)] * g
    for a in range(g):
        i, m = gens[a]
        quad[a] = _mod2(m * m * form.quadratic[i])
        for c in range(g):
            j, mm = gens[c]
            bil[a][c] = _mod1(m * mm * form.bilinear[i][j])
    return FiniteQuadraticForm(tuple(orders), tuple(tuple(r) for r in bil), tuple(quad)), tuple(gens)


def p_part(form: FiniteQuadraticForm, p: int) -> FiniteQuadraticForm:
    return p_part_with_map(form, p)[0]


def primes_of(form: FiniteQuadraticForm) -> tuple[int, ...]:
    ps: set[int] = set()
    for o in form.orders:
        for q in _prime_factors(o):
            ps.add(q)
    return tuple(sorted(ps))


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def length(form: FiniteQuadraticForm) -> int:
    """Minimal number of generators (the presentation is kept independent)."""
    return form.ngens


# ---------------------------------------------------------------------------
# elementary blocks


@dataclass(frozen=True)
class Block:
    """Elementary block of a p-primary form.

    kind "w": cyclic [q-value] of order p^level; unit stores the q-value
    numerator (2m mod p^(level+1) for odd p, m mod 2^(level+1) for p=2).
    kind "u"/"v": the even rank-2 blocks at p=2 of level 2^level.
    """

    p: int
    level: int
    kind: str
    unit: int = 0

    def order(self) -> int:
        size = self.p ** self.level
        return size * size if self.kind in ("u", "v") else size

    def form(self) -> FiniteQuadraticForm:
        size = self.p ** self.level
        if self.kind == "w":
            qv = _mod2(Fraction(self.unit, size))
            return FiniteQuadraticForm((size,), ((_mod1(qv),),), (qv,))
        half = Fraction(1, size)
        if self.kind == "u":
            return FiniteQuadraticForm((size, size), ((Fraction(0), half), (half, Fraction(0))), (Fraction(0), Fraction(0)))
        diag = _mod2(Fraction(2, size))
        return FiniteQuadraticForm((size, size), ((_mod1(diag), half), (half, _mod1(diag))), (diag, diag))

    def det_class(self):
        """Unit class of |W| det W: Legendre +-1 for odd p, residue mod 8 for p=2."""
        if self.p != 2:
            return _legendre(self.unit, self.p)
        if self.kind == "u":
            return 7
        if self.kind == "v":
            return 3
        if self.level == 1:
            return None  # odd form: determinant redundant
        return self.unit % 8


def u_block(level: int) -> Block:
    return Block(2, level, "u")


def v_block(level: int) -> Block:
    return Block(2, level, "v")


def w_block(p: int, level: int, unit: int) -> Block:
    return Block(p, level, "w", unit)


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise FormError("legendre symbol of a multiple of p")
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def direct_sum_forms(*forms_: FiniteQuadraticForm) -> FiniteQuadraticForm:
    orders: list[int] = []
    for f in forms_:
        orders.extend(f.orders)
    g = len(orders)
    bil = [[Fraction(0)] * g for _ in range(g)]
    quad: list[Fraction] = []
    off = 0
    for f in forms_:
        k = f.ngens
        for i in range(k):
            quad.append(f.quadratic[i])
            for j in range(k):
                bil[off + i][off + j] = f.bilinear[i][j]
        off += k
    return FiniteQuadraticForm(tuple(orders), tuple(tuple(r) for r in bil), tuple(quad))


def blocks_form(blocks: Iterable[Block]) -> FiniteQuadraticForm:
    return direct_sum_forms(*(b.form() for b in blocks))


def block_decompose(form: FiniteQuadraticForm) -> tuple[Block, ...]:
    """Orthogonal elementary-block decomposition of a nondegenerate p-primary form."""
    ps = primes_of(form)
    if len(ps) > 1:
        raise FormError("block_decompose expects a p-primary form")
    if not ps:
        return ()
    p = ps[0]
    # working generators as (element tuple over the *ambient* form)
    gens = [tuple(int(i == j) for j in range(form.ngens)) for i in range(form.ngens)]
    blocks: list[Block] = []

    def bval(x, y):
        return form.b(x, y)

    def denom_exp(fr: Fraction) -> int:
        d = fr.denominator
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        return e

    while gens:
        gens = [g for g in gens if form.element_order(g) > 1]
        if not gens:
            break
        e = max(round(math.log(form.element_order(g), p)) for g in gens)
        size = p ** e
        cands = [g for g in gens if form.element_order(g) == size]
        x = next((g for g in cands if denom_exp(bval(g, g)) == e), None)
        if x is None:
            x0 = cands[0]
            y = next((g for g in gens if denom_exp(bval(x0, g)) == e), None)
            if y is None:
                raise FormError("degenerate form passed to block_decompose")
            if denom_exp(bval(y, y)) == e:
                x = y
            elif p != 2:
                x = form.add(x0, y)
                assert denom_exp(bval(x, x)) == e
            else:
                # even 2-adic rank-2 block on <x0, y>; diagonal entries are
                # q-values mod 2Z (b mod Z would lose the U/V distinction)
                a = form.q(x0)
                c = form.q(y)
                u = bval(x0, y)
                dscaled = (size * size * a * c - (size * u) ** 2)
                assert dscaled.denominator == 1
                kind = "v" if int(dscaled) % 8 == 3 else "u"
                blocks.append(Block(2, e, kind))
                gens = _reduce_against_pair(form, gens, x0, y, size)
                continue
        # split off the cyclic block <x>
        qx = form.q(x)
        unit = int(qx * size)  # numerator of q(x) at denominator size
        blocks.append(Block(p, e, "w", unit % (p ** (e + 1))))
        gens = _reduce_against_cyclic(form, gens, x, size)
    return tuple(sorted(blocks, key=lambda b: (b.p, b.level, b.kind, b.unit)))


def _reduce_against_cyclic(form, gens, x, size):
    bxx = form.b(x, x)
    u = int(bxx * size)
    uinv = pow(u, -1, size)
    out = []
    for g in gens:
        if g == x:
            continue
        lam = (int(form.b(g, x) * size) * uinv) % size
        out.append(form.add(g, form.smul(-lam, x)))
    return out


def _reduce_against_pair(form, gens, x, y, size):
    a = int(form.b(x, x) * size) % size
    c = int(form.b(y, y) * size) % size
    u = int(form.b(x, y) * size) % size
    detm = (a * c - u * u) % size
    dinv = pow(detm, -1, size)
    out = []
    for g in gens:
        if g in (x, y):
            continue
        r1 = int(form.b(g, x) * size) % size
        r2 = int(form.b(g, y) * size) % size
        lam = (dinv * (c * r1 - u * r2)) % size
        mu = (dinv * (a * r2 - u * r1)) % size
        out.append(form.add(g, form.add(form.smul(-lam, x), form.smul(-mu, y))))
    return out


# ---------------------------------------------------------------------------
# invariants: determinant class, parity, Brown


def det_mod_squares(form: FiniteQuadraticForm):
    """Unit class of |F| det F for a p-primary form.

    Odd p: +1 or -1 (quadratic-residue class).  p = 2 and the form even:
    a residue in {1,3,5,7} mod 8.  Odd 2-adic forms have no well-defined
    determinant; None is returned for them.
    """
    blocks = block_decompose(form)
    if not blocks:
        return 1
    p = blocks[0].p
    if p == 2:
        if any(b.kind == "w" and b.level == 1 for b in blocks):
            return None
        out = 1
        for b in blocks:
            out = (out * b.det_class()) % 8
        return out
    out = 1
    for b in blocks:
        out *= b.det_class()
    return out


def parity2(form: FiniteQuadraticForm) -> str:
    """"odd" iff the 2-part has an element of square +-1/2 mod 2Z."""
    f2 = p_part(form, 2)
    if not f2.orders:
        return "even"
    blocks = block_decompose(f2)
    return "odd" if any(b.kind == "w" and b.level == 1 for b in blocks) else "even"


def brown(form: FiniteQuadraticForm, snap_tol: float = 1e-6) -> int:
    """Brown invariant mod 8: sum exp(i pi q(x)) = sqrt|F| exp(2 pi i Br / 8).

    Computed per elementary block (the invariant is additive over orthogonal
    sums), each block small enough to enumerate directly.
    """
    total = 0
    for p in primes_of(form):
        fp = p_part(form, p)
        for b in block_decompose(fp):
            total += _brown_direct(b.form(), snap_tol)
    return total % 8


def _brown_direct(form: FiniteQuadraticForm, snap_tol: float = 1e-6) -> int:
    s = 0j
    n = 0
    for x in form.elements():
        s += cmath.exp(1j * math.pi * float(form.q(x)))
        n += 1
    if abs(s) < 1e-9:
        raise FormError("vanishing Gauss sum: degenerate form")
    val = cmath.phase(s) * 8 / (2 * math.pi)
    snapped = round(val)
    if abs(val - snapped) > snap_tol * 8:
        raise FormError(f"Gauss sum phase {val} does not snap to an eighth root")
    expected = math.sqrt(n)
    if abs(abs(s) - expected) > 1e-6 * expected:
        raise FormError("Gauss sum modulus mismatch: form is degenerate")
    return snapped % 8


def brown_direct(form: FiniteQuadraticForm, cap: int = ELEMENT_CAP) -> int:
    """Brown invariant by one global Gauss sum (for cross-checks)."""
    if form.order() > cap:
        raise FormError("form too large for a direct Gauss sum")
    return _brown_direct(form)


# ---------------------------------------------------------------------------
# isotropic subgroups and quotients


def isotropic_elements(form: FiniteQuadraticForm, cap: int = ELEMENT_CAP) -> list[Element]:
    return [x for x in form.elements(cap) if form.q(x) == 0]


def isotropic_subgroups(
    form: FiniteQuadraticForm,
    max_generators: int | None = None,
    exclusion: Callable[[Element], bool] | None = None,
    cap: int = ELEMENT_CAP,
) -> Iterator[tuple[tuple[Element, ...], frozenset[Element]]]:
    """Stream of isotropic subgroups avoiding excluded elements.

    Yields (generators, elements), the zero subgroup first, then by increasing
    size with lexicographically smallest generator tuples first.  A subgroup
    is skipped (with its whole extension subtree) as soon as it contains an
    excluded element.
    """
    zero = form.zero()
    if exclusion is not None and exclusion(zero):
        return
    cands = [x for x in isotropic_elements(form, cap) if x != zero]
    if exclusion is not None:
        cands = [x for x in cands if not exclusion(x)]
    cands.sort()
    yield (), frozenset([zero])
    seen: set[frozenset[Element]] = {frozenset([zero])}
    level: list[tuple[tuple[Element, ...], frozenset[Element]]] = [((), frozenset([zero]))]
    gens_used = 0
    while level and (max_generators is None or gens_used < max_generators):
        nxt = []
        for gens, els in level:
            for x in cands:
                if x in els:
                    continue
                if gens and x < gens[-1]:
                    continue
                new = _subgroup_closure(form, els, x)
                if new is None:
                    continue
                key = frozenset(new)
                if key in seen:
                    continue
                if exclusion is not None and any(exclusion(e) for e in new if e not in els):
                    continue
                # all elements of an isotropic subgroup must be isotropic
                if any(form.q(e) != 0 for e in new if e not in els):
                    continue
                seen.add(key)
                nxt.append((gens + (x,), key))
        nxt.sort(key=lambda item: (len(item[1]), item[0]))
        for item in nxt:
            yield item
        level = nxt
        gens_used += 1


def _subgroup_closure(form: FiniteQuadraticForm, els: frozenset[Element], x: Element):
    out = set(els)
    frontier = [x]
    while frontier:
        v = frontier.pop()
        if v in out:
            continue
        out.add(v)
        for w in list(out):
            s = form.add(v, w)
            if s not in out:
                frontier.append(s)
    return out


def perp_quotient(form: FiniteQuadraticForm, kernel_gens: Sequence[Element]) -> FiniteQuadraticForm:
    """The induced form on K-perp / K for an isotropic subgroup K.

    kernel_gens need not be independent.  |result| * |K|^2 == |form|.
    """
    g = form.ngens
    if g == 0:
        return form
    kernel_gens = [form.reduce(k) for k in kernel_gens]
    els = frozenset([form.zero()])
    for k in kernel_gens:
        els = frozenset(_subgroup_closure(form, els, k))
    for e in els:
        if form.q(e) != 0:
            raise FormError("kernel is not isotropic")
    ksize = len(els)
    t = form.exponent()
    # K-perp as an integer lattice in Z^g containing diag(orders)
    rows_b = [[int(_mod1(form.b(_unit(form, i), k)) * t) for i in range(g)] for k in kernel_gens]
    perp = _solve_mod_lattice(rows_b, t, g, form.orders)
    # K as a lattice
    klat = [list(k) for k in kernel_gens] + [[o * int(i == j) for j in range(g)] for i, o in enumerate(form.orders)]
    kh, _ = hermite_normal_form(klat)
    kbasis = [list(r) for r in kh if any(r)]
    # quotient invariants: perp-basis coords of K
    pinv = fraction_inverse([[Fraction(x) for x in row] for row in _transpose(perp)])
    xc = []
    for kv in kbasis:
        col = [sum(pinv[i][j] * kv[j] for j in range(g)) for i in range(g)]
        if any(c.denominator != 1 for c in col):
            raise FormError("kernel not contained in its perp (non-isotropic?)")
        xc.append([int(c) for c in col])
    d, u, _v = smith_normal_form(_transpose(xc))
    uinv = unimodular_inverse(u)
    diag = [d[i][i] if i < len(d) and i < len(d[0]) else 0 for i in range(g)]
    # new generators: perp-basis combinations given by columns of uinv
    new_gens = []
    new_orders = []
    perp_t = _transpose(perp)
    for i in range(g):
        o = abs(diag[i])
        if o == 1:
            continue
        col = [uinv[r][i] for r in range(g)]
        amb = [sum(perp_t[r][j] * col[j] for j in range(g)) for r in range(g)]
        elem = form.reduce(amb)
        if o == 0:
            raise FormError("quotient presentation not finite")
        new_gens.append(elem)
        new_orders.append(o)
    k = len(new_gens)
    bil = [[form.b(new_gens[i], new_gens[j]) for j in range(k)] for i in range(k)]
    quad = [form.q(x) for x in new_gens]
    out = FiniteQuadraticForm(tuple(new_orders), tuple(tuple(r) for r in bil), tuple(quad))
    if out.order() * ksize * ksize != form.order():
        raise FormError("perp-quotient order law violated")
    return out


def _unit(form: FiniteQuadraticForm, i: int) -> Element:
    return tuple(int(j == i) for j in range(form.ngens))


def _transpose(m):
    return [list(r) for r in zip(*m)] if m else []


def _solve_mod_lattice(rows_b, t, g, orders):
    """Basis (rows) of {c in Z^g : rows_b . c == 0 mod t}, containing diag(orders)."""
    if not rows_b:
        return [[int(i == j) for j in range(g)] for i in range(g)]
    k = len(rows_b)
    # integer kernel of the k x (g+k) matrix [B | t I]
    m = [list(rows_b[i]) + [t * int(i == j) for j in range(k)] for i in range(k)]
    d, _u, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(k, g + k)) if d[i][i] != 0)
    kernel_cols = [[v[r][c] for r in range(g + k)] for c in range(rank, g + k)]
    cvecs = [col[:g] for col in kernel_cols]
    cvecs += [[o * int(i == j) for j in range(g)] for i, o in enumerate(orders)]
    h, _ = hermite_normal_form(cvecs)
    basis = [list(r) for r in h if any(r)]
    if len(basis) != g:
        raise FormError("perp sublattice is not full rank")
    return basis


def length_drop_check(form: FiniteQuadraticForm, alpha: Element, beta: Element) -> tuple[bool, bool]:
    """Hypotheses: q(alpha)=0, ord(beta)=ord(alpha)=q prime, b(alpha,beta) != 0.

    Returns (length_dropped_by_two, determinant_negated) for K = <alpha>.
    """
    o = form.element_order(alpha)
    if form.q(alpha) != 0:
        raise FormError("alpha is not isotropic")
    if form.element_order(beta) != o:
        raise FormError("beta must have the same order as alpha")
    if form.b(alpha, beta) == 0:
        raise FormError("alpha and beta must pair nontrivially")
    quotient = perp_quotient(form, [alpha])
    lengths_ok = length(quotient) == length(form) - 2
    ps = primes_of(form)
    dets_ok = True
    if len(ps) == 1 and ps[0] != 2:
        d0 = det_mod_squares(form)
        d1 = det_mod_squares(quotient) if quotient.orders else 1
        dets_ok = d1 == d0 * _legendre(-1, ps[0])
    return lengths_ok, dets_ok
