"""Configuration graphs of rational curves and their polarized lattices.

A configuration graph is a multiset of Dynkin components: affine cycles
tA_k (tA_1 being two vertices joined by a double edge) and finite chains
A_k.  The text format is terms joined by '+', each term an optional count,
an optional 't' marking the affine type, then 'A' and an index:

    12tA1       8tA2        5tA3+2A1        4tA4+2A1

The polarized Fano lattice of a graph carries the polarization h of square
2n with h.v = d on every vertex, the isotropic fiber class k, and is taken
modulo the radical.  Its basis is (h, k, then all vertices except one
mark-1 vertex per affine component), which keeps Gram matrices and
discriminant generators reproducible across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import GramLattice, _freeze, signature


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    affine: bool
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise GraphError("component index must be >= 1")

    @property
    def vertex_count(self) -> int:
        return self.index + 1 if self.affine else self.index

    @property
    def degree(self) -> int:
        """Coefficient sum of the minimal radical generator (affine only)."""
        if not self.affine:
            raise GraphError("degree is defined for parabolic components only")
        return self.index + 1

    @property
    def name(self) -> str:
        return f"{'t' if self.affine else ''}A{self.index}"


@dataclass(frozen=True)
class ConfigGraph:
    entries: tuple[tuple[Component, int], ...]  # (component type, multiplicity)

    def __post_init__(self):
        if not self.entries:
            raise GraphError("graph needs at least one component")
        if any(mult < 1 for _c, mult in self.entries):
            raise GraphError("multiplicities must be >= 1")
        merged: dict[Component, int] = {}
        for comp, mult in self.entries:
            merged[comp] = merged.get(comp, 0) + mult
        canon = tuple(sorted(merged.items(), key=lambda cm: (not cm[0].affine, -cm[0].index)))
        object.__setattr__(self, "entries", canon)

    @property
    def name(self) -> str:
        parts = []
        for comp, mult in self.entries:
            parts.append(f"{mult if mult > 1 else ''}{comp.name}")
        return "+".join(parts)

    @property
    def vertex_count(self) -> int:
        return sum(c.vertex_count * m for c, m in self.entries)

    def components(self) -> list[Component]:
        out = []
        for comp, mult in self.entries:
            out.extend([comp] * mult)
        return out

    def affine_components(self) -> list[Component]:
        return [c for c in self.components() if c.affine]

    def finite_components(self) -> list[Component]:
        return [c for c in self.components() if not c.affine]

    @property
    def degree(self) -> int:
        """Common degree of the parabolic components."""
        degs = {c.degree for c in self.affine_components()}
        if not degs:
            raise GraphError("graph has no parabolic component")
        if len(degs) > 1:
            raise GraphError(f"parabolic components of unequal degree: {sorted(degs)}")
        return degs.pop()


def parse_config(text: str) -> ConfigGraph:
    """Parse the graph DSL; see the module docstring for the grammar."""
    entries: list[tuple[Component, int]] = []
    pos = 0
    for raw in text.split("+"):
        term = raw.strip()
        start = pos
        pos += len(raw) + 1
        if not term:
            raise GraphError(f"empty term at position {start} in {text!r}")
        m = re.match(r"^(?:(\d+)\s*\*?\s*)?(t?)([A-Za-z])(\d+)$", term.replace(" ", ""))
        if not m:
            raise GraphError(f"cannot parse term {term!r} at position {start} in {text!r}")
        count_s, tilde, letter, index_s = m.groups()
        if letter != "A":
            raise GraphError(
                f"unsupported component type {letter!r} in term {term!r}: "
                "only A (finite) and tA (affine) components are supported"
            )
        entries.append((Component(affine=bool(tilde), index=int(index_s)), int(count_s or 1)))
    return ConfigGraph(tuple(entries))


def strip(graph: ConfigGraph) -> ConfigGraph:
    """Replace every affine component tA_k by the finite chain A_k."""
    return ConfigGraph(tuple((Component(False, c.index), m) for c, m in graph.entries))


def component_degree(comp: Component) -> int:
    return comp.degree


def graph_lattice(graph: ConfigGraph) -> GramLattice:
    """The lattice ZG freely generated by the vertices (possibly degenerate)."""
    labels: list[str] = []
    blocks: list[list[list[int]]] = []
    cid = 0
    for comp in graph.components():
        cid += 1
        nv = comp.vertex_count
        g = [[0] * nv for _ in range(nv)]
        for i in range(nv):
            g[i][i] = -2
        if comp.affine:
            if comp.index == 1:
                g[0][1] = g[1][0] = 2  # double edge
            else:
                for i in range(nv):
                    j = (i + 1) % nv
                    g[i][j] = g[j][i] = 1
        else:
            for i in range(nv - 1):
                g[i][i + 1] = g[i + 1][i] = 1
        prefix = "a" if comp.affine else "b"
        labels.extend(f"{prefix}{cid}.{r}" for r in range(nv))
        blocks.append(g)
    size = len(labels)
    gram = [[0] * size for _ in range(size)]
    off = 0
    for g in blocks:
        nv = len(g)
        for i in range(nv):
            for j in range(nv):
                gram[off + i][off + j] = g[i][j]
        off += nv
    return GramLattice(tuple(labels), _freeze(gram))


@dataclass(frozen=True)
class PolarizedFano:
    """F^d_{2n}(graph): the polarized graph lattice modulo its radical.

    Basis: h, k, then per affine component the vertices a^1..a^{p-1}
    (a^0 = k - sum of the others), then the finite-component vertices.
    kappa = k / deg(graph); hbar is recorded for graphs m*tA_{p-1} + s*A1
    with p in {3, 5}.
    """

    graph: ConfigGraph
    n: int
    d: int
    lattice: GramLattice
    component_map: tuple[tuple[Component, tuple[int, ...]], ...]
    kappa: tuple[Fraction, ...]
    hbar: tuple[Fraction, ...] | None

    H = 0  # basis position of h
    K = 1  # basis position of k

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def f(self) -> int:
        return self.graph.degree

    def vertex_vectors(self) -> list[tuple[int, ...]]:
        """Coordinates of every graph vertex (dropped ones included)."""
        rank = self.rank
        out = []
        for comp, positions in self.component_map:
            for p in positions:
                out.append(tuple(int(i == p) for i in range(rank)))
            if comp.affine:
                v = [0] * rank
                v[self.K] = 1
                for p in positions:
                    v[p] -= 1
                out.append(tuple(v))
        return out

    def root_block(self) -> GramLattice:
        """The negative definite sublattice spanned by the kept vertices."""
        idx = list(range(2, self.rank))
        g = [[self.lattice.gram[i][j] for j in idx] for i in idx]
        return GramLattice(tuple(self.lattice.labels[i] for i in idx), _freeze(g))


def fano_lattice(graph: ConfigGraph, n: int, d: int) -> PolarizedFano:
    if 2 * n <= 4:
        raise GraphError("polarization degree 2n must exceed 4")
    if d < 1:
        raise GraphError("curve degree d must be positive")
    f = graph.degree  # raises on inconsistency or absence of parabolic parts
    affine = graph.affine_components()
    finite = graph.finite_components()
    labels = ["h", "k"]
    comp_map: list[tuple[Component, tuple[int, ...]]] = []
    pos = 2
    for i, comp in enumerate(affine, start=1):
        kept = comp.index  # vertices a^1..a^{p-1} of the cycle
        labels.extend(f"a{i}.{r}" for r in range(1, kept + 1))
        comp_map.append((comp, tuple(range(pos, pos + kept))))
        pos += kept
    for j, comp in enumerate(finite, start=1):
        labels.extend(f"b{j}.{r}" for r in range(1, comp.index + 1))
        comp_map.append((comp, tuple(range(pos, pos + comp.index))))
        pos += comp.index
    rank = pos
    g = [[0] * rank for _ in range(rank)]
    g[0][0] = 2 * n
    g[0][1] = g[1][0] = d * f
    for comp, positions in comp_map:
        for a, p in enumerate(positions):
            g[0][p] = g[p][0] = d
            g[p][p] = -2
            if a + 1 < len(positions):
                q = positions[a + 1]
                g[p][q] = g[q][p] = 1
    latt = GramLattice(tuple(labels), _freeze(g))
    sig = signature(latt)
    if sig != (1, rank - 1, 0):
        raise GraphError(f"polarized lattice is not hyperbolic: signature {sig}")
    kappa = tuple(Fraction(1, f) if i == 1 else Fraction(0) for i in range(rank))
    hbar = _hbar_vector(graph, d, comp_map, rank)
    return PolarizedFano(graph, n, d, latt, tuple(comp_map), kappa, hbar)


def _pure_shape(graph: ConfigGraph):
    """(p, m, s) for graphs of shape m*tA_{p-1} + s*A1 with p in {3,5}, else None."""
    aff = graph.affine_components()
    fin = graph.finite_components()
    if not aff or any(c.index != 1 for c in fin):
        return None
    idx = {c.index for c in aff}
    if len(idx) != 1:
        return None
    i = idx.pop()
    if i not in (2, 4):
        return None
    return i + 1, len(aff), len(fin)


def _hbar_vector(graph, d, comp_map, rank):
    shape = _pure_shape(graph)
    if shape is None:
        return None
    p = shape[0]
    v = [Fraction(0)] * rank
    v[0] = Fraction(1)  # h
    weights = {3: (1, 1), 5: (2, 3, 3, 2)}[p]
    for comp, positions in comp_map:
        if comp.affine:
            for w, q in zip(weights, positions):
                v[q] += d * w
        else:
            v[positions[0]] += Fraction(d, 2)
    return tuple(v)


def hbar_square(graph: ConfigGraph, n: int, d: int) -> Fraction:
    """Closed formula for hbar^2 on graphs m*tA_{p-1} + s*A1, p in {3,5}."""
    shape = _pure_shape(graph)
    if shape is None:
        raise GraphError("hbar is defined for graphs m*tA_{p-1} + s*A1 with p in {3,5}")
    p, m, s = shape
    coeff = {3: 2, 5: 10}[p]
    return 2 * n + (coeff * m + Fraction(s, 2)) * d * d


def auxiliary_lattice(graph: ConfigGraph, n: int, d: int) -> GramLattice:
    """m*A_{p-1} + s*A1 + [[0, pd], [pd, hbar^2]]: the odd-prime model of F."""
    shape = _pure_shape(graph)
    if shape is None:
        raise GraphError("auxiliary lattice needs shape m*tA_{p-1} + s*A1, p in {3,5}")
    p, m, s = shape
    h2 = hbar_square(graph, n, d)
    if h2.denominator != 1:
        raise GraphError("auxiliary lattice is integral only when s*d is even")
    from .exact import direct_sum, make_lattice, root_lattice

    parts = [root_lattice("A", p - 1) for _ in range(m)]
    parts += [root_lattice("A", 1) for _ in range(s)]
    parts.append(make_lattice(["k", "hb"], [[0, p * d], [p * d, int(h2)]]))
    return direct_sum(*parts)
