"""Named graph families and graph products.

Product vertices are indexed row-major: ``(g, h)`` has index ``g * |V(H)| + h``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .graph import CAPACITY, CapacityError, Graph, GraphError, bits, read_graph


@dataclass(frozen=True)
class ProductVertexMap:
    first_size: int
    second_size: int

    @property
    def total(self) -> int:
        return self.first_size * self.second_size

    def index(self, g: int, h: int) -> int:
        return g * self.second_size + h

    def coords(self, index: int) -> tuple[int, int]:
        return divmod(index, self.second_size)

    def layer_of_second(self, g: int) -> int:
        """Vertices of the H-layer through ``g`` (the set {g} x V(H))."""
        row = (1 << self.second_size) - 1
        return row << (g * self.second_size)

    def layer_of_first(self, h: int) -> int:
        """Vertices of the G-layer through ``h`` (the set V(G) x {h})."""
        mask = 0
        for g in range(self.first_size):
            mask |= 1 << self.index(g, h)
        return mask


def _check_product_size(g: Graph, h: Graph) -> None:
    if g.n * h.n > CAPACITY:
        raise CapacityError(f"product of {g.n} and {h.n} vertices exceeds capacity {CAPACITY}")


def cartesian_product(g: Graph, h: Graph) -> tuple[Graph, ProductVertexMap]:
    _check_product_size(g, h)
    pm = ProductVertexMap(g.n, h.n)
    edges = []
    for a in range(g.n):
        for x, y in h.edges():
            edges.append((pm.index(a, x), pm.index(a, y)))
    for b in range(h.n):
        for x, y in g.edges():
            edges.append((pm.index(x, b), pm.index(y, b)))
    return Graph.from_edges(pm.total, edges), pm


def lexicographic_product(g: Graph, h: Graph) -> tuple[Graph, ProductVertexMap]:
    _check_product_size(g, h)
    pm = ProductVertexMap(g.n, h.n)
    edges = []
    for a in range(g.n):
        for x, y in h.edges():
            edges.append((pm.index(a, x), pm.index(a, y)))
    for a, b in g.edges():
        for x in range(h.n):
            for y in range(h.n):
                edges.append((pm.index(a, x), pm.index(b, y)))
    return Graph.from_edges(pm.total, edges), pm


def project(pm: ProductVertexMap, s: int, factor: str) -> int:
    """Projection of a product vertex set onto ``"first"`` or ``"second"`` factor."""
    if factor not in ("first", "second"):
        raise ValueError(f"factor must be 'first' or 'second', not {factor!r}")
    out = 0
    for v in bits(s):
        g, h = pm.coords(v)
        out |= 1 << (g if factor == "first" else h)
    return out


# -- basic families -----------------------------------------------------------

def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete_multipartite(parts: tuple[int, ...]) -> Graph:
    if not parts or any(p < 1 for p in parts):
        raise GraphError("multipartite parts must each be >= 1")
    block = []
    for i, p in enumerate(parts):
        block.extend([i] * p)
    n = len(block)
    return Graph.from_edges(
        n, [(u, v) for u, v in itertools.combinations(range(n), 2) if block[u] != block[v]]
    )


def generalized_wheel(n: int, m: int) -> Graph:
    """Join of an edgeless ``n``-set (hubs ``0..n-1``) with the cycle ``C_m``."""
    if n < 1 or m < 3:
        raise GraphError("generalized wheel needs n >= 1 and m >= 3")
    rim = [(n + i, n + (i + 1) % m) for i in range(m)]
    spokes = [(hub, n + i) for hub in range(n) for i in range(m)]
    return Graph.from_edges(n + m, rim + spokes)


def petersen() -> Graph:
    """Kneser graph K(5,2); vertices are the 2-subsets of {0..4} in lexicographic order."""
    subsets = list(itertools.combinations(range(5), 2))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(10), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    return Graph.from_edges(10, edges)


def rook(n: int, m: int) -> tuple[Graph, ProductVertexMap]:
    return cartesian_product(complete(n), complete(m))


def grid(n: int, m: int) -> tuple[Graph, ProductVertexMap]:
    return cartesian_product(path(n), path(m))


def cylinder(n: int, m: int) -> tuple[Graph, ProductVertexMap]:
    """``C_n`` Cartesian ``P_m``."""
    return cartesian_product(cycle(n), path(m))


def lex_with_complete(base: Graph, n: int) -> tuple[Graph, ProductVertexMap]:
    if n < 1:
        raise GraphError("complete factor needs n >= 1")
    return lexicographic_product(base, complete(n))


# -- family specs -------------------------------------------------------------

class Family(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    MULTIPARTITE = "multi"
    WHEEL = "wheel"
    PETERSEN = "petersen"
    ROOK = "rook"
    GRID = "grid"
    CYLINDER = "cylinder"
    LEXK = "lexk"


_ARITY = {
    Family.PATH: 1,
    Family.CYCLE: 1,
    Family.COMPLETE: 1,
    Family.WHEEL: 2,
    Family.PETERSEN: 0,
    Family.ROOK: 2,
    Family.GRID: 2,
    Family.CYLINDER: 2,
}


@dataclass(frozen=True)
class FamilySpec:
    kind: Family
    params: tuple[int, ...] = ()
    base: Graph | None = field(default=None, compare=False)
    base_name: str | None = None

    def __str__(self) -> str:
        if self.kind is Family.PETERSEN:
            return "petersen"
        if self.kind is Family.LEXK:
            return f"lexk:{self.base_name or '<graph>'},{self.params[0]}"
        return f"{self.kind.value}:" + ",".join(map(str, self.params))

    def validate(self) -> None:
        k, p = self.kind, self.params
        if k in _ARITY and len(p) != _ARITY[k]:
            raise GraphError(f"{k.value} takes {_ARITY[k]} parameter(s)")
        ok = {
            Family.PATH: lambda: p[0] >= 1,
            Family.CYCLE: lambda: p[0] >= 3,
            Family.COMPLETE: lambda: p[0] >= 1,
            Family.MULTIPARTITE: lambda: len(p) >= 1 and all(x >= 1 for x in p),
            Family.WHEEL: lambda: p[0] >= 1 and p[1] >= 3,
            Family.PETERSEN: lambda: True,
            Family.ROOK: lambda: p[0] >= 1 and p[1] >= 1,
            Family.GRID: lambda: p[0] >= 1 and p[1] >= 1,
            Family.CYLINDER: lambda: p[0] >= 3 and p[1] >= 1,
            Family.LEXK: lambda: len(p) == 1 and p[0] >= 1 and self.base is not None,
        }[k]()
        if not ok:
            raise GraphError(f"invalid parameters for {k.value}: {p}")


def make_named(spec: FamilySpec) -> tuple[Graph, ProductVertexMap | None]:
    spec.validate()
    p = spec.params
    k = spec.kind
    if k is Family.PATH:
        return path(p[0]), None
    if k is Family.CYCLE:
        return cycle(p[0]), None
    if k is Family.COMPLETE:
        return complete(p[0]), None
    if k is Family.MULTIPARTITE:
        return complete_multipartite(p), None
    if k is Family.WHEEL:
        return generalized_wheel(p[0], p[1]), None
    if k is Family.PETERSEN:
        return petersen(), None
    if k is Family.ROOK:
        return rook(p[0], p[1])
    if k is Family.GRID:
        return grid(p[0], p[1])
    if k is Family.CYLINDER:
        return cylinder(p[0], p[1])
    assert spec.base is not None
    return lex_with_complete(spec.base, p[0])


def parse_family(text: str) -> FamilySpec:
    """Parse ``cycle:5``, ``multi:2,2,3``, ``petersen``, ``lexk:FILE,3`` and friends."""
    text = text.strip()
    name, _, rest = text.partition(":")
    try:
        kind = Family(name)
    except ValueError:
        raise GraphError(f"unknown family {name!r}") from None
    if kind is Family.PETERSEN:
        if rest:
            raise GraphError("petersen takes no parameters")
        return FamilySpec(kind)
    if kind is Family.LEXK:
        path_part, sep, n_part = rest.rpartition(",")
        if not sep or not path_part:
            raise GraphError("lexk expects lexk:FILE,n")
        try:
            n = int(n_part)
        except ValueError:
            raise GraphError(f"bad clique size {n_part!r}") from None
        spec = FamilySpec(kind, (n,), base=read_graph(path_part), base_name=path_part)
        spec.validate()
        return spec
    try:
        params = tuple(int(x) for x in rest.split(",")) if rest else ()
    except ValueError:
        raise GraphError(f"bad parameters in {text!r}") from None
    spec = FamilySpec(kind, params)
    spec.validate()
    return spec
