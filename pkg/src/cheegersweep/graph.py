"""Simple undirected graphs, edge-list ingestion and deterministic generators.

A vertex subset is passed around either as a boolean mask of length ``n`` or as
any iterable of vertex ids; :func:`as_mask` normalises both.
"""

from __future__ import annotations

import itertools
import warnings
from collections import defaultdict, deque
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "GraphError",
    "ParseError",
    "InvalidParameterError",
    "DuplicateEdgeWarning",
    "GENERATOR_KINDS",
    "as_mask",
    "parse_edge_list",
    "read_edge_list",
    "generate",
    "disjoint_union",
    "edges_between",
    "volume",
    "connected_components",
    "is_connected",
]


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class InvalidParameterError(GraphError):
    pass


class DuplicateEdgeWarning(UserWarning):
    pass


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Edges are stored as an ``(m, 2)`` int array with ``u < w`` in each row,
    sorted lexicographically. Every vertex must have degree at least one.
    """

    __slots__ = ("n", "edges", "degree", "volume_total", "labels", "collapsed_duplicates")

    def __init__(self, n: int, edges: Iterable[Sequence[int]], labels=None, collapsed_duplicates=0):
        n = int(n)
        if n < 2:
            raise GraphError(f"a graph without isolated vertices needs n >= 2, got {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if arr.size == 0:
            raise GraphError("graph has no edges")
        arr = arr.reshape(-1, 2)
        if arr.min() < 0 or arr.max() >= n:
            raise GraphError("edge endpoint outside 0..n-1")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise GraphError("self-loops are not allowed")
        arr = np.sort(arr, axis=1)
        order = np.lexsort((arr[:, 1], arr[:, 0]))
        arr = arr[order]
        if np.any(np.all(arr[1:] == arr[:-1], axis=1)):
            raise GraphError("duplicate edges are not allowed")
        degree = np.bincount(arr.ravel(), minlength=n).astype(np.int64)
        if np.any(degree == 0):
            isolated = np.flatnonzero(degree == 0).tolist()
            raise GraphError(f"isolated vertices are not allowed: {isolated[:10]}")
        arr.setflags(write=False)
        degree.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", arr)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "volume_total", int(degree.sum()))
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else tuple(range(n)))
        object.__setattr__(self, "collapsed_duplicates", int(collapsed_duplicates))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, np.array(self.edges), self.labels, self.collapsed_duplicates))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return int(self.degree.max())

    @property
    def edge_set(self) -> frozenset:
        return frozenset(map(tuple, self.edges.tolist()))

    def is_regular(self) -> bool:
        return bool(np.all(self.degree == self.degree[0]))

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        u, w = self.edges[:, 0], self.edges[:, 1]
        a[u, w] = 1.0
        a[w, u] = 1.0
        return a

    def neighbors(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, w in self.edges.tolist():
            nbrs[u].append(w)
            nbrs[w].append(u)
        return nbrs

    def to_edge_list(self) -> str:
        """Canonical serialization; equal graphs give equal strings."""
        lines = [f"# n={self.n} m={self.m}"]
        lines += [f"{u} {w}" for u, w in self.edges.tolist()]
        return "\n".join(lines) + "\n"


def as_mask(g: Graph, s) -> np.ndarray:
    """Boolean membership mask of ``s`` (a mask or an iterable of vertex ids)."""
    if isinstance(s, np.ndarray) and s.dtype == bool:
        if s.shape != (g.n,):
            raise GraphError(f"mask has shape {s.shape}, expected ({g.n},)")
        return s
    idx = np.fromiter((int(i) for i in s), dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= g.n):
        raise GraphError("vertex id outside 0..n-1")
    mask = np.zeros(g.n, dtype=bool)
    mask[idx] = True
    return mask


# ---------------------------------------------------------------------------
# ingestion


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated vertex pairs, one edge per line.

    Blank lines and ``#`` comments are skipped. Vertex ids are compacted to
    ``0..n-1`` in ascending order of the original id. Duplicate edges are
    collapsed and counted (see ``Graph.collapsed_duplicates``).
    """
    raw = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected two vertex ids, got {len(tokens)} tokens", lineno)
        try:
            u, w = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"malformed vertex id in {line!r}", lineno) from None
        if u < 0 or w < 0:
            raise ParseError("vertex ids must be nonnegative", lineno)
        if u == w:
            raise ParseError(f"self-loop on vertex {u}", lineno)
        raw.append((min(u, w), max(u, w)))
    if not raw:
        raise ParseError("no edges found")

    unique = sorted(set(raw))
    dupes = len(raw) - len(unique)
    if dupes:
        warnings.warn(f"collapsed {dupes} duplicate edge(s)", DuplicateEdgeWarning, stacklevel=2)
    ids = sorted({v for e in unique for v in e})
    index = {v: i for i, v in enumerate(ids)}
    edges = [(index[u], index[w]) for u, w in unique]
    return Graph(len(ids), edges, labels=ids, collapsed_duplicates=dupes)


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8", newline=None) as fh:
        return parse_edge_list(fh.read())


# ---------------------------------------------------------------------------
# generators

GENERATOR_KINDS = (
    "path",
    "cycle",
    "complete",
    "star",
    "complete_bipartite",
    "hypercube",
    "petersen",
    "gnp",
    "random_regular",
)

MAX_ATTEMPTS = 100


def _need(params, *names):
    missing = [k for k in names if k not in params]
    if missing:
        raise InvalidParameterError(f"missing parameter(s): {', '.join(missing)}")
    return [params[k] for k in names]


def _rng(seed):
    if seed is None:
        raise InvalidParameterError("random generators need an explicit seed")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed) & (2**64 - 1))))


def _gnp(n, p, seed):
    if n < 2 or not (0 < p <= 1):
        raise InvalidParameterError(f"gnp needs n >= 2 and 0 < p <= 1, got n={n}, p={p}")
    rng = _rng(seed)
    iu, iw = np.triu_indices(n, k=1)
    for _ in range(MAX_ATTEMPTS):
        keep = rng.random(iu.size) < p
        deg = np.bincount(np.concatenate([iu[keep], iw[keep]]), minlength=n)
        if np.all(deg > 0):
            return np.column_stack([iu[keep], iw[keep]])
    raise InvalidParameterError(f"gnp(n={n}, p={p}) kept producing isolated vertices")


def _random_regular(n, d, seed):
    if d < 1 or d >= n or (n * d) % 2:
        raise InvalidParameterError(f"no simple {d}-regular graph on {n} vertices")
    rng = _rng(seed)

    def suitable(edges, pending):
        if not pending:
            return True
        nodes = list(pending)
        for i, u in enumerate(nodes):
            for w in nodes[i + 1:]:
                if (min(u, w), max(u, w)) not in edges:
                    return True
        return False

    def attempt():
        edges: set[tuple[int, int]] = set()
        stubs = np.repeat(np.arange(n), d)
        while stubs.size:
            pending: dict[int, int] = defaultdict(int)
            rng.shuffle(stubs)
            for a, b in zip(stubs[0::2].tolist(), stubs[1::2].tolist()):
                if a > b:
                    a, b = b, a
                if a != b and (a, b) not in edges:
                    edges.add((a, b))
                else:
                    pending[a] += 1
                    pending[b] += 1
            if not suitable(edges, pending):
                return None
            stubs = np.array([v for v, c in pending.items() for _ in range(c)], dtype=np.int64)
        return edges

    for _ in range(MAX_ATTEMPTS):
        edges = attempt()
        if edges is not None:
            return sorted(edges)
    raise InvalidParameterError(f"random_regular(n={n}, d={d}) failed after {MAX_ATTEMPTS} attempts")


def generate(kind: str, seed=None, **params) -> Graph:
    """Build a graph of the named family.

    ``path``/``cycle``/``complete`` take ``n``; ``star`` takes ``k`` leaves;
    ``complete_bipartite`` takes ``a`` and ``b``; ``hypercube`` takes ``dim``;
    ``gnp`` takes ``n`` and ``p``; ``random_regular`` takes ``n`` and ``d``.
    The two random families require ``seed`` and are reproducible from it.
    """
    if kind == "path":
        (n,) = _need(params, "n")
        if n < 2:
            raise InvalidParameterError("path needs n >= 2")
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        (n,) = _need(params, "n")
        if n < 3:
            raise InvalidParameterError("cycle needs n >= 3")
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "complete":
        (n,) = _need(params, "n")
        if n < 2:
            raise InvalidParameterError("complete needs n >= 2")
        edges = list(itertools.combinations(range(n), 2))
    elif kind == "star":
        (k,) = _need(params, "k")
        if k < 1:
            raise InvalidParameterError("star needs k >= 1 leaves")
        n = k + 1
        edges = [(0, i) for i in range(1, n)]
    elif kind == "complete_bipartite":
        a, b = _need(params, "a", "b")
        if a < 1 or b < 1:
            raise InvalidParameterError("complete_bipartite needs a, b >= 1")
        n = a + b
        edges = [(i, a + j) for i in range(a) for j in range(b)]
    elif kind == "hypercube":
        (dim,) = _need(params, "dim")
        if dim < 1:
            raise InvalidParameterError("hypercube needs dim >= 1")
        n = 1 << dim
        edges = [(v, v | (1 << b)) for v in range(n) for b in range(dim) if not v & (1 << b)]
    elif kind == "petersen":
        n = 10
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        edges = outer + spokes + inner
    elif kind == "gnp":
        n, p = _need(params, "n", "p")
        edges = _gnp(int(n), float(p), seed)
    elif kind == "random_regular":
        n, d = _need(params, "n", "d")
        edges = _random_regular(int(n), int(d), seed)
    else:
        raise InvalidParameterError(f"unknown generator kind {kind!r}")
    return Graph(n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    offset = 0
    edges = []
    for g in graphs:
        edges.append(g.edges + offset)
        offset += g.n
    return Graph(offset, np.concatenate(edges))


# ---------------------------------------------------------------------------
# combinatorial primitives


def edges_between(g: Graph, s, t) -> int:
    """E(S, T): ordered endpoint pairs, so edges inside S ∩ T count twice."""
    a, b = as_mask(g, s), as_mask(g, t)
    u, w = g.edges[:, 0], g.edges[:, 1]
    return int(np.count_nonzero(a[u] & b[w]) + np.count_nonzero(a[w] & b[u]))


def volume(g: Graph, s) -> int:
    return int(g.degree[as_mask(g, s)].sum())


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Components as sorted vertex tuples, ordered by smallest member."""
    nbrs = g.neighbors()
    seen = np.zeros(g.n, dtype=bool)
    parts = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        parts.append(tuple(sorted(comp)))
    return parts


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1
