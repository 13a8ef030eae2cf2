"""Graph instances: data model, text format, the 9-vertex illustration and a generator.

Text format (UTF-8, one record per line, ``#`` starts a comment)::

    qmst 1
    vertices <n>
    edges <m>
    edge <u> <v> <tfu> <tfv> <tfw> <a1> <a2> <a3> <a4>     (m lines, 1-based vertices)
    quads <k>
    quad <i> <j> <tfu> <tfv> <tfw> <a1> <a2> <a3> <a4>     (k lines, 0-based edge ids)

Edge ids are the 0-based order of the ``edge`` lines. Edge pairs without a
``quad`` line have zero quadratic weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from . import _paper_data
from .uncertainty import RoughFuzzyWeight, TriangularFuzzy

__all__ = [
    "EdgeSpec",
    "Instance",
    "InstanceFormatError",
    "InvalidInstanceError",
    "parse_instance",
    "serialize_instance",
    "read_instance",
    "write_instance",
    "paper_instance",
    "generate_random",
    "parse_generator_spec",
]

MAGIC = "qmst"
FORMAT_VERSION = 1


class InstanceFormatError(ValueError):
    """Malformed instance text; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InvalidInstanceError(ValueError):
    """Well-formed data that breaks an instance invariant."""


@dataclass(frozen=True)
class EdgeSpec:
    id: int
    u: int
    v: int
    weight: RoughFuzzyWeight

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    @property
    def label(self) -> str:
        a, b = sorted((self.u, self.v))
        if a < 10 and b < 10:
            return f"e{a}{b}"
        return f"e{a}-{b}"


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class Instance:
    """Connected simple graph with rough-fuzzy linear and quadratic weights.

    ``quads`` maps an unordered edge-id pair ``(i, j)`` with ``i < j`` to its
    quadratic weight. Vertices are labelled ``1..vertex_count``.
    """

    vertex_count: int
    edges: tuple[EdgeSpec, ...]
    quads: Mapping[tuple[int, int], RoughFuzzyWeight] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        quads = {}
        for (i, j), wgt in self.quads.items():
            key = _pair(i, j)
            if key in quads:
                raise InvalidInstanceError(f"duplicate quadratic pair {key}")
            quads[key] = wgt
        object.__setattr__(self, "quads", dict(sorted(quads.items())))
        self._validate()

    def _validate(self):
        n, m = self.vertex_count, len(self.edges)
        if n < 1:
            raise InvalidInstanceError("an instance needs at least one vertex")
        seen = set()
        for k, e in enumerate(self.edges):
            if e.id != k:
                raise InvalidInstanceError(f"edge at position {k} carries id {e.id}")
            if e.u == e.v:
                raise InvalidInstanceError(f"edge {k} is a self-loop on vertex {e.u}")
            if not (1 <= e.u <= n and 1 <= e.v <= n):
                raise InvalidInstanceError(f"edge {k} has a vertex outside 1..{n}")
            key = _pair(e.u, e.v)
            if key in seen:
                raise InvalidInstanceError(f"duplicate edge between vertices {key[0]} and {key[1]}")
            seen.add(key)
        for i, j in self.quads:
            if i == j or not (0 <= i < m and 0 <= j < m):
                raise InvalidInstanceError(f"quadratic pair ({i}, {j}) does not name two distinct edges")
        if m < n - 1 or not self._connected():
            raise InvalidInstanceError("graph is not connected")

    def _connected(self) -> bool:
        adj = [[] for _ in range(self.vertex_count + 1)]
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        seen = {1}
        stack = [1]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == self.vertex_count

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def quad_weight(self, i: int, j: int) -> RoughFuzzyWeight | None:
        return self.quads.get(_pair(i, j))

    def edge_index(self, label: str) -> int:
        """Edge id for a label such as ``"e12"`` or ``"1-2"``."""
        for e in self.edges:
            if label in (e.label, f"{e.u}-{e.v}", f"{e.v}-{e.u}"):
                return e.id
        raise KeyError(label)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.edges == other.edges
            and self.quads == other.quads
        )

    __hash__ = None

    # Dense arrays consumed by the vectorised evaluator in ``core``.

    @cached_property
    def endpoint_list(self) -> list[tuple[int, int]]:
        return [(e.u, e.v) for e in self.edges]

    @cached_property
    def linear_arrays(self) -> dict[str, np.ndarray]:
        bases = np.array([e.weight.base.as_tuple() for e in self.edges], dtype=float).reshape(-1, 3)
        a3 = np.array([e.weight.a3 for e in self.edges], dtype=float)
        width = np.array([e.weight.width for e in self.edges], dtype=float)
        return {"p": bases + a3[:, None], "q1": width}

    @cached_property
    def quad_arrays(self) -> dict[str, np.ndarray]:
        k = len(self.quads)
        first = np.fromiter((i for i, _ in self.quads), dtype=np.intp, count=k)
        second = np.fromiter((j for _, j in self.quads), dtype=np.intp, count=k)
        bases = np.array([w.base.as_tuple() for w in self.quads.values()], dtype=float).reshape(-1, 3)
        a3 = np.array([w.a3 for w in self.quads.values()], dtype=float)
        width = np.array([w.width for w in self.quads.values()], dtype=float)
        return {"i": first, "j": second, "p": bases + a3[:, None], "q1": width}

    def scaled(self, k: float) -> "Instance":
        """Copy with every weight component multiplied by ``k > 0``."""
        if not k > 0:
            raise ValueError("scale factor must be positive")
        edges = [EdgeSpec(e.id, e.u, e.v, e.weight.scaled(k)) for e in self.edges]
        quads = {key: w.scaled(k) for key, w in self.quads.items()}
        return Instance(self.vertex_count, edges, quads)


# --------------------------------------------------------------------------
# text format


def _fmt(x: float) -> str:
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _weight_fields(w: RoughFuzzyWeight) -> str:
    b = w.base
    return " ".join(_fmt(x) for x in (b.u, b.v, b.w, w.a1, w.a2, w.a3, w.a4))


def serialize_instance(inst: Instance) -> str:
    lines = [
        f"{MAGIC} {FORMAT_VERSION}",
        f"vertices {inst.vertex_count}",
        f"edges {inst.edge_count}",
    ]
    for e in inst.edges:
        lines.append(f"edge {e.u} {e.v} {_weight_fields(e.weight)}")
    lines.append(f"quads {len(inst.quads)}")
    for (i, j), w in inst.quads.items():
        lines.append(f"quad {i} {j} {_weight_fields(w)}")
    return "\n".join(lines) + "\n"


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _parse_weight(lineno: int, fields: list[str]) -> RoughFuzzyWeight:
    try:
        nums = [float(f) for f in fields]
    except ValueError as exc:
        raise InstanceFormatError(lineno, f"bad number ({exc})") from None
    if not all(math.isfinite(x) for x in nums):
        raise InstanceFormatError(lineno, "weights must be finite")
    u, v, w, a1, a2, a3, a4 = nums
    try:
        base = TriangularFuzzy(u, v, w)
    except ValueError as exc:
        raise InstanceFormatError(lineno, f"fuzzy base out of order: {exc}") from None
    try:
        return RoughFuzzyWeight(base, a1, a2, a3, a4)
    except ValueError as exc:
        raise InstanceFormatError(lineno, f"offsets out of order: {exc}") from None


def _parse_int(lineno: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InstanceFormatError(lineno, f"{what} must be an integer, got {token!r}") from None


def parse_instance(text: str) -> Instance:
    """Parse the text format; raises :class:`InstanceFormatError` or
    :class:`InvalidInstanceError`."""
    recs = list(_records(text))
    pos = 0

    def expect(keyword: str, nfields: int):
        nonlocal pos
        if pos >= len(recs):
            last = recs[-1][0] if recs else 0
            raise InstanceFormatError(last + 1, f"unexpected end of input, expected '{keyword}'")
        lineno, toks = recs[pos]
        if toks[0] != keyword:
            raise InstanceFormatError(lineno, f"expected '{keyword}', got '{toks[0]}'")
        if len(toks) != nfields + 1:
            raise InstanceFormatError(lineno, f"'{keyword}' takes {nfields} field(s), got {len(toks) - 1}")
        pos += 1
        return lineno, toks[1:]

    lineno, (version,) = expect(MAGIC, 1)
    if version != str(FORMAT_VERSION):
        raise InstanceFormatError(lineno, f"unsupported format version {version}")
    lineno, (tok,) = expect("vertices", 1)
    n = _parse_int(lineno, tok, "vertex count")
    lineno, (tok,) = expect("edges", 1)
    m = _parse_int(lineno, tok, "edge count")

    edges = []
    seen_edges = {}
    for k in range(m):
        lineno, toks = expect("edge", 9)
        u = _parse_int(lineno, toks[0], "vertex")
        v = _parse_int(lineno, toks[1], "vertex")
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidInstanceError(f"line {lineno}: vertex outside 1..{n}")
        key = _pair(u, v)
        if key in seen_edges:
            raise InvalidInstanceError(
                f"line {lineno}: duplicate edge {key}, first given on line {seen_edges[key]}"
            )
        seen_edges[key] = lineno
        edges.append(EdgeSpec(k, u, v, _parse_weight(lineno, toks[2:])))

    lineno, (tok,) = expect("quads", 1)
    k_quads = _parse_int(lineno, tok, "quad count")
    quads = {}
    seen_pairs = {}
    for _ in range(k_quads):
        lineno, toks = expect("quad", 9)
        i = _parse_int(lineno, toks[0], "edge id")
        j = _parse_int(lineno, toks[1], "edge id")
        if i == j or not (0 <= i < m and 0 <= j < m):
            raise InvalidInstanceError(f"line {lineno}: quad ({i}, {j}) must name two distinct edge ids in 0..{m - 1}")
        key = _pair(i, j)
        if key in seen_pairs:
            raise InvalidInstanceError(
                f"line {lineno}: duplicate quadratic pair {key}, first given on line {seen_pairs[key]}"
            )
        seen_pairs[key] = lineno
        quads[key] = _parse_weight(lineno, toks[2:])

    if pos != len(recs):
        raise InstanceFormatError(recs[pos][0], f"unexpected trailing record '{recs[pos][1][0]}'")
    return Instance(n, edges, quads)


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_instance(inst))


# --------------------------------------------------------------------------
# builtin and generated instances


def _weight(base, offsets) -> RoughFuzzyWeight:
    return RoughFuzzyWeight(TriangularFuzzy(*base), *offsets)


def paper_instance() -> Instance:
    """The 9-vertex, 18-edge illustration graph with 35 quadratic pairs."""
    edges = []
    ids = {}
    for k, (label, base, offsets) in enumerate(_paper_data.LINEAR_WEIGHTS):
        u, v = int(label[1]), int(label[2])
        edges.append(EdgeSpec(k, u, v, _weight(base, offsets)))
        ids[label] = k
    quads = {}
    for a, b, base, offsets in _paper_data.QUADRATIC_WEIGHTS:
        quads[_pair(ids[a], ids[b])] = _weight(base, offsets)
    return Instance(9, edges, quads)


def _random_weight(rng: np.random.Generator) -> RoughFuzzyWeight:
    u = round(rng.uniform(8.0, 12.0), 2)
    v = round(u + rng.uniform(0.5, 3.0), 2)
    w = round(v + rng.uniform(0.5, 3.0), 2)
    a2 = round(rng.uniform(0.2, 2.5), 2)
    a3 = round(-rng.uniform(0.2, 2.0), 2)
    a4 = round(a2 + rng.uniform(0.1, 1.0), 2)
    return RoughFuzzyWeight(TriangularFuzzy(u, v, w), 0.0, a2, a3, a4)


def generate_random(n: int, m: int, seed=None) -> Instance:
    """Random connected ``QMST_n_m`` instance with a quadratic weight on every edge pair.

    A random labelled spanning tree is laid down first, then ``m - n + 1``
    further edges are drawn without replacement from the unused vertex pairs.
    """
    n, m = int(n), int(m)
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    max_m = n * (n - 1) // 2
    if not n - 1 <= m <= max_m:
        raise ValueError(f"edge count {m} infeasible for {n} vertices (need {n - 1}..{max_m})")
    rng = np.random.default_rng(seed)

    order = rng.permutation(n) + 1
    chosen = set()
    for k in range(1, n):
        parent = order[rng.integers(0, k)]
        chosen.add(_pair(int(order[k]), int(parent)))
    rest = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1) if (a, b) not in chosen]
    extra = rng.choice(len(rest), size=m - (n - 1), replace=False) if m > n - 1 else []
    chosen.update(rest[int(k)] for k in extra)

    edges = [EdgeSpec(k, a, b, _random_weight(rng)) for k, (a, b) in enumerate(sorted(chosen))]
    quads = {(i, j): _random_weight(rng) for i in range(m) for j in range(i + 1, m)}
    return Instance(n, edges, quads)


def parse_generator_spec(spec: str) -> Instance:
    """Build an instance from ``QMST_<n>_<m>[:<seed>]`` (seed defaults to 0)."""
    name, _, seed = spec.partition(":")
    parts = name.split("_")
    if len(parts) != 3 or parts[0].upper() != "QMST":
        raise ValueError(f"not a generator spec: {spec!r}")
    return generate_random(int(parts[1]), int(parts[2]), int(seed) if seed else 0)
