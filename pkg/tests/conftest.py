import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from gpatoms.graph import Graph

VERTEX_NAMES = "abcdefgh"


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    vs = list(VERTEX_NAMES[:n])
    return Graph(vs, [e for e in itertools.combinations(vs, 2) if rng.random() < p])


def random_rational(rng: random.Random, lo=0, hi=1, denom=12) -> Fraction:
    q = rng.randint(1, denom)
    a, b = Fraction(lo), Fraction(hi)
    return a + (b - a) * Fraction(rng.randint(0, q), q)


def all_graphs(n: int):
    vs = list(VERTEX_NAMES[:n])
    pairs = list(itertools.combinations(vs, 2))
    for mask in range(1 << len(pairs)):
        yield Graph(vs, [e for i, e in enumerate(pairs) if mask >> i & 1])


def nonisomorphic_graphs(n: int) -> list[Graph]:
    seen, out = set(), []
    perms = list(itertools.permutations(range(n)))
    for g in all_graphs(n):
        idx = {v: i for i, v in enumerate(g.vertices)}
        edges = [tuple(sorted(idx[v] for v in e)) for e in g.edges]
        key = min(tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in edges)) for p in perms)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


@st.composite
def graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    vs = list(VERTEX_NAMES[:n])
    pairs = list(itertools.combinations(vs, 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(vs, [e for e, b in zip(pairs, bits) if b])


def rationals(lo=0, hi=1, max_denom=12):
    return st.builds(
        lambda q, k: Fraction(lo) + (Fraction(hi) - Fraction(lo)) * Fraction(k % (q + 1), q),
        st.integers(1, max_denom), st.integers(0, 10**6),
    )


@st.composite
def graph_and_point(draw, min_n=1, max_n=6, lo=0, hi=1):
    g = draw(graphs(min_n, max_n))
    x = {v: draw(rationals(lo, hi)) for v in g.vertices}
    return g, x


@pytest.fixture
def rng():
    return random.Random(20240917)


ACCEPTANCE_LINES: list[str] = []


class _Criterion:
    def __init__(self, number: int):
        self.number = number
        self.line = None

    def record(self, ok: bool, detail: str) -> bool:
        self.line = f"{'PASS' if ok else 'FAIL'}  criterion {self.number:>2}: {detail}"
        ACCEPTANCE_LINES.append(self.line)
        print(self.line)
        return ok


@pytest.fixture
def criterion(request):
    """Records one PASS/FAIL line; a test that errors before recording counts as FAIL."""
    number = request.node.get_closest_marker("acceptance").args[0]
    crit = _Criterion(number)
    yield crit
    if crit.line is None:
        crit.record(False, "raised before completing")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


def random_summand(rng: random.Random, max_dim: int = 3, weight=None):
    from gpatoms.atoms import Summand

    n = rng.randint(1, max_dim)
    raw = [rng.randint(1, 6) for _ in range(n)]
    eig = tuple(Fraction(r, sum(raw)) for r in raw)
    return Summand(weight if weight is not None else random_rational(rng, 0, 1, 8) or Fraction(1, 8), eig)


def random_specs(rng: random.Random, g: Graph, max_dim: int = 3) -> dict:
    """One finite summand per vertex, plus a diffuse part when its weight is below 1."""
    from gpatoms.atoms import VertexAlgebraSpec

    specs = {}
    for v in g.vertices:
        s = random_summand(rng, max_dim)
        specs[v] = VertexAlgebraSpec(v, (s,), s.weight < 1)
    return specs


def random_atom_specs(rng: random.Random, g: Graph, max_dim: int = 3) -> dict:
    """Like ``random_specs`` but mostly scalar summands of weight at least 1/2.

    Uniform sampling almost never yields an atom whose word series is
    infinite; this keeps several vertices nontrivial at once.
    """
    from gpatoms.atoms import VertexAlgebraSpec

    specs = {}
    for v in g.vertices:
        dim = 1 if rng.random() < 0.7 else rng.randint(2, max_dim)
        weight = random_rational(rng, Fraction(1, 2), 1, 12)
        s = random_summand(rng, dim, weight)
        while len(s.eigenvalues) != dim:
            s = random_summand(rng, dim, weight)
        specs[v] = VertexAlgebraSpec(v, (s,), weight < 1)
    return specs
