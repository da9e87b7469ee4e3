"""The signed clique sum of a graph and the quantities derived from it.

For a graph G with variables x_v the clique polynomial is

    K_G(x) = sum over cliques C of (-1)^|C| * prod_{v in C} x_v

(the empty clique contributes 1).  It is kept as a clique list and evaluated
on demand; nothing here expands it into monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import DomainError
from .graph import Graph, enumerate_cliques, induced_subgraph, join_decomposition, neighborhood_subgraph
from .numerics import Polynomial, TruncatedSeries


def _prod(values, start=Fraction(1)):
    acc = start
    for v in values:
        acc = acc * v
    return acc


@dataclass(frozen=True)
class CliquePolynomial:
    graph: Graph
    cliques: tuple[tuple[str, ...], ...] = field(repr=False)

    def __init__(self, graph: Graph):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "cliques", tuple(enumerate_cliques(graph)))

    def _check(self, x: Mapping) -> None:
        missing = [v for v in self.graph.vertices if v not in x]
        if missing:
            raise DomainError(f"no value assigned to vertex {missing[0]!r}")

    def evaluate(self, x: Mapping):
        self._check(x)
        total = Fraction(0)
        for c in self.cliques:
            term = _prod(x[v] for v in c)
            total = total - term if len(c) % 2 else total + term
        return total

    __call__ = evaluate

    def partial_derivative_value(self, j: str, x: Mapping):
        """d K_G / d x_j at ``x``, computed as ``-K_{S(j)}`` on the neighbourhood of ``j``."""
        self._check(x)
        sub = neighborhood_subgraph(self.graph, j)
        return -CliquePolynomial(sub).evaluate(x)

    def gradient(self, x: Mapping) -> dict:
        return {j: self.partial_derivative_value(j, x) for j in self.graph.vertices}

    def ray_polynomial(self, x: Mapping) -> Polynomial:
        """``h(a) = K_G(a * x)``; the coefficient of ``a**d`` collects the cliques of size ``d``."""
        self._check(x)
        coeffs = [Fraction(0)] * (max((len(c) for c in self.cliques), default=0) + 1)
        for c in self.cliques:
            term = _prod(Fraction(x[v]) for v in c)
            coeffs[len(c)] += -term if len(c) % 2 else term
        return Polynomial(coeffs)

    def clique_size_counts(self) -> list[int]:
        counts = [0] * (max((len(c) for c in self.cliques), default=0) + 1)
        for c in self.cliques:
            counts[len(c)] += 1
        return counts

    def diagonal_polynomial(self) -> Polynomial:
        """``K_G(t, t, ..., t)`` as a polynomial in ``t``."""
        return Polynomial((-1) ** d * n for d, n in enumerate(self.clique_size_counts()))

    def diagonal_series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.from_polynomial(self.diagonal_polynomial(), order)

    def terms(self) -> list[tuple[int, tuple[str, ...]]]:
        """``(sign, clique)`` pairs by degree, then lexicographically."""
        ordered = sorted(self.cliques, key=lambda c: (len(c), self.graph.sort_key(c)))
        return [(-1 if len(c) % 2 else 1, c) for c in ordered]

    def format(self) -> str:
        """Human-readable form, e.g. ``1 − x_a − x_b + x_a·x_b``."""
        out = ""
        for sign, c in self.terms():
            mono = "·".join(f"x_{v}" for v in c) if c else "1"
            if not out:
                out = mono if sign > 0 else f"−{mono}"
            else:
                out += f" {'+' if sign > 0 else '−'} {mono}"
        return out


def evaluate(g: Graph, x: Mapping):
    return CliquePolynomial(g).evaluate(x)


def partial_derivative_value(g: Graph, j: str, x: Mapping):
    return CliquePolynomial(g).partial_derivative_value(j, x)


def ray_polynomial(g: Graph, x: Mapping) -> Polynomial:
    return CliquePolynomial(g).ray_polynomial(x)


def restrict(x: Mapping, g: Graph) -> dict:
    return {v: x[v] for v in g.vertices}


def restrict_zeros(g: Graph, x: Mapping) -> tuple[Graph, dict]:
    """Drop the zero coordinates: returns the subgraph on ``{v : x_v > 0}`` and ``x`` restricted to it.

    The clique polynomial takes the same value on both.
    """
    for v in g.vertices:
        if v not in x:
            raise DomainError(f"no value assigned to vertex {v!r}")
        if x[v] < 0:
            raise DomainError(f"negative coordinate at vertex {v!r}")
    sub = induced_subgraph(g, [v for v in g.vertices if x[v] > 0])
    return sub, restrict(x, sub)


@dataclass(frozen=True)
class JoinFactorization:
    value: object
    factors: tuple[Graph, ...]
    factor_values: tuple

    @property
    def product(self):
        return _prod(self.factor_values)

    @property
    def holds(self) -> bool:
        return self.product == self.value


def join_factorization_check(g: Graph, x: Mapping) -> JoinFactorization:
    """Evaluate ``K_G`` whole and factor by factor over the join decomposition."""
    factors = tuple(join_decomposition(g))
    values = tuple(CliquePolynomial(f).evaluate(restrict(x, f)) for f in factors)
    result = JoinFactorization(CliquePolynomial(g).evaluate(x), factors, values)
    if isinstance(result.value, Fraction) and not result.holds:
        raise AssertionError(f"join factorization failed on {g!r}: {result.value} != {result.product}")
    return result
