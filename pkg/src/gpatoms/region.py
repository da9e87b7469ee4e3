"""Membership, radial boundary and boundary classification for the positivity region.

The region of a graph G is the set of x in [0, 1]^V with K_H(x|_H) > 0 for
every induced subgraph H.  Exact inputs are decided with exact arithmetic;
float inputs (opt-in) use a tolerance and are approximate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .cliquepoly import CliquePolynomial, restrict, restrict_zeros
from .errors import DomainError
from .graph import Graph, induced_subgraph, join_decomposition, neighborhood_subgraph
from .numerics import (
    DEFAULT_EPS,
    DEFAULT_PRECISION,
    IsolationInterval,
    Polynomial,
    count_roots,
    format_number,
    format_rational,
    is_positive,
    is_zero,
    poly_gcd,
    smallest_positive_root,
)


@dataclass(frozen=True)
class RegionQuery:
    graph: Graph
    x: Mapping

    def __post_init__(self):
        validate_point(self.graph, self.x)


def validate_point(g: Graph, x: Mapping, upper=1) -> None:
    for v in x:
        if v not in g:
            raise DomainError(f"unknown vertex {v!r}")
    for v in g.vertices:
        if v not in x:
            raise DomainError(f"no value assigned to vertex {v!r}")
        if x[v] < 0 or (upper is not None and x[v] > upper):
            raise DomainError(f"coordinate x_{v} = {x[v]} outside [0, {upper}]")


def _is_exact(x: Mapping) -> bool:
    return all(isinstance(val, (int, Fraction)) for val in x.values())


def membership(g: Graph, x: Mapping, eps: float = DEFAULT_EPS) -> bool:
    """Is ``x`` in the region of ``g``?

    Exact inputs: the ray polynomial ``h(a) = K_G(a x)`` starts at ``h(0) = 1``
    and must stay positive on ``[0, 1]``, i.e. have no root in ``(0, 1]``.
    Float inputs fall back to the corner test with tolerance ``eps``.
    """
    validate_point(g, x)
    if not _is_exact(x):
        return membership_corner_oracle(g, x, eps)
    h = CliquePolynomial(g).ray_polynomial(x)
    return count_roots(h, 0, 1) == 0


def membership_corner_oracle(g: Graph, x: Mapping, eps: float = DEFAULT_EPS) -> bool:
    """Exhaustive check of ``K_G(y) > 0`` over the corners ``y`` of the box ``prod [0, x_v]``."""
    validate_point(g, x)
    k = CliquePolynomial(g)
    support = [v for v in g.vertices if x[v] != 0]
    zero = {v: Fraction(0) for v in g.vertices}
    for mask in itertools.product((False, True), repeat=len(support)):
        y = dict(zero)
        for v, on in zip(support, mask):
            if on:
                y[v] = x[v]
        if not is_positive(k.evaluate(y), eps):
            return False
    return True


def membership_by_subgraphs(g: Graph, x: Mapping, eps: float = DEFAULT_EPS) -> bool:
    """Literal definition: ``K_H(x|_H) > 0`` for every induced subgraph ``H``."""
    validate_point(g, x)
    vs = g.vertices
    for r in range(len(vs) + 1):
        for sub in itertools.combinations(vs, r):
            h = induced_subgraph(g, sub)
            if not is_positive(CliquePolynomial(h).evaluate(restrict(x, h)), eps):
                return False
    return True


@dataclass(frozen=True)
class RhoResult:
    """Radial boundary along a ray ``r -> r*u``.

    ``interval`` isolates the first positive zero of ``r -> K_G(r u)``;
    ``cap`` is the ``r`` at which the largest coordinate of ``r*u`` reaches 1.
    ``at_cap`` is set only when no zero was found at or below the cap.
    """

    interval: Optional[IsolationInterval]
    cap: Fraction
    at_cap: bool = False

    @property
    def lower(self) -> Fraction:
        return self.cap if self.interval is None else self.interval.lo

    @property
    def upper(self) -> Fraction:
        return self.cap if self.interval is None else self.interval.hi

    def to_json(self) -> dict:
        out = {"cap": format_rational(self.cap), "at_cap": self.at_cap}
        if self.interval is not None:
            out.update(self.interval.to_json())
            out["exact"] = self.interval.exact
        else:
            out.update({"lo": format_rational(self.cap), "hi": format_rational(self.cap), "exact": True})
        return out


def rho(g: Graph, u: Mapping, precision=DEFAULT_PRECISION) -> RhoResult:
    """Smallest ``r > 0`` with ``K_G(r u) = 0``, isolated to width ``precision``.

    ``u`` need not be normalised; the result is in units of ``u``.  The search
    stops at the cap ``1 / max_v u_v``, beyond which ``r u`` leaves the unit box.
    """
    validate_point(g, u, upper=None)
    if not _is_exact(u):
        raise DomainError("rho requires exact rational directions")
    top = max((Fraction(u[v]) for v in g.vertices), default=Fraction(0))
    if top == 0:
        raise DomainError("direction u must have a nonzero coordinate")
    cap = 1 / top
    h = CliquePolynomial(g).ray_polynomial(u)
    iv = smallest_positive_root(h, cap, precision)
    if iv is None:
        return RhoResult(None, cap, at_cap=True)
    return RhoResult(iv, cap)


@dataclass(frozen=True)
class BoundaryClassification:
    on_boundary: bool
    gradient_vanishes: Optional[bool] = None
    gradient: Optional[dict] = None
    witness_split: Optional[tuple[tuple[str, ...], tuple[str, ...]]] = None

    def to_json(self) -> dict:
        out: dict = {"on_boundary": self.on_boundary}
        if self.on_boundary:
            out["gradient_vanishes"] = self.gradient_vanishes
            out["gradient"] = {v: (None if d is None else format_number(d)) for v, d in self.gradient.items()}
            out["witness_split"] = (None if self.witness_split is None
                                    else [list(self.witness_split[0]), list(self.witness_split[1])])
        return out


def find_vanishing_split(g: Graph, x: Mapping, eps: float = DEFAULT_EPS):
    """Split the positive-support subgraph as a join ``G0 + G1`` with both factors vanishing at ``x``.

    Candidate splits are unions of join-irreducible factors; returns vertex
    tuples ``(G0, G1)`` or ``None``.
    """
    plus, xp = restrict_zeros(g, x)
    factors = join_decomposition(plus)
    vals = [CliquePolynomial(f).evaluate(restrict(xp, f)) for f in factors]
    # K is multiplicative over join factors, so vanishing factors are tried first.
    order = sorted(range(len(factors)), key=lambda i: not is_zero(vals[i], eps))
    k = len(factors)
    for r in range(1, k):
        for chosen in itertools.combinations(order, r):
            rest = [i for i in range(k) if i not in chosen]
            g0 = [v for i in sorted(chosen) for v in factors[i].vertices]
            g1 = [v for i in rest for v in factors[i].vertices]
            h0, h1 = induced_subgraph(plus, g0), induced_subgraph(plus, g1)
            if (is_zero(CliquePolynomial(h0).evaluate(restrict(xp, h0)), eps)
                    and is_zero(CliquePolynomial(h1).evaluate(restrict(xp, h1)), eps)):
                return h0.vertices, h1.vertices
    return None


def classify_boundary_point(g: Graph, x: Mapping, eps: float = DEFAULT_EPS) -> BoundaryClassification:
    """Check whether ``K_G`` vanishes at ``x`` and, if so, whether its gradient does too."""
    validate_point(g, x, upper=None)
    k = CliquePolynomial(g)
    if not is_zero(k.evaluate(x), eps):
        return BoundaryClassification(on_boundary=False)
    grad = k.gradient(x)
    vanishes = all(is_zero(d, eps) for d in grad.values())
    split = find_vanishing_split(g, x, eps) if vanishes else None
    return BoundaryClassification(True, vanishes, grad, split)


def _vanishes_at_isolated_root(q: Polynomial, h: Polynomial, iv: IsolationInterval) -> bool:
    """Does ``q`` vanish at the unique root of ``h`` isolated by ``iv``?"""
    if iv.exact:
        return q(iv.lo) == 0
    if q.is_zero():
        return True
    common = poly_gcd(h, q)
    return common.degree > 0 and count_roots(common, iv.lo, iv.hi) > 0


def classify_ray_boundary(g: Graph, u: Mapping, precision=DEFAULT_PRECISION) -> BoundaryClassification:
    """Classify the boundary point ``rho(u) * u`` exactly, even when ``rho(u)`` is irrational.

    Each derivative is ``-K`` of a neighbourhood subgraph, so it vanishes at
    the boundary point iff its ray polynomial shares the isolated root of
    ``r -> K_G(r u)``.  The same test decides which join factors vanish.
    """
    res = rho(g, u, precision)
    if res.interval is None:
        raise DomainError("no boundary point on this ray inside the unit box")
    iv = res.interval
    h = CliquePolynomial(g).ray_polynomial(u)
    grad = {}
    for j in g.vertices:
        hj = CliquePolynomial(neighborhood_subgraph(g, j)).ray_polynomial(u)
        grad[j] = Fraction(0) if _vanishes_at_isolated_root(hj, h, iv) else None
    vanishes = all(d is not None for d in grad.values())
    split = None
    if vanishes:
        plus = induced_subgraph(g, [v for v in g.vertices if u[v] > 0])
        factors = join_decomposition(plus)
        zero = [_vanishes_at_isolated_root(CliquePolynomial(f).ray_polynomial(u), h, iv) for f in factors]
        hits = [f for f, z in zip(factors, zero) if z]
        if len(hits) >= 2:
            g1 = [v for f in factors if f is not hits[0] for v in f.vertices]
            split = (hits[0].vertices, induced_subgraph(plus, g1).vertices)
    # nonzero gradient entries are irrational here; report them as None
    return BoundaryClassification(True, vanishes, grad, split)
