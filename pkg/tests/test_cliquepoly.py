import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import graph_and_point, random_graph, random_rational
from gpatoms.cliquepoly import CliquePolynomial, join_factorization_check, restrict_zeros
from gpatoms.errors import DomainError
from gpatoms.graph import Graph, complete_graph, edgeless_graph, path_graph


def brute_k(g, x):
    """Sum over vertex subsets that happen to be cliques."""
    total = F(0)
    for r in range(len(g.vertices) + 1):
        for sub in itertools.combinations(g.vertices, r):
            if g.is_clique(sub):
                term = F((-1) ** r)
                for v in sub:
                    term *= x[v]
                total += term
    return total


def test_evaluate_examples():
    xs = {"a": F(1, 5), "b": F(2, 7), "c": F(1, 11)}
    assert CliquePolynomial(edgeless_graph("abc")).evaluate(xs) == 1 - sum(xs.values())
    k2 = CliquePolynomial(complete_graph("ab"))
    assert k2.evaluate({"a": F(1, 2), "b": F(1, 2)}) == F(1, 4)
    assert CliquePolynomial(complete_graph("abc")).evaluate(xs) == (1 - xs["a"]) * (1 - xs["b"]) * (1 - xs["c"])
    assert CliquePolynomial(path_graph("abc")).evaluate({v: F(1, 3) for v in "abc"}) == F(2, 9)
    with pytest.raises(DomainError):
        k2.evaluate({"a": F(1)})


@given(graph_and_point(max_n=6, lo=-2, hi=2))
@settings(max_examples=100, deadline=None)
def test_evaluate_matches_subset_sum(gx):
    g, x = gx
    k = CliquePolynomial(g)
    assert k.evaluate(x) == brute_k(g, x)
    assert k.evaluate({v: F(0) for v in g.vertices}) == 1


def test_partial_derivative_examples():
    g = edgeless_graph("abc")
    assert CliquePolynomial(g).partial_derivative_value("b", {v: F(2, 3) for v in "abc"}) == -1
    p = CliquePolynomial(path_graph("abc"))
    assert p.partial_derivative_value("b", {"a": F(1, 3), "b": F(5, 7), "c": F(1, 3)}) == F(-1, 3)


@given(graph_and_point(max_n=6, lo=-1, hi=1))
@settings(max_examples=100, deadline=None)
def test_affine_slope_equals_derivative(gx):
    g, x = gx
    k = CliquePolynomial(g)
    for j in g.vertices:
        lo, hi = dict(x), dict(x)
        lo[j], hi[j] = F(0), F(1)
        assert k.evaluate(hi) - k.evaluate(lo) == k.partial_derivative_value(j, x)
        # affine in x_j: value at x equals the line through 0 and 1
        assert k.evaluate(x) == k.evaluate(lo) + x[j] * (k.evaluate(hi) - k.evaluate(lo))


def test_derivative_against_finite_differences():
    rng = random.Random(7)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 6))
        x = {v: rng.random() for v in g.vertices}
        k = CliquePolynomial(g)
        h = 1e-6
        for j in g.vertices:
            up, dn = dict(x), dict(x)
            up[j] += h
            dn[j] -= h
            fd = (k.evaluate(up) - k.evaluate(dn)) / (2 * h)
            assert abs(fd - k.partial_derivative_value(j, x)) < 1e-4


def test_restrict_zeros_examples():
    p = path_graph("abc")
    sub, xs = restrict_zeros(p, {"a": F(0), "b": F(1, 2), "c": F(1, 2)})
    assert sub == complete_graph("bc") and xs == {"b": F(1, 2), "c": F(1, 2)}
    full = {v: F(1, 4) for v in "abc"}
    assert restrict_zeros(p, full) == (p, full)
    sub, xs = restrict_zeros(p, {v: F(0) for v in "abc"})
    assert sub == Graph([]) and CliquePolynomial(sub).evaluate(xs) == 1
    with pytest.raises(DomainError):
        restrict_zeros(p, {"a": F(-1), "b": F(0), "c": F(0)})


@given(graph_and_point(max_n=6))
@settings(max_examples=100, deadline=None)
def test_zero_restriction_identity(gx):
    g, x = gx
    sub, xs = restrict_zeros(g, x)
    assert CliquePolynomial(sub).evaluate(xs) == CliquePolynomial(g).evaluate(x)


def test_join_factorization_examples():
    res = join_factorization_check(complete_graph("ab"), {"a": F(1, 2), "b": F(1, 3)})
    assert res.value == F(1, 3) and res.factor_values == (F(1, 2), F(2, 3))
    res = join_factorization_check(path_graph("abcd"), {v: F(1, 5) for v in "abcd"})
    assert len(res.factors) == 1 and res.holds
    g = complete_graph("x").join(path_graph("abc"))
    rng = random.Random(3)
    for _ in range(20):
        x = {v: random_rational(rng, -1, 1) for v in g.vertices}
        res = join_factorization_check(g, x)
        assert res.holds and len(res.factors) == 3


def test_ray_polynomial_examples():
    assert CliquePolynomial(edgeless_graph("ab")).ray_polynomial({"a": F(1, 2), "b": F(1, 2)}).coeffs == (1, -1)
    assert CliquePolynomial(complete_graph("ab")).ray_polynomial({"a": 1, "b": 1}).coeffs == (1, -2, 1)
    assert CliquePolynomial(path_graph("abc")).ray_polynomial({v: 0 for v in "abc"}).coeffs == (1,)


@given(graph_and_point(max_n=6, lo=0, hi=2))
@settings(max_examples=60, deadline=None)
def test_ray_polynomial_agrees_with_evaluation(gx):
    g, x = gx
    k = CliquePolynomial(g)
    h = k.ray_polynomial(x)
    assert h(0) == 1
    assert h.degree <= max(len(c) for c in k.cliques)
    for a in (F(1, 3), F(1, 2), F(1), F(7, 4)):
        assert h(a) == k.evaluate({v: a * x[v] for v in g.vertices})


def test_format_k2():
    assert CliquePolynomial(complete_graph("ab")).format() == "1 − x_a − x_b + x_a·x_b"
