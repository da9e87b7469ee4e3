import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import graph_and_point, random_graph
from gpatoms.cliquepoly import CliquePolynomial
from gpatoms.errors import DomainError
from gpatoms.graph import Graph, complete_graph, edgeless_graph, is_join_irreducible, path_graph
from gpatoms.region import (
    classify_boundary_point,
    classify_ray_boundary,
    membership,
    membership_by_subgraphs,
    membership_corner_oracle,
    rho,
)

PATH = path_graph("abc")


@pytest.mark.parametrize("check", [membership, membership_corner_oracle, membership_by_subgraphs])
def test_membership_examples(check):
    assert check(PATH, {v: F(1, 3) for v in "abc"})
    assert not check(PATH, {v: F(1, 2) for v in "abc"})
    assert check(PATH, {v: F(0) for v in "abc"})
    assert not check(Graph("a"), {"a": F(1)})
    assert check(Graph("a"), {"a": F(9, 10)})


def test_membership_rejects_out_of_box():
    with pytest.raises(DomainError):
        membership(PATH, {"a": F(3, 2), "b": F(0), "c": F(0)})
    with pytest.raises(DomainError):
        membership(PATH, {"a": F(0), "b": F(0)})


@given(graph_and_point(max_n=6))
@settings(max_examples=200, deadline=None)
def test_membership_tests_agree(gx):
    g, x = gx
    m = membership(g, x)
    assert m == membership_corner_oracle(g, x) == membership_by_subgraphs(g, x)


@given(graph_and_point(max_n=6))
@settings(max_examples=100, deadline=None)
def test_star_shaped(gx):
    g, x = gx
    if membership(g, x):
        for a in (F(1, 4), F(1, 2), F(3, 4)):
            assert membership(g, {v: a * x[v] for v in g.vertices})


def test_rho_examples():
    r = rho(edgeless_graph("ab"), {"a": 1, "b": 1})
    assert F(1, 2) in r.interval
    r = rho(complete_graph("abc"), {v: 1 for v in "abc"})
    assert F(1) in r.interval and r.cap == 1
    r = rho(PATH, {v: 1 for v in "abc"})
    assert F(1, 2) in r.interval
    with pytest.raises(DomainError):
        rho(PATH, {v: 0 for v in "abc"})


def test_rho_characterises_membership():
    rng = random.Random(11)
    prec = F(1, 2**24)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 5))
        u = {v: F(rng.randint(0, 6), 6) for v in g.vertices}
        if not any(u.values()):
            continue
        r = rho(g, u, prec)
        assert not r.at_cap
        assert r.interval.width <= prec
        inside = r.lower * F(999, 1000)
        assert membership(g, {v: inside * u[v] for v in g.vertices})
        if r.interval.exact:
            assert not membership(g, {v: r.upper * u[v] for v in g.vertices})
            assert CliquePolynomial(g).evaluate({v: r.upper * u[v] for v in g.vertices}) == 0
        beyond = r.upper * F(1001, 1000)
        if beyond * max(u.values()) <= 1:
            assert not membership(g, {v: beyond * u[v] for v in g.vertices})


def test_rho_is_continuous_along_sampled_rays():
    g = path_graph("abcd")
    base = {"a": F(1), "b": F(1, 2), "c": F(1, 3), "d": F(1, 4)}
    r0 = rho(g, base, F(1, 2**30)).interval.midpoint()
    for k in range(1, 6):
        eps = F(1, 10**k)
        r = rho(g, {**base, "b": base["b"] + eps}, F(1, 2**30)).interval.midpoint()
        assert abs(r - r0) < 20 * eps


def test_classify_boundary_examples():
    res = classify_boundary_point(complete_graph("ab"), {"a": F(1), "b": F(1)})
    assert res.on_boundary and res.gradient_vanishes
    assert res.witness_split == (("a",), ("b",))
    res = classify_boundary_point(PATH, {v: F(1, 2) for v in "abc"})
    assert res.on_boundary and not res.gradient_vanishes and res.witness_split is None
    assert res.gradient["a"] == F(-1, 2)
    assert not classify_boundary_point(PATH, {v: F(1, 3) for v in "abc"}).on_boundary
    # the path is the join {b} + {a, c}: both factors vanish at (1/2, 1, 1/2)
    res = classify_boundary_point(PATH, {"a": F(1, 2), "b": F(1), "c": F(1, 2)})
    assert res.gradient_vanishes and sorted(res.witness_split) == [("a", "c"), ("b",)]


def test_join_irreducible_boundary_has_nonvanishing_gradient():
    rng = random.Random(5)
    checked = 0
    while checked < 20:
        g = random_graph(rng, rng.randint(2, 5))
        if not is_join_irreducible(g):
            continue
        u = {v: F(rng.randint(1, 5), 5) for v in g.vertices}
        r = rho(g, u)
        if not r.interval.exact:
            continue
        x = {v: r.lower * u[v] for v in g.vertices}
        res = classify_boundary_point(g, x)
        assert res.on_boundary and not res.gradient_vanishes
        checked += 1


def test_classify_ray_boundary_irrational_root():
    c5 = Graph("abcde", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
    u = {v: F(1) for v in c5.vertices}
    r = rho(c5, u)
    assert not r.interval.exact
    # smallest root of 1 - 5r + 5r^2 is (5 - sqrt 5)/10
    assert abs(float(r.interval.midpoint()) - (5 - 5 ** 0.5) / 10) < 1e-11
    res = classify_ray_boundary(c5, u)
    assert res.on_boundary and not res.gradient_vanishes and res.witness_split is None


def test_classify_ray_boundary_join_points():
    res = classify_ray_boundary(complete_graph("ab"), {"a": F(1), "b": F(1)})
    assert res.gradient_vanishes and res.witness_split == (("a",), ("b",))
    res = classify_ray_boundary(PATH, {v: F(1) for v in "abc"})
    assert not res.gradient_vanishes
    # (1/2, 1, 1/2) lies on the ray through (1, 2, 1)
    res = classify_ray_boundary(PATH, {"a": F(1), "b": F(2), "c": F(1)})
    assert res.gradient_vanishes and sorted(res.witness_split) == [("a", "c"), ("b",)]


def test_ray_classification_matches_exact_classification():
    rng = random.Random(9)
    seen = 0
    for _ in range(400):
        g = random_graph(rng, rng.randint(1, 5))
        u = {v: F(rng.randint(0, 4), 4) for v in g.vertices}
        if not any(u.values()):
            continue
        r = rho(g, u)
        if not r.interval.exact:
            continue
        x = {v: r.lower * u[v] for v in g.vertices}
        a, b = classify_ray_boundary(g, u), classify_boundary_point(g, x)
        assert a.gradient_vanishes == b.gradient_vanishes
        assert (a.witness_split is None) == (b.witness_split is None)
        seen += 1
    assert seen > 50
