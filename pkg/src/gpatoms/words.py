"""Words over the vertex alphabet modulo commutation of adjacent letters.

Two letters commute when their vertices are adjacent.  A word is *reduced*
when any two occurrences of the same letter are separated by a letter that
is neither equal nor adjacent to it.  Each commutation class is represented
by its lexicographically least word (vertex order = declared order).

Counting uses a finite automaton that recognises exactly the least
representatives: appending letter ``a`` to a least word ``w`` keeps it least
unless some suffix ``w[j:]`` consists of letters commuting with ``a`` and
``w[j] > a``.  The state is one bit per letter for that condition, plus one
bit per letter recording whether appending it keeps the word reduced.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .cliquepoly import CliquePolynomial
from .errors import CapExceeded, DomainError
from .graph import Graph
from .numerics import (
    TruncatedSeries,
    series_reciprocal,
    series_substitute_t_over_one_plus_t,
)

DEFAULT_CLASS_CAP = 10**6

Word = tuple  # tuple of vertex ids


def _letters(g: Graph, w: Iterable) -> tuple[str, ...]:
    w = tuple(w)
    for a in w:
        if a not in g:
            raise DomainError(f"unknown letter {a!r}")
    return w


def is_reduced(g: Graph, w: Sequence[str]) -> bool:
    w = _letters(g, w)
    last: dict[str, int] = {}
    for j, a in enumerate(w):
        i = last.get(a)
        if i is not None and not any(b != a and not g.adjacent(a, b) for b in w[i + 1:j]):
            return False
        last[a] = j
    return True


def admissible_swaps(g: Graph, w: Sequence[str]):
    """Words obtained from ``w`` by exchanging one pair of consecutive commuting letters."""
    w = tuple(w)
    for i in range(len(w) - 1):
        if g.adjacent(w[i], w[i + 1]):
            yield w[:i] + (w[i + 1], w[i]) + w[i + 2:]


def equivalence_class(g: Graph, w: Sequence[str]) -> set:
    """Every word reachable from ``w`` by admissible swaps (breadth-first)."""
    start = _letters(g, w)
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in admissible_swaps(g, queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _key(g: Graph, w: Sequence[str]) -> tuple[int, ...]:
    return tuple(g.index(a) for a in w)


def canonical_form_bfs(g: Graph, w: Sequence[str]) -> Word:
    return min(equivalence_class(g, w), key=lambda u: _key(g, u))


def canonical_form_greedy(g: Graph, w: Sequence[str]) -> Word:
    """Repeatedly pull to the front the smallest letter that commutes with everything before it."""
    rest = list(_letters(g, w))
    out = []
    while rest:
        best = None
        for i, a in enumerate(rest):
            if all(g.adjacent(a, b) for b in rest[:i]):
                if best is None or g.index(a) < g.index(rest[best]):
                    best = i
        out.append(rest.pop(best))
    return tuple(out)


def canonical_form(g: Graph, w: Sequence[str], method: str = "greedy") -> Word:
    if method == "greedy":
        return canonical_form_greedy(g, w)
    if method == "bfs":
        return canonical_form_bfs(g, w)
    raise ValueError(f"unknown canonicalisation method {method!r}")


def is_canonical(g: Graph, w: Sequence[str]) -> bool:
    return canonical_form_greedy(g, w) == tuple(w)


# ---------------------------------------------------------------------------
# Automaton over least representatives


class _NormalFormAutomaton:
    def __init__(self, g: Graph, reduced: bool):
        n = len(g.vertices)
        self.n = n
        self.reduced = reduced
        self.full = (1 << n) - 1
        # commute[a]: bitmask of letters adjacent to a
        self.commute = [sum(1 << b for b in range(n) if g.adjacent(g.vertices[a], g.vertices[b]))
                        for a in range(n)]
        self.smaller = [sum(1 << b for b in range(a)) for a in range(n)]
        self.start = (0, self.full)

    def step(self, state: tuple[int, int], c: int) -> Optional[tuple[int, int]]:
        viol, allowed = state
        if viol >> c & 1:
            return None
        if self.reduced and not allowed >> c & 1:
            return None
        comm = self.commute[c]
        # a gets a violation if it commutes with c and (c > a or it already had one)
        viol = comm & (self.smaller[c] | viol)
        if self.reduced:
            separated = self.full & ~comm & ~(1 << c)
            allowed = (allowed | separated) & ~(1 << c)
        return viol, allowed


def _iter_normal_forms(g: Graph, length: int, reduced: bool):
    auto = _NormalFormAutomaton(g, reduced)
    vs = g.vertices
    word: list[str] = []

    def rec(state, depth):
        if depth == length:
            yield tuple(word)
            return
        for c in range(auto.n):
            nxt = auto.step(state, c)
            if nxt is not None:
                word.append(vs[c])
                yield from rec(nxt, depth + 1)
                word.pop()

    yield from rec(auto.start, 0)


def normal_form_sums(g: Graph, max_len: int, reduced: bool = True,
                     weights: Optional[Mapping] = None) -> list:
    """Per-length totals over least representatives, by dynamic programming on the automaton.

    With ``weights`` each word contributes the product of its letters'
    weights; without, each contributes 1 (a class count).
    """
    auto = _NormalFormAutomaton(g, reduced)
    if weights is None:
        w = [1] * auto.n
    else:
        w = [weights[v] for v in g.vertices]
    layer = {auto.start: Fraction(1) if weights is not None else 1}
    totals = [sum(layer.values())]
    for _ in range(max_len):
        nxt: dict = {}
        for state, acc in layer.items():
            for c in range(auto.n):
                st = auto.step(state, c)
                if st is not None:
                    nxt[st] = nxt.get(st, 0) + acc * w[c]
        layer = nxt
        totals.append(sum(layer.values()))
    return totals


def class_layers(g: Graph, max_len: int, reduced: bool = True, method: str = "greedy") -> list[set]:
    """Least representatives, length by length, built by closing under ``canon(c + a)``.

    Independent of the automaton: every class of length l+1 is the class of
    a length-l class extended by one letter.
    """
    layers = [{()}]
    for _ in range(max_len):
        nxt = set()
        for c in layers[-1]:
            for a in g.vertices:
                w = c + (a,)
                if reduced and not is_reduced(g, w):
                    continue
                nxt.add(canonical_form(g, w, method))
        layers.append(nxt)
    return layers


def count_reduced_classes_series(g: Graph, order: int) -> TruncatedSeries:
    """Reduced-class counts per length as ``1 / K_G(x(t))`` with ``x_v = t / (1 + t)``."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    diag = CliquePolynomial(g).diagonal_series(order)
    return series_reciprocal(series_substitute_t_over_one_plus_t(diag, order), order)


def count_all_classes_series(g: Graph, order: int) -> TruncatedSeries:
    """All-class counts per length as ``1 / K_G(t, ..., t)``."""
    return series_reciprocal(CliquePolynomial(g).diagonal_series(order), order)


def _check_cap(g: Graph, length: int, reduced: bool, cap: int) -> None:
    series = count_reduced_classes_series(g, length) if reduced else count_all_classes_series(g, length)
    expected = series[length]
    if expected > cap:
        raise CapExceeded(f"{expected} classes of length {length} exceed the cap of {cap}")


def enumerate_reduced_classes(g: Graph, length: int, cap: int = DEFAULT_CLASS_CAP) -> list[Word]:
    """Least representatives of all reduced classes of the given length, in lexicographic order."""
    if length < 0:
        raise DomainError("length must be nonnegative")
    _check_cap(g, length, True, cap)
    return list(_iter_normal_forms(g, length, reduced=True))


def enumerate_all_classes(g: Graph, length: int, cap: int = DEFAULT_CLASS_CAP) -> list[Word]:
    if length < 0:
        raise DomainError("length must be nonnegative")
    _check_cap(g, length, False, cap)
    return list(_iter_normal_forms(g, length, reduced=False))


def truncated_weighted_sum(g: Graph, x: Mapping, max_len: int, method: str = "automaton"):
    """Sum of ``x_{w1} ... x_{wl}`` over least reduced words of length ``<= max_len``."""
    if max_len < 0:
        raise DomainError("order must be nonnegative")
    for v in g.vertices:
        if v not in x:
            raise DomainError(f"no value assigned to vertex {v!r}")
        if x[v] < 0:
            raise DomainError(f"negative weight at vertex {v!r}")
    if method == "automaton":
        return sum(normal_form_sums(g, max_len, True, x), Fraction(0))
    if method == "enumerate":
        total = Fraction(0)
        for length in range(max_len + 1):
            for w in _iter_normal_forms(g, length, reduced=True):
                term = Fraction(1)
                for a in w:
                    term = term * x[a]
                total = total + term
        return total
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class IdentityReport:
    order: int
    reduced_counts: tuple[int, ...]
    all_counts: tuple[int, ...]
    reduced_product: tuple[Fraction, ...]
    all_product: tuple[Fraction, ...]

    @staticmethod
    def _is_one(cs) -> bool:
        return cs[0] == 1 and all(c == 0 for c in cs[1:])

    @property
    def reduced_ok(self) -> bool:
        return self._is_one(self.reduced_product)

    @property
    def all_ok(self) -> bool:
        return self._is_one(self.all_product)

    @property
    def passed(self) -> bool:
        return self.reduced_ok and self.all_ok

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "max_len": self.order,
            "passed": self.passed,
            "reduced": {"counts": list(self.reduced_counts), "ok": self.reduced_ok},
            "unreduced": {"counts": list(self.all_counts), "ok": self.all_ok},
        }


def cartier_foata_identity_check(g: Graph, order: int, method: str = "automaton") -> IdentityReport:
    """Multiply the clique polynomial by the class-count series and compare with 1.

    Reduced form: ``K_G(t/(1+t)) * sum |W_l| t^l``.  Unreduced form:
    ``K_G(t) * sum (#classes of length l) t^l``.  Counts come from the
    automaton (``method="automaton"``) or from closing classes under
    canonicalisation (``method="greedy"`` or ``"bfs"``).
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    if method == "automaton":
        red = normal_form_sums(g, order, reduced=True)
        allc = normal_form_sums(g, order, reduced=False)
    else:
        red = [len(layer) for layer in class_layers(g, order, True, method)]
        allc = [len(layer) for layer in class_layers(g, order, False, method)]
    diag = CliquePolynomial(g).diagonal_series(order)
    k_red = series_substitute_t_over_one_plus_t(diag, order)
    red_prod = k_red * TruncatedSeries(red, order)
    all_prod = diag * TruncatedSeries(allc, order)
    return IdentityReport(order, tuple(red), tuple(allc), red_prod.coeffs, all_prod.coeffs)
