"""Type I factor summands of a graph product from per-vertex summand data.

Each vertex algebra is described by a list of its type I factor summands:
weight ``alpha`` and, for a matrix summand, the eigenvalues ``lambda_j`` of
its density (or an ``infinite`` flag for a B(H) summand).  A choice of one
summand per vertex (a *selection*) either produces an atom of the graph
product or not; :func:`classify_selection` decides which and computes the
weight, the density of the tensor-product state and the masses of the
minimal projections.

Key per-summand quantities: ``t_j = alpha * lambda_j`` and
``s = sum_j 1 / t_j``; the atom test runs on ``x_v = 1 - 1/s_v``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .cliquepoly import CliquePolynomial
from .errors import CapExceeded, DomainError
from .graph import Graph, enumerate_cliques, induced_subgraph
from .numerics import DEFAULT_EPS, format_number
from .region import membership
from .words import truncated_weighted_sum

DEFAULT_SELECTION_CAP = 10**6
INFINITY = math.inf


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


@dataclass(frozen=True)
class Summand:
    weight: object
    eigenvalues: tuple = ()
    infinite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", tuple(self.eigenvalues))

    @property
    def dimension(self):
        return INFINITY if self.infinite else len(self.eigenvalues)

    @property
    def t_values(self) -> tuple:
        return tuple(self.weight * lam for lam in self.eigenvalues)

    def validate(self, eps: float = DEFAULT_EPS, where: str = "summand") -> None:
        a = self.weight
        if not (a > 0 and (a <= 1 if _is_exact(a) else a <= 1 + eps)):
            raise DomainError(f"{where}: weight {a} must lie in (0, 1]")
        if self.infinite:
            if self.eigenvalues:
                raise DomainError(f"{where}: infinite summand takes no eigenvalues")
            return
        if not self.eigenvalues:
            raise DomainError(f"{where}: finite summand needs at least one eigenvalue")
        if any(lam <= 0 for lam in self.eigenvalues):
            raise DomainError(f"{where}: eigenvalues must be positive")
        total = sum(self.eigenvalues)
        if all(map(_is_exact, self.eigenvalues)) and total != 1:
            raise DomainError(f"{where}: eigenvalues sum to {total}, not 1")
        if abs(total - 1) > eps:
            raise DomainError(f"{where}: eigenvalues sum to {total}, not 1")


def s_value(s: Summand):
    """``sum_j 1 / (alpha * lambda_j)``; infinite for a B(H) summand."""
    if s.infinite:
        return INFINITY
    return sum((1 / t for t in s.t_values), Fraction(0))


@dataclass(frozen=True)
class VertexAlgebraSpec:
    vertex: str
    summands: tuple[Summand, ...]
    has_diffuse_part: bool = False

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    def validate(self, eps: float = DEFAULT_EPS) -> None:
        if not self.summands and not self.has_diffuse_part:
            raise DomainError(f"vertex {self.vertex!r}: needs a summand or a diffuse part")
        for i, s in enumerate(self.summands):
            s.validate(eps, f"vertex {self.vertex!r} summand {i}")
        total = sum((s.weight for s in self.summands), Fraction(0))
        exact = all(_is_exact(s.weight) for s in self.summands)
        if exact:
            over, full = total > 1, total == 1
        else:
            over, full = total > 1 + eps, abs(total - 1) <= eps
        if over:
            raise DomainError(f"vertex {self.vertex!r}: summand weights sum to {total} > 1")
        if full and self.has_diffuse_part:
            raise DomainError(f"vertex {self.vertex!r}: weights sum to 1, no room for a diffuse part")
        if not full and not self.has_diffuse_part:
            raise DomainError(f"vertex {self.vertex!r}: weights sum to {total} < 1 but no diffuse part declared")


@dataclass(frozen=True)
class MeetReport:
    nonzero: bool
    value: object = None

    def to_json(self) -> dict:
        out: dict = {"nonzero": self.nonzero}
        if self.nonzero:
            out["value"] = format_number(self.value)
        return out


def projection_meet(g: Graph, p: Mapping, eps: float = DEFAULT_EPS) -> MeetReport:
    """Is the meet of projections with state values ``p_v`` nonzero, and what is its state value?"""
    for v in p:
        if v not in g:
            raise DomainError(f"unknown vertex {v!r}")
    for v in g.vertices:
        if v not in p:
            raise DomainError(f"no projection value for vertex {v!r}")
        if not 0 < p[v] <= 1:
            raise DomainError(f"projection value {p[v]} at {v!r} outside (0, 1]")
    x = {v: 1 - p[v] for v in g.vertices}
    if not membership(g, x, eps):
        return MeetReport(False)
    return MeetReport(True, CliquePolynomial(g).evaluate(x))


@dataclass(frozen=True)
class AtomReport:
    selection: dict
    support_clique: tuple[str, ...]
    infinite_part: tuple[str, ...]
    weight: object
    finite_weight: object
    dimensions: dict
    density_eigenvalues: tuple
    minimal_projection_weights: tuple = field(default=())
    approximate: bool = False

    @property
    def weight_derived(self) -> bool:
        """True when the weight relies on multiplicativity over infinite tensor factors."""
        return bool(self.infinite_part)

    def to_json(self) -> dict:
        out = {
            "selection": dict(self.selection),
            "support_clique": list(self.support_clique),
            "infinite_part": list(self.infinite_part),
            "weight": format_number(self.weight),
            "dimensions": {v: ("inf" if d == INFINITY else d) for v, d in self.dimensions.items()},
            "density_eigenvalues": [format_number(lam) for lam in self.density_eigenvalues],
            "minimal_projection_weights": [
                {"index": dict(idx), "weight": format_number(w)}
                for idx, w in self.minimal_projection_weights
            ],
        }
        if self.infinite_part:
            out["finite_weight"] = format_number(self.finite_weight)
            out["weight_derived"] = True
        if self.approximate:
            out["approximate"] = True
        return out


def _selected(specs: Mapping[str, VertexAlgebraSpec], g: Graph, sel: Mapping[str, int]) -> dict:
    chosen = {}
    for v in g.vertices:
        if v not in specs:
            raise DomainError(f"no algebra given for vertex {v!r}")
        if v not in sel:
            raise DomainError(f"selection has no choice for vertex {v!r}")
        i = sel[v]
        summands = specs[v].summands
        if not isinstance(i, int) or not 0 <= i < len(summands):
            raise DomainError(f"selection index {i!r} invalid for vertex {v!r}")
        chosen[v] = summands[i]
    return chosen


def classify_selection(g: Graph, specs: Mapping[str, VertexAlgebraSpec], sel: Mapping[str, int],
                       eps: float = DEFAULT_EPS) -> Optional[AtomReport]:
    """The atom produced by choosing summand ``sel[v]`` at every vertex, or ``None``."""
    chosen = _selected(specs, g, sel)
    approximate = not all(_is_exact(s.weight) and all(map(_is_exact, s.eigenvalues))
                          for s in chosen.values())

    # B(H) summands must sit on vertices adjacent to everything else.
    inf_part = tuple(v for v in g.vertices if chosen[v].infinite)
    for v in inf_part:
        if len(g.neighbors(v)) != len(g.vertices) - 1:
            return None
    g2 = induced_subgraph(g, [v for v in g.vertices if v not in inf_part])
    fin = {v: chosen[v] for v in g2.vertices}

    s = {v: s_value(fin[v]) for v in g2.vertices}
    clique = tuple(v for v in g2.vertices if fin[v].dimension > 1)
    if not g2.is_clique(clique):
        return None
    x = {v: 1 - 1 / s[v] for v in g2.vertices}
    if not membership(g2, x, eps):
        return None

    alpha_fin = _product(fin[v].weight for v in g2.vertices)
    clique_sum = Fraction(0)
    for c in enumerate_cliques(g2):
        members = set(c)
        clique_sum = clique_sum + _product((1 - s[v]) if v in members else s[v] for v in g2.vertices)
    finite_weight = alpha_fin * clique_sum
    weight = finite_weight * _product(chosen[v].weight for v in inf_part)

    # Masses of minimal projections: prod_v t_{i(v)} * prod_v s_v * K(x).
    scale = _product(s.values()) * CliquePolynomial(g2).evaluate(x)
    index_ranges = [range(len(fin[v].eigenvalues)) for v in g2.vertices]
    proj = []
    for idx in itertools.product(*index_ranges):
        t_prod = _product(fin[v].t_values[i] for v, i in zip(g2.vertices, idx))
        proj.append((tuple(zip(g2.vertices, idx)), t_prod * scale))

    density = tuple(_product(combo) for combo in
                    itertools.product(*(fin[v].eigenvalues for v in clique)))

    return AtomReport(
        selection={v: sel[v] for v in g.vertices},
        support_clique=clique,
        infinite_part=inf_part,
        weight=weight,
        finite_weight=finite_weight,
        dimensions={v: chosen[v].dimension for v in g.vertices},
        density_eigenvalues=density,
        minimal_projection_weights=tuple(proj),
        approximate=approximate,
    )


def _product(values):
    acc = Fraction(1)
    for v in values:
        acc = acc * v
    return acc


@dataclass(frozen=True)
class AtomicPart:
    atoms: tuple[AtomReport, ...]

    @property
    def total_mass(self):
        return sum((a.weight for a in self.atoms), Fraction(0))

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def to_json(self) -> dict:
        out = {"atoms": [a.to_json() for a in self.atoms], "total_mass": format_number(self.total_mass)}
        if any(a.approximate for a in self.atoms):
            out["approximate"] = True
        return out


def enumerate_atoms(g: Graph, specs: Mapping[str, VertexAlgebraSpec], cap: int = DEFAULT_SELECTION_CAP,
                    eps: float = DEFAULT_EPS) -> AtomicPart:
    """All type I factor summands of the graph product, one per admissible selection."""
    for v in g.vertices:
        if v not in specs:
            raise DomainError(f"no algebra given for vertex {v!r}")
        specs[v].validate(eps)
    counts = [len(specs[v].summands) for v in g.vertices]
    total = math.prod(counts)
    if total > cap:
        raise CapExceeded(f"{total} summand selections exceed the cap of {cap}")
    atoms = []
    for idx in itertools.product(*(range(c) for c in counts)):
        report = classify_selection(g, specs, dict(zip(g.vertices, idx)), eps)
        if report is not None:
            atoms.append(report)
    return AtomicPart(tuple(atoms))


@dataclass(frozen=True)
class SeriesCrosscheck:
    partial_sum: Fraction
    closed_form: Fraction

    @property
    def relative_gap(self) -> Fraction:
        return abs(self.closed_form - self.partial_sum) / abs(self.closed_form)


def truncated_series_crosscheck(g: Graph, specs: Mapping[str, VertexAlgebraSpec], sel: Mapping[str, int],
                                max_len: int) -> SeriesCrosscheck:
    """Word-series partial sum with letter weights ``s_v - 1`` against ``1 / K_G(1 - 1/s)``.

    Only the finite-dimensional vertices take part.  The closed form is
    meaningful only when the selection gives an atom; otherwise the partial
    sums grow without bound.
    """
    chosen = _selected(specs, g, sel)
    g2 = induced_subgraph(g, [v for v in g.vertices if not chosen[v].infinite])
    s = {v: s_value(chosen[v]) for v in g2.vertices}
    partial = truncated_weighted_sum(g2, {v: s[v] - 1 for v in g2.vertices}, max_len)
    k = CliquePolynomial(g2).evaluate({v: 1 - 1 / s[v] for v in g2.vertices})
    return SeriesCrosscheck(partial, 1 / k if k != 0 else Fraction(0))


def weight_product_form(g: Graph, chosen: Mapping[str, Summand]):
    """Weight in product form ``prod_v alpha_v s_v * K_G(1 - 1/s)``, for cross-checking."""
    s = {v: s_value(chosen[v]) for v in g.vertices}
    k = CliquePolynomial(g).evaluate({v: 1 - 1 / s[v] for v in g.vertices})
    return _product(chosen[v].weight * s[v] for v in g.vertices) * k


def parse_specs(raw: Mapping, vertices: Sequence[str], parse) -> dict:
    """Build specs from the JSON ``algebras`` object; ``parse`` converts number strings."""
    specs = {}
    for v, body in raw.items():
        where = f"algebras.{v}"
        if not isinstance(body, Mapping):
            raise DomainError(f"{where}: expected an object")
        summands = []
        for i, sm in enumerate(body.get("summands", [])):
            loc = f"{where}.summands[{i}]"
            if not isinstance(sm, Mapping) or "weight" not in sm:
                raise DomainError(f"{loc}: expected an object with a weight")
            try:
                weight = parse(sm["weight"])
                if sm.get("infinite", False):
                    summands.append(Summand(weight, (), True))
                else:
                    eig = sm.get("eigenvalues", ["1"])
                    summands.append(Summand(weight, tuple(parse(e) for e in eig)))
            except DomainError as exc:
                raise DomainError(f"{loc}: {exc}") from None
        specs[str(v)] = VertexAlgebraSpec(str(v), tuple(summands), bool(body.get("diffuse", False)))
    for v in specs:
        if v not in vertices:
            raise DomainError(f"algebras: unknown vertex {v!r}")
    return specs
