"""Exact rational arithmetic helpers, univariate polynomials and truncated power series.

Rationals are plain :class:`fractions.Fraction` values.  Polynomials and
series keep their coefficients in ascending degree order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DomainError

DEFAULT_PRECISION = Fraction(1, 2**40)
DEFAULT_EPS = 1e-9


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, a decimal string or an int into a Fraction."""
    if isinstance(value, bool):
        raise DomainError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        raise DomainError(f"floating value {value!r} not allowed in exact mode; use a 'p/q' string")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise DomainError(f"not a rational: {value!r}")


def parse_real(value) -> float:
    """Float-mode parser: accepts everything :func:`parse_rational` does plus floats."""
    if isinstance(value, bool):
        raise DomainError(f"not a number: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            try:
                return float(value)
            except ValueError:
                pass
    raise DomainError(f"not a number: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_number(value) -> str | float:
    """JSON form of a value: exact rationals as strings, floats rounded to 12 digits."""
    if isinstance(value, float):
        return float(f"{value:.12g}")
    return format_rational(value)


def is_positive(value, eps: float = DEFAULT_EPS) -> bool:
    """Strict positivity; floats must clear ``eps`` to count."""
    if isinstance(value, float):
        return value > eps
    return value > 0


def is_zero(value, eps: float = DEFAULT_EPS) -> bool:
    if isinstance(value, float):
        return abs(value) <= eps
    return value == 0


# ---------------------------------------------------------------------------
# Univariate polynomials


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with exact rational coefficients, ascending degree."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> Polynomial:
        return self * (1 / self.leading) if self.coeffs else self

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = abs(c)
            body = format_rational(mag) if (mag != 1 or not mono) else ""
            term = body + ("*" if body and mono else "") + mono
            parts.append(("-" if c < 0 else "+", term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    g = poly_gcd(p, p.derivative())
    return p // g if g.degree > 0 else p


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def sign_variations(seq: Sequence[Polynomial], t: Fraction) -> int:
    signs = [s for s in (q(t) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


@dataclass(frozen=True)
class IsolationInterval:
    """Closed interval [lo, hi] known to contain a root; ``lo == hi`` means the root is exact."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, t) -> bool:
        return self.lo <= t <= self.hi

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}


class _RootCounter:
    """Counts distinct real roots of a polynomial in half-open intervals (a, b]."""

    def __init__(self, p: Polynomial):
        if p.is_zero():
            raise DomainError("zero polynomial has no isolated roots")
        self.poly = squarefree_part(p)
        self.seq = sturm_sequence(self.poly)

    def count(self, a: Fraction, b: Fraction) -> int:
        # Sturm's theorem on (a, b]; the square-free part keeps it valid when b is a root,
        # and callers never pass a root as ``a``.
        return sign_variations(self.seq, a) - sign_variations(self.seq, b)


def count_roots(p: Polynomial, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero():
        raise DomainError("zero polynomial")
    # Shift away from a root sitting exactly at ``lo``: count on (lo, hi] = count on [lo, hi] - [p(lo)=0].
    if p(lo) == 0:
        q = p // Polynomial([-lo, 1])
        while q(lo) == 0:
            q = q // Polynomial([-lo, 1])
        return count_roots(q, lo, hi)
    if hi <= lo:
        return 0
    return _RootCounter(p).count(lo, hi)


def smallest_positive_root(p: Polynomial, upper, precision=DEFAULT_PRECISION) -> Optional[IsolationInterval]:
    """Isolate the smallest root of ``p`` in ``(0, upper]``.

    Returns ``None`` when there is none.  Otherwise the returned interval has
    width at most ``precision``, contains the root, and ``p`` has no root in
    ``(0, lo]``.
    """
    upper, precision = Fraction(upper), Fraction(precision)
    if p.is_zero():
        raise DomainError("zero polynomial has no isolated roots")
    if upper <= 0 or precision <= 0:
        raise DomainError("upper bound and precision must be positive")
    # Strip roots at 0; they are not in (0, upper].
    while p.coeffs and p.coeffs[0] == 0:
        p = Polynomial(p.coeffs[1:])
    if p.degree <= 0:
        return None
    counter = _RootCounter(p)
    lo, hi = Fraction(0), upper
    if counter.count(lo, hi) == 0:
        return None
    sf = counter.poly
    while hi - lo > precision:
        mid = (lo + hi) / 2
        n_left = counter.count(lo, mid)
        if n_left == 0:
            lo = mid
        elif n_left == 1 and sf(mid) == 0:
            return IsolationInterval(mid, mid)
        else:
            hi = mid
    if sf(hi) == 0 and counter.count(lo, hi) == 1:
        return IsolationInterval(hi, hi)
    return IsolationInterval(lo, hi)


# ---------------------------------------------------------------------------
# Truncated power series


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in one variable known exactly through ``t**order``."""

    coeffs: tuple[Fraction, ...]
    order: int

    def __init__(self, coeffs: Iterable, order: Optional[int] = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise DomainError("series order must be nonnegative")
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int) -> TruncatedSeries:
        return cls(p.coeffs, order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _common(self, other: TruncatedSeries) -> int:
        return min(self.order, other.order)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = self._common(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def compose(self, inner: TruncatedSeries) -> TruncatedSeries:
        """``self(inner(t))`` for ``inner`` with zero constant term."""
        if inner.coeffs[0] != 0:
            raise DomainError("inner series must have zero constant term")
        n = self._common(inner)
        acc = TruncatedSeries([0], n)
        power = TruncatedSeries([1], n)
        for k, c in enumerate(self.coeffs[: n + 1]):
            if k:
                power = power * inner
            if c:
                acc = acc + power * c
        return acc

    def __str__(self) -> str:
        terms = [f"{format_rational(c)}*t^{k}" for k, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O(t^{self.order + 1})"


def series_reciprocal(s: TruncatedSeries, order: Optional[int] = None) -> TruncatedSeries:
    """``r`` with ``s * r = 1 + O(t**(order+1))``."""
    if order is None:
        order = s.order
    if order > s.order:
        raise DomainError(f"series known only through order {s.order}")
    c0 = s.coeffs[0]
    if c0 == 0:
        raise DomainError("series with zero constant term has no reciprocal")
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / c0
    for k in range(1, order + 1):
        acc = sum((s.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
        out[k] = -acc / c0
    return TruncatedSeries(out, order)


def _mobius_series(sign: int, order: int) -> TruncatedSeries:
    # t/(1 + t) for sign=+1, t/(1 - t) for sign=-1
    return TruncatedSeries([0] + [(-sign) ** (k - 1) for k in range(1, order + 1)], order)


def series_substitute_t_over_one_plus_t(s: TruncatedSeries, order: Optional[int] = None) -> TruncatedSeries:
    """``s(t / (1 + t))`` through ``order``."""
    order = s.order if order is None else order
    return s.truncate(order).compose(_mobius_series(+1, order))


def series_substitute_t_over_one_minus_t(s: TruncatedSeries, order: Optional[int] = None) -> TruncatedSeries:
    """``s(t / (1 - t))`` through ``order``; inverse of :func:`series_substitute_t_over_one_plus_t`."""
    order = s.order if order is None else order
    return s.truncate(order).compose(_mobius_series(-1, order))

