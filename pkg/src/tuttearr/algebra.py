"""Sparse exact polynomials, interpolation, and the Tutte/coboundary transforms."""
from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import DegreeOverflow, InexactDivision, NegativeCount


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Polynomial with exact (int or Fraction) coefficients in named variables.

    ``terms`` maps exponent tuples to nonzero coefficients. Instances are
    immutable by convention; every operation returns a new polynomial.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Rational] | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            k = len(self.vars)
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != k:
                        raise ValueError(f"exponent {e} does not match variables {self.vars}")
                    clean[e] = _norm(c)
        self.terms = clean

    # constructors

    @classmethod
    def const(cls, c, vars: Sequence[str]) -> "Poly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "Poly":
        vars = tuple(vars)
        e = tuple(int(v == name) for v in vars)
        return cls(vars, {e: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, var: str) -> "Poly":
        """Univariate polynomial from ascending coefficients."""
        return cls((var,), {(i,): c for i, c in enumerate(coeffs)})

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                if not other.terms or other.is_constant():
                    return Poly.const(other.constant_term(), self.vars)
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return Poly.const(other, self.vars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c):
        """Division by a scalar."""
        return Poly(self.vars, {e: Fraction(v) / c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.vars != self.vars and not (self.is_constant() and other.is_constant()):
                return False
            if self.is_constant() and other.is_constant():
                return self.constant_term() == other.constant_term()
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), 0)

    def coeff(self, *exp: int):
        return self.terms.get(tuple(exp), 0)

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        k = self.vars.index(var)
        return max(e[k] for e in self.terms)

    def coeffs(self) -> list:
        """Ascending coefficient list of a univariate polynomial."""
        if len(self.vars) != 1:
            raise ValueError("coeffs() needs a univariate polynomial")
        d = self.degree()
        return [self.terms.get((i,), 0) for i in range(d + 1)]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    # evaluation / substitution

    def __call__(self, *values):
        return self.evaluate(dict(zip(self.vars, values)))

    def evaluate(self, values: Mapping[str, object]):
        """Substitute numbers (or polynomials) for some or all variables.

        With numbers for every variable the result is a number; otherwise the
        result is a polynomial in the remaining variables.
        """
        rest = [v for v in self.vars if v not in values]
        if not rest:
            total = 0
            for e, c in self.terms.items():
                term = c
                for v, k in zip(self.vars, e):
                    if k:
                        term = term * values[v] ** k
                total = total + term
            return _norm(total) if not isinstance(total, Poly) else total
        keep = [self.vars.index(v) for v in rest]
        out: dict = {}
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                if k and v in values:
                    term = term * values[v] ** k
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, 0) + term
        return Poly(rest, out)

    def compose(self, subs: Mapping[str, "Poly"], target_vars: Sequence[str]) -> "Poly":
        """Replace each variable by a polynomial in ``target_vars``."""
        target_vars = tuple(target_vars)
        images = [_embed(subs[v], target_vars) for v in self.vars]
        cache: list[dict] = [{0: Poly.const(1, target_vars)} for _ in self.vars]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = power(i, k - 1) * images[i]
            return cache[i][k]

        total = Poly(target_vars)
        for e, c in self.terms.items():
            term = Poly.const(c, target_vars)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def rename(self, vars: Sequence[str]) -> "Poly":
        return Poly(vars, self.terms)

    # serialization

    def sorted_terms(self) -> list[tuple[tuple, Rational]]:
        return sorted(self.terms.items(), reverse=True)

    def to_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Poly":
        return cls(d["vars"], {tuple(t["exp"]): _norm(Fraction(t["coeff"])) for t in d["terms"]})

    @classmethod
    def from_json(cls, text: str) -> "Poly":
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return f"Poly({self.vars!r}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _embed(p, target: tuple[str, ...]) -> Poly:
    if not isinstance(p, Poly):
        return Poly.const(p, target)
    if p.vars == target:
        return p
    if p.is_constant():
        return Poly.const(p.constant_term(), target)
    raise ValueError(f"cannot embed polynomial in {p.vars} into {target}")


def divide_by_shift(p: Poly, var: str, times: int = 1) -> Poly:
    """Exact division by ``(var - 1)**times`` via repeated synthetic division."""
    k = p.vars.index(var)
    for _ in range(times):
        groups: dict[tuple, dict[int, object]] = {}
        for e, c in p.terms.items():
            rest = e[:k] + e[k + 1:]
            groups.setdefault(rest, {})[e[k]] = c
        out = {}
        for rest, col in groups.items():
            d = max(col)
            # synthetic division by (v - 1), from the top degree down
            carry = 0
            quot = {}
            for j in range(d, -1, -1):
                carry = carry + col.get(j, 0)
                if j > 0:
                    quot[j - 1] = carry
            if carry != 0:
                raise InexactDivision(f"{p} is not divisible by ({var} - 1)")
            for j, c in quot.items():
                out[rest[:k] + (j,) + rest[k:]] = c
        p = Poly(p.vars, out)
    return p


def interpolate(points: Iterable[tuple[Rational, Rational]], max_degree: int, var: str = "q") -> Poly:
    """Unique polynomial of degree < len(points) through ``points`` (Newton form).

    Raises DegreeOverflow when that polynomial has degree above ``max_degree``.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if len(pts) < max_degree + 1:
        raise ValueError(f"need at least {max_degree + 1} points, got {len(pts)}")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("abscissas must be distinct")
    dd = [y for _, y in pts]
    n = len(pts)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    # expand Newton form by Horner in monomial basis
    coeffs = [Fraction(0)]
    for i in range(n - 1, -1, -1):
        # coeffs = coeffs * (q - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs
        for j in range(len(coeffs)):
            shifted[j] -= xs[i] * coeffs[j]
        shifted[0] += dd[i]
        coeffs = shifted
    result = Poly.from_coeffs(coeffs, var)
    if result.degree() > max_degree:
        raise DegreeOverflow(f"interpolant has degree {result.degree()} > {max_degree}")
    return result


QT = ("q", "t")
XY = ("x", "y")


def tutte_from_coboundary(chibar: Poly, r: int) -> Poly:
    """T(x, y) = chibar((x-1)(y-1), y) / (y-1)^r."""
    x = Poly.var("x", XY)
    y = Poly.var("y", XY)
    sub = chibar.compose({chibar.vars[0]: (x - 1) * (y - 1), chibar.vars[1]: y}, XY)
    return divide_by_shift(sub, "y", r)


def coboundary_from_tutte(tutte: Poly, r: int) -> Poly:
    """chibar(q, t) = (t-1)^r T((q+t-1)/(t-1), t), expanded without fractions."""
    q = Poly.var("q", QT)
    t = Poly.var("t", QT)
    top = q + t - 1
    low = t - 1
    out = Poly(QT)
    for (i, j), c in tutte.terms.items():
        if i > r:
            raise InexactDivision(f"x-degree {i} exceeds rank {r}")
        out = out + c * top ** i * low ** (r - i) * t ** j
    return out


def characteristic_from_coboundary(chibar: Poly, n: int, r: int) -> Poly:
    """chi(q) = q^(n-r) chibar(q, 0)."""
    at0 = chibar.evaluate({chibar.vars[1]: 0})
    if not isinstance(at0, Poly):
        at0 = Poly.const(at0, (chibar.vars[0],))
    return at0 * Poly((at0.vars[0],), {(n - r,): 1})


def region_counts(chi: Poly, n: int, r: int) -> tuple[int, int]:
    """Zaslavsky counts ``(regions, relatively bounded regions)``.

    Bounded regions are counted on the essentialization, chi(q)/q^(n-r).
    """
    regions = (-1) ** n * chi(-1)
    shift = Poly((chi.vars[0],), {(n - r,): 1})
    ess = {(e[0] - (n - r),): c for e, c in chi.terms.items()}
    if any(e[0] < 0 for e in ess):
        raise InexactDivision(f"{chi} is not divisible by {shift}")
    bounded = (-1) ** r * Poly(chi.vars, ess)(1)
    for name, v in (("regions", regions), ("bounded", bounded)):
        if not isinstance(v, int) or v < 0:
            raise NegativeCount(f"{name} = {v} is not a nonnegative integer")
    return regions, bounded
