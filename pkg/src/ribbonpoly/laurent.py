"""Exact multivariate Laurent polynomials with half-integer exponents.

Exponents are stored doubled, so ``t^(1/2)`` is the pair ``("t", 1)`` and
``x^-2`` is ``("x", -4)``.  Coefficients are :class:`fractions.Fraction`.
A monomial is a tuple of ``(name, doubled_exponent)`` pairs sorted by name,
with zero exponents dropped.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Exponent = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()


class LaurentError(ArithmeticError):
    pass


class NonMonomialInverse(LaurentError):
    """Negative or fractional power of a polynomial with more than one term."""


class FractionalExponentOverflow(LaurentError):
    """A substitution produced an exponent outside (1/2)Z."""


class UnassignedVariable(LaurentError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unassigned variable"


class ZeroPolynomial(LaurentError):
    pass


def doubled(exp: Exponent) -> int:
    """Return ``2*exp`` as an int, refusing exponents off the half-integer grid."""
    d = Fraction(exp) * 2
    if d.denominator != 1:
        raise FractionalExponentOverflow(f"exponent {exp} is not a half-integer")
    return int(d)


def make_monomial(exps: Mapping[str, Exponent]) -> Monomial:
    return tuple(sorted((v, doubled(e)) for v, e in exps.items() if e != 0))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for v, e in m2:
        s = acc.get(v, 0) + e
        if s:
            acc[v] = s
        else:
            del acc[v]
    return tuple(sorted(acc.items()))


def _mono_scale(m: Monomial, k: int) -> Monomial:
    return tuple((v, e * k) for v, e in m) if k else ONE_MONOMIAL


def _fmt_exp(d: int) -> str:
    if d % 2 == 0:
        return str(d // 2)
    return f"({d}/2)"


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Immutable Laurent polynomial over Q.

    >>> x = LaurentPoly.var("x")
    >>> str((x + 1) * (x - 1))
    '-1 + 1*x^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "LaurentPoly":
        # trusted constructor: terms already canonical and nonzero
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def var(cls, name: str, exp: Exponent = 1, coef: Rational = 1) -> "LaurentPoly":
        return cls({make_monomial({name: exp}): coef})

    @classmethod
    def monomial(cls, exps: Mapping[str, Exponent], coef: Rational = 1) -> "LaurentPoly":
        return cls({make_monomial(exps): coef})

    @classmethod
    def sum(cls, polys: Iterable["LaurentPoly"]) -> "LaurentPoly":
        acc: Dict[Monomial, Fraction] = {}
        for p in polys:
            for m, c in p._terms.items():
                acc[m] = acc.get(m, 0) + c
        return cls._raw({m: c for m, c in acc.items() if c})

    # -- inspection ---------------------------------------------------------

    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> list[str]:
        return sorted({v for m in self._terms for v, _ in m})

    def coefficient(self, exps: Mapping[str, Exponent]) -> Fraction:
        return self._terms.get(make_monomial(exps), Fraction(0))

    def exponents(self, name: str) -> list[Fraction]:
        """Exponent of ``name`` in every term, in no particular order."""
        return [Fraction(dict(m).get(name, 0), 2) for m in self._terms]

    def min_degree(self, name: str) -> Fraction:
        if not self._terms:
            raise ZeroPolynomial("min_degree of the zero polynomial")
        return min(self.exponents(name))

    def max_degree(self, name: str) -> Fraction:
        if not self._terms:
            raise ZeroPolynomial("max_degree of the zero polynomial")
        return max(self.exponents(name))

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return LaurentPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return LaurentPoly._raw({m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            if not self.is_monomial():
                raise NonMonomialInverse(f"cannot invert {self}")
            ((m, c),) = self._terms.items()
            return LaurentPoly._raw({_mono_scale(m, n): c ** n})
        if self.is_monomial():
            ((m, c),) = self._terms.items()
            return LaurentPoly._raw({_mono_scale(m, n): c ** n})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution and evaluation -----------------------------------------

    def substitute_monomial(self, name: str, exps: Mapping[str, Exponent], coef: Rational = 1) -> "LaurentPoly":
        """Replace ``name`` by ``coef * prod(v**e for v, e in exps)``.

        A half-integer power of ``name`` needs ``coef`` to be 1.
        """
        image = make_monomial(exps)
        coef = Fraction(coef)
        acc: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            md = dict(m)
            k = md.pop(name, 0)
            if k == 0:
                new_m, new_c = m, c
            else:
                scaled = []
                for v, e in image:
                    if (k * e) % 2:
                        raise FractionalExponentOverflow(
                            f"{name}^({k}/2) -> exponent {k * e}/4 of {v} is off the half-integer grid")
                    scaled.append((v, k * e // 2))
                if k % 2:
                    if coef != 1:
                        raise FractionalExponentOverflow(
                            f"half power of coefficient {coef} in substitution for {name}")
                    new_c = c
                else:
                    new_c = c * coef ** (k // 2)
                new_m = _mono_mul(tuple(sorted(md.items())), tuple(sorted(scaled)))
            acc[new_m] = acc.get(new_m, 0) + new_c
        return LaurentPoly._raw({m: c for m, c in acc.items() if c})

    def substitute(self, mapping: Mapping[str, "LaurentPoly | Rational"]) -> "LaurentPoly":
        """Simultaneously replace variables by polynomials.

        Monomial images accept any exponent the grid allows; images with
        several terms only accept non-negative integer exponents.
        """
        images = {v: (p if isinstance(p, LaurentPoly) else LaurentPoly.const(p)) for v, p in mapping.items()}
        cache: Dict[Tuple[str, int], LaurentPoly] = {}

        def power(v: str, k: int) -> LaurentPoly:
            key = (v, k)
            if key not in cache:
                img = images[v]
                if k % 2 == 0:
                    cache[key] = img ** (k // 2)
                elif img.is_monomial():
                    ((m, c),) = img._terms.items()
                    if c != 1:
                        raise FractionalExponentOverflow(f"half power of coefficient {c} in image of {v}")
                    cache[key] = LaurentPoly._raw({_half_scale(m, k, v): Fraction(1)})
                else:
                    raise NonMonomialInverse(f"half power of non-monomial image of {v}")
            return cache[key]

        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            kept = []
            term = None
            for v, k in m:
                if v in images:
                    f = power(v, k)
                    term = f if term is None else term * f
                else:
                    kept.append((v, k))
            base = LaurentPoly._raw({tuple(kept): c})
            term = base if term is None else base * term
            for mm, cc in term._terms.items():
                out[mm] = out.get(mm, 0) + cc
        return LaurentPoly._raw({m: c for m, c in out.items() if c})

    def evaluate(self, point: "RationalPoint") -> Fraction:
        powers: Dict[Tuple[str, int], Fraction] = {}
        total = Fraction(0)
        for m, c in self._terms.items():
            val = c
            for v, k in m:
                key = (v, k)
                pw = powers.get(key)
                if pw is None:
                    pw = powers[key] = point.power(v, k)
                val *= pw
            total += val
        return total

    # -- text -----------------------------------------------------------------

    def sorted_terms(self) -> list[Tuple[Monomial, Fraction]]:
        names = self.variables()

        def key(item):
            md = dict(item[0])
            return tuple(md.get(v, 0) for v in names)

        return sorted(self._terms.items(), key=key)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            body = _fmt_coef(abs(c))
            for v, d in m:
                body += f"*{v}" if d == 2 else f"*{v}^{_fmt_exp(d)}"
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _half_scale(m: Monomial, k: int, v: str) -> Monomial:
    scaled = []
    for w, e in m:
        if (k * e) % 2:
            raise FractionalExponentOverflow(f"odd power of {v} sends {w} off the half-integer grid")
        scaled.append((w, k * e // 2))
    return tuple(sorted(scaled))


ONE = LaurentPoly._raw({ONE_MONOMIAL: Fraction(1)})
ZERO = LaurentPoly._raw({})


class RationalPoint:
    """An exact evaluation point.

    ``roots`` gives the value of ``v^(1/2)`` for each variable, so every
    half-integer power is rational.  ``values`` gives ``v`` itself and may
    only be used for integer powers.
    """

    __slots__ = ("roots", "values")

    def __init__(self, roots: Mapping[str, Rational] | None = None, values: Mapping[str, Rational] | None = None):
        self.roots = {v: Fraction(x) for v, x in (roots or {}).items()}
        self.values = {v: Fraction(x) for v, x in (values or {}).items()}
        for v, x in list(self.roots.items()) + list(self.values.items()):
            if x == 0:
                raise ValueError(f"assigned value of {v} must be nonzero")

    @classmethod
    def from_values(cls, values: Mapping[str, Rational]) -> "RationalPoint":
        return cls(values=values)

    def power(self, v: str, k: int) -> Fraction:
        """Value of ``v^(k/2)``."""
        if v in self.roots:
            return self.roots[v] ** k
        if v in self.values:
            if k % 2:
                raise UnassignedVariable(f"{v}^({k}/2) needs a square root of {v}")
            return self.values[v] ** (k // 2)
        raise UnassignedVariable(f"no value assigned to {v}")

    def __repr__(self):
        return f"RationalPoint(roots={self.roots!r}, values={self.values!r})"


# functional spellings of the ring operations

def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def neg(p: LaurentPoly) -> LaurentPoly:
    return -p


def int_pow(p: LaurentPoly, n: int) -> LaurentPoly:
    return p ** n


def substitute_monomial(p: LaurentPoly, name: str, exps: Mapping[str, Exponent], coef: Rational = 1) -> LaurentPoly:
    return p.substitute_monomial(name, exps, coef)


def evaluate(p: LaurentPoly, point: RationalPoint) -> Fraction:
    return p.evaluate(point)


def min_degree(p: LaurentPoly, name: str) -> Fraction:
    return p.min_degree(name)


def var(name: str, exp: Exponent = 1, coef: Rational = 1) -> LaurentPoly:
    return LaurentPoly.var(name, exp, coef)
