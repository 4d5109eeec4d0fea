"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a mapping from monomials to nonzero Fraction coefficients.
A monomial is stored as a tuple of (variable, exponent) pairs, sorted by
variable name, with zero exponents omitted.  The empty tuple is the constant
monomial.  This representation is canonical: two MultiPoly objects are equal
iff they represent the same mathematical polynomial.

Variables are plain strings.  By convention the rest of the package uses
"x", "y", "z", "q", "w", "k", "theta" for global polynomial variables and
"a.<edge>" / "b.<edge>" for the per-edge alpha/beta variables.

No floating point is used anywhere.  Division exists only as exact monomial
division (`divexact_monomial`) and exact rational coefficient arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple[tuple[str, int], ...]

Rational = int | Fraction


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: dict[str, int] = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in exps.items() if e != 0))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class MultiPoly:
    """Immutable exact multivariate polynomial with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = Fraction(coeff)
                if c != 0:
                    clean[mono] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> MultiPoly:
        return MultiPoly()

    @staticmethod
    def one() -> MultiPoly:
        return MultiPoly({(): 1})

    @staticmethod
    def const(c: Rational) -> MultiPoly:
        return MultiPoly({(): Fraction(c)})

    @staticmethod
    def var(name: str, power: int = 1) -> MultiPoly:
        if not name:
            raise ValueError("variable name must be nonempty")
        if power < 0:
            raise ValueError("negative exponent not representable")
        if power == 0:
            return MultiPoly.one()
        return MultiPoly({((name, power),): 1})

    @staticmethod
    def from_exponents(exps: Mapping[str, int], coeff: Rational = 1) -> MultiPoly:
        if any(e < 0 for e in exps.values()):
            raise ValueError("negative exponent not representable")
        mono = tuple(sorted((v, e) for v, e in exps.items() if e > 0))
        return MultiPoly({mono: Fraction(coeff)})

    # -- ring structure ------------------------------------------------

    def __add__(self, other: MultiPoly | Rational) -> MultiPoly:
        other = _promote(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: MultiPoly | Rational) -> MultiPoly:
        return self + (-_promote(other))

    def __rsub__(self, other: MultiPoly | Rational) -> MultiPoly:
        return _promote(other) + (-self)

    def __mul__(self, other: MultiPoly | Rational) -> MultiPoly:
        other = _promote(other)
        if not self.terms or not other.terms:
            return MultiPoly.zero()
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc = MultiPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash(frozenset(self.terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"MultiPoly({self.canonical_string()})"

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for mono in self.terms for v, _ in mono}

    def total_degree(self) -> int:
        """Max total degree over monomials; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def degree_in(self, var: str) -> int:
        deg = 0
        for mono in self.terms:
            for v, e in mono:
                if v == var:
                    deg = max(deg, e)
        return deg

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    # -- the operations the rest of the package is built on -------------

    def substitute(self, bindings: Mapping[str, MultiPoly | Rational]) -> MultiPoly:
        """Substitute polynomials for variables (ring homomorphism).

        Variables absent from `bindings` are left alone.
        """
        subs = {v: _promote(p) for v, p in bindings.items()}
        total = MultiPoly.zero()
        for mono, coeff in self.terms.items():
            term = MultiPoly.const(coeff)
            for v, e in mono:
                if v in subs:
                    term = term * subs[v] ** e
                else:
                    term = term * MultiPoly.var(v, e)
            total = total + term
        return total

    def coefficient_of(self, var: str, power: int) -> MultiPoly:
        """Coefficient polynomial of var**power (var removed from the result)."""
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            if exps.pop(var, 0) == power:
                rest = tuple(sorted(exps.items()))
                out[rest] = out.get(rest, Fraction(0)) + coeff
        return MultiPoly(out)

    def lowest_homogeneous_part(self, vars: Iterable[str]) -> MultiPoly:
        """Sum of terms of minimal total degree in the given variables."""
        if not self.terms:
            raise ValueError("lowest_homogeneous_part of the zero polynomial")
        vset = set(vars)
        deg = {m: sum(e for v, e in m if v in vset) for m in self.terms}
        low = min(deg.values())
        return MultiPoly({m: c for m, c in self.terms.items() if deg[m] == low})

    def eval_rational(self, bindings: Mapping[str, Rational]) -> Fraction:
        """Evaluate at an all-variables-bound rational point."""
        missing = self.variables() - set(bindings)
        if missing:
            raise ValueError(f"unbound variables in evaluation: {sorted(missing)}")
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            val = coeff
            for v, e in mono:
                val *= Fraction(bindings[v]) ** e
            total += val
        return total

    def divexact_monomial(self, exps: Mapping[str, int]) -> MultiPoly:
        """Divide by a monomial, erroring if any term is not divisible."""
        div = {v: e for v, e in exps.items() if e != 0}
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            cur = dict(mono)
            for v, e in div.items():
                have = cur.get(v, 0)
                if have < e:
                    raise ValueError(f"monomial division by {v}^{e} is inexact")
                if have == e:
                    del cur[v]
                else:
                    cur[v] = have - e
            out[tuple(sorted(cur.items()))] = coeff
        return MultiPoly(out)

    def canonical_string(self) -> str:
        """Deterministic rendering; the golden-file contract of the CLI.

        Monomials are ordered by descending total degree, then
        lexicographically by their (variable, exponent) sequence.  Examples:
        "0", "x^2 + x + y", "x*y - x - y + 1", "1/4*theta^2".
        """
        if not self.terms:
            return "0"
        keyed = sorted(self.terms.items(), key=lambda kv: (-_mono_degree(kv[0]), kv[0]))
        pieces: list[str] = []
        for i, (mono, coeff) in enumerate(keyed):
            mag = _term_string(mono, abs(coeff))
            if i == 0:
                pieces.append(mag if coeff > 0 else "-" + mag)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + mag)
        return "".join(pieces)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical_string order."""
        return sorted(self.terms.items(), key=lambda kv: (-_mono_degree(kv[0]), kv[0]))


def _term_string(mono: Monomial, coeff: Fraction) -> str:
    if not mono:
        return str(coeff)
    body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
    if coeff == 1:
        return body
    return f"{coeff}*{body}"


def _promote(p: MultiPoly | Rational) -> MultiPoly:
    if isinstance(p, MultiPoly):
        return p
    if isinstance(p, (int, Fraction)):
        return MultiPoly.const(p)
    raise TypeError(f"cannot coerce {type(p).__name__} to MultiPoly")


ZERO = MultiPoly.zero()
ONE = MultiPoly.one()
