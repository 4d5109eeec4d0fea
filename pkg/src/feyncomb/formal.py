"""Formal renormalization expressions: sums of products of Phi and T atoms.

A FormalAmplitude is kept in normal form: an integer combination of
products, where each product multiplies Phi(<graph label>) atoms and
T[...] atoms.  The projection T is linear and treats previously produced
counterterms as scalars: T applied to a sum distributes, and any T[...]
factor inside the argument is pulled out front,

    T[ c * Phi(a) * T[x] * ... ]  ->  c * T[x] * ... * T[ Phi(a) * ... ].

That pull-out encodes the counterterm factorization rule the subtraction
operator relies on, and it is exactly what makes the forest formula and the
twisted-antipode recursion produce identical normal forms.  Beyond this, T
atoms are opaque: they are keyed by the normal form of their argument.
"""

from __future__ import annotations

from typing import Iterable

# An atom is ("phi", label) or ("T", nf) where nf is a canonical normal form:
# a tuple of (term, coeff) pairs, each term a tuple of atoms.
Atom = tuple
Term = tuple


def _atom_text(atom: Atom) -> str:
    if atom[0] == "phi":
        return f"Phi({atom[1]})"
    return "T[" + _nf_text(atom[1]) + "]"


def _term_text(term: Term, coeff: int) -> str:
    if not term:
        return str(coeff)
    body = "*".join(_atom_text(a) for a in term)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}*{body}"


def _nf_text(nf: tuple) -> str:
    if not nf:
        return "0"
    pieces = []
    for i, (term, coeff) in enumerate(nf):
        mag = _term_text(term, abs(coeff))
        if i == 0:
            pieces.append(mag if coeff > 0 else "-" + mag)
        else:
            pieces.append((" + " if coeff > 0 else " - ") + mag)
    return "".join(pieces)


def _sort_term(atoms: Iterable[Atom]) -> Term:
    return tuple(sorted(atoms, key=_atom_text))


def _canonical_nf(terms: dict[Term, int]) -> tuple:
    items = [(t, c) for t, c in terms.items() if c != 0]
    items.sort(key=lambda tc: tuple(_atom_text(a) for a in tc[0]))
    return tuple(items)


class FormalAmplitude:
    """Integer combination of Phi/T products, always in normal form."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Term, int] | None = None):
        clean = {t: c for t, c in (terms or {}).items() if c != 0}
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FormalAmplitude is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> FormalAmplitude:
        return FormalAmplitude()

    @staticmethod
    def one() -> FormalAmplitude:
        return FormalAmplitude({(): 1})

    @staticmethod
    def integer(n: int) -> FormalAmplitude:
        return FormalAmplitude({(): n})

    @staticmethod
    def phi(label: str) -> FormalAmplitude:
        return FormalAmplitude({(("phi", label),): 1})

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: FormalAmplitude) -> FormalAmplitude:
        terms = dict(self.terms)
        for t, c in other.terms.items():
            terms[t] = terms.get(t, 0) + c
        return FormalAmplitude(terms)

    def __neg__(self) -> FormalAmplitude:
        return FormalAmplitude({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: FormalAmplitude) -> FormalAmplitude:
        return self + (-other)

    def __mul__(self, other: FormalAmplitude | int) -> FormalAmplitude:
        if isinstance(other, int):
            return FormalAmplitude({t: c * other for t, c in self.terms.items()})
        out: dict[Term, int] = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = _sort_term(t1 + t2)
                out[t] = out.get(t, 0) + c1 * c2
        return FormalAmplitude(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalAmplitude):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.normal_form())

    def __repr__(self) -> str:
        return f"FormalAmplitude({self.render()})"

    def is_zero(self) -> bool:
        return not self.terms

    # -- the projection ----------------------------------------------------------

    def project(self) -> FormalAmplitude:
        """Apply T to this amplitude (linear, counterterms pulled out)."""
        out: dict[Term, int] = {}
        for term, coeff in self.terms.items():
            phis = tuple(a for a in term if a[0] == "phi")
            ts = tuple(a for a in term if a[0] == "T")
            inner = _canonical_nf({phis: 1})
            new_term = _sort_term(ts + (("T", inner),))
            out[new_term] = out.get(new_term, 0) + coeff
        return FormalAmplitude(out)

    # -- canonical output ------------------------------------------------------------

    def normal_form(self) -> tuple:
        return _canonical_nf(self.terms)

    def render(self) -> str:
        return _nf_text(self.normal_form())


def project(amp: FormalAmplitude) -> FormalAmplitude:
    return amp.project()
