"""The dual X = H* through finite-support elements in the dual basis t_I.

An element may carry a truncation degree N: coefficients of t_I with
|I| > N are then unknown, and any operation that would need them raises
:class:`TruncationInsufficient`.
"""
from __future__ import annotations

from fractions import Fraction

from .hopf import HopfElement, add_into, clean


class TruncationInsufficient(ArithmeticError):
    def __init__(self, needed, available):
        super().__init__(f"truncation degree {available} too small, need at least {needed}")
        self.needed = needed
        self.available = available


class DualElement:
    __slots__ = ("alg", "terms", "truncation")

    def __init__(self, alg, terms, truncation=None):
        self.alg = alg
        terms = clean(terms)
        if truncation is not None:
            terms = {i: c for i, c in terms.items() if sum(i) <= truncation}
        self.terms = terms
        self.truncation = truncation

    @classmethod
    def basis(cls, alg, index, coeff=1):
        return cls(alg, {tuple(index): Fraction(coeff)})

    def __repr__(self):
        body = " + ".join(f"{c}*t{i}" for i, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))) or "0"
        return body if self.truncation is None else f"{body} (+ O(deg>{self.truncation}))"

    def __eq__(self, other):
        return (isinstance(other, DualElement) and self.terms == other.terms
                and self.truncation == other.truncation)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.truncation))

    def __bool__(self):
        return bool(self.terms) or self.truncation is not None

    def is_zero(self):
        return not self.terms

    def max_degree(self):
        return max((sum(i) for i in self.terms), default=-1)

    def min_degree(self):
        return min((sum(i) for i in self.terms), default=None)

    def _meet(self, other):
        if self.truncation is None:
            return other.truncation
        if other.truncation is None:
            return self.truncation
        return min(self.truncation, other.truncation)

    def __add__(self, other):
        return DualElement(self.alg, add_into(dict(self.terms), other.terms), self._meet(other))

    def __neg__(self):
        return DualElement(self.alg, {k: -v for k, v in self.terms.items()}, self.truncation)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, DualElement):
            return x_mul(self, other)
        c = Fraction(other)
        return DualElement(self.alg, {k: c * v for k, v in self.terms.items()}, self.truncation)

    __rmul__ = __mul__

    def truncate(self, degree):
        limit = degree if self.truncation is None else min(degree, self.truncation)
        return DualElement(self.alg, self.terms, limit)

    def coefficient(self, index):
        if self.truncation is not None and sum(index) > self.truncation:
            raise TruncationInsufficient(sum(index), self.truncation)
        return self.terms.get(tuple(index), Fraction(0))


def pair(x, h):
    """<x, h> for a dual element x and h in H."""
    terms = h.terms if isinstance(h, HopfElement) else h
    if x.truncation is not None:
        deg = max((sum(i) for i in terms), default=-1)
        if deg > x.truncation:
            raise TruncationInsufficient(deg, x.truncation)
    return sum((c * x.terms.get(i, 0) for i, c in terms.items()), Fraction(0))


def x_mul(x, y):
    """Product in X: t_J t_K = t_{J+K}."""
    out = {}
    for i, a in x.terms.items():
        for j, b in y.terms.items():
            add_into(out, {tuple(p + q for p, q in zip(i, j)): a * b})
    limits = []
    for u, v in ((x, y), (y, x)):
        if u.truncation is not None:
            low = v.min_degree()
            if low is None and v.truncation is None:
                continue
            limits.append(u.truncation + (low if low is not None else v.truncation + 1))
    return DualElement(x.alg, out, min(limits) if limits else None)


def _exact_bound(x, shift):
    """Degree range of a transformed element when finiteness is guaranteed."""
    if x.alg.abelian and x.truncation is None:
        return x.max_degree() + shift
    return None


def act(h, x, side="left", cutoff=None):
    """Left action <hx, f> = <x, S(h) f> or right action <xh, f> = <x, f S(h)>.

    Over an abelian d with exact x the result is exact.  Otherwise the
    support may be infinite and the result is truncated at ``cutoff``
    (default: max degree of x plus deg h).
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    alg = x.alg
    sh = alg.antipode_terms(h.terms)
    deg_h = h.degree()
    if deg_h < 0:
        return DualElement(alg, {}, x.truncation)
    bound = _exact_bound(x, deg_h)
    truncation = None
    if bound is None:
        base = x.max_degree() + deg_h if cutoff is None else cutoff
        if x.truncation is not None:
            base = min(base, x.truncation - deg_h)
            if base < 0:
                raise TruncationInsufficient(deg_h, x.truncation)
        bound = truncation = base
    elif cutoff is not None and cutoff < bound:
        bound = truncation = cutoff
    out = {}
    for j in alg.monomials(bound):
        basis = {j: Fraction(1)}
        prod = alg.mul_terms(sh, basis) if side == "left" else alg.mul_terms(basis, sh)
        val = pair(x, prod)
        if val:
            out[j] = val
    return DualElement(alg, out, truncation)


def x_antipode(x, cutoff=None):
    """<S(x), h> = <x, S(h)>."""
    alg = x.alg
    bound = _exact_bound(x, 0)
    truncation = None
    if bound is None:
        bound = x.max_degree() if cutoff is None else cutoff
        if x.truncation is not None:
            bound = min(bound, x.truncation)
        truncation = bound
    elif cutoff is not None and cutoff < bound:
        bound = truncation = cutoff
    out = {}
    for j in alg.monomials(bound):
        val = pair(x, alg.antipode_mono(j))
        if val:
            out[j] = val
    return DualElement(alg, out, truncation)


def x_coproduct_truncated(x, degree):
    """Table {(J, K): <x, D^(J) D^(K)>} over |J|, |K| <= degree."""
    alg = x.alg
    if x.truncation is not None:
        raise ValueError("coproduct needs an exact element")
    mons = alg.monomials(degree)
    table = {}
    top = x.max_degree()
    for j in mons:
        for k in mons:
            if alg.abelian and sum(j) + sum(k) > top:
                continue
            val = pair(x, alg.mul_mono(j, k))
            if val:
                table[(j, k)] = val
    return table
