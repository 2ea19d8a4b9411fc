"""Exact arithmetic in the enveloping algebra U(d) of a finite-dimensional Lie algebra.

Elements are sparse rational combinations of divided-power PBW monomials
``D^(I) = D_1^{i_1} ... D_N^{i_N} / (i_1! ... i_N!)`` with generators in the
normal order ``D_1 < D_2 < ... < D_N``.  Generator indices are 0-based.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

MultiIndex = tuple


def add_into(target, source, scale=1):
    """Accumulate ``scale * source`` into ``target``, dropping zeros."""
    for key, value in source.items():
        total = target.get(key, 0) + (value if scale == 1 else scale * value)
        if total:
            target[key] = total
        else:
            target.pop(key, None)
    return target


def clean(terms):
    return {k: Fraction(v) for k, v in terms.items() if v}


def compositions(index, parts):
    """All ways to write a multi-index as an ordered sum of ``parts`` multi-indices."""
    per_coord = []
    for e in index:
        splits = [c for c in itertools.product(range(e + 1), repeat=parts - 1) if sum(c) <= e]
        per_coord.append([c + (e - sum(c),) for c in splits])
    for choice in itertools.product(*per_coord):
        yield tuple(tuple(choice[k][p] for k in range(len(index))) for p in range(parts))


def monomials_upto(dim, max_degree):
    """Multi-indices of total degree <= max_degree, ordered by degree."""
    out = []
    for d in range(max_degree + 1):
        out.extend(monomials_of_degree(dim, d))
    return out


def monomials_of_degree(dim, degree):
    if dim == 0:
        return [()] if degree == 0 else []
    if dim == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(dim - 1, degree - first):
            out.append((first,) + rest)
    return out


class LieAlgebraPresentation:
    """A Lie algebra d on generators D_0..D_{N-1}.

    ``structure_constants`` maps ``(i, j, k)`` with ``i < j`` to the
    coefficient of ``D_k`` in ``[D_i, D_j]``.
    """

    def __init__(self, dim, structure_constants=None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        consts = {}
        for (i, j, k), c in (structure_constants or {}).items():
            if not (0 <= i < j < dim and 0 <= k < dim):
                raise ValueError(f"bad structure constant index {(i, j, k)}")
            c = Fraction(c)
            if c:
                consts[(i, j, k)] = c
        self.structure_constants = consts
        self.bracket = {}
        for (i, j, k), c in consts.items():
            self.bracket.setdefault((i, j), {})[k] = c
            self.bracket.setdefault((j, i), {})[k] = -c
        self.abelian = not consts
        self._key = (dim, tuple(sorted(consts.items())))
        self._gen_cache = {}
        self._mul_cache = {}
        self._antipode_cache = {}

    def __eq__(self, other):
        return isinstance(other, LieAlgebraPresentation) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LieAlgebraPresentation({self.dim}, {dict(self.structure_constants)})"

    # -- constructors -------------------------------------------------
    def zero_index(self):
        return (0,) * self.dim

    def one(self):
        return HopfElement(self, {self.zero_index(): Fraction(1)})

    def zero(self):
        return HopfElement(self, {})

    def mono(self, index, coeff=1):
        index = tuple(index)
        if len(index) != self.dim or min(index) < 0:
            raise ValueError(f"bad multi-index {index}")
        return HopfElement(self, {index: Fraction(coeff)})

    def gen(self, k):
        index = [0] * self.dim
        index[k] = 1
        return self.mono(index)

    def scalar(self, c):
        return HopfElement(self, {self.zero_index(): Fraction(c)}) if c else self.zero()

    def monomials(self, max_degree):
        return monomials_upto(self.dim, max_degree)

    # -- straightening ------------------------------------------------
    def ad(self, m, vec):
        """(ad D_m) applied to a linear combination of generators."""
        out = {}
        for k, c in vec.items():
            add_into(out, self.bracket.get((m, k), {}), c)
        return out

    def times_generator(self, index, k):
        """Normal form of D^(index) * D_k."""
        key = (index, k)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        top = max((p for p, e in enumerate(index) if e), default=-1)
        if top <= k:
            new = list(index)
            new[k] += 1
            result = {tuple(new): Fraction(new[k])}
        else:
            power = index[top]
            base = list(index)
            base[top] = 0
            base = tuple(base)
            result = {}
            vec = {k: Fraction(1)}
            for s in range(power + 1):
                if not vec:
                    break
                for c_idx, coef in vec.items():
                    part = self.times_generator(base, c_idx)
                    part = self._times_divided_power(part, top, power - s)
                    add_into(result, part, coef / factorial(s))
                vec = self.ad(top, vec)
        self._gen_cache[key] = result
        return result

    def _times_divided_power(self, terms, k, e):
        for _ in range(e):
            nxt = {}
            for idx, c in terms.items():
                add_into(nxt, self.times_generator(idx, k), c)
            terms = nxt
        if e > 1:
            f = factorial(e)
            terms = {idx: c / f for idx, c in terms.items()}
        return terms

    def mul_mono(self, left, right):
        key = (left, right)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        if self.abelian:
            coef = 1
            for a, b in zip(left, right):
                coef *= comb(a + b, a)
            result = {tuple(a + b for a, b in zip(left, right)): Fraction(coef)}
        else:
            result = {left: Fraction(1)}
            for k, e in enumerate(right):
                if e:
                    result = self._times_divided_power(result, k, e)
        self._mul_cache[key] = result
        return result

    def mul_terms(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                add_into(out, self.mul_mono(i, j), a * b)
        return out

    def antipode_mono(self, index):
        hit = self._antipode_cache.get(index)
        if hit is not None:
            return hit
        sign = -1 if sum(index) % 2 else 1
        result = {self.zero_index(): Fraction(sign)}
        for k in reversed(range(self.dim)):
            if index[k]:
                single = [0] * self.dim
                single[k] = index[k]
                result = self.mul_terms(result, {tuple(single): Fraction(1)})
        self._antipode_cache[index] = result
        return result

    def antipode_terms(self, u):
        out = {}
        for i, a in u.items():
            add_into(out, self.antipode_mono(i), a)
        return out

    def counit_terms(self, u):
        return u.get(self.zero_index(), Fraction(0))


class HopfElement:
    """A finite rational combination of PBW monomials; immutable."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = clean(terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx in sorted(self.terms, key=lambda i: (sum(i), i)):
            c = self.terms[idx]
            parts.append(f"{c}*D^{idx}")
        return " + ".join(parts)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.scalar(other)
        return isinstance(other, HopfElement) and self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other):
        if isinstance(other, HopfElement):
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        return HopfElement(self.alg, add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __neg__(self):
        return HopfElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, HopfElement):
            return HopfElement(self.alg, self.alg.mul_terms(self.terms, other.terms))
        c = Fraction(other)
        return HopfElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return HopfElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def degree(self):
        return max((sum(i) for i in self.terms), default=-1)

    def counit(self):
        return self.alg.counit_terms(self.terms)

    def antipode(self):
        return HopfElement(self.alg, self.alg.antipode_terms(self.terms))

    def coproduct(self, parts=2):
        return h_coproduct(self, parts)


class TensorPower:
    """Element of H^{⊗n}: a sparse map from n-tuples of multi-indices to rationals."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg, n, terms):
        self.alg = alg
        self.n = n
        self.terms = clean(terms)

    @classmethod
    def pure(cls, *factors):
        alg = factors[0].alg
        out = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            add_into(out, {tuple(i for i, _ in combo): coef})
        return cls(alg, len(factors), out)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*" + "⊗".join(f"D^{i}" for i in key) for key, c in sorted(self.terms.items()))

    def __eq__(self, other):
        return isinstance(other, TensorPower) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        return TensorPower(self.alg, self.n, add_into(dict(self.terms), other.terms))

    def __neg__(self):
        return TensorPower(self.alg, self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorPower):
            return TensorPower(self.alg, self.n, tensor_mul_terms(self.alg, self.terms, other.terms))
        c = Fraction(other)
        return TensorPower(self.alg, self.n, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def apply(self, slot, fn):
        """Apply a linear map on H (given on terms) to one tensor slot."""
        out = {}
        for key, c in self.terms.items():
            for idx, d in fn({key[slot]: Fraction(1)}).items():
                add_into(out, {key[:slot] + (idx,) + key[slot + 1:]: c * d})
        return TensorPower(self.alg, self.n, out)


def tensor_mul_terms(alg, u, v):
    out = {}
    for ku, a in u.items():
        for kv, b in v.items():
            prods = [alg.mul_mono(x, y) for x, y in zip(ku, kv)]
            for combo in itertools.product(*(p.items() for p in prods)):
                coef = a * b
                for _, c in combo:
                    coef *= c
                add_into(out, {tuple(i for i, _ in combo): coef})
    return out


def coproduct_terms(terms, parts=2):
    out = {}
    for idx, c in terms.items():
        for split in compositions(idx, parts):
            add_into(out, {split: c})
    return out


# -- operation-level API ---------------------------------------------------

def validate_lie(p):
    """Return a list of violations; empty means the presentation is a Lie algebra."""
    violations = []
    n = p.dim

    def c(i, j, k):
        return p.bracket.get((i, j), {}).get(k, 0)

    for i, j, k in itertools.combinations(range(n), 3):
        for l in range(n):
            total = sum(
                c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l)
                for m in range(n)
            )
            if total:
                violations.append(((i, j, k, l), total))
    return violations


def h_mul(u, v):
    return u * v


def h_coproduct(u, parts=2, pattern=None):
    """Iterated coproduct into ``parts`` tensor factors.

    ``pattern``, if given, is a tuple assigning each of the ``parts`` output
    slots to a target slot; components sharing a target are multiplied.
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    result = TensorPower(u.alg, parts, coproduct_terms(u.terms, parts))
    if pattern is None:
        return result
    if len(pattern) != parts:
        raise ValueError("pattern length must equal number of parts")
    targets = sorted(set(pattern))
    if targets != list(range(len(targets))):
        raise ValueError("pattern must be a surjection onto 0..m-1")
    alg = u.alg
    out = {}
    for key, c in result.terms.items():
        acc = [{alg.zero_index(): Fraction(1)} for _ in targets]
        for src, tgt in enumerate(pattern):
            acc[tgt] = alg.mul_terms(acc[tgt], {key[src]: Fraction(1)})
        for combo in itertools.product(*(a.items() for a in acc)):
            coef = c
            for _, d in combo:
                coef *= d
            add_into(out, {tuple(i for i, _ in combo): coef})
    return TensorPower(alg, len(targets), out)


def h_counit(u):
    return u.counit()


def h_antipode(u):
    return u.antipode()


def h_degree(u):
    return u.degree()
