"""Canonical forms in H^{⊗n} ⊗_H M.

Every element of H^{⊗n} ⊗_H M has a unique representative
``Σ (D^(I_1) ⊗ ... ⊗ D^(I_{n-1}) ⊗ 1) ⊗_H m`` with the last tensor slot equal
to 1.  A :class:`PseudoTensor` stores it as a sparse map
``(I_1, ..., I_{n-1}, key) -> rational`` where ``key`` is a k-basis key of M.

Modules are described by small objects exposing ``alg`` and
``act(h_terms, key) -> {key: coeff}``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .hopf import HopfElement, TensorPower, add_into, clean, compositions, coproduct_terms


class FreeModule:
    """Free H-module on a set of labels; k-basis keys are ``(I, label)``."""

    def __init__(self, alg, labels=None, name="L"):
        self.alg = alg
        self.labels = None if labels is None else tuple(labels)
        self.name = name

    @property
    def rank(self):
        return None if self.labels is None else len(self.labels)

    def act(self, h, key):
        index, label = key
        return {(j, label): c for j, c in self.alg.mul_terms(h, {index: Fraction(1)}).items()}

    def basis(self, label, coeff=1):
        return ModuleElement(self, {(self.alg.zero_index(), label): Fraction(coeff)})

    def element(self, coeffs):
        """Build Σ h_label · a_label from a mapping label -> HopfElement."""
        out = {}
        for label, h in coeffs.items():
            for idx, c in h.terms.items():
                add_into(out, {(idx, label): c})
        return ModuleElement(self, out)

    def __eq__(self, other):
        return isinstance(other, FreeModule) and (self.alg, self.labels) == (other.alg, other.labels)

    def __hash__(self):
        return hash((self.alg, self.labels))


class TrivialModule:
    """The ground field k with h·1 = ε(h)."""

    def __init__(self, alg):
        self.alg = alg

    def act(self, h, key):
        c = self.alg.counit_terms(h)
        return {(): c} if c else {}

    def unit(self):
        return ModuleElement(self, {(): Fraction(1)})

    def __eq__(self, other):
        return isinstance(other, TrivialModule) and self.alg == other.alg

    def __hash__(self):
        return hash(("k", self.alg))


class TensorModule:
    """M_1 ⊗ ... ⊗ M_k with H acting through the iterated coproduct."""

    def __init__(self, *factors):
        self.factors = factors
        self.alg = factors[0].alg

    def act(self, h, key):
        out = {}
        k = len(self.factors)
        for split, c in coproduct_terms(h, k).items():
            pieces = [f.act({s: Fraction(1)}, sub) for f, s, sub in zip(self.factors, split, key)]
            for combo in itertools.product(*(p.items() for p in pieces)):
                coef = c
                for _, d in combo:
                    coef *= d
                add_into(out, {tuple(kk for kk, _ in combo): coef})
        return out

    def __eq__(self, other):
        return isinstance(other, TensorModule) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)


class ModuleElement:
    """Sparse k-linear combination of basis keys of a module."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms):
        self.module = module
        self.terms = clean(terms)

    def __repr__(self):
        return " + ".join(f"{c}*{k}" for k, c in sorted(self.terms.items(), key=repr)) or "0"

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        return ModuleElement(self.module, add_into(dict(self.terms), other.terms))

    def __neg__(self):
        return ModuleElement(self.module, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return ModuleElement(self.module, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __rmatmul__(self, h):
        """``h @ m`` is the H-action."""
        return act_on(self.module, h, self)

    def components(self):
        """For a free module: label -> HopfElement coefficient."""
        out = {}
        for (idx, label), c in self.terms.items():
            out.setdefault(label, {})[idx] = c
        return {label: HopfElement(self.module.alg, t) for label, t in out.items()}


def act_on(module, h, m):
    h_terms = h.terms if isinstance(h, HopfElement) else h
    out = {}
    for key, c in m.terms.items():
        add_into(out, module.act(h_terms, key), c)
    return ModuleElement(module, out)


def tensor_elements(module, *elements):
    """The pure tensor m_1 ⊗ ... ⊗ m_k as an element of a TensorModule."""
    out = {}
    for combo in itertools.product(*(e.terms.items() for e in elements)):
        coef = Fraction(1)
        for _, c in combo:
            coef *= c
        add_into(out, {tuple(k for k, _ in combo): coef})
    return ModuleElement(module, out)


class PseudoTensor:
    """Canonical element of H^{⊗n} ⊗_H M with last slot normalized to 1."""

    __slots__ = ("n", "module", "terms")

    def __init__(self, n, module, terms):
        self.n = n
        self.module = module
        self.terms = clean(terms)

    @property
    def alg(self):
        return self.module.alg

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items(), key=repr):
            slots = "⊗".join(f"D^{i}" for i in key[:-1]) + "⊗1"
            parts.append(f"{c}*({slots})⊗_H {key[-1]}")
        return " + ".join(parts)

    def __eq__(self, other):
        return isinstance(other, PseudoTensor) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        return PseudoTensor(self.n, self.module, add_into(dict(self.terms), other.terms))

    def __neg__(self):
        return PseudoTensor(self.n, self.module, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return PseudoTensor(self.n, self.module, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def degree(self):
        """Largest total degree among the tensor slots."""
        return max((sum(sum(i) for i in key[:-1]) for key in self.terms), default=-1)

    def raw_terms(self):
        """Iterate ``(slot multi-indices including the trailing 1, module key, coeff)``."""
        one = self.alg.zero_index()
        for key, c in self.terms.items():
            yield key[:-1] + (one,), key[-1], c

    def module_values(self):
        """Group by the first n-1 slots: {(I_1..I_{n-1}): ModuleElement}."""
        out = {}
        for key, c in self.terms.items():
            out.setdefault(key[:-1], {})[key[-1]] = c
        return {k: ModuleElement(self.module, v) for k, v in out.items()}

    def map_module(self, fn, target):
        """Apply an H-linear map (given on basis keys) to the module part."""
        out = {}
        for key, c in self.terms.items():
            for k2, d in fn(key[-1]).items():
                add_into(out, {key[:-1] + (k2,): c * d})
        return PseudoTensor(self.n, target, out)


def zero(n, module):
    return PseudoTensor(n, module, {})


def _as_terms(x):
    if isinstance(x, HopfElement):
        return x.terms
    return x


def normalize(module, n, raw):
    """Canonical form of Σ (f_1 ⊗ ... ⊗ f_n) ⊗_H m.

    ``raw`` is an iterable of ``(slots, m)`` where slots is a sequence of n
    elements of H (HopfElement or term dicts) and m a ModuleElement or a
    term dict over ``module``.
    """
    alg = module.alg
    out = {}
    for slots, m in raw:
        m_terms = m.terms if isinstance(m, ModuleElement) else m
        if not m_terms:
            continue
        slots = [_as_terms(s) for s in slots]
        if len(slots) != n:
            raise ValueError(f"expected {n} tensor slots, got {len(slots)}")
        _normalize_into(out, alg, module, n, slots, m_terms)
    return PseudoTensor(n, module, out)


def _normalize_into(out, alg, module, n, slots, m_terms):
    head = slots[:-1]
    factors, acted = {}, {}
    for last_idx, last_c in slots[-1].items():
        for split in compositions(last_idx, n):
            moved = acted.get(split[-1])
            if moved is None:
                moved = {}
                for key, c in m_terms.items():
                    add_into(moved, module.act({split[-1]: Fraction(1)}, key), c)
                acted[split[-1]] = moved
            if not moved:
                continue
            # expand the head slots into {(i_1, ..., i_{n-1}): coefficient} first
            prefix = {(): last_c}
            for pos, part in enumerate(split[:-1]):
                factor = factors.get((pos, part))
                if factor is None:
                    factor = factors[(pos, part)] = alg.mul_terms(head[pos], alg.antipode_mono(part))
                grown = {}
                for idxs, c in prefix.items():
                    for i, d in factor.items():
                        add_into(grown, {idxs + (i,): c * d})
                prefix = grown
            for idxs, coef in prefix.items():
                for key, c in moved.items():
                    k = idxs + (key,)
                    total = out.get(k, 0) + coef * c
                    if total:
                        out[k] = total
                    else:
                        out.pop(k, None)


def from_tensor(t, m):
    """(t) ⊗_H m for a TensorPower t and module element m."""
    raw = [(tuple({i: Fraction(1)} for i in key), {k: c * v for k, v in m.terms.items()})
           for key, c in t.terms.items()]
    return normalize(m.module, t.n, raw)


def fourier(t, direction="forward"):
    """F(f⊗g) = f S(g_(1)) ⊗ g_(2); the inverse is f g_(1) ⊗ g_(2)."""
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    alg = t.alg
    out = {}
    for (f, g), c in t.terms.items():
        for a, b in compositions(g, 2):
            left = alg.antipode_mono(a) if direction == "forward" else {a: Fraction(1)}
            for i, d in alg.mul_terms({f: Fraction(1)}, left).items():
                add_into(out, {(i, b): c * d})
    return TensorPower(alg, 2, out)


def h_act(hs, t):
    """((h_1 ⊗ ... ⊗ h_n) ⊗_H 1) · t, multiplying slot i of t on the left by h_i."""
    if len(hs) != t.n:
        raise ValueError(f"need {t.n} factors, got {len(hs)}")
    alg = t.alg
    hs = [_as_terms(h) for h in hs]
    raw = []
    for slots, key, c in t.raw_terms():
        new = [alg.mul_terms(h, {s: Fraction(1)}) for h, s in zip(hs, slots)]
        raw.append((new, {key: c}))
    return normalize(t.module, t.n, raw)


def permute(perm, t):
    """Apply a slot permutation: output slot ``perm[i]`` receives input slot i."""
    n = t.n
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of {n} slots: {perm}")
    raw = []
    for slots, key, c in t.raw_terms():
        new = [None] * n
        for i, s in enumerate(slots):
            new[perm[i]] = {s: Fraction(1)}
        raw.append((new, {key: c}))
    return normalize(t.module, n, raw)


def swap12(t):
    """σ_12 on the first two slots (any n >= 2)."""
    perm = (1, 0) + tuple(range(2, t.n))
    if t.n > 2:
        # the last slot is untouched, so the canonical form just swaps keys
        out = {}
        for key, c in t.terms.items():
            add_into(out, {(key[1], key[0]) + key[2:]: c})
        return PseudoTensor(t.n, t.module, out)
    return permute(perm, t)


def equals(s, t):
    return s.n == t.n and s.terms == t.terms


def to_basis_form(t):
    """Rewrite a pseudotensor over a free module as {label: TensorPower(n)}.

    This is the unique form Σ_k (f_k) ⊗_H a_k with bare basis labels, obtained
    by pulling module-side coefficients back across ⊗_H via the coproduct.
    """
    alg = t.alg
    out = {}
    for slots, (index, label), c in t.raw_terms():
        for split in compositions(index, t.n):
            prods = [alg.mul_terms({s: Fraction(1)}, {p: Fraction(1)}) for s, p in zip(slots, split)]
            bucket = out.setdefault(label, {})
            for combo in itertools.product(*(p.items() for p in prods)):
                coef = c
                for _, d in combo:
                    coef *= d
                add_into(bucket, {tuple(i for i, _ in combo): coef})
    return {label: TensorPower(alg, t.n, terms) for label, terms in out.items() if terms}


def from_basis_form(module, n, data):
    """Inverse of :func:`to_basis_form`."""
    alg = module.alg
    raw = []
    for label, tp in data.items():
        for key, c in tp.terms.items():
            raw.append((tuple({i: Fraction(1)} for i in key), {(alg.zero_index(), label): c}))
    return normalize(module, n, raw)
