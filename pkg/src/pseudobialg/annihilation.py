"""Affinization Y ⊗ L with Y = H*, the annihilation algebra and the convolution algebra Hom_H(L*, Y).

Y carries the right action ⟨x·h, f⟩ = ⟨x, f S(h)⟩.  Elements of the quotient
(Y ⊗ L) / H₊(Y ⊗ L) are kept in the canonical form Σ x_i ⊗ a_i with bare basis
labels, using x ⊗ h·a ≡ (x·h) ⊗ a.
"""
from __future__ import annotations

from fractions import Fraction

from .dual import DualElement, TruncationInsufficient, act, x_mul
from .hopf import add_into, compositions
from .pseudoalg import extend_bracket
from .pseudotensor import ModuleElement, normalize, to_basis_form


def right_act(x, h, cutoff=None):
    return act(h, x, "right", cutoff=cutoff)


def _zero(alg):
    return DualElement(alg, {})


class AnnihilationElement:
    """Σ ȳ_i ⊗ a_i, stored as {label: DualElement}."""

    def __init__(self, labels, values, alg):
        self.labels = tuple(labels)
        self.alg = alg
        self.values = {l: values.get(l, _zero(alg)) for l in self.labels}

    def __getitem__(self, label):
        return self.values[label]

    def __eq__(self, other):
        return isinstance(other, AnnihilationElement) and all(
            self.values[l] == other.values[l] for l in self.labels)

    def __hash__(self):
        return hash(tuple(self.values[l] for l in self.labels))

    def __add__(self, other):
        return AnnihilationElement(self.labels, {l: self.values[l] + other.values[l] for l in self.labels}, self.alg)

    def __neg__(self):
        return AnnihilationElement(self.labels, {l: -v for l, v in self.values.items()}, self.alg)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return AnnihilationElement(self.labels, {l: v * c for l, v in self.values.items()}, self.alg)

    __rmul__ = __mul__

    def is_zero(self):
        return all(v.is_zero() for v in self.values.values())

    def __repr__(self):
        parts = [f"({v})⊗a{l}" for l, v in self.values.items() if not v.is_zero()]
        return " + ".join(parts) or "0"


class AnnihilationAlgebra:
    """A(L) for a free finite pseudoalgebra L; ``cutoff`` bounds truncated right actions."""

    def __init__(self, T, cutoff=6):
        if T.rank is None:
            raise ValueError("the annihilation algebra needs a free module of finite rank")
        self.T = T
        self.alg = T.alg
        self.cutoff = cutoff

    def element(self, values):
        return AnnihilationElement(self.T.labels, values, self.alg)

    def pure(self, x, label):
        return self.element({label: x})

    def reduce(self, pairs):
        """Canonical form of Σ c · x ⊗ D^(J) a_l given as (x, (J, l), c)."""
        out = {l: _zero(self.alg) for l in self.T.labels}
        for x, (J, label), c in pairs:
            moved = x if not any(J) else right_act(x, self.alg.mono(J), self._cut(x, J))
            out[label] = out[label] + moved * c
        return self.element(out)

    def _cut(self, x, J):
        if self.alg.abelian and x.truncation is None:
            return None
        return self.cutoff

    def bracket(self, u, v):
        """[x̄⊗a, ȳ⊗b] = Σ (x·f_i)(y·g_i) ⊗ e_i over the canonical form of [a*b]."""
        pairs = []
        for i, x in u.values.items():
            if x.is_zero():
                continue
            for j, y in v.values.items():
                if y.is_zero():
                    continue
                t = extend_bracket(self.T, self.T.basis(i), self.T.basis(j))
                for (I, key), c in t.terms.items():
                    xf = x if not any(I) else right_act(x, self.alg.mono(I), self._cut(x, I))
                    pairs.append((x_mul(xf, y), key, c))
        return self.reduce(pairs)

    def bracket_via_basis_form(self, u, v):
        """The same bracket from the form Σ (f⊗g) ⊗_H a_k with bare labels."""
        out = {l: _zero(self.alg) for l in self.T.labels}
        for i, x in u.values.items():
            for j, y in v.values.items():
                if x.is_zero() or y.is_zero():
                    continue
                for k, tp in to_basis_form(self.T.basis_bracket(i, j)).items():
                    for (f, g), c in tp.terms.items():
                        xf = right_act(x, self.alg.mono(f), self._cut(x, f)) if any(f) else x
                        yg = right_act(y, self.alg.mono(g), self._cut(y, g)) if any(g) else y
                        out[k] = out[k] + x_mul(xf, yg) * c
        return self.element(out)


class ConvolutionMap:
    """α ∈ Hom_H(L*, Y), given by its values α(a^k) on the dual basis."""

    def __init__(self, labels, values, alg):
        self.labels = tuple(labels)
        self.alg = alg
        self.values = {l: values.get(l, _zero(alg)) for l in self.labels}

    def __call__(self, f, cutoff=None):
        """α(Σ q a^k) = Σ α(a^k)·S(q) for f a module element of L*."""
        out = _zero(self.alg)
        for (Q, k), c in f.terms.items():
            x = self.values[k]
            if any(Q):
                x = right_act(x, self.alg.mono(Q).antipode(), cutoff)
            out = out + x * c
        return out

    def __eq__(self, other):
        return isinstance(other, ConvolutionMap) and all(
            self.values[l] == other.values[l] for l in self.labels)

    def __hash__(self):
        return hash(tuple(self.values[l] for l in self.labels))

    def agrees(self, other):
        """Equality up to the truncation both sides are known to."""
        return all((self.values[l] - other.values[l]).is_zero() for l in self.labels)

    def __repr__(self):
        return "{" + ", ".join(f"a^{l} ↦ {v}" for l, v in self.values.items()) + "}"


def convolution_bracket(C, f, g, cutoff=None):
    """[f, g] = m ∘ (f ⊗ g) ∘ δ on each dual basis element."""
    alg = C.alg
    out = {}
    for k in C.labels:
        acc = _zero(alg)
        for ((M, s), (M2, t)), c in C.values[k].terms.items():
            left = f.values[s] if not any(M) else right_act(f.values[s], alg.mono(M).antipode(), cutoff)
            right = g.values[t] if not any(M2) else right_act(g.values[t], alg.mono(M2).antipode(), cutoff)
            acc = acc + x_mul(left, right) * c
        out[k] = acc
    return ConvolutionMap(C.labels, out, alg)


def phi(u):
    """φ(Σ x̄_i ⊗ a_i)(a^k) = x_k: on canonical forms the dual basis reads off the slots."""
    return ConvolutionMap(u.labels, dict(u.values), u.alg)


def phi_on_pair(x, key, f, cutoff=None):
    """φ(x̄ ⊗ D^(J) a_i)(f) = x·(l S(h)) where f(D^(J)a_i) = Σ (h⊗l) ⊗_H 1."""
    alg = x.alg
    J, i = key
    out = _zero(alg)
    for (Q, k), c in f.terms.items():
        if k != i:
            continue
        # f = D^(Q) a^k gives f(D^(J) a_k) = (D^(Q) ⊗ D^(J)) ⊗_H 1
        coeff = alg.mul_terms({J: Fraction(1)}, alg.antipode_mono(Q))
        for idx, d in coeff.items():
            out = out + (right_act(x, alg.mono(idx), cutoff) if any(idx) else x) * (c * d)
    return out


def phi_inv(alpha):
    return AnnihilationElement(alpha.labels, dict(alpha.values), alpha.alg)


class AffinizationModule:
    """Y ⊗ L with h(x ⊗ a) = x·S(h_(1)) ⊗ h_(2)a; keys (K, (J, label)) for t_K ⊗ D^(J)a_label.

    Exact only when H is commutative, where right actions keep finite support.
    """

    def __init__(self, L):
        if not L.alg.abelian:
            raise TruncationInsufficient(float("inf"), None)
        self.alg = L.alg
        self.L = L

    def act(self, h, key):
        K, lkey = key
        out = {}
        for idx, c in h.items():
            for p, q in compositions(idx, 2):
                moved = right_act(DualElement.basis(self.alg, K), self.alg.mono(p).antipode())
                lterms = self.L.act({q: Fraction(1)}, lkey)
                for k2, d in moved.terms.items():
                    for l2, e in lterms.items():
                        add_into(out, {(k2, l2): c * d * e})
        return out

    def pure(self, x, u):
        """x ⊗ u for a DualElement x and a module element u of L."""
        out = {}
        for K, c in x.terms.items():
            for lkey, d in u.terms.items():
                add_into(out, {(K, lkey): c * d})
        return ModuleElement(self, out)


def affinize_bracket(T, u, v, module=None):
    """[(x⊗a)*(y⊗b)] = Σ (f_(1) ⊗ g_(1)) ⊗_H ((x·f_(2))(y·g_(2)) ⊗ e) for module elements of Y ⊗ L."""
    module = module or u.module
    alg = T.alg
    raw = []
    for (K, akey), c in u.terms.items():
        for (K2, bkey), d in v.terms.items():
            t = extend_bracket(T, ModuleElement(T.module, {akey: Fraction(1)}),
                               ModuleElement(T.module, {bkey: Fraction(1)}))
            y = DualElement.basis(alg, K2)
            for (I, ekey), e in t.terms.items():
                for p, q in compositions(I, 2):
                    xf = right_act(DualElement.basis(alg, K), alg.mono(q))
                    prod = x_mul(xf, y)
                    terms = {(k, ekey): c * d * e * w for k, w in prod.terms.items()}
                    if terms:
                        raw.append(((alg.mono(p), alg.one()), terms))
    return normalize(module, 2, raw)


def relation_element(alg, module, h, x, key):
    """h·(x⊗a) - ε(h)(x⊗a) in Y ⊗ L, an element of H₊(Y ⊗ L)."""
    out = {}
    for K, c in x.terms.items():
        add_into(out, module.act(h.terms, (K, key)), c)
        add_into(out, {(K, key): -c * h.counit()})
    return out
