"""Lie pseudobrackets on free H-modules, their modules, x-brackets and axiom checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .dual import DualElement, act, pair
from .hopf import add_into, compositions
from .pseudotensor import (
    FreeModule,
    ModuleElement,
    PseudoTensor,
    TensorModule,
    TrivialModule,
    from_basis_form,
    h_act,
    normalize,
    swap12,
    to_basis_form,
)


@dataclass
class Report:
    passed: bool
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


class BracketTable:
    """Pseudobracket on the free module ⊕ H a_label.

    For finite rank, ``entries`` maps every label pair to a PseudoTensor of
    rank 2.  For an infinite basis pass ``rule(i, j)`` instead; ``labels``
    then names the finite window that axiom checks iterate over.
    """

    def __init__(self, alg, labels, entries=None, rule=None, name=""):
        self.alg = alg
        self.labels = tuple(labels)
        self.module = FreeModule(alg, None if rule else self.labels)
        self.name = name
        self.rule = rule
        self._cache = {}
        if rule is None:
            entries = dict(entries or {})
            for i in self.labels:
                for j in self.labels:
                    entries.setdefault((i, j), PseudoTensor(2, self.module, {}))
            for (i, j), t in entries.items():
                if i not in self.labels or j not in self.labels:
                    raise ValueError(f"entry {(i, j)} uses an undeclared label")
                entries[(i, j)] = PseudoTensor(2, self.module, t.terms)
            self.entries = entries
        else:
            self.entries = None

    @property
    def rank(self):
        return len(self.labels) if self.rule is None else None

    def basis_bracket(self, i, j):
        if self.rule is None:
            return self.entries[(i, j)]
        hit = self._cache.get((i, j))
        if hit is None:
            hit = self.rule(i, j)
            hit = PseudoTensor(2, self.module, hit.terms)
            self._cache[(i, j)] = hit
        return hit

    def basis(self, label, coeff=1):
        return self.module.basis(label, coeff)

    def __eq__(self, other):
        if not isinstance(other, BracketTable) or self.rule or other.rule:
            return NotImplemented
        return (self.alg, self.labels) == (other.alg, other.labels) and all(
            self.entries[k].terms == other.entries[k].terms for k in self.entries)

    def __hash__(self):
        return id(self)

    @classmethod
    def from_basis_form(cls, alg, labels, data, name=""):
        """Build from {(i, j): {k: TensorPower(2)}} meaning [a_i*a_j] = Σ (f⊗g) ⊗_H a_k."""
        module = FreeModule(alg, labels)
        entries = {key: from_basis_form(module, 2, by_label) for key, by_label in data.items()}
        return cls(alg, labels, entries, name=name)

    def basis_form(self):
        return {key: to_basis_form(t) for key, t in self.entries.items() if t}


def extend_bracket(T, u, v):
    """[u*v] for module elements u, v by H-bilinear extension."""
    if u.module.alg != T.alg or v.module.alg != T.alg:
        raise ValueError("signature mismatch")
    out = {}
    cu, cv = u.components(), v.components()
    for i, f in cu.items():
        for j, g in cv.items():
            entry = T.basis_bracket(i, j)
            if entry:
                add_into(out, h_act((f, g), entry).terms)
    return PseudoTensor(2, T.module, out)


# -- representations ------------------------------------------------------

class Adjoint:
    """L acting on itself through the pseudobracket."""

    def __init__(self, T):
        self.T = T
        self.module = T.module

    def action(self, a, m):
        return extend_bracket(self.T, a, m)


class TableAction:
    """Action on a free module ⊕ H b_m given by a table (a_i, b_m) -> PseudoTensor."""

    def __init__(self, T, labels, entries, name="M"):
        self.T = T
        self.module = FreeModule(T.alg, labels, name=name)
        self.entries = {}
        for i in T.labels:
            for m in self.module.labels:
                t = entries.get((i, m))
                self.entries[(i, m)] = PseudoTensor(2, self.module, t.terms if t else {})

    def action(self, a, v):
        out = {}
        for i, f in a.components().items():
            for m, g in v.components().items():
                entry = self.entries[(i, m)]
                if entry:
                    add_into(out, h_act((f, g), entry).terms)
        return PseudoTensor(2, self.module, out)


class TrivialAction:
    def __init__(self, T):
        self.T = T
        self.module = TrivialModule(T.alg)

    def action(self, a, v):
        return PseudoTensor(2, self.module, {})


class TensorAction:
    """M ⊗ N with a*(m⊗n) = Σ(h_k⊗1)⊗_H(m_k⊗n) + Σ(h'_l⊗1)⊗_H(m⊗n_l)."""

    def __init__(self, *reps):
        self.reps = reps
        self.module = TensorModule(*(r.module for r in reps))

    def action(self, a, v):
        out = {}
        cache = {}
        for key, c in v.terms.items():
            for slot, rep in enumerate(self.reps):
                sub = key[slot]
                if (slot, sub) not in cache:
                    cache[(slot, sub)] = rep.action(a, ModuleElement(rep.module, {sub: Fraction(1)}))
                for k2, d in cache[(slot, sub)].terms.items():
                    new_key = key[:slot] + (k2[-1],) + key[slot + 1:]
                    add_into(out, {k2[:-1] + (new_key,): c * d})
        return PseudoTensor(2, self.module, out)


def tensor_action(rep_m, rep_n, a, mn):
    return TensorAction(rep_m, rep_n).action(a, mn)


# -- composition rules -----------------------------------------------------

def compose_left(first, second, a, b, c):
    """(a*b)*c: first(a, b) = Σ(f⊗1)⊗_H e, second(e, c) = Σ(f'⊗1)⊗_H m
    gives Σ (f f'_(1) ⊗ f'_(2) ⊗ 1) ⊗_H m."""
    ab = first(a, b)
    alg = ab.alg
    out = {}
    target = None
    cache = {}
    for (i, ekey), coef in ab.terms.items():
        inner = cache.get(ekey)
        if inner is None:
            inner = cache[ekey] = second(ModuleElement(ab.module, {ekey: Fraction(1)}), c)
        target = inner.module
        for (j, mkey), d in inner.terms.items():
            for p, q in compositions(j, 2):
                for s, e in alg.mul_mono(i, p).items():
                    add_into(out, {(s, q, mkey): coef * d * e})
    return PseudoTensor(3, target, out) if target is not None else PseudoTensor(3, None, {})


def compose_right(first, second, a, b, c):
    """a*(b*c): first(b, c) = Σ(f⊗1)⊗_H e, second(a, e) = Σ(f'⊗1)⊗_H m
    gives Σ (f' ⊗ f ⊗ 1) ⊗_H m."""
    bc = first(b, c)
    out = {}
    target = None
    cache = {}
    for (i, ekey), coef in bc.terms.items():
        inner = cache.get(ekey)
        if inner is None:
            inner = cache[ekey] = second(a, ModuleElement(bc.module, {ekey: Fraction(1)}))
        target = inner.module
        for (j, mkey), d in inner.terms.items():
            add_into(out, {(j, i, mkey): coef * d})
    return PseudoTensor(3, target, out) if target is not None else PseudoTensor(3, None, {})


def compose(T, pattern, a, b, c, rep=None):
    """Left pattern (a*b)*c or right pattern a*(b*c) for the bracket or an action."""
    br = lambda u, v: extend_bracket(T, u, v)
    act_ = rep.action if rep is not None else br
    if pattern == "left":
        return compose_left(br, act_, a, b, c)
    if pattern == "right":
        return compose_right(act_, act_, a, b, c)
    raise ValueError("pattern must be 'left' or 'right'")


def jacobi_defect(T, a, b, c, rep=None):
    """[a*[b*c]] - (σ⊗id)[b*[a*c]] - [[a*b]*c]."""
    lhs = compose(T, "right", a, b, c, rep)
    other = swap12(compose(T, "right", b, a, c, rep))
    rhs = compose(T, "left", a, b, c, rep)
    return _sum3(lhs, -other, -rhs)


def _sum3(*ts):
    out = {}
    module = None
    for t in ts:
        add_into(out, t.terms)
        if module is None:
            module = t.module
    return PseudoTensor(3, module, out)


def skew_defect(T, a, b):
    """[b*a] + (σ ⊗_H id)[a*b]."""
    return extend_bracket(T, b, a) + swap12(extend_bracket(T, a, b))


def check_lie_axioms(T, labels=None):
    labels = T.labels if labels is None else tuple(labels)
    failures = []
    basis = {i: T.basis(i) for i in labels}
    for i, j in itertools.combinations_with_replacement(labels, 2):
        d = skew_defect(T, basis[i], basis[j])
        if d:
            failures.append(("skew", (i, j), d))
    for i, j, k in itertools.product(labels, repeat=3):
        d = jacobi_defect(T, basis[i], basis[j], basis[k])
        if d:
            failures.append(("jacobi", (i, j, k), d))
    return Report(not failures, failures)


def check_representation(rep, labels=None):
    """Representation axiom a*(b*m) - (σ⊗id) b*(a*m) = [a*b]*m on basis elements."""
    T = rep.T
    labels = T.labels if labels is None else tuple(labels)
    failures = []
    mod_basis = [rep.module.basis(m) for m in rep.module.labels]
    for i, j in itertools.product(labels, repeat=2):
        for m in mod_basis:
            d = jacobi_defect(T, T.basis(i), T.basis(j), m, rep)
            if d:
                failures.append(("representation", (i, j, m), d))
    return Report(not failures, failures)


# -- x-brackets ------------------------------------------------------------

def fourier_coefficient(t, x):
    """Σ <S(x), h_i> c_i for t = Σ (h_i⊗1) ⊗_H c_i; returns a module element."""
    alg = t.alg
    out = {}
    for (i, key), c in t.terms.items():
        val = pair(x, alg.antipode_mono(i))
        if val:
            add_into(out, {key: c * val})
    return ModuleElement(t.module, out)


def x_bracket(T, a, x, b):
    """[a_x b] = Σ <S(x), h_i> c_i where [a*b] = Σ (h_i⊗1) ⊗_H c_i."""
    return fourier_coefficient(extend_bracket(T, a, b), x)


def locality_bound(t):
    """Smallest n with [a_{t_I} b] = 0 for all |I| >= n (0 for a zero bracket)."""
    return t.degree() + 1


def reconstruct(alg, module, coefficients):
    """Σ_I (S(D^(I))⊗1) ⊗_H φ_{t_I}, from {I: ModuleElement}."""
    out = {}
    for index, value in coefficients.items():
        for s, c in alg.antipode_mono(index).items():
            for key, d in value.terms.items():
                add_into(out, {(s, key): c * d})
    return PseudoTensor(2, module, out)


def check_conformal_axioms(T, sample_degree=4, labels=None, actor_degree=2):
    """Locality, sesquilinearity, skew-symmetry and Jacobi for x-brackets."""
    labels = T.labels if labels is None else tuple(labels)
    alg = T.alg
    basis = {i: T.basis(i) for i in labels}
    xs = [DualElement.basis(alg, I) for I in alg.monomials(sample_degree)]
    actors = [alg.mono(I) for I in alg.monomials(actor_degree)]
    failures = []
    bounds = {}
    brackets = {}
    for i in labels:
        for j in labels:
            brackets[(i, j)] = t = extend_bracket(T, basis[i], basis[j])
            bounds[(i, j)] = locality_bound(t)

    def xb(u, x, v):
        return fourier_coefficient(extend_bracket(T, u, v), x)

    # locality certificate
    for (i, j), bound in bounds.items():
        t = brackets[(i, j)]
        for x in xs:
            deg = x.max_degree()
            val = fourier_coefficient(t, x)
            if deg >= bound and val:
                failures.append(("locality", (i, j, x), val))
        if bound > 0 and not any(fourier_coefficient(t, DualElement.basis(alg, I))
                                 for I in alg.monomials(bound - 1) if sum(I) == bound - 1):
            failures.append(("locality-witness", (i, j), bound))
        rebuilt = reconstruct(alg, T.module, {
            I: fourier_coefficient(t, DualElement.basis(alg, I)) for I in alg.monomials(max(bound - 1, 0))})
        if rebuilt != t:
            failures.append(("reconstruction", (i, j), rebuilt - t))

    for i, j in itertools.product(labels, repeat=2):
        a, b = basis[i], basis[j]
        top = brackets[(i, j)].degree()
        for x in xs:
            # sesquilinearity in the first argument
            for h in actors:
                need = top + h.degree()
                lhs = xb(h @ a, x, b)
                rhs = fourier_coefficient(extend_bracket(T, a, b), act(h, x, "right", cutoff=need))
                if lhs != rhs:
                    failures.append(("sesqui-left", (i, j, x, h), lhs - rhs))
                lhs = xb(a, x, h @ b)
                rhs = ModuleElement(T.module, {})
                for (p, q), c in h.coproduct().terms.items():
                    sp = alg.mono(p).antipode()
                    y = act(sp, x, "left", cutoff=top + h.degree())
                    rhs = rhs + c * (alg.mono(q) @ fourier_coefficient(brackets[(i, j)], y))
                if lhs != rhs:
                    failures.append(("sesqui-right", (i, j, x, h), lhs - rhs))
            # skew-symmetry
            lhs = fourier_coefficient(brackets[(i, j)], x)
            rhs = ModuleElement(T.module, {})
            for I in alg.monomials(max(bounds[(j, i)] - 1, -1)) if bounds[(j, i)] else []:
                inner = fourier_coefficient(brackets[(j, i)], DualElement.basis(alg, I))
                if not inner:
                    continue
                for p, q in compositions(I, 2):
                    c = pair(x, alg.antipode_mono(p))
                    if c:
                        rhs = rhs - c * (alg.mono(q).antipode() @ inner)
            if lhs != rhs:
                failures.append(("skew", (i, j, x), lhs - rhs))

    for i, j, k in itertools.product(labels, repeat=3):
        a, b, c = basis[i], basis[j], basis[k]
        for x in xs:
            for y in xs:
                d = _conformal_jacobi_defect(T, a, b, c, x, y, bounds[(i, j)])
                if d:
                    failures.append(("jacobi", (i, j, k, x, y), d))
    return Report(not failures, failures, {"locality": bounds})


def _conformal_jacobi_defect(T, a, b, c, x, y, bound_ab):
    """[a_x[b_y c]] - [b_y[a_x c]] - [[a_{x(2)} b]_{y x(1)} c]."""
    alg = T.alg
    lhs = (fourier_coefficient(extend_bracket(T, a, fourier_coefficient(extend_bracket(T, b, c), y)), x)
           - fourier_coefficient(extend_bracket(T, b, fourier_coefficient(extend_bracket(T, a, c), x)), y))
    rhs = ModuleElement(T.module, {})
    ab = extend_bracket(T, a, b)
    (J0, _), = y.terms.items()
    for K in alg.monomials(max(bound_ab - 1, -1)) if bound_ab else []:
        u = fourier_coefficient(ab, DualElement.basis(alg, K))
        if not u:
            continue
        uc = extend_bracket(T, u, c)
        top = uc.degree()
        for J in alg.monomials(max(top - sum(J0), -1)) if top >= sum(J0) else []:
            coef = pair(x, alg.mul_mono(J, K))
            if not coef:
                continue
            z = DualElement.basis(alg, tuple(p + q for p, q in zip(J0, J)))
            rhs = rhs + coef * fourier_coefficient(uc, z)
    return lhs - rhs


# -- dual module -------------------------------------------------------------

class ChomDual:
    """M* = Chom(M, k) for a free finite L-module M with dual basis a^i."""

    def __init__(self, rep):
        module = rep.module
        if not isinstance(module, FreeModule) or module.labels is None:
            raise ValueError("only free modules of finite rank have a pseudo-dual here")
        self.rep = rep
        self.T = rep.T
        alg = self.T.alg
        self.source = module
        self.trivial = TrivialModule(alg)
        dual_module = FreeModule(alg, module.labels, name=module.name + "*")
        table = {}
        # group contributions by (actor, dual label): the value at m_k feeds a^k
        grouped = {}
        for i in self.T.labels:
            for j in module.labels:
                t = rep.action(self.T.basis(i), module.basis(j))
                for (I, (J, k)), c in t.terms.items():
                    grouped.setdefault((i, k), []).append(
                        ((alg.mono(I), alg.mono(J).antipode()), {(alg.zero_index(), j): -c}))
        for i in self.T.labels:
            for k in module.labels:
                table[(i, k)] = normalize(dual_module, 2, grouped.get((i, k), []))
        self.dual_rep = TableAction(self.T, module.labels, table, name=dual_module.name)
        self.module = self.dual_rep.module

    def evaluate(self, f, m):
        """f(m) in canonical form (g ⊗ 1) ⊗_H 1."""
        alg = self.T.alg
        raw = []
        for (P, i), c in f.terms.items():
            for (J, j), d in m.terms.items():
                if i == j:
                    raw.append(((alg.mono(P), alg.mono(J)), {(): c * d}))
        return normalize(self.trivial, 2, raw)

    def action_via_formula(self, a, f, m):
        """(a*f)(m) = -((σ⊗id) ⊗_H id) f*(a*m)."""
        return -swap12(compose_right(self.rep.action, self.evaluate, f, a, m))

    def action_via_table(self, a, f, m):
        return compose_left(self.dual_rep.action, self.evaluate, a, f, m)

    def check(self):
        failures = []
        for i in self.T.labels:
            for k in self.source.labels:
                for j in self.source.labels:
                    a, f, m = self.T.basis(i), self.module.basis(k), self.source.basis(j)
                    d = _sum3(self.action_via_table(a, f, m), -self.action_via_formula(a, f, m))
                    if d:
                        failures.append(("actchom", (i, k, j), d))
        return Report(not failures, failures)


class Identification:
    """φ: M* ⊗ N -> Chom(M, N), [φ(f⊗n)](m) = (1 ⊗ S(g_{f,m})) ⊗_H n."""

    def __init__(self, dual, rep_n):
        self.dual = dual
        self.rep_n = rep_n
        self.tensor = TensorAction(dual.dual_rep, rep_n)

    def evaluate(self, fn, m):
        alg = self.dual.T.alg
        raw = []
        for (fkey, nkey), c in fn.terms.items():
            f = ModuleElement(self.dual.module, {fkey: Fraction(1)})
            g = self.dual.evaluate(f, m)
            for (I, _), d in g.terms.items():
                raw.append(((alg.one(), alg.mono(I).antipode()), {nkey: c * d}))
        return normalize(self.rep_n.module, 2, raw)

    def module_map_defect(self, a, fn, m):
        """φ(a*(f⊗n))(m) minus (a*φ(f⊗n))(m) computed by the Chom action."""
        lhs = compose_left(self.tensor.action, self.evaluate, a, fn, m)
        first = compose_right(self.evaluate, self.rep_n.action, a, fn, m)
        second = swap12(compose_right(self.dual.rep.action, self.evaluate, fn, a, m))
        return _sum3(lhs, -first, second)
