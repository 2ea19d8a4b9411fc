"""Lie H-coalgebras, cobrackets from brackets and back, cocycles, coboundaries and the CYBE."""
from __future__ import annotations

import itertools
from fractions import Fraction

from .dual import DualElement, TruncationInsufficient, pair
from .hopf import TensorPower, add_into, compositions, coproduct_terms
from .pseudoalg import Adjoint, BracketTable, Report, TensorAction, extend_bracket, reconstruct
from .pseudotensor import (
    FreeModule,
    ModuleElement,
    PseudoTensor,
    TensorModule,
    h_act,
    normalize,
    permute,
    swap12,
    to_basis_form,
)


class Cobracket:
    """δ on a free module, stored on basis labels as elements of L⊗L.

    k-basis keys of L⊗L are pairs ((I, i), (J, j)) meaning D^(I)a_i ⊗ D^(J)a_j;
    δ(h a) = Δ(h) δ(a).
    """

    def __init__(self, alg, labels, values, name="L"):
        self.alg = alg
        self.labels = tuple(labels)
        self.module = FreeModule(alg, self.labels, name=name)
        self.square = TensorModule(self.module, self.module)
        self.values = {}
        for label in self.labels:
            v = values.get(label)
            terms = v.terms if isinstance(v, ModuleElement) else (v or {})
            self.values[label] = ModuleElement(self.square, terms)
        self._cache = {}

    @classmethod
    def from_tensor_form(cls, alg, labels, data, name="L"):
        """data: {i: {(j, k): TensorPower(2)}} meaning δ(a_i) = Σ (f⊗g)(a_j⊗a_k)."""
        values = {}
        for i, by_pair in data.items():
            out = {}
            for (j, k), tp in by_pair.items():
                for (f, g), c in tp.terms.items():
                    add_into(out, {((f, j), (g, k)): c})
            values[i] = out
        return cls(alg, labels, values, name)

    def tensor_form(self):
        out = {}
        for i, v in self.values.items():
            for ((f, j), (g, k)), c in v.terms.items():
                out.setdefault(i, {}).setdefault((j, k), {})[(f, g)] = c
        return {i: {jk: TensorPower(self.alg, 2, t) for jk, t in d.items()} for i, d in out.items()}

    def on_key(self, key):
        hit = self._cache.get(key)
        if hit is None:
            index, label = key
            hit = {}
            for k, c in self.values[label].terms.items():
                add_into(hit, self.square.act({index: Fraction(1)}, k), c)
            self._cache[key] = hit
        return hit

    def apply(self, u):
        out = {}
        for key, c in u.terms.items():
            add_into(out, self.on_key(key), c)
        return ModuleElement(self.square, out)

    def __eq__(self, other):
        return (isinstance(other, Cobracket) and self.labels == other.labels
                and all(self.values[i] == other.values[i] for i in self.labels))

    def __hash__(self):
        return id(self)

    def is_zero(self):
        return not any(self.values.values())


def zero_cobracket(alg, labels, name="L"):
    return Cobracket(alg, labels, {}, name)


def flip(element, module=None):
    """σ on L⊗L: swap both the tensor factors."""
    return ModuleElement(module or element.module, {(k[1], k[0]): c for k, c in element.terms.items()})


# -- action combinators ------------------------------------------------------

def mu_act(h, element, slots=None, antipode=False):
    """Let h act on the given (0-based) slots of a tensor element via the iterated
    coproduct; with ``antipode`` the element S(h) acts instead.

    slots=None is μ (all slots), a single slot with antipode=True is μ_{-k}^l,
    two slots is μ_k^{r,s}.
    """
    module = element.module
    alg = module.alg
    h_terms = h.terms if hasattr(h, "terms") else h
    if antipode:
        h_terms = alg.antipode_terms(h_terms)
    width = len(module.factors)
    slots = tuple(range(width)) if slots is None else tuple(slots)
    if not slots or len(set(slots)) != len(slots) or not all(0 <= s < width for s in slots):
        raise ValueError(f"malformed slot selection {slots}")
    out = {}
    for split, c in coproduct_terms(h_terms, len(slots)).items():
        for key, d in element.terms.items():
            pieces = []
            for pos, sub in enumerate(key):
                if pos in slots:
                    part = split[slots.index(pos)]
                    pieces.append(module.factors[pos].act({part: Fraction(1)}, sub))
                else:
                    pieces.append({sub: Fraction(1)})
            for combo in itertools.product(*(p.items() for p in pieces)):
                coef = c * d
                for _, e in combo:
                    coef *= e
                add_into(out, {tuple(k for k, _ in combo): coef})
    return ModuleElement(module, out)


# -- coalgebra axioms --------------------------------------------------------

def _id_tensor_delta(C, x, cube):
    out = {}
    for (k1, k2), c in x.terms.items():
        for (p, q), d in C.on_key(k2).items():
            add_into(out, {(k1, p, q): c * d})
    return ModuleElement(cube, out)


def _delta_tensor_id(C, x, cube):
    out = {}
    for (k1, k2), c in x.terms.items():
        for (p, q), d in C.on_key(k1).items():
            add_into(out, {(p, q, k2): c * d})
    return ModuleElement(cube, out)


def check_coalgebra(C):
    """Skew-symmetry of δ and (I⊗δ)δ - τ12(I⊗δ)δ = (δ⊗I)δ on each generator."""
    cube = TensorModule(C.module, C.module, C.module)
    failures = []
    for i in C.labels:
        v = C.values[i]
        wedge = v + flip(v)
        if wedge:
            failures.append(("wedge", i, wedge))
        left = _id_tensor_delta(C, v, cube)
        swapped = ModuleElement(cube, {(k[1], k[0], k[2]): c for k, c in left.terms.items()})
        defect = left - swapped - _delta_tensor_id(C, v, cube)
        if defect:
            failures.append(("co-jacobi", i, defect))
    return Report(not failures, failures)


# -- duality -------------------------------------------------------------------

def dualize_to_cobracket(T, name=None):
    """δ(a^k) = Σ S(h) a^i ⊗ S(l) a^j where [a_i*a_j] = Σ_k (h⊗l) ⊗_H a_k."""
    alg = T.alg
    values = {k: {} for k in T.labels}
    for (i, j), entry in T.entries.items():
        for k, tp in to_basis_form(entry).items():
            for (h, l), c in tp.terms.items():
                sh, sl = alg.antipode_mono(h), alg.antipode_mono(l)
                for p, x in sh.items():
                    for q, y in sl.items():
                        add_into(values[k], {((p, i), (q, j)): c * x * y})
    return Cobracket(alg, T.labels, values, name or (T.module.name + "*"))


def dual_x_bracket_values(C, i, j, x):
    """Values of the functional [a^i_x a^j] on the generators, by y-coefficient.

    Returns {k: {J: rational}}, the coefficient of t_J in
    [a^i_x a^j]_y(a_k) = Σ a^i_{x(2)}(r_(1)) a^j_{y x(-1)}(r_(2)).
    """
    alg = C.alg
    out = {}
    for k in C.labels:
        acc = {}
        for ((M, p), (M2, q)), c in C.values[k].terms.items():
            if p != i or q != j:
                continue
            for J, Q in compositions(M2, 2):
                val = pair(x, alg.mul_terms(alg.antipode_mono(Q), {M: Fraction(1)}))
                if val:
                    add_into(acc, {J: c * val})
        if acc:
            out[k] = acc
    return out


def cobracket_locality(C):
    """Degree beyond which all x-brackets of dual basis functionals vanish."""
    return max((sum(M) + sum(M2) for v in C.values.values() for ((M, _), (M2, _)) in v.terms), default=-1) + 1


def cobracket_to_pseudobracket(C, cutoff, name=None):
    """Pseudobracket on the dual module from x-brackets for x = t_I, |I| <= cutoff."""
    needed = cobracket_locality(C) - 1
    if cutoff < needed:
        raise TruncationInsufficient(needed, cutoff)
    alg = C.alg
    module = FreeModule(alg, C.labels, name=name or (C.module.name + "*"))
    entries = {}
    for i in C.labels:
        for j in C.labels:
            coefficients = {}
            for I in alg.monomials(cutoff):
                values = dual_x_bracket_values(C, i, j, DualElement.basis(alg, I))
                terms = {}
                for k, by_J in values.items():
                    for J, c in by_J.items():
                        for s, d in alg.antipode_mono(J).items():
                            add_into(terms, {(s, k): c * d})
                if terms:
                    coefficients[I] = ModuleElement(module, terms)
            entries[(i, j)] = reconstruct(alg, module, coefficients)
    return BracketTable(alg, C.labels, entries, name=module.name)


def round_trip_discrepancy(T, cutoff=None):
    """Bracket recovered by dualizing twice, minus the original, entrywise."""
    C = dualize_to_cobracket(T)
    back = cobracket_to_pseudobracket(C, cobracket_locality(C) - 1 if cutoff is None else cutoff)
    out = {}
    for key, entry in T.entries.items():
        d = PseudoTensor(2, T.module, back.entries[key].terms) - entry
        if d:
            out[key] = d
    return out


# -- cocycle condition -------------------------------------------------------

def check_cocycle(T, C):
    """a*δ(b) - (σ⊗_H id) b*δ(a) = δ([a*b]) for all basis pairs."""
    ad = Adjoint(T)
    rep = TensorAction(ad, ad)
    failures = []
    for i in T.labels:
        for j in T.labels:
            a, b = T.basis(i), T.basis(j)
            lhs = rep.action(a, C.apply(b)) - swap12(rep.action(b, C.apply(a)))
            rhs = extend_bracket(T, a, b).map_module(C.on_key, rep.module)
            d = lhs - PseudoTensor(2, lhs.module, rhs.terms)
            if d:
                failures.append(("cocycle", (i, j), d))
    return Report(not failures, failures)


# -- reduced cochains ----------------------------------------------------------

class Cochain:
    """H-polylinear map L^{⊗n} -> H^{⊗n} ⊗_H M, stored on basis label tuples.

    For n = 0 the single value under the key () is a module element m,
    standing for 1 ⊗_H m.
    """

    def __init__(self, n, T, rep, values):
        self.n = n
        self.T = T
        self.rep = rep
        self.values = values

    def value(self, labels):
        v = self.values.get(tuple(labels))
        return v if v is not None else PseudoTensor(self.n, self.rep.module, {})

    def evaluate(self, *args):
        out = {}
        for combo in itertools.product(*(a.terms.items() for a in args)):
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            labels = tuple(key[1] for key, _ in combo)
            base = self.value(labels)
            if not base:
                continue
            moved = h_act(tuple({key[0]: Fraction(1)} for key, _ in combo), base)
            add_into(out, moved.terms, coef)
        return PseudoTensor(self.n, self.rep.module, out)

    def __eq__(self, other):
        keys = set(self.values) | set(other.values)
        return all(self.value(k) == other.value(k) for k in keys)

    def is_zero(self):
        return not any(self.values.values())


def cochain_from_cobracket(T, C):
    rep = TensorAction(Adjoint(T), Adjoint(T))
    values = {(i,): PseudoTensor(1, rep.module, {(k,): c for k, c in C.values[i].terms.items()})
              for i in T.labels}
    return Cochain(1, T, rep, values)


def _shift_perm(n, i):
    """σ_{1→i} on n slots (1-based i): input slot 0 goes to i-1, 1..i-1 shift down."""
    perm = list(range(n))
    perm[0] = i - 1
    for k in range(1, i):
        perm[k] = k - 1
    return tuple(perm)


def _pair_perm(n, i, j):
    """σ_{1→i, 2→j}: input slots 0, 1 go to i-1, j-1; the rest fill in order."""
    rest = [s for s in range(n) if s not in (i - 1, j - 1)]
    return (i - 1, j - 1) + tuple(rest)


def _prepend_action(rep, a, t):
    """a*(f ⊗_H m) = (1⊗f)(id⊗Δ^{(n-1)})(a*m) in canonical form."""
    out = {}
    cache = {}
    for key, c in t.terms.items():
        mkey = key[-1]
        inner = cache.get(mkey)
        if inner is None:
            inner = cache[mkey] = rep.action(a, ModuleElement(rep.module, {mkey: Fraction(1)}))
        for (G, m2), d in inner.terms.items():
            add_into(out, {(G,) + key[:-1] + (m2,): c * d})
    return PseudoTensor(t.n + 1, rep.module, out)


def _insert_bracket(alg, G, t):
    """γ((g ⊗_H c) ⊗ ...) = (g⊗1..)(Δ⊗id..)(γ(c, ...)) for g = D^(G)⊗1."""
    out = {}
    for key, c in t.terms.items():
        if t.n == 1:
            add_into(out, {(G, key[-1]): c})
            continue
        first = key[0]
        for p, q in compositions(first, 2):
            for s, d in alg.mul_mono(G, p).items():
                add_into(out, {(s, q) + key[1:]: c * d})
    return PseudoTensor(t.n + 1, t.module, out)


def _check_skew(gamma):
    if gamma.n != 2:
        return
    for i, j in itertools.combinations_with_replacement(gamma.T.labels, 2):
        if gamma.value((j, i)) != -swap12(gamma.value((i, j))):
            raise ValueError(f"cochain is not skew-symmetric at {(i, j)}")


def cochain_differential(gamma):
    """The reduced differential on cochains of degree 0, 1 or 2."""
    T, rep, n = gamma.T, gamma.rep, gamma.n
    alg = T.alg
    if n == 0:
        m = gamma.values.get((), ModuleElement(rep.module, {}))
        values = {}
        for i in T.labels:
            out = {}
            for (I, key), c in rep.action(T.basis(i), m).terms.items():
                add_into(out, {(k,): c * d for k, d in rep.module.act({I: Fraction(1)}, key).items()})
            values[(i,)] = PseudoTensor(1, rep.module, out)
        return Cochain(1, T, rep, values)
    if n > 2:
        raise ValueError("differential implemented for cochains of degree at most 2")
    _check_skew(gamma)
    values = {}
    for labels in itertools.product(T.labels, repeat=n + 1):
        args = [T.basis(l) for l in labels]
        total = PseudoTensor(n + 1, rep.module, {})
        for i in range(1, n + 2):
            rest = args[:i - 1] + args[i:]
            inner = _prepend_action(rep, args[i - 1], gamma.evaluate(*rest))
            term = permute(_shift_perm(n + 1, i), inner) if i > 1 else inner
            total = total + term * (-1) ** (i + 1)
        for i, j in itertools.combinations(range(1, n + 2), 2):
            rest = [args[k] for k in range(n + 1) if k not in (i - 1, j - 1)]
            br = extend_bracket(T, args[i - 1], args[j - 1])
            acc = PseudoTensor(n + 1, rep.module, {})
            for (G, ckey), c in br.terms.items():
                val = gamma.evaluate(ModuleElement(T.module, {ckey: Fraction(1)}), *rest)
                acc = acc + _insert_bracket(alg, G, val) * c
            perm = _pair_perm(n + 1, i, j)
            if perm != tuple(range(n + 1)):
                acc = permute(perm, acc)
            total = total + acc * (-1) ** (i + j)
        if total:
            values[labels] = total
    return Cochain(n + 1, T, rep, values)


# -- coboundary structures -------------------------------------------------------

def r_element(T, data):
    """r = Σ (f⊗g)(a_i⊗a_j) from {(i, j): TensorPower(2)} as an element of L⊗L."""
    square = TensorModule(T.module, T.module)
    out = {}
    for (i, j), tp in data.items():
        for (f, g), c in tp.terms.items():
            add_into(out, {((f, i), (g, j)): c})
    return ModuleElement(square, out)


def r_tensor_form(r):
    out = {}
    for ((f, i), (g, j)), c in r.terms.items():
        out.setdefault((i, j), {})[(f, g)] = c
    alg = r.module.alg
    return {k: TensorPower(alg, 2, v) for k, v in out.items()}


def coboundary_delta(T, r):
    """δ_r(a) = Σ μ([a, a_i] ⊗ b_i + σ12(a_i ⊗ [a, b_i])) with [a, b] the Fourier form of [a*b]."""
    square = TensorModule(T.module, T.module)
    values = {}
    for i in T.labels:
        a = T.basis(i)
        out = {}
        for (k1, k2), c in r.terms.items():
            for (G, ck), d in extend_bracket(T, a, ModuleElement(T.module, {k1: Fraction(1)})).terms.items():
                add_into(out, square.act({G: Fraction(1)}, (ck, k2)), c * d)
            for (G, ck), d in extend_bracket(T, a, ModuleElement(T.module, {k2: Fraction(1)})).terms.items():
                add_into(out, square.act({G: Fraction(1)}, (k1, ck)), c * d)
        values[i] = out
    return Cobracket(T.alg, T.labels, values, T.module.name)


def coboundary_via_differential(T, r):
    rep = TensorAction(Adjoint(T), Adjoint(T))
    d = cochain_differential(Cochain(0, T, rep, {(): ModuleElement(rep.module, r.terms)}))
    values = {i: {k[0]: c for k, c in d.value((i,)).terms.items()} for i in T.labels}
    return Cobracket(T.alg, T.labels, values, T.module.name)


def _fourier_bracket(T, k1, k2):
    return extend_bracket(T, ModuleElement(T.module, {k1: Fraction(1)}),
                          ModuleElement(T.module, {k2: Fraction(1)})).terms.items()


def classical_yang_baxter(T, r):
    """[[r, r]] in L⊗L⊗L."""
    alg = T.alg
    L = T.module
    cube = TensorModule(L, L, L)
    out = {}
    terms = list(r.terms.items())

    def s_act(G, key):
        return L.act(alg.antipode_mono(G), key)

    for (ai, bi), ci in terms:
        for (aj, bj), cj in terms:
            w = ci * cj
            # μ_{-1}^3([a_j, a_i] ⊗ b_j ⊗ b_i)
            for (G, ck), d in _fourier_bracket(T, aj, ai):
                for k, e in s_act(G, bj).items():
                    add_into(out, {(ck, k, bi): w * d * e})
            # - μ_{-2}^4(a_i ⊗ [a_j, b_i] ⊗ b_j)
            for (G, ck), d in _fourier_bracket(T, aj, bi):
                for k, e in s_act(G, bj).items():
                    add_into(out, {(ai, ck, k): -w * d * e})
            # - μ_{-3}^2(a_i ⊗ a_j ⊗ [b_j, b_i])
            for (G, ck), d in _fourier_bracket(T, bj, bi):
                for k, e in s_act(G, aj).items():
                    add_into(out, {(ai, k, ck): -w * d * e})
    return ModuleElement(cube, out)


class _CounitKeys:
    """Label tuples with H acting through the counit; realizes the quotient by H₊."""

    def __init__(self, alg):
        self.alg = alg

    def act(self, h, key):
        c = self.alg.counit_terms(h)
        return {key: c} if c else {}


def hplus_reduce(x):
    """Normal form of x ∈ L^{⊗n} modulo H₊·L^{⊗n}: the last slot carries a bare label.

    H acts on the left of each slot while ⊗_H quotients on the right, so every
    slot passes through S first; S is an anti-automorphism and Δ is cocommutative.
    """
    module = x.module
    alg = module.alg
    n = len(module.factors)
    raw = []
    for key, c in x.terms.items():
        slots = [alg.antipode_mono(index) for index, _ in key]
        raw.append((slots, {tuple(label for _, label in key): c}))
    return normalize(_CounitKeys(alg), n, raw)


def _invariance_defect(T, s):
    """δ_s(a) on each basis element."""
    return {i: v for i, v in coboundary_delta(T, s).values.items() if v}


def cybe_check(T, r):
    """Conditions for δ_r to be a pseudo-bialgebra structure, plus quasitriangularity."""
    sym = r + flip(r)
    sym_defect = _invariance_defect(T, sym)
    rr = classical_yang_baxter(T, r)
    ad = Adjoint(T)
    rep3 = TensorAction(ad, ad, ad)
    mod_defect = {}
    for i in T.labels:
        out = {}
        for (I, key), c in rep3.action(T.basis(i), ModuleElement(rep3.module, rr.terms)).terms.items():
            add_into(out, rep3.module.act({I: Fraction(1)}, key), c)
        if any(out.values()):
            mod_defect[i] = ModuleElement(rep3.module, out)
    reduced = hplus_reduce(rr)
    invariance = not sym_defect
    cybe_mod = not mod_defect
    return {
        "invariance": invariance,
        "invariance_defect": sym_defect,
        "rr": rr,
        "cybe_mod": cybe_mod,
        "cybe_mod_defect": mod_defect,
        "rr_reduced": reduced,
        "quasitriangular": invariance and not reduced,
    }


def coboundary_is_bialgebra(T, r):
    """Direct route: δ_r passes the coalgebra and cocycle checks."""
    C = coboundary_delta(T, r)
    return bool(check_coalgebra(C)) and bool(check_cocycle(T, C))
