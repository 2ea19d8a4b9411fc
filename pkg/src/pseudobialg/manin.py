"""Bilinear pseudo-forms, Manin triples and the double L ⊕ L*."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .bialgebra import Cobracket, coboundary_delta, cobracket_to_pseudobracket, cobracket_locality, \
    cybe_check, dualize_to_cobracket
from .hopf import add_into, compositions
from .pseudoalg import BracketTable, Report, check_lie_axioms, compose_left, compose_right, extend_bracket
from .pseudotensor import FreeModule, ModuleElement, PseudoTensor, TensorModule, TrivialModule, normalize, \
    swap12, to_basis_form


class PseudoForm:
    """⟨a_i, a_j⟩ = (h_ij ⊗ 1) ⊗_H 1, stored as {(i, j): HopfElement}."""

    def __init__(self, alg, labels, table):
        self.alg = alg
        self.labels = tuple(labels)
        self.table = {k: v for k, v in table.items() if v}
        self.trivial = TrivialModule(alg)

    def entry(self, i, j):
        return self.table.get((i, j), self.alg.zero())

    def evaluate(self, u, w):
        raw = []
        for (I, i), c in u.terms.items():
            for (J, j), d in w.terms.items():
                h = self.entry(i, j)
                if h:
                    raw.append(((self.alg.mono(I) * h, self.alg.mono(J)), {(): c * d}))
        return normalize(self.trivial, 2, raw)

    def matrix(self):
        return [[self.entry(i, j) for j in self.labels] for i in self.labels]


def invert_over_h(matrix):
    """Two-sided inverse of a square matrix over H by unit-pivot elimination, or None.

    Units of U(d) are the nonzero scalars, so a pivot must be a constant.
    """
    n = len(matrix)
    if n == 0:
        return []
    alg = next(h.alg for row in matrix for h in row)
    work = [list(row) + [alg.one() if i == j else alg.zero() for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if _is_unit(work[r][col])), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        inv = Fraction(1) / work[col][col].counit()
        work[col] = [inv * h for h in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


def _is_unit(h):
    return h.degree() == 0


def check_form(F, T):
    """Symmetry, invariance ⟨[a*b],c⟩ = ⟨a,[b*c]⟩ and nondegeneracy."""
    failures = []
    symmetric = True
    for i, j in itertools.product(F.labels, repeat=2):
        if F.entry(i, j) != F.entry(j, i).antipode():
            symmetric = False
            failures.append(("symmetric", (i, j), F.entry(i, j)))
    basis = {i: T.basis(i) for i in T.labels}
    bracket = lambda u, v: extend_bracket(T, u, v)
    invariant = True
    for i, j, k in itertools.product(T.labels, repeat=3):
        a, b, c = basis[i], basis[j], basis[k]
        lhs = compose_left(bracket, F.evaluate, a, b, c)
        rhs = compose_right(bracket, F.evaluate, a, b, c)
        if lhs.terms != rhs.terms:
            invariant = False
            failures.append(("invariant", (i, j, k), lhs - rhs))
    nondegenerate = invert_over_h(F.matrix()) is not None
    if not nondegenerate:
        failures.append(("nondegenerate", None, None))
    return Report(not failures, failures,
                  {"symmetric": symmetric, "invariant": invariant, "nondegenerate": nondegenerate})


def symmetric_via_swap(F):
    """Symmetry computed on evaluated forms rather than stored entries."""
    for i, j in itertools.product(F.labels, repeat=2):
        module = FreeModule(F.alg, F.labels)
        u, w = module.basis(i), module.basis(j)
        if F.evaluate(u, w) != swap12(F.evaluate(w, u)):
            return False
    return True


@dataclass
class ManinTriple:
    table: BracketTable
    left: dict
    right: dict
    form: PseudoForm

    def restrict(self, side):
        """Bracket table of one summand, relabelled by the original labels."""
        mapping = self.left if side == "left" else self.right
        back = {v: k for k, v in mapping.items()}
        module = FreeModule(self.table.alg, tuple(mapping))
        entries = {}
        for i, ri in mapping.items():
            for j, rj in mapping.items():
                t = self.table.entries[(ri, rj)]
                out = {}
                for (I, (J, lab)), c in t.terms.items():
                    if lab not in back:
                        raise ValueError(f"{side} summand is not a subalgebra")
                    add_into(out, {(I, (J, back[lab])): c})
                entries[(i, j)] = PseudoTensor(2, module, out)
        return BracketTable(self.table.alg, tuple(mapping), entries)


def double_labels(labels):
    r = len(labels)
    left = {l: n + 1 for n, l in enumerate(labels)}
    right = {l: r + n + 1 for n, l in enumerate(labels)}
    return left, right


def _relabel(t, mapping, module):
    out = {}
    for (I, (J, lab)), c in t.terms.items():
        add_into(out, {(I, (J, mapping[lab])): c})
    return PseudoTensor(2, module, out)


def manin_from_bialgebra(T, C):
    alg = T.alg
    left, right = double_labels(T.labels)
    labels = tuple(left.values()) + tuple(right.values())
    module = FreeModule(alg, labels, name="D")
    dual_table = cobracket_to_pseudobracket(C, max(cobracket_locality(C) - 1, 0))
    entries = {}
    for i in T.labels:
        for j in T.labels:
            entries[(left[i], left[j])] = _relabel(T.entries[(i, j)], left, module)
            entries[(right[i], right[j])] = _relabel(dual_table.entries[(i, j)], right, module)
    basis_l = {key: to_basis_form(t) for key, t in T.entries.items()}
    basis_d = {key: to_basis_form(t) for key, t in dual_table.entries.items()}
    for i in T.labels:
        for j in T.labels:
            raw = []
            # Σ_s (S(l_(2)) ⊗ h S(l_(1))) ⊗_H e*_s over the e_i-part of [e_j*e_s]
            for s in T.labels:
                tp = basis_l[(j, s)].get(i)
                if tp is None:
                    continue
                for (h, l), c in tp.terms.items():
                    for l1, l2 in compositions(l, 2):
                        first = alg.antipode_mono(l2)
                        second = alg.mul_terms({h: Fraction(1)}, alg.antipode_mono(l1))
                        raw.append(((first, second), {(alg.zero_index(), right[s]): c}))
            # - Σ_r (f S(g_(1)) ⊗ S(g_(2))) ⊗_H e_r over the e*_j-part of [e*_i*e*_r]
            for r in T.labels:
                tp = basis_d[(i, r)].get(j)
                if tp is None:
                    continue
                for (f, g), c in tp.terms.items():
                    for g1, g2 in compositions(g, 2):
                        first = alg.mul_terms({f: Fraction(1)}, alg.antipode_mono(g1))
                        second = alg.antipode_mono(g2)
                        raw.append(((first, second), {(alg.zero_index(), left[r]): -c}))
            mixed = normalize(module, 2, raw)
            entries[(right[i], left[j])] = mixed
            entries[(left[j], right[i])] = -swap12(mixed)
    R = BracketTable(alg, labels, entries, name="D")
    table = {}
    for l in T.labels:
        table[(left[l], right[l])] = alg.one()
        table[(right[l], left[l])] = alg.one()
    return ManinTriple(R, left, right, PseudoForm(alg, labels, table))


def check_manin(M):
    """Closure of both halves, isotropy, form checks and Jacobi on the whole."""
    failures = []
    for side in ("left", "right"):
        try:
            M.restrict(side)
        except ValueError as exc:
            failures.append(("closure", side, str(exc)))
    for mapping in (M.left, M.right):
        for i, j in itertools.product(mapping.values(), repeat=2):
            if M.form.entry(i, j):
                failures.append(("isotropy", (i, j), M.form.entry(i, j)))
    form = check_form(M.form, M.table)
    failures.extend(form.failures)
    lie = check_lie_axioms(M.table)
    failures.extend(lie.failures)
    return Report(not failures, failures, form.info)


def _pairing_is_identity(M):
    for l, i in M.left.items():
        for m, j in M.right.items():
            want = M.form.alg.one() if l == m else M.form.alg.zero()
            if M.form.entry(j, i) != want or M.form.entry(i, j) != want:
                return False
    return True


def bialgebra_from_manin(M):
    """Bracket on the first summand and the cobracket induced by duality with the second."""
    for mapping in (M.left, M.right):
        for i, j in itertools.product(mapping.values(), repeat=2):
            if M.form.entry(i, j):
                raise ValueError("isotropy fails")
    if not _pairing_is_identity(M):
        raise ValueError("pairing between the summands must be the identity block")
    T = M.restrict("left")
    dual = M.restrict("right")
    C = dualize_to_cobracket(dual, name=T.module.name)
    return T, C


def canonical_r(M):
    square = TensorModule(M.table.module, M.table.module)
    zero = M.table.alg.zero_index()
    return ModuleElement(square, {((zero, M.left[l]), (zero, M.right[l])): Fraction(1) for l in M.left})


@dataclass
class Double:
    manin: ManinTriple
    table: BracketTable
    cobracket: Cobracket
    r: ModuleElement


def double(T, C):
    M = manin_from_bialgebra(T, C)
    r = canonical_r(M)
    return Double(M, M.table, coboundary_delta(M.table, r), r)


def _embed(C, mapping, module_labels, alg, sign=1):
    square = TensorModule(FreeModule(alg, module_labels), FreeModule(alg, module_labels))
    out = {}
    for l, v in C.values.items():
        terms = {((I, mapping[i]), (J, mapping[j])): sign * c for ((I, i), (J, j)), c in v.terms.items()}
        out[mapping[l]] = ModuleElement(square, terms)
    return out


def double_restrictions(T, C, D):
    """Compare δ_double with δ_L on L and with -δ_{L*} on L*."""
    alg = T.alg
    labels = D.table.labels
    on_l = _embed(C, D.manin.left, labels, alg)
    dual_c = dualize_to_cobracket(T)
    on_dual = _embed(dual_c, D.manin.right, labels, alg, sign=-1)
    failures = []
    for lab, want in on_l.items():
        if D.cobracket.values[lab].terms != want.terms:
            failures.append(("restriction-L", lab, D.cobracket.values[lab] - want))
    for lab, want in on_dual.items():
        if D.cobracket.values[lab].terms != want.terms:
            failures.append(("restriction-L*", lab, D.cobracket.values[lab] - want))
    return Report(not failures, failures)


def double_report(T, C):
    D = double(T, C)
    report = cybe_check(D.table, D.r)
    return D, report
