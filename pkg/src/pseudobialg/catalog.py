"""Concrete pseudoalgebras: current algebras, the rank 2 solvable family and gc_n."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bialgebra import (
    Cobracket,
    check_coalgebra,
    check_cocycle,
    coboundary_delta,
    flip,
    r_element,
)
from .hopf import LieAlgebraPresentation, TensorPower, add_into, compositions, coproduct_terms, validate_lie
from .pseudoalg import BracketTable, check_lie_axioms
from .pseudotensor import FreeModule, normalize, swap12


@dataclass
class CatalogEntry:
    name: str
    table: BracketTable
    cobracket: Cobracket | None = None
    r: object = None
    note: str = ""
    verdicts: dict = field(default_factory=dict)


def build_current(g, alg, classical_cobracket=None, name=None):
    """Cur(g) = H ⊗ g with [(1⊗a)*(1⊗b)] = (1⊗1) ⊗_H (1⊗[a,b]).

    ``g`` is a LieAlgebraPresentation used only for its structure constants;
    generators of the free module are labelled 1..dim g.
    ``classical_cobracket`` maps a 0-based index to {(j, k): c}.
    """
    bad = validate_lie(g)
    if bad:
        raise ValueError(f"not a Lie algebra: Jacobi fails at {bad[0]}")
    labels = tuple(range(1, g.dim + 1))
    module = FreeModule(alg, labels)
    one = alg.zero_index()
    entries = {}
    for i in labels:
        for j in labels:
            vec = g.bracket.get((i - 1, j - 1), {})
            raw = [((alg.one(), alg.one()), {(one, k + 1): c}) for k, c in vec.items()]
            entries[(i, j)] = normalize(module, 2, raw)
    table = BracketTable(alg, labels, entries, name=name or "Cur")
    entry = CatalogEntry(name or "Cur", table, note="current pseudoalgebra over a finite Lie algebra")
    if classical_cobracket is not None:
        values = {}
        for i, by_pair in classical_cobracket.items():
            values[i + 1] = {((one, j + 1), (one, k + 1)): Fraction(c) for (j, k), c in by_pair.items()}
        C = Cobracket(alg, labels, values, table.module.name)
        if not check_coalgebra(C) or not check_cocycle(table, C):
            raise ValueError("classical cobracket is not a Lie bialgebra structure")
        entry.cobracket = C
    _certify(entry)
    return entry


def solvable_table(alg, p, name="L_p"):
    """L_p = Ha ⊕ Hb (labels 1, 2) with [a*b] = (p⊗1) ⊗_H b."""
    module = FreeModule(alg, (1, 2))
    ab = normalize(module, 2, [((p, alg.one()), {(alg.zero_index(), 2): Fraction(1)})])
    entries = {(1, 2): ab, (2, 1): -swap12(ab)}
    return BracketTable(alg, (1, 2), entries, name=name)


def solvable_cobracket(alg, h):
    """δ_h(a) = 0, δ_h(b) = S(h)a ⊗ b - b ⊗ S(h)a."""
    sh = h.antipode()
    one = alg.zero_index()
    out = {}
    for idx, c in sh.terms.items():
        add_into(out, {((idx, 1), (one, 2)): c, ((one, 2), (idx, 1)): -c})
    return Cobracket(alg, (1, 2), {2: out}, "L_p")


def _antipode_sides(p, h):
    alg = p.alg
    w = h.antipode() * p
    left, right = {}, {}
    for (u, v), c in coproduct_terms(w.terms, 2).items():
        for s, d in alg.antipode_mono(u).items():
            add_into(left, {(s, v): c * d})
        for s, d in alg.antipode_mono(v).items():
            add_into(right, {(u, s): c * d})
    return w, left, right


def antisymmetric_condition(p, h):
    """(S⊗1)Δw = -(1⊗S)Δw for w = S(h)p; sufficient for the cocycle property, not necessary."""
    _, left, right = _antipode_sides(p, h)
    add_into(left, right)
    return not any(left.values())


def solvable_cocycle_condition(p, h):
    """(S⊗1)Δw + (1⊗S)Δw = 2ε(w) 1⊗1 for w = S(h)p: exactly when δ_h is a cocycle on L_p."""
    w, left, right = _antipode_sides(p, h)
    add_into(left, right)
    one = p.alg.zero_index()
    add_into(left, {(one, one): -2 * w.counit()})
    return not any(left.values())


def build_solvable(p, h=None, name=None):
    alg = p.alg
    table = solvable_table(alg, p, name or "L_p")
    entry = CatalogEntry(name or "L_p", table, note="rank 2 solvable pseudoalgebra")
    if h is not None:
        entry.cobracket = solvable_cobracket(alg, h)
        holds = solvable_cocycle_condition(p, h)
        entry.verdicts["compatibility"] = holds
        entry.verdicts["antisymmetric"] = antisymmetric_condition(p, h)
        if holds and h.antipode() == -h:
            half = Fraction(1, 2)
            entry.r = r_element(table, {
                (1, 1): TensorPower.pure(alg.one(), h) * half - TensorPower.pure(h, alg.one()) * half,
            })
            entry.verdicts["coboundary"] = coboundary_delta(table, entry.r) == entry.cobracket
            entry.verdicts["coboundary_of_flip"] = coboundary_delta(table, flip(entry.r)) == entry.cobracket
    _certify(entry)
    return entry


def gc_rule(alg, n):
    """Bracket of gc_n on generators (J, p, q) = 1 ⊗ D^(J) ⊗ E_pq."""
    module = FreeModule(alg, None, name="gc")
    one = alg.one()

    def rule(x, y):
        (J, p, q), (K, r, s) = x, y
        raw = []
        if q == r:
            for J1, J2 in compositions(J, 2):
                for M, c in alg.mul_mono(K, J2).items():
                    raw.append(((one, alg.mono(J1)), {(alg.zero_index(), (M, p, s)): c}))
        if s == p:
            for K1, K2 in compositions(K, 2):
                for M, c in alg.mul_mono(J, K2).items():
                    raw.append(((alg.mono(K1), one), {(alg.zero_index(), (M, r, q)): -c}))
        return normalize(module, 2, raw)

    return rule


def build_gc(n, alg, window=2, name=None):
    """gc_n with generators 1 ⊗ D^(J) ⊗ E_pq, axiom checks iterate over |J| <= window."""
    if n < 1:
        raise ValueError("gc_n needs n >= 1")
    labels = tuple((J, p, q) for J in alg.monomials(window) for p in range(n) for q in range(n))
    table = BracketTable(alg, labels, rule=gc_rule(alg, n), name=name or f"gc{n}")
    entry = CatalogEntry(name or f"gc{n}", table, note=f"window {window} on the second tensor factor")
    escaped = window_escape(table, 2 * window)
    if escaped:
        raise ValueError(f"bracket leaves the degree {2 * window} window: {escaped[0]}")
    entry.verdicts["window"] = window
    return entry


def window_escape(table, bound):
    """Label pairs whose bracket involves generators beyond the degree bound."""
    out = []
    for i in table.labels:
        for j in table.labels:
            for key in table.basis_bracket(i, j).terms:
                if sum(key[-1][1][0]) > bound:
                    out.append((i, j, key))
    return out


def broken_fixture(alg):
    """Rank 1 with [a*a] = (1⊗1) ⊗_H a: violates skew-commutativity."""
    module = FreeModule(alg, (1,))
    entry = normalize(module, 2, [((alg.one(), alg.one()), {(alg.zero_index(), 1): Fraction(1)})])
    return CatalogEntry("broken", BracketTable(alg, (1,), {(1, 1): entry}, name="broken"),
                        note="fails skew-commutativity on purpose")


def _certify(entry):
    report = check_lie_axioms(entry.table)
    if not report:
        raise ValueError(f"{entry.name} fails the Lie axioms: {report.failures[0][:2]}")


def nonabelian_2d():
    """U(d) for d with basis D1, D2 and [D1, D2] = D2."""
    return LieAlgebraPresentation(2, {(0, 1, 1): 1})


def default_catalog():
    """Fixtures used by the command line tool and the test suites."""
    k1 = LieAlgebraPresentation(1)
    na = nonabelian_2d()
    t2 = LieAlgebraPresentation(2, {(0, 1, 1): 1})
    D = k1.gen(0)
    entries = [
        build_solvable(k1.one(), D, name="L_1"),
        build_solvable(D, name="L_D"),
        build_solvable(k1.mono((2,)), name="L_D2"),
        build_solvable(na.one(), name="L_1_nonabelian"),
        build_solvable(na.gen(0), name="L_D1_nonabelian"),
        build_current(t2, k1, classical_cobracket={1: {(0, 1): 1, (1, 0): -1}}, name="Cur_T2"),
    ]
    return {e.name: e for e in entries}
