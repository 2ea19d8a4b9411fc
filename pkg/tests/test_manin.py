import pytest

from pseudobialg.bialgebra import check_cocycle, cybe_check, flip, zero_cobracket
from pseudobialg.catalog import default_catalog, nonabelian_2d, solvable_cobracket, solvable_table
from pseudobialg.hopf import LieAlgebraPresentation
from pseudobialg.manin import (
    PseudoForm,
    bialgebra_from_manin,
    check_form,
    check_manin,
    double,
    double_restrictions,
    invert_over_h,
    manin_from_bialgebra,
    symmetric_via_swap,
)
from pseudobialg.pseudoalg import BracketTable, check_lie_axioms

K1 = LieAlgebraPresentation(1)
NA = nonabelian_2d()


def bialgebras():
    cat = default_catalog()
    out = [(e.name, e.table, e.cobracket) for e in cat.values() if e.cobracket is not None]
    x, y = NA.gen(0), NA.gen(1)
    out.append(("na_1_x", solvable_table(NA, NA.one()), solvable_cobracket(NA, x)))
    out.append(("na_y_xy", solvable_table(NA, y), solvable_cobracket(NA, x * y)))
    out.append(("zero", BracketTable(K1, (1, 2)), zero_cobracket(K1, (1, 2))))
    return out


CASES = bialgebras()


def matmul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), A[0][0].alg.zero()) for j in range(n)] for i in range(n)]


def identity(alg, n):
    return [[alg.one() if i == j else alg.zero() for j in range(n)] for i in range(n)]


def test_invert_over_h():
    D = K1.gen(0)
    A = [[K1.one(), D], [K1.zero(), 2 * K1.one()]]
    inv = invert_over_h(A)
    assert matmul(A, inv) == identity(K1, 2) == matmul(inv, A)
    assert invert_over_h([[D]]) is None
    assert invert_over_h([[K1.zero(), K1.one()], [K1.one(), K1.zero()]]) == [[K1.zero(), K1.one()], [K1.one(), K1.zero()]]
    x, y = NA.gen(0), NA.gen(1)
    B = [[NA.one(), x], [y, y * x + NA.one()]]
    inv = invert_over_h(B)
    assert matmul(B, inv) == identity(NA, 2) == matmul(inv, B)


def test_zero_form(k1):
    T = BracketTable(k1, (1, 2))
    report = check_form(PseudoForm(k1, (1, 2), {}), T)
    assert report.info == {"symmetric": True, "invariant": True, "nondegenerate": False}


def test_form_not_symmetric(k1):
    T = BracketTable(k1, (1,))
    F = PseudoForm(k1, (1,), {(1, 1): k1.gen(0)})
    report = check_form(F, T)
    assert not report.info["symmetric"] and not report.info["nondegenerate"]
    assert not symmetric_via_swap(F)
    G = PseudoForm(k1, (1,), {(1, 1): k1.mono((2,))})
    assert check_form(G, T).info["symmetric"] and symmetric_via_swap(G)


@pytest.mark.parametrize("name,T,C", CASES, ids=[c[0] for c in CASES])
def test_manin_from_bialgebra(name, T, C):
    assert check_cocycle(T, C)
    M = manin_from_bialgebra(T, C)
    assert len(M.table.labels) == 2 * len(T.labels)
    assert check_manin(M)
    assert symmetric_via_swap(M.form)
    T2, C2 = bialgebra_from_manin(M)
    assert T2 == T
    assert C2 == C


def test_form_symmetry_two_routes():
    for _, T, C in CASES:
        F = manin_from_bialgebra(T, C).form
        assert check_form(F, manin_from_bialgebra(T, C).table).info["symmetric"] == symmetric_via_swap(F)


def test_non_cocycle_gives_no_lie_double(k1):
    T = solvable_table(k1, k1.one())
    C = solvable_cobracket(k1, k1.mono((2,)))
    M = manin_from_bialgebra(T, C)
    assert not check_lie_axioms(M.table)


def test_isotropy_rejected(k1):
    name, T, C = CASES[0]
    M = manin_from_bialgebra(T, C)
    left = next(iter(M.left.values()))
    M.form.table[(left, left)] = k1.one()
    assert not check_manin(M)
    with pytest.raises(ValueError, match="isotropy"):
        bialgebra_from_manin(M)


@pytest.mark.parametrize("name,T,C", CASES, ids=[c[0] for c in CASES])
def test_double(name, T, C):
    D = double(T, C)
    assert check_lie_axioms(D.table)
    assert double_restrictions(T, C, D)
    report = cybe_check(D.table, D.r)
    assert report["invariance"] and report["cybe_mod"] and report["quasitriangular"]
    # r + r21 is invariant: its coboundary vanishes
    assert not report["invariance_defect"]
    assert flip(flip(D.r)) == D.r
