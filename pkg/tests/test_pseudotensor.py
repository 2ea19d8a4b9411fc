import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pseudobialg.catalog import nonabelian_2d
from pseudobialg.hopf import HopfElement, LieAlgebraPresentation, TensorPower, h_coproduct
from pseudobialg.pseudotensor import (
    FreeModule,
    ModuleElement,
    PseudoTensor,
    TensorModule,
    equals,
    fourier,
    from_basis_form,
    from_tensor,
    h_act,
    normalize,
    permute,
    swap12,
    tensor_elements,
    to_basis_form,
)

K1 = LieAlgebraPresentation(1)
NA = nonabelian_2d()


def raw1(alg, module, slots, label=1, h=None):
    h = h or alg.one()
    return normalize(module, len(slots), [(slots, module.element({label: h}))])


def test_fourier_examples(k1):
    one, D = k1.one(), k1.gen(0)
    assert fourier(TensorPower.pure(one, D)) == TensorPower.pure(one, D) - TensorPower.pure(D, one)
    f = k1.mono((3,))
    assert fourier(TensorPower.pure(f, one)) == TensorPower.pure(f, one)
    x = TensorPower.pure(D, k1.mono((2,)))
    assert fourier(fourier(x), "inverse") == x
    with pytest.raises(ValueError):
        fourier(x, "sideways")


def test_fourier_involution_exhaustive(alg):
    mons = alg.monomials(3)
    for I, J in itertools.product(mons, repeat=2):
        x = TensorPower(alg, 2, {(I, J): 1})
        assert fourier(fourier(x), "inverse") == x
        assert fourier(fourier(x, "inverse")) == x


def test_normalize_examples(k1):
    L = FreeModule(k1, (1,))
    one, D = k1.one(), k1.gen(0)
    got = raw1(k1, L, (one, D))
    assert got == raw1(k1, L, (-D, one)) + raw1(k1, L, (one, one), h=D)
    canonical = raw1(k1, L, (D, one))
    assert canonical.terms == {((1,), ((0,), 1)): 1}
    # three slots: only the last one is rewritten
    assert raw1(k1, L, (one, D, one)).terms == {((0,), (1,), ((0,), 1)): 1}
    got3 = raw1(k1, L, (one, one, D))
    want = raw1(k1, L, (-D, one, one)) + raw1(k1, L, (one, -D, one)) + raw1(k1, L, (one, one, one), h=D)
    assert got3 == want


def test_normalize_slot_count(k1):
    L = FreeModule(k1, (1,))
    with pytest.raises(ValueError):
        normalize(L, 2, [((k1.one(),), L.basis(1))])


def test_equals_examples(k1):
    L = FreeModule(k1, (1,))
    one, D = k1.one(), k1.gen(0)
    s = raw1(k1, L, (one, D))
    assert equals(s, raw1(k1, L, (-D, one)) + raw1(k1, L, (one, one), h=D))
    assert not equals(raw1(k1, L, (D, one)), s)
    assert equals(normalize(L, 2, []), PseudoTensor(2, L, {}))


def test_h_act_examples(k1):
    L = FreeModule(k1, (1,))
    one, D = k1.one(), k1.gen(0)
    h = k1.mono((2,))
    f = k1.gen(0)
    base = raw1(k1, L, (f, one))
    assert h_act((h, one), base) == raw1(k1, L, (h * f, one))
    unit = raw1(k1, L, (one, one))
    assert h_act((one, D), unit) == raw1(k1, L, (-D, one)) + raw1(k1, L, (one, one), h=D)
    square = TensorModule(FreeModule(k1, (1, 2)), FreeModule(k1, (1, 2)))
    ab = tensor_elements(square, FreeModule(k1, (1, 2)).basis(1), FreeModule(k1, (1, 2)).basis(2))
    moved = D @ ab
    assert moved.terms == {(((1,), 1), ((0,), 2)): 1, (((0,), 1), ((1,), 2)): 1}
    with pytest.raises(ValueError):
        h_act((one,), base)


def test_permute_examples(k1):
    L = FreeModule(k1, (1,))
    one, D = k1.one(), k1.gen(0)
    t = raw1(k1, L, (D, one))
    assert swap12(t) == raw1(k1, L, (one, D))
    assert swap12(t) == raw1(k1, L, (-D, one)) + raw1(k1, L, (one, one), h=D)
    assert permute((0, 1), t) == t
    with pytest.raises(ValueError):
        permute((0, 0), t)


def test_basis_form_inverse(alg):
    L = FreeModule(alg, (1, 2))
    mons = alg.monomials(2)
    for I, J, K in itertools.product(mons, repeat=3):
        t = normalize(L, 2, [((alg.mono(I), alg.mono(J)), {(K, 2): Fraction(1)})])
        back = from_basis_form(L, 2, to_basis_form(t))
        assert back == t


def hopf(alg, degree=2):
    mons = alg.monomials(degree)
    coeff = st.integers(-3, 3).filter(bool)
    return st.dictionaries(st.sampled_from(mons), coeff, min_size=1, max_size=3).map(
        lambda d: HopfElement(alg, d))


@st.composite
def raw_case(draw, alg=NA):
    n = draw(st.integers(2, 3))
    slots = tuple(draw(hopf(alg)) for _ in range(n))
    label = draw(st.sampled_from((1, 2)))
    coeff = draw(hopf(alg))
    h = draw(hopf(alg))
    return n, slots, label, coeff, h


def _moved_pair(alg, L, n, slots, label, coeff, h):
    """(f_1..f_n) ⊗_H h·m versus (f_1 h_(1), ..., f_n h_(n)) ⊗_H m."""
    m = L.element({label: coeff})
    left = normalize(L, n, [(slots, h @ m)])
    raw = []
    for split, c in h_coproduct(h, n).terms.items():
        new = tuple(f * alg.mono(s) for f, s in zip(slots, split))
        raw.append((new, m * c))
    return left, normalize(L, n, raw)


@given(raw_case())
def test_relation_invariance(case):
    L = FreeModule(NA, (1, 2))
    left, right = _moved_pair(NA, L, *case)
    assert left == right


@given(raw_case())
def test_normalize_idempotent(case):
    n, slots, label, coeff, _ = case
    L = FreeModule(NA, (1, 2))
    t = normalize(L, n, [(slots, L.element({label: coeff}))])
    again = normalize(L, n, [([{i: 1} for i in s], {k: c}) for s, k, c in t.raw_terms()])
    assert again == t


@given(raw_case(), st.data())
def test_transpositions_are_involutions(case, data):
    n, slots, label, coeff, _ = case
    L = FreeModule(NA, (1, 2))
    t = normalize(L, n, [(slots, L.element({label: coeff}))])
    i, j = data.draw(st.sampled_from([p for p in itertools.combinations(range(n), 2)]))
    perm = list(range(n))
    perm[i], perm[j] = j, i
    assert permute(tuple(perm), permute(tuple(perm), t)) == t
    if i == 0 and j == 1:
        assert swap12(t) == permute(tuple(perm), t)


def test_from_tensor(k1):
    L = FreeModule(k1, (1,))
    one, D = k1.one(), k1.gen(0)
    got = from_tensor(TensorPower.pure(one, D), L.basis(1))
    assert got == raw1(k1, L, (one, D))
    assert isinstance(L.basis(1), ModuleElement)
