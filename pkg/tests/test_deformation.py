from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from cases import NIJENHUIS_SET, O_OPERATOR_SAMPLE, E, diag, m
from nhomlie import (
    Cochain,
    DeformationFamily,
    NHomLieAlgebra,
    adjoint,
    check_algebra,
    check_deformation,
    check_hom_fundamental,
    check_trivial,
    deform_from_nijenhuis,
    deformed_algebra,
    is_hom_nijenhuis,
    is_hom_o_operator,
    nijenhuis_bracket,
    o_operator_lift,
    omega_compose,
)
from nhomlie.cohomology import is_cocycle
from nhomlie.core import AltMap, combos
from nhomlie.deformation import DEFAULT_LAMBDAS, NOT_COMMUTING, lift_is_nijenhuis
from nhomlie.errors import InputError
from nhomlie.fixtures import fix_a, fix_b, fix_c
from nhomlie.linalg import Matrix
from nhomlie.representation import semidirect_product, trivial_representation


def raw_of(alg, omega: AltMap):
    """Brute-force evaluator for an arbitrary n-ary alternating table."""
    return O.RawAlgebra(NHomLieAlgebra(alg.n, alg.dim, omega, alg.alpha))


def raw_nijenhuis(alg, N, i):
    """The recursive brackets evaluated on basis combos with dense arithmetic."""
    raw = O.RawAlgebra(alg)
    Nm = O.mat_of(N)
    shift = O.matmul(Nm, raw.alpha_inv)
    d, n = alg.dim, alg.n

    def level(k, xs):
        if k == 0:
            return raw.bracket(xs)
        acc = [F(0)] * d
        for ls in combinations(range(n), k):
            args = [O.matvec(shift, xs[j]) if j in ls else xs[j] for j in range(n)]
            acc = O.vadd(acc, raw.bracket(args))
        return O.vadd(acc, O.matvec(Nm, level(k - 1, [raw.a(x, -1) for x in xs])), -1)

    return {c: tuple(level(i, [O.unit(d, j) for j in c])) for c in combos(d, n)}


def raw_compose(alg, wi, wj, x, y, z):
    ri, rj = raw_of(alg, wi), raw_of(alg, wj)
    raw = O.RawAlgebra(alg)
    d = alg.dim
    xs = [O.unit(d, k) for k in x]
    ys = [O.unit(d, k) for k in y]
    zv = O.unit(d, z)
    out = [F(0)] * d
    ays = [raw.a(v) for v in ys]
    for l in range(len(ys)):
        args = ays[:l] + [rj.bracket(xs + [ys[l]])] + ays[l + 1 :]
        out = O.vadd(out, ri.bracket(args + [raw.a(zv)]))
    out = O.vadd(out, ri.bracket([raw.a(v) for v in xs] + [rj.bracket(ys + [zv])]), -1)
    out = O.vadd(out, ri.bracket(ays + [rj.bracket(xs + [zv])]))
    return tuple(out)


# ---------------------------------------------------------------- compose


def test_compose_zero_on_abelian():
    A = fix_a()
    zero = AltMap(3, 3, 3)
    assert omega_compose(A, zero, zero, (0, 1), (1, 2), (1, 0, 0)) == (0, 0, 0)


@pytest.mark.parametrize("fixture", [fix_b, fix_c])
def test_compose_k0_is_hom_fundamental(fixture):
    alg = fixture()
    w = alg.bracket
    for x in combos(alg.dim, 2):
        for y in combos(alg.dim, 2):
            for z in range(alg.dim):
                assert not any(omega_compose(alg, w, w, x, y, alg.e(z)))


def test_compose_k0_detects_invalid_algebra():
    from nhomlie.fixtures import fix_c_prime

    alg = fix_c_prime()
    w = alg.bracket
    hits = [
        (x, y, z)
        for x in combos(4, 2)
        for y in combos(4, 2)
        for z in range(4)
        if any(omega_compose(alg, w, w, x, y, alg.e(z)))
    ]
    assert hits and not check_hom_fundamental(alg).passed


@settings(max_examples=25, deadline=None)
@given(
    st.dictionaries(st.sampled_from(combos(4, 3)), st.tuples(*[st.integers(-2, 2)] * 4), max_size=3),
    st.dictionaries(st.sampled_from(combos(4, 3)), st.tuples(*[st.integers(-2, 2)] * 4), max_size=3),
    st.sampled_from(combos(4, 2)),
    st.sampled_from(combos(4, 2)),
    st.integers(0, 3),
)
def test_compose_matches_oracle(ti, tj, x, y, z):
    alg = NHomLieAlgebra(3, 4, fix_c().bracket, diag(1, 2, F(1, 2), 3))
    wi, wj = AltMap(3, 4, 4, ti), AltMap(3, 4, 4, tj)
    assert omega_compose(alg, wi, wj, x, y, alg.e(z)) == raw_compose(alg, wi, wj, x, y, z)


def test_compose_shape_errors():
    B = fix_b()
    with pytest.raises(InputError):
        omega_compose(B, B.bracket, AltMap(2, 3, 3), (0, 1), (1, 2), (1, 0, 0))
    with pytest.raises(InputError):
        omega_compose(B, B.bracket, B.bracket, (0, 1), (1, 2), (1, 0))


# ---------------------------------------------------------------- deformation equations


def test_family_length():
    with pytest.raises(InputError):
        DeformationFamily(fix_b(), [fix_b().bracket])


def test_zero_family_passes():
    for fixture in (fix_a, fix_b, fix_c):
        alg = fixture()
        assert check_deformation(alg, DeformationFamily.zero(alg)).passed


def test_fix_b_family_fails_by_equivariance_only():
    B = fix_b()
    fam = DeformationFamily(B, [B.bracket, AltMap(3, 3, 3, {(0, 1, 2): (0, 1, 0)})])
    report = check_deformation(B, fam)
    assert report.conditions() == {"equivariance"}
    assert [d.location for d in report.defects] == [("equivariance", 2, (0, 1, 2))]


def test_fix_c_family_fails_k_equation():
    C = fix_c()
    fam = DeformationFamily(C, [AltMap(3, 4, 4), AltMap(3, 4, 4, {(0, 1, 2): (1, 0, 0, 0)})])
    report = check_deformation(C, fam)
    assert report.conditions() == {"deformation"}
    assert {d.location[1] for d in report.defects} == {2}
    fam2 = DeformationFamily(C, [C.bracket, AltMap(3, 4, 4, {(0, 1, 2): (1, 0, 0, 0)})])
    assert {d.location[1] for d in check_deformation(C, fam2).defects} == {2, 3}


def test_deformed_algebra_basics():
    B = fix_b()
    fam = DeformationFamily(B, [B.bracket, B.bracket])
    assert deformed_algebra(B, fam, 0) == B
    assert deformed_algebra(B, DeformationFamily.zero(B), 5) == B
    assert deformed_algebra(B, fam, 2).bracket.value((0, 1, 2)) == (7, 0, 0)


# ---------------------------------------------------------------- Nijenhuis


def test_nijenhuis_bracket_values():
    B = fix_b()
    assert nijenhuis_bracket(B, diag(1, 1, 2), 1).table == {(0, 1, 2): (F(9, 2), 0, 0)}
    assert nijenhuis_bracket(B, diag(1, 1, 2), 1).table == raw_nijenhuis(B, diag(1, 1, 2), 1)
    assert nijenhuis_bracket(B, Matrix.zeros(3), 2).is_zero()
    assert nijenhuis_bracket(fix_a(), m([[1, 2, 0], [0, 1, 0], [3, 0, 1]]), 2).is_zero()


@pytest.mark.parametrize("name,fixture,N", NIJENHUIS_SET)
def test_nijenhuis_brackets_match_oracle(name, fixture, N):
    alg = fixture()
    for i in range(1, alg.n):
        lib = nijenhuis_bracket(alg, N, i)
        expect = raw_nijenhuis(alg, N, i)
        assert {c: lib.value(c) for c in combos(alg.dim, alg.n)} == expect


def test_nijenhuis_bracket_rejects_non_commuting():
    with pytest.raises(InputError, match="N∘α ≠ α∘N"):
        nijenhuis_bracket(fix_b(), E(3, 0, 1), 1)
    with pytest.raises(InputError):
        nijenhuis_bracket(fix_b(), diag(1, 1, 1), 3)


def test_is_hom_nijenhuis_examples():
    B, C = fix_b(), fix_c()
    assert is_hom_nijenhuis(B, Matrix.zeros(3)).passed
    assert is_hom_nijenhuis(fix_a(), m([[1, 2, 0], [0, 1, 0], [3, 0, 1]])).passed
    for t in [(1, 1, 2), (2, -3, F(1, 2)), (5, 0, 7)]:
        assert is_hom_nijenhuis(B, diag(*t)).passed
    bad = is_hom_nijenhuis(B, E(3, 0, 1))
    assert [d.location for d in bad.defects] == [("commute",)]
    assert bad.defects[0].note == NOT_COMMUTING
    failing = {d.location[1] for d in is_hom_nijenhuis(C, E(4, 0, 0)).defects}
    raw, top = O.RawAlgebra(C), raw_nijenhuis(C, E(4, 0, 0), 2)
    Nm = O.mat_of(E(4, 0, 0))
    expect = {
        c for c in combos(4, 3) if raw.bracket([O.matvec(Nm, O.unit(4, k)) for k in c]) != O.matvec(Nm, list(top[c]))
    }
    assert failing == expect == {(1, 2, 3)}
    assert is_hom_nijenhuis(C, E(4, 0, 1)).passed


@settings(max_examples=20, deadline=None)
@given(st.tuples(*[st.integers(-3, 3)] * 3))
def test_every_diagonal_is_nijenhuis_on_fix_b(t):
    assert is_hom_nijenhuis(fix_b(), diag(*t)).passed


def test_deform_from_nijenhuis_requires_operator():
    with pytest.raises(InputError):
        deform_from_nijenhuis(fix_c(), E(4, 0, 0))
    assert deform_from_nijenhuis(fix_b(), Matrix.zeros(3)).is_zero()
    assert deform_from_nijenhuis(fix_a(), diag(1, 2, 3)).is_zero()


@pytest.mark.parametrize("name,fixture,N", NIJENHUIS_SET)
def test_nijenhuis_family_properties(name, fixture, N):
    alg = fixture()
    fam = deform_from_nijenhuis(alg, N)
    assert check_deformation(alg, fam).passed
    for lam in DEFAULT_LAMBDAS:
        assert check_algebra(deformed_algebra(alg, fam, lam)).passed
    assert is_cocycle(alg, adjoint(alg), Cochain.from_alt_map(alg, fam.omega(1)))
    top = NHomLieAlgebra(alg.n, alg.dim, fam.omega(alg.n - 1), alg.alpha)
    assert check_algebra(top).passed
    # N carries the top bracket to the original one
    for c in combos(alg.dim, alg.n):
        assert alg(*[N.column(k) for k in c]) == N @ top.bracket.value(c)
    assert check_trivial(alg, fam, N).passed


def test_check_trivial_pinned_failure():
    B = fix_b()
    fam = DeformationFamily(B, [B.bracket, AltMap(3, 3, 3)])
    report = check_trivial(B, fam, Matrix.zeros(3))
    assert report.conditions() == {"con1", "trivial-2"}
    assert check_trivial(B, DeformationFamily.zero(B), Matrix.zeros(3)).passed


def test_check_trivial_flags_non_commuting():
    B = fix_b()
    report = check_trivial(B, DeformationFamily.zero(B), E(3, 0, 1))
    assert "commute" in report.conditions()
    assert "trivial-1" in report.conditions()


# ---------------------------------------------------------------- O-operators


def test_o_operator_trivial_cases():
    B = fix_b()
    assert is_hom_o_operator(B, adjoint(B), Matrix.zeros(3)).passed
    A = fix_a()
    assert is_hom_o_operator(A, adjoint(A), m([[1, 2, 0], [0, 1, 0], [3, 0, 1]])).passed
    with pytest.raises(InputError):
        is_hom_o_operator(B, adjoint(B), Matrix.zeros(2, 3))


def test_o_operator_lift_shape():
    B = fix_b()
    T = diag(1, 2, 3)
    lift = o_operator_lift(B, adjoint(B), T)
    assert lift.shape == (6, 6)
    assert lift @ lift == Matrix.zeros(6)
    assert [lift[i, 3 + i] for i in range(3)] == [1, 2, 3]


@pytest.mark.parametrize("T,expected", O_OPERATOR_SAMPLE)
def test_o_operator_verdicts(T, expected):
    B = fix_b()
    rep = adjoint(B)
    assert is_hom_o_operator(B, rep, T).passed is expected
    assert lift_is_nijenhuis(B, rep, T).passed is expected


def test_o_operator_closed_form():
    """On FIX-B with ad, diagonal T = diag(a, b, c) qualifies iff a^2 (2c + b/2) = 0."""
    B = fix_b()
    rep = adjoint(B)
    for a in (0, 1, -2):
        for b in (0, 4, F(1, 2)):
            for c in (0, -1, F(-1, 8)):
                expect = a * a * (2 * c + F(b) / 2) == 0
                assert is_hom_o_operator(B, rep, diag(a, b, c)).passed is expect


def test_o_operator_with_trivial_rep():
    C = fix_c()
    rep = trivial_representation(C, Matrix.identity(2))
    T = Matrix.from_rows([[1, 0], [0, 1], [0, 0], [0, 0]])
    assert is_hom_o_operator(C, rep, T).passed is lift_is_nijenhuis(C, rep, T).passed
    assert check_algebra(semidirect_product(C, rep)).passed
