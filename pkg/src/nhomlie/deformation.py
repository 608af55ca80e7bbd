"""(n-1)-order deformations, Hom-Nijenhuis operators and Hom-O-operators.

Deformation maps ``omega_i`` are stored like an algebra's bracket (``AltMap``
of arity n into g).  ``omega_0`` is always the algebra's own bracket.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import AltMap, NHomLieAlgebra, Wedge, _as_wedge, combos, wedge_sum
from .errors import InputError
from .linalg import Matrix, unit_vector, vadd, vsub, zero_vector
from .report import Report
from .representation import Representation, semidirect_product

DEFAULT_LAMBDAS = (-2, -1, 1, 2, 3)
NOT_COMMUTING = "N∘α ≠ α∘N"


class DeformationFamily:
    """``omega_1, ..., omega_{n-1}`` for a fixed algebra."""

    def __init__(self, algebra: NHomLieAlgebra, omegas: Sequence[AltMap]):
        n, d = algebra.n, algebra.dim
        omegas = list(omegas)
        if len(omegas) != n - 1:
            raise InputError(f"a deformation family needs exactly {n - 1} maps, got {len(omegas)}")
        for i, w in enumerate(omegas, 1):
            if (w.arity, w.dim, w.target) != (n, d, d):
                raise InputError(f"omega_{i} must be an alternating {n}-ary map on a {d}-dimensional space")
        self.algebra = algebra
        self.omegas = omegas

    @classmethod
    def zero(cls, algebra: NHomLieAlgebra) -> "DeformationFamily":
        return cls(algebra, [AltMap(algebra.n, algebra.dim, algebra.dim) for _ in range(algebra.n - 1)])

    def omega(self, i: int) -> AltMap:
        """``omega_i`` with ``omega_0`` the original bracket."""
        return self.algebra.bracket if i == 0 else self.omegas[i - 1]

    def is_zero(self) -> bool:
        return all(w.is_zero() for w in self.omegas)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeformationFamily):
            return NotImplemented
        return self.omegas == other.omegas

    def __repr__(self) -> str:
        return f"DeformationFamily({self.omegas})"


def _apply(w: AltMap, x: Wedge, z: Sequence) -> tuple:
    """``omega(X, z)`` for a fundamental element X."""
    return w.on_wedge(x.wedge_vector(z))


def omega_star(alg: NHomLieAlgebra, w: AltMap, x: Wedge, y: Wedge) -> Wedge:
    """``omega(X, .) * Y = sum_l a y_1 ^ .. ^ omega(X, y_l) ^ .. ^ a y_{n-1}``."""
    a = alg.alpha
    terms = []
    for c, coef in y.coeffs.items():
        ys = [alg.e(i) for i in c]
        ays = [a @ v for v in ys]
        for l in range(len(ys)):
            args = ays[:l] + [_apply(w, x, ys[l])] + ays[l + 1 :]
            terms.append(Wedge.of_vectors(args).scale(coef))
    return wedge_sum(terms, alg.n - 1)


def omega_compose(alg: NHomLieAlgebra, wi: AltMap, wj: AltMap, x, y, z: Sequence) -> tuple:
    """``w_i(w_j(X,.)*Y, a z) - w_i(a~X, w_j(Y,z)) + w_i(a~Y, w_j(X,z))``."""
    x = _as_wedge(alg, x, alg.n - 1)
    y = _as_wedge(alg, y, alg.n - 1)
    for w in (wi, wj):
        if (w.arity, w.dim, w.target) != (alg.n, alg.dim, alg.dim):
            raise InputError("omega maps must be n-ary brackets on the algebra")
    if len(z) != alg.dim:
        raise InputError(f"z must have length {alg.dim}")
    a = alg.alpha
    first = _apply(wi, omega_star(alg, wj, x, y), a @ z)
    second = _apply(wi, alg.twist_wedge(x), _apply(wj, y, z))
    third = _apply(wi, alg.twist_wedge(y), _apply(wj, x, z))
    return vadd(vsub(first, second), third)


def check_deformation(alg: NHomLieAlgebra, fam: DeformationFamily) -> Report:
    if len(fam.omegas) != alg.n - 1:
        raise InputError(f"a deformation family needs exactly {alg.n - 1} maps")
    report = Report("check_deformation")
    n, d, a = alg.n, alg.dim, alg.alpha
    for i in range(1, n):
        w = fam.omega(i)
        for c in combos(d, n):
            lhs = w(*[a.column(k) for k in c])
            rhs = a @ w.value(c)
            if lhs != rhs:
                report.add(("equivariance", i, c), rhs, lhs)
    wedges = combos(d, n - 1)
    for k in range(1, 2 * n - 1):
        pairs = [(i, k - i) for i in range(n) if 0 <= k - i < n]
        for x in wedges:
            for y in wedges:
                for z in range(d):
                    acc = zero_vector(d)
                    for i, j in pairs:
                        acc = vadd(acc, omega_compose(alg, fam.omega(i), fam.omega(j), x, y, alg.e(z)))
                    if any(acc):
                        report.add(("deformation", k, x, y, z), zero_vector(d), acc)
    return report.sorted()


def deformed_algebra(alg: NHomLieAlgebra, fam: DeformationFamily, lam) -> NHomLieAlgebra:
    """Bracket ``omega_0 + sum_i lam^i omega_i`` with the same twist."""
    bracket = alg.bracket
    power = 1
    for w in fam.omegas:
        power = power * lam
        bracket = bracket + w.scale(power)
    return NHomLieAlgebra(alg.n, alg.dim, bracket, alg.alpha)


def _commutes(alg: NHomLieAlgebra, m: Matrix) -> bool:
    return m @ alg.alpha == alg.alpha @ m


def _check_square(alg: NHomLieAlgebra, m: Matrix, name: str) -> None:
    if m.shape != (alg.dim, alg.dim):
        raise InputError(f"{name} must be {alg.dim}x{alg.dim}")


def _partial_substitutions(alg: NHomLieAlgebra, xs: list, sub: list, i: int) -> tuple:
    """``sum_{l_1<..<l_i} [x_1, .., sub_{l_1}, .., sub_{l_i}, .., x_n]``."""
    acc = zero_vector(alg.dim)
    for ls in combinations(range(len(xs)), i):
        args = [sub[k] if k in ls else xs[k] for k in range(len(xs))]
        acc = vadd(acc, alg(*args))
    return acc


def nijenhuis_bracket(alg: NHomLieAlgebra, N: Matrix, i: int) -> AltMap:
    """``[.]_N^i`` built by the recursion on i."""
    _check_square(alg, N, "N")
    if not 1 <= i <= alg.n - 1:
        raise InputError(f"bracket index must lie in 1..{alg.n - 1}, got {i}")
    if not _commutes(alg, N):
        raise InputError(f"{NOT_COMMUTING}: N must commute with alpha")
    ainv = alg.alpha_inv
    shift = N @ ainv
    prev = alg.bracket
    for level in range(1, i + 1):
        table = {}
        for c in combos(alg.dim, alg.n):
            xs = [alg.e(k) for k in c]
            sub = [shift @ x for x in xs]
            head = _partial_substitutions(alg, xs, sub, level)
            tail = N @ prev(*[ainv @ x for x in xs])
            table[c] = vsub(head, tail)
        prev = AltMap(alg.n, alg.dim, alg.dim, table)
    return prev


def is_hom_nijenhuis(alg: NHomLieAlgebra, N: Matrix) -> Report:
    _check_square(alg, N, "N")
    report = Report("is_hom_nijenhuis")
    if not _commutes(alg, N):
        # the recursive brackets are only defined for commuting N
        report.add(("commute",), alg.alpha @ N, N @ alg.alpha, note=NOT_COMMUTING)
        return report
    top = nijenhuis_bracket(alg, N, alg.n - 1)
    for c in combos(alg.dim, alg.n):
        lhs = alg(*[N.column(k) for k in c])
        rhs = N @ top.value(c)
        if lhs != rhs:
            report.add(("nijenhuis", c), lhs, rhs)
    return report.sorted()


def deform_from_nijenhuis(alg: NHomLieAlgebra, N: Matrix) -> DeformationFamily:
    report = is_hom_nijenhuis(alg, N)
    if not report.passed:
        raise InputError(f"N is not a Hom-Nijenhuis operator: failing conditions {sorted(report.conditions())}")
    return DeformationFamily(alg, [nijenhuis_bracket(alg, N, i) for i in range(1, alg.n)])


def check_trivial(alg: NHomLieAlgebra, fam: DeformationFamily, N: Matrix, lambdas=DEFAULT_LAMBDAS) -> Report:
    """Symbolic conditions on every basis combo plus sampled ``T_lam = alpha + lam N``."""
    _check_square(alg, N, "N")
    report = Report("check_trivial")
    n, d, a = alg.n, alg.dim, alg.alpha
    if not _commutes(alg, N):
        report.add(("commute",), a @ N, N @ a, note=NOT_COMMUTING)
    for c in combos(d, n):
        xs = [alg.e(k) for k in c]
        axs = [a @ x for x in xs]
        nxs = [N @ x for x in xs]
        for i in range(1, n):
            lhs = vadd(a @ fam.omega(i).value(c), N @ fam.omega(i - 1).value(c))
            rhs = _partial_substitutions(alg, axs, nxs, i)
            if lhs != rhs:
                report.add(("con1" if i == 1 else "con3", i, c), rhs, lhs)
        lhs = N @ fam.omega(n - 1).value(c)
        rhs = alg(*nxs)
        if lhs != rhs:
            report.add(("con2", c), rhs, lhs)
    for lam in lambdas:
        lam = Fraction(lam)
        t = a + N.scale(lam)
        if t @ a != a @ t:
            report.add(("trivial-1", lam), a @ t, t @ a)
        deformed = deformed_algebra(alg, fam, lam)
        for c in combos(d, n):
            lhs = t @ deformed.bracket.value(c)
            rhs = alg(*[t.column(k) for k in c])
            if lhs != rhs:
                report.add(("trivial-2", lam, c), rhs, lhs)
    return report.sorted()


def is_hom_o_operator(alg: NHomLieAlgebra, rep: Representation, T: Matrix) -> Report:
    """``T beta = alpha T`` and the twisted multiplicativity on basis n-tuples of V."""
    m, d, n = rep.dim_v, alg.dim, alg.n
    if T.shape != (d, m):
        raise InputError(f"T must be {d}x{m}")
    report = Report("is_hom_o_operator")
    if T @ rep.beta != alg.alpha @ T:
        report.add(("o1",), alg.alpha @ T, T @ rep.beta)
    tb = T @ rep.beta.inverse()
    images = [tb.column(j) for j in range(m)]
    for c in combos(m, n):
        lhs = alg(*[T.column(j) for j in c])
        acc = zero_vector(m)
        for i in range(n):
            others = [images[j] for k, j in enumerate(c) if k != i]
            term = rep.rho_of(*others) @ unit_vector(m, c[i])
            acc = vadd(acc, term) if (n - 1 - i) % 2 == 0 else vsub(acc, term)
        rhs = T @ acc
        if lhs != rhs:
            report.add(("o2", c), lhs, rhs)
    return report.sorted()


def o_operator_lift(alg: NHomLieAlgebra, rep: Representation, T: Matrix) -> Matrix:
    """Block map ``x + v -> T v`` on ``g + V``."""
    m, d = rep.dim_v, alg.dim
    if T.shape != (d, m):
        raise InputError(f"T must be {d}x{m}")
    rows = [[0] * d + list(T.entries[i]) for i in range(d)] + [[0] * (d + m) for _ in range(m)]
    return Matrix(d + m, d + m, rows)


def lift_is_nijenhuis(alg: NHomLieAlgebra, rep: Representation, T: Matrix) -> Report:
    return is_hom_nijenhuis(semidirect_product(alg, rep), o_operator_lift(alg, rep, T))
