"""Derivations, inner derivations and the twisted operator bracket."""

from __future__ import annotations

from .core import NHomLieAlgebra, Wedge, _as_wedge, combos, wedge_sum
from .errors import InputError
from .linalg import Matrix, in_span, nullspace, vadd
from .report import Report


def op_bracket(beta: Matrix, a: Matrix, b: Matrix) -> Matrix:
    """``[A,B]_beta = beta A beta^-1 B beta^-1 - beta B beta^-1 A beta^-1``."""
    if not (a.is_square and a.shape == b.shape == beta.shape):
        raise InputError(f"op_bracket needs square maps of one size, got {beta.shape}, {a.shape}, {b.shape}")
    bi = beta.inverse()
    return beta @ a @ bi @ b @ bi - beta @ b @ bi @ a @ bi


def ad_beta(beta: Matrix, a: Matrix) -> Matrix:
    """``Ad_beta A = beta A beta^-1``."""
    if a.shape != beta.shape:
        raise InputError(f"shape mismatch {beta.shape} vs {a.shape}")
    return beta @ a @ beta.inverse()


def derivation_residual(alg: NHomLieAlgebra, d: Matrix, combo: tuple) -> tuple:
    """``D[x] - sum_i [a x_1, .., (Ad_{a^-1} D) x_i, .., a x_n]`` on a basis combo."""
    a = alg.alpha
    twisted = alg.alpha_inv @ d @ a
    xs = [alg.e(i) for i in combo]
    axs = [a @ x for x in xs]
    lhs = d @ alg.bracket.value(combo)
    rhs = tuple([0] * alg.dim)
    for i, x in enumerate(xs):
        rhs = vadd(rhs, alg(*axs[:i], twisted @ x, *axs[i + 1 :]))
    return tuple(p - q for p, q in zip(lhs, rhs))


def is_derivation(alg: NHomLieAlgebra, d: Matrix) -> Report:
    if d.shape != (alg.dim, alg.dim):
        raise InputError(f"D must be {alg.dim}x{alg.dim}")
    report = Report("is_derivation")
    for c in combos(alg.dim, alg.n):
        r = derivation_residual(alg, d, c)
        if any(r):
            report.add(("derivation", c), tuple([0] * alg.dim), r)
    return report.sorted()


def _matrix_of(vec, dim: int) -> Matrix:
    return Matrix(dim, dim, [vec[r * dim : (r + 1) * dim] for r in range(dim)])


def derivation_system(alg: NHomLieAlgebra) -> list[list]:
    """Rows of the linear system for Der(g); unknowns are D entries in (row, col) order."""
    d = alg.dim
    cols = []
    for r in range(d):
        for s in range(d):
            unit = Matrix.unit(d, d, r, s)
            col = []
            for c in combos(d, alg.n):
                col.extend(derivation_residual(alg, unit, c))
            cols.append(col)
    if not cols or not cols[0]:
        return []
    return [list(row) for row in zip(*cols)]


def derivation_basis(alg: NHomLieAlgebra) -> list[Matrix]:
    rows = derivation_system(alg)
    return [_matrix_of(v, alg.dim) for v in nullspace(rows, alg.dim * alg.dim)]


def inner_derivation(alg: NHomLieAlgebra, y) -> Matrix:
    """``ad_Y`` for a fundamental element (Wedge or increasing combo)."""
    return alg.ad(_as_wedge(alg, y, alg.n - 1))


def _in_der(basis_flat: list[tuple], m: Matrix) -> bool:
    return in_span(basis_flat, m.flatten())


def check_der_subalgebra(alg: NHomLieAlgebra) -> Report:
    """``Ad_alpha D`` and ``[D, D']_alpha`` stay in Der(g) for basis derivations."""
    report = Report("check_der_subalgebra")
    basis = derivation_basis(alg)
    flat = [b.flatten() for b in basis]
    a = alg.alpha
    for i, d in enumerate(basis):
        m = ad_beta(a, d)
        if not _in_der(flat, m):
            report.add(("Ad", i), "member of Der", m)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            m = op_bracket(a, basis[i], basis[j])
            if not _in_der(flat, m):
                report.add(("bracket", i, j), "member of Der", m)
    report.metrics["dim_der"] = len(basis)
    return report.sorted()


def check_inn_ideal(alg: NHomLieAlgebra) -> Report:
    """``Ad_alpha ad_X = ad_{alpha~X}`` and ``[D, ad_X]_alpha = ad_{sum a x_1 ^ .. D x_i .. ^ a x_{n-1}}``."""
    report = Report("check_inn_ideal")
    a = alg.alpha
    basis = derivation_basis(alg)
    for c in combos(alg.dim, alg.n - 1):
        x = Wedge.basis(c)
        adx = alg.ad(x)
        lhs = ad_beta(a, adx)
        rhs = alg.ad(alg.twist_wedge(x))
        if lhs != rhs:
            report.add(("Ad", c), rhs, lhs)
        xs = [alg.e(i) for i in c]
        axs = [a @ v for v in xs]
        for k, d in enumerate(basis):
            w = wedge_sum(
                (Wedge.of_vectors(axs[:i] + [d @ xs[i]] + axs[i + 1 :]) for i in range(len(xs))),
                alg.n - 1,
            )
            lhs = op_bracket(a, d, adx)
            rhs = alg.ad(w)
            if lhs != rhs:
                report.add(("bracket", c, k), rhs, lhs)
    return report.sorted()
