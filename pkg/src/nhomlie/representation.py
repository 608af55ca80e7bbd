"""Representations, the adjoint representation, semidirect products and duals."""

from __future__ import annotations

from typing import Mapping

from .core import AltMap, NHomLieAlgebra, Wedge, check_hom_fundamental, combos, fundamental_bracket
from .errors import InputError, StructuralError
from .linalg import Matrix, unit_vector
from .report import Report


class Representation:
    """``rho`` on increasing (n-1)-combos plus an invertible twist ``beta``.

    Unlisted combos act as zero.  Covectors of the dual space are plain
    coordinate vectors, so dualising a map is transposition.
    """

    def __init__(self, algebra: NHomLieAlgebra, dim_v: int, rho: Mapping[tuple, Matrix], beta: Matrix):
        if beta.shape != (dim_v, dim_v):
            raise InputError(f"beta must be {dim_v}x{dim_v}")
        if not beta.is_invertible():
            raise StructuralError("beta is singular")
        k = algebra.n - 1
        clean = {}
        for c, m in rho.items():
            c = tuple(c)
            if len(c) != k or any(not 0 <= i < algebra.dim for i in c) or list(c) != sorted(set(c)):
                raise InputError(f"rho key {list(c)} is not an increasing {k}-combo")
            if m.shape != (dim_v, dim_v):
                raise InputError(f"rho{list(c)} must be {dim_v}x{dim_v}")
            if not m.is_zero():
                clean[c] = m
        self.algebra = algebra
        self.dim_v = dim_v
        self.rho = clean
        self.beta = beta
        self._zero = Matrix.zeros(dim_v)

    def __repr__(self) -> str:
        return f"Representation(dim_v={self.dim_v}, nonzero={len(self.rho)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.dim_v, self.rho, self.beta) == (other.dim_v, other.rho, other.beta)

    def basis_action(self, combo: tuple) -> Matrix:
        return self.rho.get(combo, self._zero)

    def act(self, x: Wedge) -> Matrix:
        """``rho(x)`` for a fundamental element, extended linearly."""
        acc = self._zero
        for c, a in x.coeffs.items():
            m = self.rho.get(c)
            if m is not None:
                acc = acc + m.scale(a)
        return acc

    def rho_of(self, *vectors) -> Matrix:
        return self.act(Wedge.of_vectors(vectors))


def check_representation(rep: Representation, check_algebra: bool = True) -> Report:
    alg = rep.algebra
    if check_algebra and not check_hom_fundamental(alg).passed:
        raise InputError("underlying algebra fails the Hom-Fundamental identity")
    report = Report("check_representation")
    n, beta = alg.n, rep.beta
    wedges = {c: Wedge.basis(c) for c in combos(alg.dim, n - 1)}
    twisted = {c: rep.act(alg.twist_wedge(w)) for c, w in wedges.items()}
    for c in wedges:
        lhs = twisted[c] @ beta
        rhs = beta @ rep.basis_action(c)
        if lhs != rhs:
            report.add(("i", c), lhs, rhs)
    for x in wedges:
        for y in wedges:
            lhs = twisted[x] @ rep.basis_action(y) - twisted[y] @ rep.basis_action(x)
            rhs = rep.act(fundamental_bracket(alg, x, y)) @ beta
            if lhs != rhs:
                report.add(("ii", x, y), lhs, rhs)
    a = alg.alpha
    for x in combos(alg.dim, n - 2):
        xs = [alg.e(i) for i in x]
        axs = [a @ v for v in xs]
        for y in combos(alg.dim, n):
            ys = [alg.e(i) for i in y]
            ays = [a @ v for v in ys]
            lhs = rep.rho_of(*axs, alg.bracket.value(y)) @ beta
            rhs = Matrix.zeros(rep.dim_v)
            for i in range(n):
                # (-1)^{n-i} with 1-based i
                term = rep.rho_of(*ays[:i], *ays[i + 1 :]) @ rep.rho_of(*xs, ys[i])
                rhs = rhs + (term if (n - 1 - i) % 2 == 0 else -term)
            if lhs != rhs:
                report.add(("iii", x, y), lhs, rhs)
    return report.sorted()


def adjoint(alg: NHomLieAlgebra) -> Representation:
    rho = {c: alg.ad(Wedge.basis(c)) for c in combos(alg.dim, alg.n - 1)}
    return Representation(alg, alg.dim, rho, alg.alpha)


def trivial_representation(alg: NHomLieAlgebra, beta: Matrix) -> Representation:
    """``rho = 0`` with an arbitrary invertible twist."""
    return Representation(alg, beta.rows, {}, beta)


def semidirect_product(alg: NHomLieAlgebra, rep: Representation, check: bool = True) -> NHomLieAlgebra:
    """The algebra on ``g + V`` with twist ``alpha + beta``.

    V occupies basis indices ``dim .. dim + dim_v - 1``.  A bracket with two
    or more V arguments vanishes; with one V argument (necessarily last in an
    increasing combo) it is ``rho(x_1..x_{n-1}) u``.
    """
    if rep.algebra is not alg and rep.algebra != alg:
        raise InputError("representation belongs to a different algebra")
    if check:
        report = check_representation(rep)
        if not report.passed:
            raise InputError(f"not a representation: failing conditions {sorted(report.conditions())}")
    d, m, n = alg.dim, rep.dim_v, alg.n
    total = d + m
    table = {}
    for c, v in alg.bracket.table.items():
        table[c] = tuple(v) + (0,) * m
    for c in combos(d, n - 1):
        action = rep.basis_action(c)
        if action.is_zero():
            continue
        for j in range(m):
            table[c + (d + j,)] = (0,) * d + action.column(j)
    return NHomLieAlgebra(n, total, AltMap(n, total, total, table), Matrix.block_diag(alg.alpha, rep.beta))


def dual_representation(rep: Representation) -> Representation:
    """Twisted dual on V*: ``rho*(X) = -(beta^{-2} rho(alpha~ X))^T``, twist ``(beta^{-1})^T``."""
    alg = rep.algebra
    beta_inv = rep.beta.inverse()
    beta_m2 = beta_inv @ beta_inv
    rho = {}
    for c in combos(alg.dim, alg.n - 1):
        m = beta_m2 @ rep.act(alg.twist_wedge(Wedge.basis(c)))
        rho[c] = (-m).T
    return Representation(alg, rep.dim_v, rho, beta_inv.T)


def naive_dual(rep: Representation) -> Representation:
    """Untwisted dual ``-rho(X)^T`` with twist ``(beta^{-1})^T``; usually not a representation."""
    rho = {c: (-m).T for c, m in rep.rho.items()}
    return Representation(rep.algebra, rep.dim_v, rho, rep.beta.inverse().T)


def pullback(rep: Representation, alg: NHomLieAlgebra, f: Matrix) -> Representation:
    """Representation of ``alg`` obtained through a morphism ``f: alg -> rep.algebra``."""
    rho = {}
    for c in combos(alg.dim, alg.n - 1):
        rho[c] = rep.rho_of(*[f @ unit_vector(alg.dim, i) for i in c])
    return Representation(alg, rep.dim_v, rho, rep.beta)


def change_basis(rep: Representation, p: Matrix) -> Representation:
    """Conjugate the representation by an invertible ``p`` on V."""
    pinv = p.inverse()
    rho = {c: pinv @ m @ p for c, m in rep.rho.items()}
    return Representation(rep.algebra, rep.dim_v, rho, pinv @ rep.beta @ p)
