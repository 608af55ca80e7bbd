"""Generalized derivations and one-dimensional extensions by them.

In an extension ``g + K D`` the new direction is basis index ``dim`` (last).
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .core import AltMap, NHomLieAlgebra, check_algebra, combos
from .errors import InputError
from .linalg import Matrix, vadd, vsub, zero_vector
from .report import Report


class GeneralizedDerivation:
    """An alternating map ``wedge^{n-1} g -> g`` attached to an algebra."""

    def __init__(self, algebra: NHomLieAlgebra, table: Mapping[tuple, Sequence] | AltMap | None = None):
        n, d = algebra.n, algebra.dim
        if isinstance(table, AltMap):
            if (table.arity, table.dim, table.target) != (n - 1, d, d):
                raise InputError(f"a generalized derivation is an alternating {n - 1}-ary map on dimension {d}")
            self.map = table
        else:
            self.map = AltMap(n - 1, d, d, table or {})
        self.algebra = algebra

    @property
    def table(self) -> dict:
        return self.map.table

    def value(self, combo: tuple) -> tuple:
        return self.map.value(combo)

    def __call__(self, *vectors) -> tuple:
        return self.map(*vectors)

    def __sub__(self, other: "GeneralizedDerivation") -> "GeneralizedDerivation":
        return GeneralizedDerivation(self.algebra, self.map - other.map)

    def __add__(self, other: "GeneralizedDerivation") -> "GeneralizedDerivation":
        return GeneralizedDerivation(self.algebra, self.map + other.map)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GeneralizedDerivation):
            return NotImplemented
        return self.map == other.map

    def __repr__(self) -> str:
        return f"GeneralizedDerivation({self.table})"


def _sum_slots(alg: NHomLieAlgebra, fn, ys: list, inner) -> tuple:
    """``sum_i fn(a y_1, .., inner(y_i), .., a y_m)``."""
    a = alg.alpha
    ays = [a @ y for y in ys]
    acc = zero_vector(alg.dim)
    for i, y in enumerate(ys):
        acc = vadd(acc, fn(*ays[:i], inner(y), *ays[i + 1 :]))
    return acc


def is_generalized_derivation(alg: NHomLieAlgebra, D: GeneralizedDerivation) -> Report:
    n, d, a = alg.n, alg.dim, alg.alpha
    if D.map.dim != d or D.map.arity != n - 1:
        raise InputError("generalized derivation does not match the algebra")
    report = Report("is_generalized_derivation")
    wedges = combos(d, n - 1)
    e = alg.e
    for c in wedges:
        lhs = a @ D.value(c)
        rhs = D(*[a.column(k) for k in c])
        if lhs != rhs:
            report.add(("i", c), lhs, rhs)
    for x in wedges:
        xs = [e(k) for k in x]
        axs = [a @ v for v in xs]
        for y in wedges:
            ys = [e(k) for k in y]
            ays = [a @ v for v in ys]
            lhs = vsub(alg(*axs, D.value(y)), alg(*ays, D.value(x)))
            rhs = _sum_slots(alg, D, ys, lambda v: alg(*xs, v))
            if lhs != rhs:
                report.add(("ii", x, y), lhs, rhs)
    for x in combos(d, n - 2):
        xs = [e(k) for k in x]
        axs = [a @ v for v in xs]
        for y in combos(d, n):
            ys = [e(k) for k in y]
            lhs = D(*axs, alg.bracket.value(y))
            rhs = _sum_slots(alg, alg, ys, lambda v: D(*xs, v))
            if lhs != rhs:
                report.add(("iii", x, y), lhs, rhs)
        for y in wedges:
            ys = [e(k) for k in y]
            lhs = D(*axs, D.value(y))
            rhs = _sum_slots(alg, D, ys, lambda v: D(*xs, v))
            if lhs != rhs:
                report.add(("iv", x, y), lhs, rhs)
    return report.sorted()


def inner_generalized_derivation(alg: NHomLieAlgebra, x: Sequence) -> GeneralizedDerivation:
    """``ad_x(y_1, .., y_{n-1}) = [x, y_1, .., y_{n-1}]`` for an alpha-fixed x."""
    x = tuple(x)
    if len(x) != alg.dim:
        raise InputError(f"x must have length {alg.dim}")
    if alg.alpha @ x != x:
        raise InputError("x is not fixed by alpha")
    table = {c: alg(x, *[alg.e(k) for k in c]) for c in combos(alg.dim, alg.n - 1)}
    return GeneralizedDerivation(alg, table)


def extend(alg: NHomLieAlgebra, D: GeneralizedDerivation) -> NHomLieAlgebra:
    """The algebra on ``g + K D``; constructed for any D, valid or not."""
    n, d = alg.n, alg.dim
    table = {c: tuple(v) + (0,) for c, v in alg.bracket.table.items()}
    # [x_1, .., x_{n-1}, D] picks up (-1)^{n-1} D(x_1, .., x_{n-1})
    sign = -1 if (n - 1) % 2 else 1
    for c, v in D.table.items():
        table[c + (d,)] = tuple(sign * t for t in v) + (0,)
    alpha = Matrix.block_diag(alg.alpha, Matrix.identity(1))
    return NHomLieAlgebra(n, d + 1, AltMap(n, d + 1, d + 1, table), alpha)


def reduce_arity(alg: NHomLieAlgebra, D: GeneralizedDerivation) -> NHomLieAlgebra:
    """``(g, D, alpha)`` as an (n-1)-ary algebra."""
    if alg.n < 3:
        raise InputError("reducing arity needs n >= 3")
    report = is_generalized_derivation(alg, D)
    if not report.passed:
        raise InputError(f"not a generalized derivation: failing conditions {sorted(report.conditions())}")
    return NHomLieAlgebra(alg.n - 1, alg.dim, D.map, alg.alpha)


def extension_isomorphism(
    alg: NHomLieAlgebra, D1: GeneralizedDerivation, D2: GeneralizedDerivation, x: Sequence
) -> tuple[Report, Matrix]:
    """Check ``theta = [[Id, x], [0, 1]]`` maps the D1-extension to the D2-extension."""
    x = tuple(x)
    d, n = alg.dim, alg.n
    if len(x) != d:
        raise InputError(f"x must have length {d}")
    if alg.alpha @ x != x:
        raise InputError("x is not fixed by alpha")
    if D1 - D2 != inner_generalized_derivation(alg, x):
        raise InputError("D1 - D2 is not ad_x")
    rows = [list(r) + [x[i]] for i, r in enumerate(Matrix.identity(d).entries)] + [[0] * d + [1]]
    theta = Matrix(d + 1, d + 1, rows)
    g1, g2 = extend(alg, D1), extend(alg, D2)
    report = Report("extension_isomorphism")
    if theta @ g1.alpha != g2.alpha @ theta:
        report.add(("twist",), g2.alpha @ theta, theta @ g1.alpha)
    for c in combos(d + 1, n):
        lhs = theta @ g1.bracket.value(c)
        rhs = g2(*[theta.column(k) for k in c])
        if lhs != rhs:
            report.add(("bracket", c), rhs, lhs)
    if not theta.is_invertible():
        report.add(("invertibility",), None, None)
    return report.sorted(), theta


def extension_is_valid(alg: NHomLieAlgebra, D: GeneralizedDerivation) -> bool:
    """Whether the extension passes both the twist and fundamental checks."""
    return check_algebra(extend(alg, D)).passed
