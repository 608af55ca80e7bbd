"""Built-in demo algebras.

FIX-A  abelian, n=3, dim 3, alpha = I.
FIX-B  n=3, dim 3, [e1,e2,e3] = e1, alpha = diag(1, 2, 1/2).
FIX-C  the 4-dimensional simple 3-Lie algebra, [e_i,e_j,e_k] = e_l for
       {i,j,k,l} = {1,2,3,4}, alpha = I.
FIX-C' FIX-C with [e1,e2,e3] = e1 + e4; fails the fundamental identity.
FIX-B3 FIX-B with alpha = diag(3, 5, 1/5); the untwisted dual of its adjoint
       representation is not a representation.

Indices in code are 0-based (e1 is index 0).
"""

from fractions import Fraction

from .core import NHomLieAlgebra
from .linalg import Matrix


def fix_a() -> NHomLieAlgebra:
    return NHomLieAlgebra(3, 3, {}, Matrix.identity(3))


def fix_b(alpha: Matrix | None = None) -> NHomLieAlgebra:
    if alpha is None:
        alpha = Matrix.diag([1, 2, Fraction(1, 2)])
    return NHomLieAlgebra(3, 3, {(0, 1, 2): (1, 0, 0)}, alpha)


_FIX_C = {
    (1, 2, 3): (1, 0, 0, 0),
    (0, 2, 3): (0, 1, 0, 0),
    (0, 1, 3): (0, 0, 1, 0),
    (0, 1, 2): (0, 0, 0, 1),
}


def fix_c() -> NHomLieAlgebra:
    return NHomLieAlgebra(3, 4, dict(_FIX_C), Matrix.identity(4))


def fix_c_prime() -> NHomLieAlgebra:
    table = dict(_FIX_C)
    table[(0, 1, 2)] = (1, 0, 0, 1)
    return NHomLieAlgebra(3, 4, table, Matrix.identity(4))


def fix_b3() -> NHomLieAlgebra:
    return fix_b(Matrix.diag([3, 5, Fraction(1, 5)]))


FIXTURES = {"A": fix_a, "B": fix_b, "B3": fix_b3, "C": fix_c, "C'": fix_c_prime}
