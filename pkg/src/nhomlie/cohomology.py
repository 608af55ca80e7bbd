"""Cochain complex with coefficients in a representation.

A p-cochain takes p-1 fundamental elements and one vector.  For p >= 2 the
last fundamental slot and the vector form one fully alternating block, so a
cochain is stored on keys ``(X_1, ..., X_{p-2}, W)`` with ``X_i`` increasing
(n-1)-combos and ``W`` an increasing n-combo.  For p = 1 the key is
``((z,),)``.  Basis order is lexicographic on (key, V index).

The coboundary is assembled row by row: at each output basis point every
term of the formula is a V-operator composed with a linear functional on
the input cochain coordinates, so the whole matrix comes out of one pass over
output points.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Iterator, Mapping, Sequence

from .core import NHomLieAlgebra, Wedge, combos, fundamental_bracket, wedge_normalize
from .errors import InputError, StructuralError
from .linalg import Matrix, in_span, nullspace, rank, unit_vector, zero_vector
from .representation import Representation

Key = tuple


def cochain_keys(n: int, dim: int, p: int) -> list[Key]:
    if p < 1:
        raise InputError(f"cochain degree must be >= 1, got {p}")
    if p == 1:
        return [((z,),) for z in range(dim)]
    heads = combos(dim, n - 1)
    return [tuple(h) + (w,) for h in product(heads, repeat=p - 2) for w in combos(dim, n)]


def cochain_basis(n: int, dim: int, dim_v: int, p: int) -> list[tuple[Key, int]]:
    return [(k, v) for k in cochain_keys(n, dim, p) for v in range(dim_v)]


def cochain_dim(alg: NHomLieAlgebra, rep: Representation, p: int) -> int:
    return len(cochain_keys(alg.n, alg.dim, p)) * rep.dim_v


class Cochain:
    """Sparse p-cochain; ``values`` maps keys to V-vectors."""

    def __init__(self, p: int, n: int, dim: int, dim_v: int, values: Mapping[Key, Sequence] | None = None):
        if p < 1:
            raise InputError(f"cochain degree must be >= 1, got {p}")
        self.p, self.n, self.dim, self.dim_v = p, n, dim, dim_v
        clean = {}
        for k, v in (values or {}).items():
            k = tuple(tuple(c) for c in k)
            self._check_key(k)
            v = tuple(v)
            if len(v) != dim_v:
                raise InputError(f"cochain value of length {len(v)}, expected {dim_v}")
            if any(v):
                clean[k] = v
        self.values = clean

    def _check_key(self, k: Key) -> None:
        p, n, d = self.p, self.n, self.dim
        shapes = [1] if p == 1 else [n - 1] * (p - 2) + [n]
        if len(k) != len(shapes):
            raise InputError(f"key {k} has the wrong number of slots for degree {p}")
        for c, size in zip(k, shapes):
            if len(c) != size or any(not 0 <= i < d for i in c) or list(c) != sorted(set(c)):
                raise InputError(f"key slot {list(c)} is not an increasing {size}-combo")

    @classmethod
    def basis_element(cls, alg: NHomLieAlgebra, dim_v: int, p: int, key: Key, v: int) -> "Cochain":
        return cls(p, alg.n, alg.dim, dim_v, {key: unit_vector(dim_v, v)})

    @classmethod
    def from_vector(cls, alg: NHomLieAlgebra, dim_v: int, p: int, coords: Sequence) -> "Cochain":
        basis = cochain_basis(alg.n, alg.dim, dim_v, p)
        values: dict[Key, list] = {}
        for (k, v), a in zip(basis, coords):
            if a:
                values.setdefault(k, [0] * dim_v)[v] += a
        return cls(p, alg.n, alg.dim, dim_v, values)

    @classmethod
    def from_linear_map(cls, alg: NHomLieAlgebra, m: Matrix) -> "Cochain":
        """A map g -> V as a 1-cochain."""
        if m.cols != alg.dim:
            raise InputError("a 1-cochain needs a matrix with dim(g) columns")
        return cls(1, alg.n, alg.dim, m.rows, {((z,),): m.column(z) for z in range(alg.dim)})

    @classmethod
    def from_alt_map(cls, alg: NHomLieAlgebra, omega) -> "Cochain":
        """An alternating n-ary map into V (an ``AltMap``) as a 2-cochain."""
        return cls(2, alg.n, alg.dim, omega.target, {(c,): v for c, v in omega.table.items()})

    def to_vector(self) -> tuple:
        basis = cochain_basis(self.n, self.dim, self.dim_v, self.p)
        zero = zero_vector(self.dim_v)
        return tuple(self.values.get(k, zero)[v] for k, v in basis)

    def to_linear_map(self) -> Matrix:
        if self.p != 1:
            raise InputError("only 1-cochains are linear maps")
        zero = zero_vector(self.dim_v)
        cols = [self.values.get(((z,),), zero) for z in range(self.dim)]
        return Matrix.from_columns(self.dim_v, cols)

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.p, self.n, self.dim, self.dim_v, self.values) == (
            other.p,
            other.n,
            other.dim,
            other.dim_v,
            other.values,
        )

    def __repr__(self) -> str:
        return f"Cochain(p={self.p}, nonzero={len(self.values)})"

    def evaluate(self, wedges: Sequence[Wedge], z: Sequence) -> tuple:
        """``f(X_1, ..., X_{p-1}, z)`` for arbitrary fundamental elements."""
        acc = [0] * self.dim_v
        for k, c in evaluation_functional(self.p, wedges, z).items():
            v = self.values.get(k)
            if v is not None:
                for j, x in enumerate(v):
                    if x:
                        acc[j] = acc[j] + c * x
        return tuple(acc)


def evaluation_functional(p: int, wedges: Sequence[Wedge], z: Sequence) -> dict[Key, object]:
    """Coefficients expressing ``f(wedges..., z)`` in terms of stored keys."""
    if len(wedges) != max(p - 1, 0):
        raise InputError(f"a {p}-cochain takes {p - 1} fundamental arguments, got {len(wedges)}")
    if p == 1:
        return {((j,),): a for j, a in enumerate(z) if a}
    last = wedges[-1].wedge_vector(z)
    out: dict[Key, object] = {}
    factors = [list(w.coeffs.items()) for w in wedges[:-1]] + [list(last.coeffs.items())]
    for choice in product(*factors):
        coef = 1
        for _, a in choice:
            coef = coef * a
        key = tuple(c for c, _ in choice)
        out[key] = out.get(key, 0) + coef
    return out


class CochainComplex:
    """Coboundary machinery for one (algebra, representation) pair."""

    def __init__(self, alg: NHomLieAlgebra, rep: Representation):
        if rep.algebra is not alg and rep.algebra != alg:
            raise InputError("representation belongs to a different algebra")
        self.alg = alg
        self.rep = rep
        self.n = alg.n
        self.a_inv = alg.power(-1)
        self.a_inv2 = alg.power(-2)
        self._tw: dict[tuple, Wedge] = {}
        self._matrices: dict[int, Matrix] = {}
        self._ranks: dict[int, int] = {}

    def _twist(self, w: Wedge, k: int) -> Wedge:
        return self.alg.twist_wedge(w, k)

    def raw_terms(self, p: int, head: Sequence[tuple], block: Sequence[int]) -> Iterator[tuple[int, Matrix, dict]]:
        """Terms ``(sign, operator, functional)`` of ``(delta f)(X_1..X_p, z)``.

        ``head`` gives X_1..X_{p-1} as increasing combos; ``block`` lists the
        basis indices x_p^1, ..., x_p^{n-1}, z in any order (no sorting is
        applied, so transpositions can be probed directly).
        """
        alg, rep, n = self.alg, self.rep, self.n
        d = alg.dim
        basis_vecs = [unit_vector(d, i) for i in block]
        xp_parts, z = basis_vecs[:-1], basis_vecs[-1]
        X = [Wedge.basis(c) for c in head] + [Wedge.of_vectors(xp_parts)]
        inv1 = [self._twist(w, -1) for w in X]
        inv2 = [self._twist(w, -2) for w in X]
        z1 = self.a_inv @ z
        z2 = self.a_inv2 @ z
        beta = rep.beta
        # 1-based i, k as in the formula; lists are 0-based
        for k in range(2, p + 1):
            for i in range(1, k):
                F = fundamental_bracket(alg, inv2[i - 1], inv2[k - 1])
                args = [inv1[j - 1] for j in range(1, k) if j != i] + [F] + inv1[k:]
                yield (-1) ** i, beta, evaluation_functional(p, args, z1)
        for i in range(1, p + 1):
            rest = inv1[: i - 1] + inv1[i:]
            zz = alg.bracket_wedge(inv2[i - 1], z2)
            yield (-1) ** i, beta, evaluation_functional(p, rest, zz)
            yield (-1) ** (i + 1), rep.act(X[i - 1]), evaluation_functional(p, rest, z1)
        for i in range(1, n):
            others = xp_parts[: i - 1] + xp_parts[i:]
            op = rep.rho_of(*others, z)
            yield (-1) ** (n + p - i + 1), op, evaluation_functional(p, inv1[: p - 1], self.a_inv @ xp_parts[i - 1])

    def raw_operator(self, p: int, head, block) -> dict[tuple[int, Key, int], object]:
        """Sparse matrix (v_out, key_in, v_in) -> coefficient of the raw value."""
        out: dict[tuple[int, Key, int], object] = {}
        dv = self.rep.dim_v
        for sign, op, fun in self.raw_terms(p, head, block):
            if op.is_zero() or not fun:
                continue
            for key, c in fun.items():
                sc = c if sign > 0 else -c
                for vo in range(dv):
                    row = op.entries[vo]
                    for vi in range(dv):
                        if row[vi]:
                            idx = (vo, key, vi)
                            out[idx] = out.get(idx, 0) + sc * row[vi]
        return {k: v for k, v in out.items() if v}

    def output_points(self, p: int) -> list[tuple[tuple, tuple]]:
        """(head, block) pairs indexing C^{p+1} keys."""
        pts = []
        for key in cochain_keys(self.n, self.alg.dim, p + 1):
            pts.append((key[:-1], key[-1]))
        return pts

    def matrix(self, p: int) -> Matrix:
        """Matrix of delta: C^p -> C^{p+1} in the fixed cochain bases."""
        if p not in self._matrices:
            alg, dv = self.alg, self.rep.dim_v
            in_basis = cochain_basis(alg.n, alg.dim, dv, p)
            col = {b: j for j, b in enumerate(in_basis)}
            rows = []
            for head, block in self.output_points(p):
                op = self.raw_operator(p, head, block)
                block_rows = [[0] * len(in_basis) for _ in range(dv)]
                for (vo, key, vi), c in op.items():
                    block_rows[vo][col[(key, vi)]] += c
                rows.extend(block_rows)
            self._matrices[p] = Matrix(len(rows), len(in_basis), rows)
        return self._matrices[p]

    def apply(self, f: Cochain) -> Cochain:
        alg, dv = self.alg, self.rep.dim_v
        if (f.n, f.dim, f.dim_v) != (alg.n, alg.dim, dv):
            raise InputError("cochain does not match the algebra/representation")
        p = f.p
        values = {}
        for head, block in self.output_points(p):
            acc = [0] * dv
            for sign, op, fun in self.raw_terms(p, head, block):
                vec = [0] * dv
                for key, c in fun.items():
                    v = f.values.get(key)
                    if v is not None:
                        for j, x in enumerate(v):
                            vec[j] += c * x
                if any(vec):
                    img = op @ vec
                    acc = [a + b if sign > 0 else a - b for a, b in zip(acc, img)]
            values[tuple(head) + (tuple(block),)] = acc
        return Cochain(p + 1, alg.n, alg.dim, dv, values)

    def rank(self, p: int) -> int:
        if p not in self._ranks:
            m = self.matrix(p)
            self._ranks[p] = rank(m.entries) if m.rows and m.cols else 0
        return self._ranks[p]

    def cocycle_basis(self, p: int) -> list[tuple]:
        m = self.matrix(p)
        return nullspace([list(r) for r in m.entries], m.cols)


def _complex(alg, rep) -> CochainComplex:
    return CochainComplex(alg, rep)


def coboundary(alg: NHomLieAlgebra, rep: Representation, f: Cochain) -> Cochain:
    return _complex(alg, rep).apply(f)


def coboundary_matrix(alg: NHomLieAlgebra, rep: Representation, p: int) -> Matrix:
    return _complex(alg, rep).matrix(p)


def cocycle_dim(alg: NHomLieAlgebra, rep: Representation, p: int, cx: CochainComplex | None = None) -> int:
    cx = cx or _complex(alg, rep)
    return cochain_dim(alg, rep, p) - cx.rank(p)


def coboundary_dim(alg: NHomLieAlgebra, rep: Representation, p: int, cx: CochainComplex | None = None) -> int:
    if p < 1:
        raise InputError(f"degree must be >= 1, got {p}")
    if p == 1:
        return 0
    cx = cx or _complex(alg, rep)
    return cx.rank(p - 1)


def cohomology_dim(alg: NHomLieAlgebra, rep: Representation, p: int, cx: CochainComplex | None = None) -> int:
    cx = cx or _complex(alg, rep)
    h = cocycle_dim(alg, rep, p, cx) - coboundary_dim(alg, rep, p, cx)
    if h < 0:
        raise StructuralError(f"negative cohomology dimension in degree {p}: delta^2 != 0")
    return h


def cohomology_summary(alg: NHomLieAlgebra, rep: Representation, p: int) -> dict[str, int]:
    cx = _complex(alg, rep)
    c = cochain_dim(alg, rep, p)
    z = cocycle_dim(alg, rep, p, cx)
    b = coboundary_dim(alg, rep, p, cx)
    if z - b < 0:
        raise StructuralError(f"negative cohomology dimension in degree {p}: delta^2 != 0")
    return {"dim_C": c, "dim_Z": z, "dim_B": b, "dim_H": z - b}


def is_cocycle(alg: NHomLieAlgebra, rep: Representation, f: Cochain) -> bool:
    return coboundary(alg, rep, f).is_zero()


def alternation_defects(alg: NHomLieAlgebra, rep: Representation, p: int) -> list[tuple]:
    """Output points where raw delta is not alternating in the final block.

    For every C^{p+1} key and every permutation of its final n-block the raw
    value (as an operator on all of C^p) must equal the sign of the
    permutation times the value on the sorted block.
    """
    cx = _complex(alg, rep)
    bad = []
    for head, block in cx.output_points(p):
        ref = cx.raw_operator(p, head, block)
        for perm in permutations(block):
            if perm == tuple(block):
                continue
            sign, _ = wedge_normalize(perm)
            got = cx.raw_operator(p, head, perm)
            expect = {k: v if sign > 0 else -v for k, v in ref.items()}
            if got != expect:
                bad.append((tuple(head), perm))
    return bad


def images_are_cocycles(alg: NHomLieAlgebra, rep: Representation, p: int) -> bool:
    """``im delta_{p-1}`` is inside ``ker delta_p`` (rank of the stacked basis)."""
    if p < 2:
        return True
    cx = _complex(alg, rep)
    kernel = cx.cocycle_basis(p)
    m = cx.matrix(p - 1)
    images = [m.column(j) for j in range(m.cols)]
    return all(in_span(kernel, v) for v in images) if kernel else all(not any(v) for v in images)
