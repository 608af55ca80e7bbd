"""n-Hom-Lie algebras stored by structure constants.

Alternating multilinear maps are stored on strictly increasing index
combinations only; evaluating them on arbitrary vectors goes through the
exterior power: ``f(v_1, ..., v_k) = f(v_1 ^ ... ^ v_k)`` with the wedge
expanded over the basis of increasing combos.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import InputError, StructuralError
from .linalg import Matrix, is_zero, unit_vector, vadd, vscale, vsub, zero_vector
from .report import Report


def wedge_normalize(indices: Sequence[int], dim: int | None = None) -> tuple[int, tuple]:
    """Sort ``indices`` and return ``(sign, combo)``; sign 0 on a repeat."""
    idx = tuple(indices)
    if dim is not None:
        for i in idx:
            if not 0 <= i < dim:
                raise InputError(f"basis index {i} out of range [0, {dim})")
    if len(set(idx)) != len(idx):
        return 0, ()
    # parity of the sorting permutation = parity of the inversion count
    inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return (-1 if inversions % 2 else 1), tuple(sorted(idx))


def combos(dim: int, k: int) -> list[tuple]:
    """Increasing k-combos of ``range(dim)`` in lexicographic order."""
    if k < 0:
        return []
    return list(combinations(range(dim), k))


def _insert(combo: tuple, i: int) -> tuple[int, tuple] | None:
    """Sign and result of appending ``i`` to ``combo`` and re-sorting."""
    if i in combo:
        return None
    larger = sum(1 for c in combo if c > i)
    pos = len(combo) - larger
    return (-1 if larger % 2 else 1), combo[:pos] + (i,) + combo[pos:]


class Wedge:
    """Element of the k-th exterior power, sparse over increasing combos."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Mapping[tuple, object] | None = None):
        self.degree = degree
        clean = {}
        for c, a in (coeffs or {}).items():
            if len(c) != degree:
                raise InputError(f"combo {c} does not have degree {degree}")
            if a:
                clean[tuple(c)] = a
        self.coeffs = clean

    @classmethod
    def basis(cls, combo: Sequence[int]) -> "Wedge":
        sign, c = wedge_normalize(combo)
        return cls(len(combo), {c: sign} if sign else {})

    @classmethod
    def of_vectors(cls, vectors: Sequence[Sequence]) -> "Wedge":
        """``v_1 ^ ... ^ v_k`` expanded over increasing combos."""
        acc: dict[tuple, object] = {(): 1}
        for v in vectors:
            nxt: dict[tuple, object] = {}
            support = [(i, a) for i, a in enumerate(v) if a]
            for c, coef in acc.items():
                for i, a in support:
                    ins = _insert(c, i)
                    if ins is None:
                        continue
                    s, key = ins
                    val = nxt.get(key, 0) + (coef * a if s > 0 else -(coef * a))
                    nxt[key] = val
            acc = nxt
        return cls(len(vectors), acc)

    def items(self):
        return self.coeffs.items()

    def __iter__(self):
        return iter(self.coeffs.items())

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Wedge):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = " + ".join(f"{a}*e{c}" for c, a in sorted(self.coeffs.items()))
        return f"Wedge[{self.degree}]({terms or '0'})"

    def _combine(self, other: "Wedge", sign: int) -> "Wedge":
        if self.degree != other.degree:
            raise InputError("cannot add wedges of different degree")
        out = dict(self.coeffs)
        for c, a in other.coeffs.items():
            out[c] = out.get(c, 0) + (a if sign > 0 else -a)
        return Wedge(self.degree, out)

    def __add__(self, other: "Wedge") -> "Wedge":
        return self._combine(other, 1)

    def __sub__(self, other: "Wedge") -> "Wedge":
        return self._combine(other, -1)

    def __neg__(self) -> "Wedge":
        return Wedge(self.degree, {c: -a for c, a in self.coeffs.items()})

    def scale(self, s) -> "Wedge":
        return Wedge(self.degree, {c: s * a for c, a in self.coeffs.items()})

    def wedge_vector(self, v: Sequence) -> "Wedge":
        """``self ^ v``."""
        out: dict[tuple, object] = {}
        support = [(i, a) for i, a in enumerate(v) if a]
        for c, coef in self.coeffs.items():
            for i, a in support:
                ins = _insert(c, i)
                if ins is None:
                    continue
                s, key = ins
                out[key] = out.get(key, 0) + (coef * a if s > 0 else -(coef * a))
        return Wedge(self.degree + 1, out)


def wedge_sum(terms: Iterable[Wedge], degree: int) -> Wedge:
    out: dict[tuple, object] = {}
    for w in terms:
        for c, a in w.coeffs.items():
            out[c] = out.get(c, 0) + a
    return Wedge(degree, out)


class AltMap:
    """Alternating multilinear map ``wedge^arity(K^dim) -> K^target``."""

    __slots__ = ("arity", "dim", "target", "table")

    def __init__(self, arity: int, dim: int, target: int, table: Mapping[tuple, Sequence] | None = None):
        self.arity = arity
        self.dim = dim
        self.target = target
        clean = {}
        for c, v in (table or {}).items():
            c = tuple(c)
            if len(c) != arity or any(not 0 <= i < dim for i in c):
                raise InputError(f"bad argument combo {list(c)} for arity {arity}, dimension {dim}")
            if any(c[i] >= c[i + 1] for i in range(len(c) - 1)):
                raise InputError(f"argument combo {list(c)} is not strictly increasing")
            v = tuple(v)
            if len(v) != target:
                raise InputError(f"value for {list(c)} has length {len(v)}, expected {target}")
            if any(v):
                clean[c] = v
        self.table = clean

    @classmethod
    def from_function(cls, arity: int, dim: int, target: int, fn) -> "AltMap":
        """Tabulate ``fn`` (taking ``arity`` vectors) on increasing basis combos."""
        table = {}
        for c in combos(dim, arity):
            table[c] = fn(*[unit_vector(dim, i) for i in c])
        return cls(arity, dim, target, table)

    def value(self, combo: tuple) -> tuple:
        return self.table.get(combo, zero_vector(self.target))

    def on_wedge(self, w: Wedge) -> tuple:
        acc = [0] * self.target
        for c, a in w.coeffs.items():
            v = self.table.get(c)
            if v is None:
                continue
            for j, x in enumerate(v):
                if x:
                    acc[j] = acc[j] + a * x
        return tuple(acc)

    def __call__(self, *vectors) -> tuple:
        if len(vectors) != self.arity:
            raise InputError(f"expected {self.arity} arguments, got {len(vectors)}")
        for v in vectors:
            if len(v) != self.dim:
                raise InputError(f"argument of length {len(v)}, expected {self.dim}")
        return self.on_wedge(Wedge.of_vectors(vectors))

    def __add__(self, other: "AltMap") -> "AltMap":
        return self._lincomb(other, 1)

    def __sub__(self, other: "AltMap") -> "AltMap":
        return self._lincomb(other, -1)

    def _lincomb(self, other: "AltMap", s) -> "AltMap":
        if (self.arity, self.dim, self.target) != (other.arity, other.dim, other.target):
            raise InputError("incompatible alternating maps")
        keys = set(self.table) | set(other.table)
        return AltMap(
            self.arity,
            self.dim,
            self.target,
            {c: vadd(self.value(c), vscale(s, other.value(c))) for c in keys},
        )

    def scale(self, s) -> "AltMap":
        return AltMap(self.arity, self.dim, self.target, {c: vscale(s, v) for c, v in self.table.items()})

    def is_zero(self) -> bool:
        return not self.table

    def __eq__(self, other) -> bool:
        if not isinstance(other, AltMap):
            return NotImplemented
        return (self.arity, self.dim, self.target, self.table) == (
            other.arity,
            other.dim,
            other.target,
            other.table,
        )

    def __repr__(self) -> str:
        return f"AltMap(arity={self.arity}, dim={self.dim}, nonzero={len(self.table)})"


class NHomLieAlgebra:
    """Candidate n-Hom-Lie algebra: arity, dimension, constants and twist.

    Construction only checks shapes and that ``alpha`` is invertible; the
    identities themselves are checked by the ``check_*`` functions.
    """

    def __init__(self, n: int, dim: int, brackets: AltMap | Mapping[tuple, Sequence], alpha: Matrix):
        if n < 2:
            raise InputError(f"arity must be at least 2, got {n}")
        if dim < n - 1:
            raise InputError(f"dimension {dim} is smaller than n-1 = {n - 1}")
        if not isinstance(alpha, Matrix) or alpha.shape != (dim, dim):
            raise InputError(f"alpha must be a {dim}x{dim} matrix")
        if not alpha.is_invertible():
            raise StructuralError("alpha is singular")
        if not isinstance(brackets, AltMap):
            brackets = AltMap(n, dim, dim, brackets)
        if (brackets.arity, brackets.dim, brackets.target) != (n, dim, dim):
            raise InputError("bracket table does not match arity/dimension")
        self.n = n
        self.dim = dim
        self.bracket = brackets
        self.alpha = alpha
        self._tilde_cache: dict[tuple, Wedge] = {}
        self._power_cache: dict[int, Matrix] = {0: Matrix.identity(dim), 1: alpha}
        self._fb_cache: dict[tuple, Wedge] = {}

    def __repr__(self) -> str:
        return f"NHomLieAlgebra(n={self.n}, dim={self.dim}, nonzero_brackets={len(self.bracket.table)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, NHomLieAlgebra):
            return NotImplemented
        return (self.n, self.dim, self.bracket, self.alpha) == (other.n, other.dim, other.bracket, other.alpha)

    def e(self, i: int) -> tuple:
        return unit_vector(self.dim, i)

    def power(self, k: int) -> Matrix:
        if k not in self._power_cache:
            if k == -1:
                self._power_cache[k] = self.alpha.inverse()
            elif k < 0:
                self._power_cache[k] = self.power(k + 1) @ self.power(-1)
            else:
                self._power_cache[k] = self.power(k - 1) @ self.alpha
        return self._power_cache[k]

    @cached_property
    def alpha_inv(self) -> Matrix:
        return self.power(-1)

    def __call__(self, *vectors) -> tuple:
        return self.bracket(*vectors)

    def bracket_wedge(self, x: Wedge, y: Sequence) -> tuple:
        """``[x_1, ..., x_{n-1}, y]`` for a fundamental element ``x``."""
        return self.bracket.on_wedge(x.wedge_vector(y))

    def ad(self, x: Wedge) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        cols = [self.bracket_wedge(x, self.e(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.dim, cols)

    def twist_wedge(self, w: Wedge, k: int = 1) -> Wedge:
        """Induced action of ``alpha^k`` on a wedge element."""
        out: dict[tuple, object] = {}
        for c, a in w.coeffs.items():
            img = self._tilde_basis(c, k)
            for c2, b in img.coeffs.items():
                out[c2] = out.get(c2, 0) + a * b
        return Wedge(w.degree, out)

    def _tilde_basis(self, combo: tuple, k: int) -> Wedge:
        key = (combo, k)
        if key not in self._tilde_cache:
            m = self.power(k)
            self._tilde_cache[key] = Wedge.of_vectors([m.column(i) for i in combo])
        return self._tilde_cache[key]

    def fundamental_bracket_basis(self, x: tuple, y: tuple) -> Wedge:
        key = (x, y)
        if key not in self._fb_cache:
            X = Wedge.basis(x)
            ys = [self.e(i) for i in y]
            ay = [self.alpha @ v for v in ys]
            terms = []
            for i in range(len(y)):
                args = ay[:i] + [self.bracket_wedge(X, ys[i])] + ay[i + 1 :]
                terms.append(Wedge.of_vectors(args))
            self._fb_cache[key] = wedge_sum(terms, self.n - 1)
        return self._fb_cache[key]


def _check_vectors(alg: NHomLieAlgebra, args: Sequence[Sequence]) -> None:
    if len(args) != alg.n:
        raise InputError(f"bracket needs {alg.n} arguments, got {len(args)}")
    for v in args:
        if len(v) != alg.dim:
            raise InputError(f"argument of length {len(v)}, expected {alg.dim}")


def bracket_eval(alg: NHomLieAlgebra, args: Sequence[Sequence]) -> tuple:
    _check_vectors(alg, args)
    return alg.bracket(*args)


def check_automorphism(alg: NHomLieAlgebra) -> Report:
    report = Report("check_automorphism")
    if not alg.alpha.is_invertible():
        report.add(("invertibility",), "invertible", "singular")
    a = alg.alpha
    for c in combos(alg.dim, alg.n):
        lhs = a @ alg.bracket.value(c)
        rhs = alg.bracket(*[a.column(i) for i in c])
        if lhs != rhs:
            report.add(("automorphism", c), lhs, rhs)
    return report.sorted()


def hom_fundamental_defect(alg: NHomLieAlgebra, x: Sequence[Sequence], y: Sequence[Sequence]) -> tuple:
    """HF_{x, y} for vectors x_1..x_{n-1}, y_1..y_n."""
    a = alg.alpha
    ax = [a @ v for v in x]
    ay = [a @ v for v in y]
    X = Wedge.of_vectors(x)
    total = alg.bracket(*ax, alg.bracket(*y))
    for i in range(len(y)):
        inner = alg.bracket_wedge(X, y[i])
        total = vsub(total, alg.bracket(*ay[:i], inner, *ay[i + 1 :]))
    return total


def check_hom_fundamental(alg: NHomLieAlgebra, strict: bool = True) -> Report:
    """Hom-Fundamental identity on all basis (x, y) combos.

    ``strict`` enforces the automorphism precondition; pass ``False`` to
    probe candidate data whose twist is not multiplicative.
    """
    if strict and not check_automorphism(alg).passed:
        raise InputError("alpha is not an automorphism of the bracket; run check_automorphism")
    report = Report("check_hom_fundamental")
    for x in combos(alg.dim, alg.n - 1):
        xs = [alg.e(i) for i in x]
        for y in combos(alg.dim, alg.n):
            defect = hom_fundamental_defect(alg, xs, [alg.e(i) for i in y])
            if not is_zero(defect):
                report.add(("HF", x, y), zero_vector(alg.dim), defect)
    return report.sorted()


def _as_wedge(alg: NHomLieAlgebra, X, degree: int) -> Wedge:
    if isinstance(X, Wedge):
        if X.degree != degree:
            raise InputError(f"expected a wedge of degree {degree}, got {X.degree}")
        for c in X.coeffs:
            if any(not 0 <= i < alg.dim for i in c):
                raise InputError(f"wedge index out of range in {c}")
        return X
    combo = tuple(X)
    if len(combo) != degree:
        raise InputError(f"expected a combo of length {degree}, got {len(combo)}")
    if any(not 0 <= i < alg.dim for i in combo):
        raise InputError(f"wedge index out of range in {combo}")
    return Wedge.basis(combo)


def fundamental_bracket(alg: NHomLieAlgebra, X, Y) -> Wedge:
    """``[X, Y]_F`` extended bilinearly; X, Y are wedges or basis combos."""
    X = _as_wedge(alg, X, alg.n - 1)
    Y = _as_wedge(alg, Y, alg.n - 1)
    out: dict[tuple, object] = {}
    for cx, a in X.coeffs.items():
        for cy, b in Y.coeffs.items():
            for c, v in alg.fundamental_bracket_basis(cx, cy).coeffs.items():
                out[c] = out.get(c, 0) + a * b * v
    return Wedge(alg.n - 1, out)


def check_hom_leibniz_F(alg: NHomLieAlgebra) -> Report:
    report = Report("check_hom_leibniz_F")
    basis = combos(alg.dim, alg.n - 1)
    F = lambda a, b: fundamental_bracket(alg, a, b)  # noqa: E731
    tw = {c: alg.twist_wedge(Wedge.basis(c)) for c in basis}
    for x in basis:
        for y in basis:
            xy = F(x, y)
            for z in basis:
                lhs = F(tw[x], F(y, z))
                rhs = F(xy, tw[z]) + F(tw[y], F(x, z))
                diff = lhs - rhs
                if not diff.is_zero():
                    report.add(("leibniz", x, y, z), 0, dict(sorted(diff.coeffs.items())))
    return report.sorted()


def alpha_power(alg: NHomLieAlgebra, k: int) -> Matrix:
    return alg.power(k)


def transport_structure(alg: NHomLieAlgebra, f: Matrix, gamma: Matrix) -> NHomLieAlgebra:
    """Pull the structure back along an isomorphism ``f: h -> g``.

    The new bracket is ``f^{-1}[f u_1, ..., f u_n]`` with twist ``gamma``;
    requires ``alpha f = f gamma``.
    """
    d = alg.dim
    if f.shape != (d, d) or gamma.shape != (d, d):
        raise InputError(f"f and gamma must be {d}x{d}")
    if not f.is_invertible():
        raise InputError("f is not invertible")
    if alg.alpha @ f != f @ gamma:
        raise InputError("alpha . f != f . gamma")
    finv = f.inverse()
    table = {c: finv @ alg.bracket(*[f.column(i) for i in c]) for c in combos(d, alg.n)}
    return NHomLieAlgebra(alg.n, d, AltMap(alg.n, d, d, table), gamma)


def check_algebra(alg: NHomLieAlgebra) -> Report:
    """Automorphism and Hom-Fundamental checks in one report."""
    report = Report("check_algebra")
    report.extend(check_automorphism(alg))
    report.extend(check_hom_fundamental(alg, strict=False))
    return report.sorted()
