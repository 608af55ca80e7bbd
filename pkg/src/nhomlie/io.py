"""JSON formats for algebras, representations, maps, families and cochains.

Rationals are strings ``"p/q"`` (plain ints are accepted on input).  Sparse
vectors are objects mapping a decimal index to a rational.  Every parse error
is an ``InputError`` whose message starts with the offending field path.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cohomology import Cochain
from .core import AltMap, NHomLieAlgebra
from .deformation import DeformationFamily
from .errors import InputError, StructuralError
from .extension import GeneralizedDerivation
from .linalg import Matrix
from .representation import Representation
from .scalars import format_scalar, parse_scalar


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _field(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise InputError(f"{path or '<root>'}: expected an object")
    if key not in obj:
        raise InputError(f"{_join(path, key)}: missing field")
    return obj[key]


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _int(value: Any, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{path}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InputError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _scalar(value: Any, path: str):
    try:
        return parse_scalar(value)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{path}: expected an array")
    return value


def parse_matrix(value: Any, path: str, rows: int, cols: int) -> Matrix:
    data = _list(value, path)
    if len(data) != rows:
        raise InputError(f"{path}: expected {rows} rows, got {len(data)}")
    out = []
    for i, row in enumerate(data):
        row = _list(row, _join(path, i))
        if len(row) != cols:
            raise InputError(f"{_join(path, i)}: expected {cols} entries, got {len(row)}")
        out.append([_scalar(x, _join(_join(path, i), j)) for j, x in enumerate(row)])
    return Matrix(rows, cols, out)


def dump_matrix(m: Matrix) -> list:
    return [[format_scalar(x) for x in r] for r in m.entries]


def parse_vector(value: Any, path: str, dim: int) -> tuple:
    """Sparse ``{"i": "p/q"}`` object or a dense array of length ``dim``."""
    if isinstance(value, list):
        if len(value) != dim:
            raise InputError(f"{path}: expected {dim} entries, got {len(value)}")
        return tuple(_scalar(x, _join(path, i)) for i, x in enumerate(value))
    if not isinstance(value, dict):
        raise InputError(f"{path}: expected a sparse vector object")
    vec = [0] * dim
    for key, x in value.items():
        try:
            i = int(key)
        except (TypeError, ValueError):
            raise InputError(f"{path}.{key}: index is not an integer") from None
        if not 0 <= i < dim:
            raise InputError(f"{path}.{key}: index out of range [0, {dim})")
        vec[i] = _scalar(x, f"{path}.{key}")
    return tuple(vec)


def dump_vector(v) -> dict:
    return {str(i): format_scalar(x) for i, x in enumerate(v) if x}


def _combo(value: Any, path: str, length: int, dim: int) -> tuple:
    items = _list(value, path)
    if len(items) != length:
        raise InputError(f"{path}: expected {length} indices, got {len(items)}")
    combo = tuple(_int(x, _join(path, i)) for i, x in enumerate(items))
    if any(not 0 <= i < dim for i in combo):
        raise InputError(f"{path}: index out of range [0, {dim})")
    if any(combo[i] >= combo[i + 1] for i in range(len(combo) - 1)):
        raise InputError(f"{path}: indices must be strictly increasing")
    return combo


def _table(value: Any, path: str, arity: int, dim: int, target: int, key: str = "value") -> dict:
    table = {}
    for k, entry in enumerate(_list(value, path)):
        here = _join(path, k)
        combo = _combo(_field(entry, "args", here), _join(here, "args"), arity, dim)
        if combo in table:
            raise InputError(f"{_join(here, 'args')}: duplicate combo {list(combo)}")
        table[combo] = parse_vector(_field(entry, key, here), _join(here, key), target)
    return table


def dump_table(table: dict) -> list:
    return [{"args": list(c), "value": dump_vector(v)} for c, v in sorted(table.items()) if any(v)]


def parse_algebra(obj: Any) -> NHomLieAlgebra:
    n = _int(_field(obj, "n", ""), "n", 2)
    dim = _int(_field(obj, "dim", ""), "dim", 0)
    if dim < n - 1:
        raise InputError(f"dim: must be >= n-1 = {n - 1}")
    alpha = parse_matrix(_field(obj, "alpha", ""), "alpha", dim, dim)
    table = _table(obj.get("brackets", []), "brackets", n, dim, dim)
    try:
        return NHomLieAlgebra(n, dim, AltMap(n, dim, dim, table), alpha)
    except StructuralError as exc:
        raise InputError(f"alpha: {exc}") from None


def dump_algebra(alg: NHomLieAlgebra) -> dict:
    return {
        "n": alg.n,
        "dim": alg.dim,
        "alpha": dump_matrix(alg.alpha),
        "brackets": dump_table(alg.bracket.table),
    }


def parse_representation(obj: Any, alg: NHomLieAlgebra) -> Representation:
    dim_v = _int(_field(obj, "dimV", ""), "dimV", 0)
    beta = parse_matrix(_field(obj, "beta", ""), "beta", dim_v, dim_v)
    rho = {}
    for k, entry in enumerate(_list(obj.get("rho", []), "rho")):
        here = _join("rho", k)
        combo = _combo(_field(entry, "args", here), _join(here, "args"), alg.n - 1, alg.dim)
        if combo in rho:
            raise InputError(f"{_join(here, 'args')}: duplicate combo {list(combo)}")
        rho[combo] = parse_matrix(_field(entry, "matrix", here), _join(here, "matrix"), dim_v, dim_v)
    try:
        return Representation(alg, dim_v, rho, beta)
    except StructuralError as exc:
        raise InputError(f"beta: {exc}") from None


def dump_representation(rep: Representation) -> dict:
    return {
        "dimV": rep.dim_v,
        "beta": dump_matrix(rep.beta),
        "rho": [{"args": list(c), "matrix": dump_matrix(m)} for c, m in sorted(rep.rho.items())],
    }


def parse_linear_map(obj: Any, rows: int | None = None, cols: int | None = None, path: str = "") -> Matrix:
    r = _int(_field(obj, "rows", path), _join(path, "rows"), 1)
    c = _int(_field(obj, "cols", path), _join(path, "cols"), 1)
    if rows is not None and r != rows:
        raise InputError(f"{_join(path, 'rows')}: expected {rows}, got {r}")
    if cols is not None and c != cols:
        raise InputError(f"{_join(path, 'cols')}: expected {cols}, got {c}")
    return parse_matrix(_field(obj, "entries", path), _join(path, "entries"), r, c)


def dump_linear_map(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": dump_matrix(m)}


def parse_family(obj: Any, alg: NHomLieAlgebra) -> DeformationFamily:
    items = _list(obj, "<root>")
    if len(items) != alg.n - 1:
        raise InputError(f"<root>: a deformation family needs {alg.n - 1} bracket tables, got {len(items)}")
    maps = [AltMap(alg.n, alg.dim, alg.dim, _table(t, f"[{i}]", alg.n, alg.dim, alg.dim)) for i, t in enumerate(items)]
    return DeformationFamily(alg, maps)


def dump_family(fam: DeformationFamily) -> list:
    return [dump_table(w.table) for w in fam.omegas]


def parse_generalized_derivation(obj: Any, alg: NHomLieAlgebra) -> GeneralizedDerivation:
    return GeneralizedDerivation(alg, _table(obj, "<root>", alg.n - 1, alg.dim, alg.dim))


def dump_generalized_derivation(D: GeneralizedDerivation) -> list:
    return dump_table(D.table)


def parse_cochain(obj: Any, alg: NHomLieAlgebra, dim_v: int) -> Cochain:
    p = _int(_field(obj, "p", ""), "p", 1)
    values = {}
    for k, entry in enumerate(_list(obj.get("entries", []), "entries")):
        here = _join("entries", k)
        if p == 1:
            z = _int(_field(entry, "z", here), _join(here, "z"), 0)
            if z >= alg.dim:
                raise InputError(f"{_join(here, 'z')}: index out of range [0, {alg.dim})")
            key = ((z,),)
        else:
            raw = _list(_field(entry, "combos", here), _join(here, "combos"))
            if len(raw) != p - 1:
                raise InputError(f"{_join(here, 'combos')}: expected {p - 1} index arrays, got {len(raw)}")
            sizes = [alg.n - 1] * (p - 2) + [alg.n]
            key = tuple(
                _combo(c, _join(_join(here, "combos"), i), size, alg.dim) for i, (c, size) in enumerate(zip(raw, sizes))
            )
        if key in values:
            raise InputError(f"{here}: duplicate entry")
        values[key] = parse_vector(_field(entry, "value", here), _join(here, "value"), dim_v)
    return Cochain(p, alg.n, alg.dim, dim_v, values)


def dump_cochain(f: Cochain) -> dict:
    entries = []
    for key, v in sorted(f.values.items()):
        if f.p == 1:
            entries.append({"combos": [], "z": key[0][0], "value": dump_vector(v)})
        else:
            entries.append({"combos": [list(c) for c in key], "value": dump_vector(v)})
    return {"p": f.p, "entries": entries}
