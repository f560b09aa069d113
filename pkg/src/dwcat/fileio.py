"""External JSON formats: cocycle files, module specs, algebra dumps.

These are the interchange formats the command line reads and writes.  All
phases travel as reduced "num/den" strings — never floats — and sparse
entry lists default omitted slots to the trivial phase, except module
action tables, which must be total.  Internal (de)serialization helpers on
the classes themselves stay dense; this module is the boundary layer that
validates untrusted input.
"""

from __future__ import annotations

import json
from math import lcm

import numpy as np

from .algebras import AlgebraObject
from .center import CocycleData, MonomialYDModule
from .cohomology import Cochain
from .groups import FiniteGroup, GroupFormatError, group_from_spec
from .phases import Phase


class FileFormatError(ValueError):
    """Raised when an interchange file violates its documented shape."""


def _load_json(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FileFormatError(f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path!r} is not valid JSON: {exc}") from exc


def dump_json(obj: object, path: str) -> None:
    """Canonical serialization: sorted keys, two-space indent, newline."""
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _phase_str(num: int, modulus: int) -> str:
    return Phase(int(num), modulus).as_fraction_str()


def _parse_phase(text, where: str) -> Phase:
    if not isinstance(text, str):
        raise FileFormatError(f"{where}: phase must be a 'num/den' string")
    try:
        return Phase.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"{where}: bad phase {text!r}: {exc}") from exc


def _index(value, bound: int, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise FileFormatError(f"{where}: expected an integer index")
    if not 0 <= value < bound:
        raise FileFormatError(f"{where}: index {value} out of range [0, {bound})")
    return value


# ---------------------------------------------------------------------------
# groups


def load_group(spec: str) -> FiniteGroup:
    """Accept a preset shorthand ('dihedral:1') or a JSON spec file path."""
    try:
        return group_from_spec(spec)
    except GroupFormatError as exc:
        raise FileFormatError(str(exc)) from exc


def group_spec_dict(G: FiniteGroup) -> dict:
    return {"name": G.name, "table": G.table.tolist()}


# ---------------------------------------------------------------------------
# cocycle files


def cocycle_file_dict(ch: Cochain) -> dict:
    """{"group": spec, "arity": n, "entries": [[i.., num, den], ...]}."""
    entries = []
    for idx in np.ndindex(*ch.values.shape):
        num = int(ch.values[idx])
        if num:
            ph = Phase(num, ch.modulus)
            entries.append([*map(int, idx), ph.num, ph.den])
    return {
        "group": group_spec_dict(ch.group),
        "arity": ch.arity,
        "entries": entries,
    }


def cochain_from_file_dict(data: object, group: FiniteGroup | None = None):
    """Parse a cocycle file; returns (group, Cochain), unvalidated.

    Normalization and the cocycle condition are checked by the caller (the
    CLI treats them as mathematical failures, not parse errors).
    """
    if not isinstance(data, dict):
        raise FileFormatError("cocycle file must be a JSON object")
    if "group" in data:
        try:
            embedded = FiniteGroup.from_json_dict(data["group"])
        except GroupFormatError as exc:
            raise FileFormatError(str(exc)) from exc
        if group is not None and not np.array_equal(embedded.table, group.table):
            raise FileFormatError(
                "cocycle file's group does not match the requested group"
            )
        if group is None:
            group = embedded
    elif group is None:
        raise FileFormatError("cocycle file carries no group")
    arity = data.get("arity")
    if not isinstance(arity, int) or arity < 0:
        raise FileFormatError("cocycle arity must be a nonnegative integer")
    entries = data.get("entries", [])
    if not isinstance(entries, list):
        raise FileFormatError("cocycle entries must be a list")
    parsed = []
    modulus = 1
    for pos, row in enumerate(entries):
        where = f"entry {pos}"
        if not isinstance(row, list) or len(row) != arity + 2:
            raise FileFormatError(
                f"{where}: expected [i1..i{arity}, num, den]"
            )
        idx = tuple(_index(v, group.n, where) for v in row[:arity])
        num, den = row[arity], row[arity + 1]
        if not isinstance(num, int) or not isinstance(den, int) or den <= 0:
            raise FileFormatError(f"{where}: bad numerator/denominator")
        ph = Phase(num, den)
        parsed.append((idx, ph))
        modulus = lcm(modulus, ph.den)
    values = np.zeros((group.n,) * arity, dtype=np.int64)
    for idx, ph in parsed:
        values[idx] = (values[idx] + ph.scaled_num(modulus)) % modulus
    return group, Cochain(group, arity, modulus, values)


def load_cocycle(spec: str, group: FiniteGroup | None = None):
    """A cocycle file path, or 'dihedral:p' against a dihedral group."""
    if spec.startswith("dihedral:"):
        from .cohomology import dihedral_omega

        if group is None:
            raise FileFormatError("'dihedral:p' needs the group to be given")
        if group.n % 4 != 2:
            raise FileFormatError(
                "'dihedral:p' requires an odd dihedral group"
            )
        try:
            p = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise FileFormatError(f"bad cocycle spec {spec!r}") from exc
        m = (group.n - 2) // 4
        omega = dihedral_omega(m, p)
        if omega.group.n != group.n or not np.array_equal(
            omega.group.table, group.table
        ):
            raise FileFormatError(
                "'dihedral:p' cocycle does not match the given group"
            )
        return group, omega
    return cochain_from_file_dict(_load_json(spec), group)


# ---------------------------------------------------------------------------
# module specs


def module_dict(V: MonomialYDModule) -> dict:
    action = []
    for g in range(V.data.group.n):
        for b in range(V.dim):
            action.append(
                [g, b, int(V.perm[g, b]), _phase_str(V.pnum[g, b], V.modulus)]
            )
    return {
        "basis": [f"b{b}" for b in range(V.dim)],
        "degree": [int(d) for d in V.degree],
        "action": action,
    }


def module_from_dict(data: object, ctx: CocycleData) -> MonomialYDModule:
    """Parse a module spec over the given cocycle data.

    The action table must be total: exactly one entry per (group element,
    basis vector).  Mathematical validity is left to ``check_module``.
    """
    if not isinstance(data, dict):
        raise FileFormatError("module spec must be a JSON object")
    basis = data.get("basis")
    degree = data.get("degree")
    action = data.get("action")
    if not isinstance(basis, list) or not basis:
        raise FileFormatError("module spec needs a nonempty basis list")
    dim = len(basis)
    if not isinstance(degree, list) or len(degree) != dim:
        raise FileFormatError("degree list must match the basis length")
    G = ctx.group
    deg = [_index(d, G.n, f"degree[{b}]") for b, d in enumerate(degree)]
    if not isinstance(action, list):
        raise FileFormatError("module spec needs an action list")
    seen: dict[tuple[int, int], tuple[int, Phase]] = {}
    modulus = ctx.modulus
    for pos, row in enumerate(action):
        where = f"action entry {pos}"
        if not isinstance(row, list) or len(row) != 4:
            raise FileFormatError(f"{where}: expected [g, b, b2, phase]")
        g = _index(row[0], G.n, where)
        b = _index(row[1], dim, where)
        b2 = _index(row[2], dim, where)
        ph = _parse_phase(row[3], where)
        if (g, b) in seen:
            raise FileFormatError(f"{where}: duplicate entry for ({g}, {b})")
        seen[(g, b)] = (b2, ph)
        modulus = lcm(modulus, ph.den)
    missing = [
        (g, b)
        for g in range(G.n)
        for b in range(dim)
        if (g, b) not in seen
    ]
    if missing:
        raise FileFormatError(
            f"action table is not total: missing {missing[0]} "
            f"and {len(missing) - 1} more"
        )
    perm = np.empty((G.n, dim), dtype=np.int64)
    pnum = np.empty((G.n, dim), dtype=np.int64)
    for (g, b), (b2, ph) in seen.items():
        perm[g, b] = b2
        pnum[g, b] = ph.scaled_num(modulus)
    return MonomialYDModule(ctx, np.array(deg, dtype=np.int64), perm, pnum, modulus)


def load_module(path: str, ctx: CocycleData) -> MonomialYDModule:
    return module_from_dict(_load_json(path), ctx)


# ---------------------------------------------------------------------------
# algebra dumps


def algebra_dict(A: AlgebraObject) -> dict:
    out = module_dict(A.module)
    mult = []
    for a in range(A.dim):
        for b in range(A.dim):
            t = int(A.mult_target[a, b])
            if t >= 0:
                mult.append([a, b, t, _phase_str(A.mult_pnum[a, b], A.modulus)])
    comult = []
    for a, terms in enumerate(A.comult):
        for j, k, num in terms:
            comult.append([a, int(j), int(k), _phase_str(num, A.modulus)])
    out["mult"] = mult
    out["comult"] = comult
    out["unit"] = [[int(i), _phase_str(num, A.modulus)] for i, num in A.unit]
    out["counit"] = [
        [b, _phase_str(A.counit_num[b], A.modulus)]
        for b in range(A.dim)
        if A.counit_mask[b]
    ]
    out["beta_mult"] = int(A.beta_mult)
    out["beta_counit"] = int(A.beta_counit)
    return out


def algebra_from_dict(data: object, ctx: CocycleData) -> AlgebraObject:
    if not isinstance(data, dict):
        raise FileFormatError("algebra dump must be a JSON object")
    module = module_from_dict(data, ctx)
    dim = module.dim
    phases: list[tuple[str, list]] = []
    for field in ("mult", "comult", "unit", "counit"):
        rows = data.get(field, [])
        if not isinstance(rows, list):
            raise FileFormatError(f"{field} must be a list")
        phases.append((field, rows))
    modulus = module.modulus
    parsed: dict[str, list] = {}
    for field, rows in phases:
        width = 2 if field in ("unit", "counit") else 4
        got = []
        for pos, row in enumerate(rows):
            where = f"{field} entry {pos}"
            if not isinstance(row, list) or len(row) != width:
                raise FileFormatError(f"{where}: expected {width} fields")
            idx = [_index(v, dim, where) for v in row[:-1]]
            ph = _parse_phase(row[-1], where)
            modulus = lcm(modulus, ph.den)
            got.append((idx, ph))
        parsed[field] = got
    mult_target = np.full((dim, dim), -1, dtype=np.int64)
    mult_pnum = np.zeros((dim, dim), dtype=np.int64)
    for (a, b, t), ph in parsed["mult"]:
        if mult_target[a, b] >= 0:
            raise FileFormatError(f"duplicate mult entry for ({a}, {b})")
        mult_target[a, b] = t
        mult_pnum[a, b] = ph.scaled_num(modulus)
    comult: list[list[tuple[int, int, int]]] = [[] for _ in range(dim)]
    for (a, j, k), ph in parsed["comult"]:
        comult[a].append((j, k, ph.scaled_num(modulus)))
    unit = [(i, ph.scaled_num(modulus)) for (i,), ph in parsed["unit"]]
    counit_num = np.zeros(dim, dtype=np.int64)
    counit_mask = np.zeros(dim, dtype=bool)
    for (b,), ph in parsed["counit"]:
        counit_num[b] = ph.scaled_num(modulus)
        counit_mask[b] = True
    beta_mult = data.get("beta_mult")
    beta_counit = data.get("beta_counit")
    if not isinstance(beta_mult, int) or not isinstance(beta_counit, int):
        raise FileFormatError("algebra dump needs integer beta_mult/beta_counit")
    return AlgebraObject(
        module.with_modulus(modulus),
        mult_target,
        mult_pnum,
        comult,
        unit,
        counit_num,
        counit_mask,
        modulus,
        beta_mult=beta_mult,
        beta_counit=beta_counit,
    )


def load_algebra(path: str, ctx: CocycleData) -> AlgebraObject:
    return algebra_from_dict(_load_json(path), ctx)
