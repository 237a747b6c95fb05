"""JSON loading and canonical serialization for the CLI.

Rationals travel as {"num": "...", "den": "..."} decimal strings so
arbitrary-precision values survive transport; output is canonical
(sorted keys, fixed separators, trailing newline) for byte-stable reports.
"""

import json
from fractions import Fraction

from .exactla import IntMatrix
from .grp import GroupError, all_subgroups, group_from_generators, group_from_table
from .burnside import BurnsideElement
from .zgmod import FpModule, ZGLattice


class InputError(ValueError):
    """Malformed or inconsistent JSON input."""


def rational_to_json(x):
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj):
    try:
        return Fraction(int(obj["num"]), int(obj["den"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad rational: {obj!r}") from exc


def load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def group_from_json(obj, bound=64):
    """Build a group from {"generators": [...]} or {"cayley_table": [...]}."""
    if not isinstance(obj, dict):
        raise InputError("group input must be a JSON object")
    labels = obj.get("labels")
    try:
        if "generators" in obj:
            return group_from_generators(obj["generators"], bound=bound)
        if "cayley_table" in obj:
            return group_from_table(obj["cayley_table"], labels=labels)
    except GroupError as exc:
        raise InputError(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed group input: {exc}") from exc
    raise InputError("group input needs 'generators' or 'cayley_table'")


def _int_matrix(obj, what):
    try:
        return IntMatrix([[int(x) for x in row] for row in obj])
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed {what}: {exc}") from exc


def _complete_action(group, given, rank):
    """Extend an action given on a generating set to all of G.

    ρ(ab) = ρ(a)ρ(b); redundant entries must agree with the completion.
    """
    known = {0: IntMatrix.identity(rank)}
    if 0 in given and given[0] != known[0]:
        raise InputError("identity must act as the identity matrix")
    gens = dict(given)
    known.update(gens)
    frontier = list(known)
    while frontier:
        fresh = []
        for a in frontier:
            for b, mb in gens.items():
                ab = group.table[a][b]
                mab = known[a] @ mb
                seen = known.get(ab)
                if seen is None:
                    known[ab] = mab
                    fresh.append(ab)
                elif seen != mab:
                    raise InputError("inconsistent action specification")
        frontier = fresh
    if len(known) != group.order:
        raise InputError("action entries do not generate the whole group")
    return tuple(known[g] for g in range(group.order))


def _action_from_json(group, obj, rank):
    if not isinstance(obj, dict) or not obj:
        raise InputError("action must be a non-empty object of element matrices")
    given = {}
    for key, mat in obj.items():
        try:
            g = int(key)
        except ValueError as exc:
            raise InputError(f"bad element index {key!r}") from exc
        if not 0 <= g < group.order:
            raise InputError(f"element index {g} out of range")
        m = _int_matrix(mat, f"action matrix for element {g}")
        if m.rows != rank or m.cols != rank:
            raise InputError(f"action matrix for element {g} has wrong shape")
        given[g] = m
    return _complete_action(group, given, rank)


def module_from_json(group, obj):
    """Load a lattice {"rank", "action"} or an FpModule {"presentation": ...}."""
    if not isinstance(obj, dict):
        raise InputError("module input must be a JSON object")
    try:
        if "presentation" in obj:
            pres = obj["presentation"]
            gens = int(pres["gens"])
            rel_rows = [[int(x) for x in vec] for vec in pres["relations"]]
            for vec in rel_rows:
                if len(vec) != gens:
                    raise InputError("each relation must have one entry per generator")
            relations = IntMatrix.from_columns(rel_rows, rows=gens)
            action = _action_from_json(group, pres["action"], gens)
            return FpModule(group, gens, relations, action)
        rank = int(obj["rank"])
        if rank < 0:
            raise InputError("rank must be non-negative")
        action = _action_from_json(group, obj["action"], rank)
        return ZGLattice(group, rank, action)
    except InputError:
        raise
    except KeyError as exc:
        raise InputError(f"missing module field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed module input: {exc}") from exc


def burnside_from_json(group, obj):
    """Load {"coeffs": {"<class-id>": n}} against the canonical class table."""
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise InputError("relation input needs a 'coeffs' object")
    table = all_subgroups(group)
    coeffs = [0] * len(table)
    for key, val in obj["coeffs"].items():
        try:
            ci = int(key)
            n = int(val)
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad coefficient entry {key!r}: {val!r}") from exc
        if not 0 <= ci < len(table):
            raise InputError(f"subgroup class id {ci} out of range")
        coeffs[ci] = n
    return BurnsideElement(group, coeffs)


def jsonable(x):
    """Recursively convert report values into JSON-encodable structures."""
    if isinstance(x, Fraction):
        return rational_to_json(x)
    if isinstance(x, IntMatrix):
        return x.tolist()
    if isinstance(x, BurnsideElement):
        return {"coeffs": {str(i): c for i, c in x.support()}}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    raise TypeError(f"cannot serialize {type(x).__name__}")


def fe_report_to_json(report):
    """Shape: relations, regulator_constants {M, N}, defects, verdict, embedding."""
    return {
        "verdict": report.verdict,
        "relations": [jsonable(theta) for theta in report.relations],
        "regulator_constants": {
            "M": [rational_to_json(c) for c in report.constants_m],
            "N": [rational_to_json(c) for c in report.constants_n],
        },
        "defects": [rational_to_json(d) for d in report.defects],
        "index_values": [rational_to_json(v) for v in report.index_values.values],
        "embedding": report.embedding.tolist(),
        "seed": report.seed,
    }


def canonical_dumps(obj):
    """Deterministic JSON text: sorted keys, no whitespace, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
