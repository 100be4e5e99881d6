"""Finite structures, teams of assignments, and their enumeration.

Domains are always {0, ..., n-1} with n >= 1. Function interpretations are
flat lookup tables in lexicographic argument order (first argument most
significant), so an a-ary function over domain size n is a tuple of n**a
values. Relations are frozensets of argument tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .budget import Budget
from .errors import EvalError, ShapeError
from .syntax import App, Const, Signature, Term, Var

__all__ = [
    "Structure", "Team",
    "tuple_index", "eval_term",
    "count_structures", "enumerate_structures",
    "enumerate_teams",
    "structure_to_json_dict", "structure_from_json_dict",
    "team_to_json_dict", "team_from_json_dict",
]


def tuple_index(args: tuple[int, ...], size: int) -> int:
    """Position of an argument tuple in lexicographic order."""
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


@dataclass
class Structure:
    """A finite structure interpreting every symbol of its signature."""

    sig: Signature
    size: int
    relations: dict[str, frozenset[tuple[int, ...]]]
    functions: dict[str, tuple[int, ...]]
    constants: dict[str, int]

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ShapeError(f"domain size must be a positive integer, got {self.size!r}")
        n = self.size
        if set(self.relations) != set(self.sig.relations):
            raise ShapeError("relation interpretations do not match the signature")
        if set(self.functions) != set(self.sig.functions):
            raise ShapeError("function interpretations do not match the signature")
        if set(self.constants) != set(self.sig.constants):
            raise ShapeError("constant interpretations do not match the signature")
        normalized_rels = {}
        for name, tuples in self.relations.items():
            ar = self.sig.relations[name]
            fs = frozenset(tuple(t) for t in tuples)
            for t in fs:
                if len(t) != ar or not all(isinstance(v, int) and 0 <= v < n for v in t):
                    raise ShapeError(f"bad tuple {t!r} for relation {name}/{ar}")
            normalized_rels[name] = fs
        self.relations = normalized_rels
        normalized_fns = {}
        for name, table in self.functions.items():
            ar = self.sig.functions[name]
            tb = tuple(table)
            if len(tb) != n ** ar:
                raise ShapeError(
                    f"function {name}/{ar} needs a table of length {n ** ar}, got {len(tb)}")
            if not all(isinstance(v, int) and 0 <= v < n for v in tb):
                raise ShapeError(f"function {name} table has values outside the domain")
            normalized_fns[name] = tb
        self.functions = normalized_fns
        for name, val in self.constants.items():
            if not isinstance(val, int) or not 0 <= val < n:
                raise ShapeError(f"constant {name} value {val!r} outside the domain")

    @property
    def domain(self) -> range:
        return range(self.size)

    def rel_holds(self, name: str, args: tuple[int, ...]) -> bool:
        return args in self.relations[name]

    def fn_value(self, name: str, args: tuple[int, ...]) -> int:
        return self.functions[name][tuple_index(args, self.size)]


def eval_term(struct: Structure, env: dict[str, int], term: Term,
              extra_fns: dict[str, tuple[int, tuple[int, ...]]] | None = None) -> int:
    """Value of a term under an assignment.

    ``extra_fns`` maps additional function symbols (e.g. candidates for
    quantified functions) to (arity, flat table) pairs; they shadow nothing
    because quantified names may not collide with signature names.
    """
    if isinstance(term, Var):
        try:
            return env[term.name]
        except KeyError:
            raise EvalError(f"unbound variable {term.name!r}") from None
    if isinstance(term, Const):
        try:
            return struct.constants[term.name]
        except KeyError:
            raise EvalError(f"unknown constant {term.name!r}") from None
    if isinstance(term, App):
        args = tuple(eval_term(struct, env, a, extra_fns) for a in term.args)
        if extra_fns is not None and term.fn in extra_fns:
            ar, table = extra_fns[term.fn]
            if len(args) != ar:
                raise EvalError(f"{term.fn} expects {ar} arguments, got {len(args)}")
            return table[tuple_index(args, struct.size)]
        if term.fn in struct.functions:
            if len(args) != struct.sig.functions[term.fn]:
                raise EvalError(
                    f"{term.fn} expects {struct.sig.functions[term.fn]} arguments, got {len(args)}")
            return struct.functions[term.fn][tuple_index(args, struct.size)]
        raise EvalError(f"unknown function {term.fn!r}")
    raise EvalError(f"not a term: {term!r}")


# ---------------------------------------------------------------------------
# Teams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Team:
    """A set of assignments over a common tuple of variables.

    Rows are value tuples aligned with ``vars``. The empty team (no rows)
    and the team of the empty assignment (no vars, one empty row) are both
    valid and distinct.
    """

    vars: tuple[str, ...]
    rows: frozenset[tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "rows", frozenset(tuple(r) for r in self.rows))
        if len(set(self.vars)) != len(self.vars):
            raise ShapeError("team variables must be distinct")
        width = len(self.vars)
        for r in self.rows:
            if len(r) != width:
                raise ShapeError(f"row {r!r} does not match team variables {self.vars!r}")

    @classmethod
    def of(cls, vars, rows) -> "Team":
        return cls(tuple(vars), frozenset(tuple(r) for r in rows))

    @classmethod
    def empty(cls, vars=()) -> "Team":
        return cls(tuple(vars), frozenset())

    @classmethod
    def initial(cls) -> "Team":
        """The team containing only the empty assignment."""
        return cls((), frozenset({()}))

    def __len__(self) -> int:
        return len(self.rows)

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ShapeError(f"variable {var!r} not in team") from None

    def restrict(self, keep) -> "Team":
        """Project onto a subset of the variables (order as given)."""
        keep = tuple(keep)
        cols = [self.index(v) for v in keep]
        return Team(keep, frozenset(tuple(r[c] for c in cols) for r in self.rows))

    def rel_of(self) -> frozenset[tuple[int, ...]]:
        """The team's rows viewed as a relation over its variable tuple."""
        return self.rows

    def extend_universal(self, var: str, size: int) -> "Team":
        """Every row extended with every domain value for ``var``."""
        if var in self.vars:
            raise ShapeError(f"variable {var!r} already in team")
        rows = frozenset(r + (a,) for r in self.rows for a in range(size))
        return Team(self.vars + (var,), rows)

    def extend_function(self, var: str, choice) -> "Team":
        """Every row extended with one chosen value for ``var``.

        ``choice`` maps each row tuple to a domain element and must cover
        every row of the team.
        """
        if var in self.vars:
            raise ShapeError(f"variable {var!r} already in team")
        rows = []
        for r in self.rows:
            if r not in choice:
                raise ShapeError(f"choice function not total: row {list(r)!r} unmapped")
            rows.append(r + (choice[r],))
        return Team(self.vars + (var,), frozenset(rows))

    def assignments(self) -> Iterator[dict[str, int]]:
        for r in sorted(self.rows):
            yield dict(zip(self.vars, r))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def count_structures(sig: Signature, size: int) -> int:
    """Number of structures of the signature with the given domain size."""
    if size < 1:
        raise ShapeError("domain size must be at least 1")
    total = 1
    for ar in sig.relations.values():
        total *= 2 ** (size ** ar)
    for ar in sig.functions.values():
        total *= size ** (size ** ar)
    total *= size ** len(sig.constants)
    return total


def _rel_options(size: int, arity: int) -> Iterator[frozenset[tuple[int, ...]]]:
    tuples = list(itertools.product(range(size), repeat=arity))
    for flags in itertools.product((0, 1), repeat=len(tuples)):
        yield frozenset(t for t, f in zip(tuples, flags) if f)


def enumerate_structures(sig: Signature, size: int,
                         budget: Budget | None = None) -> Iterator[Structure]:
    """All structures with domain {0..size-1}, in a fixed deterministic order.

    Symbols are filled in sorted-name order (relations, then functions, then
    constants), the later symbols varying fastest. Spends one budget unit
    per structure.
    """
    if size < 1:
        raise ShapeError("domain size must be at least 1")
    syms = ([("rel", name) for name in sorted(sig.relations)]
            + [("fn", name) for name in sorted(sig.functions)]
            + [("const", name) for name in sorted(sig.constants)])

    def rec(i: int, rels: dict, fns: dict, consts: dict) -> Iterator[Structure]:
        if i == len(syms):
            if budget is not None:
                budget.spend(1, "structure enumeration")
            yield Structure(sig, size, dict(rels), dict(fns), dict(consts))
            return
        kind, name = syms[i]
        if kind == "rel":
            for rv in _rel_options(size, sig.relations[name]):
                rels[name] = rv
                yield from rec(i + 1, rels, fns, consts)
            del rels[name]
        elif kind == "fn":
            for table in itertools.product(range(size), repeat=size ** sig.functions[name]):
                fns[name] = table
                yield from rec(i + 1, rels, fns, consts)
            del fns[name]
        else:
            for val in range(size):
                consts[name] = val
                yield from rec(i + 1, rels, fns, consts)
            del consts[name]

    return rec(0, {}, {}, {})


def enumerate_teams(var_names, size: int, max_rows: int | None = None) -> Iterator[Team]:
    """All teams over the given variables, smallest first (empty team included)."""
    var_names = tuple(var_names)
    all_rows = list(itertools.product(range(size), repeat=len(var_names)))
    top = len(all_rows) if max_rows is None else min(max_rows, len(all_rows))
    for k in range(top + 1):
        for chosen in itertools.combinations(all_rows, k):
            yield Team(var_names, frozenset(chosen))


# ---------------------------------------------------------------------------
# JSON formats
# ---------------------------------------------------------------------------

def structure_to_json_dict(struct: Structure) -> dict:
    return {
        "domain": struct.size,
        "relations": {name: sorted(list(t) for t in struct.relations[name])
                      for name in sorted(struct.relations)},
        "functions": {name: list(struct.functions[name])
                      for name in sorted(struct.functions)},
        "constants": {name: struct.constants[name]
                      for name in sorted(struct.constants)},
    }


def structure_from_json_dict(data, sig: Signature) -> Structure:
    if not isinstance(data, dict):
        raise ShapeError("structure JSON must be an object")
    unknown = set(data) - {"domain", "relations", "functions", "constants"}
    if unknown:
        raise ShapeError(f"unknown structure keys: {sorted(unknown)}")
    if "domain" not in data:
        raise ShapeError("structure JSON needs a 'domain' size")
    size = data["domain"]
    rels_in = data.get("relations") or {}
    fns_in = data.get("functions") or {}
    consts_in = data.get("constants") or {}
    if not isinstance(rels_in, dict) or not isinstance(fns_in, dict) \
            or not isinstance(consts_in, dict):
        raise ShapeError("'relations', 'functions' and 'constants' must be objects")
    rels = {}
    for name, tuples in rels_in.items():
        if not isinstance(tuples, list) or not all(isinstance(t, list) for t in tuples):
            raise ShapeError(f"relation {name} must be a list of tuples")
        rels[name] = frozenset(tuple(t) for t in tuples)
    fns = {}
    for name, table in fns_in.items():
        if not isinstance(table, list):
            raise ShapeError(f"function {name} must be a flat value table")
        fns[name] = tuple(table)
    return Structure(sig, size, rels, fns, dict(consts_in))


def team_to_json_dict(team: Team) -> dict:
    return {"vars": list(team.vars), "rows": sorted(list(r) for r in team.rows)}


def team_from_json_dict(data, size: int | None = None) -> Team:
    if not isinstance(data, dict):
        raise ShapeError("team JSON must be an object")
    unknown = set(data) - {"vars", "rows"}
    if unknown:
        raise ShapeError(f"unknown team keys: {sorted(unknown)}")
    vars_in = data.get("vars")
    rows_in = data.get("rows")
    if not isinstance(vars_in, list) or not all(isinstance(v, str) for v in vars_in):
        raise ShapeError("'vars' must be a list of variable names")
    if not isinstance(rows_in, list) or not all(isinstance(r, list) for r in rows_in):
        raise ShapeError("'rows' must be a list of value rows")
    team = Team.of(vars_in, rows_in)
    if size is not None:
        for r in team.rows:
            if not all(isinstance(v, int) and 0 <= v < size for v in r):
                raise ShapeError(f"row {list(r)!r} outside domain of size {size}")
    return team
