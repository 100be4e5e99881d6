"""Independent reference implementations used as test oracles.

Everything here is deliberately written from the semantic definitions,
with different data layouts and search orders than the package code:

* oracle_satisfies searches disjunctions over ALL covering pairs
  (left/right/both per row, 3^|team| covers) and existentials over all
  value-choice functions, with no memoization and no shortcuts.
* oracle_fo / oracle_eso evaluate function sentences with dict-based
  tables keyed by argument tuple, enumerated per sorted argument order.

Expected values in the test files marked as frozen were computed with
these oracles and then written down as literals; the tests assert both
the frozen value and live oracle agreement.
"""
from __future__ import annotations

import itertools

from deplog.structures import Structure, eval_term
from deplog.syntax import (
    And, App, Bool, Const, DepAtom, Equal, EsoSentence, Exists, Forall,
    Formula, Or, RelAtom, Var,
)


# ---------------------------------------------------------------------------
# Team-semantics oracle (full-cover disjunction, full function search)
# ---------------------------------------------------------------------------

def _row_env(vars: tuple[str, ...], row: tuple[int, ...]) -> dict[str, int]:
    return dict(zip(vars, row))


def _literal_holds(struct: Structure, env: dict[str, int], f: Formula) -> bool:
    if isinstance(f, RelAtom):
        args = tuple(eval_term(struct, env, a) for a in f.args)
        return (args in struct.relations[f.rel]) != f.negated
    if isinstance(f, Equal):
        same = eval_term(struct, env, f.left) == eval_term(struct, env, f.right)
        return same != f.negated
    if isinstance(f, Bool):
        return f.value
    raise AssertionError(f"not a literal: {f!r}")


def oracle_satisfies(struct: Structure, vars, rows, f: Formula) -> bool:
    """Team satisfaction straight from the definition, no shortcuts."""
    vars = tuple(vars)
    rows = frozenset(tuple(r) for r in rows)
    if not rows:
        return True
    if isinstance(f, (RelAtom, Equal, Bool)):
        return all(_literal_holds(struct, _row_env(vars, r), f) for r in rows)
    if isinstance(f, DepAtom):
        if f.negated:
            return False
        if not f.terms:
            return True
        seen: dict[tuple[int, ...], int] = {}
        for r in rows:
            env = _row_env(vars, r)
            key = tuple(eval_term(struct, env, t) for t in f.terms[:-1])
            val = eval_term(struct, env, f.terms[-1])
            if seen.setdefault(key, val) != val:
                return False
        return True
    if isinstance(f, And):
        return (oracle_satisfies(struct, vars, rows, f.left)
                and oracle_satisfies(struct, vars, rows, f.right))
    if isinstance(f, Or):
        row_list = sorted(rows)
        # every cover: each row goes left, right, or both
        for sides in itertools.product((0, 1, 2), repeat=len(row_list)):
            left = frozenset(r for r, s in zip(row_list, sides) if s != 1)
            right = frozenset(r for r, s in zip(row_list, sides) if s != 0)
            if (oracle_satisfies(struct, vars, left, f.left)
                    and oracle_satisfies(struct, vars, right, f.right)):
                return True
        return False
    if isinstance(f, Exists):
        n = struct.size
        row_list = sorted(rows)
        if f.var in vars:
            i = vars.index(f.var)
            for choice in itertools.product(range(n), repeat=len(row_list)):
                new_rows = frozenset(r[:i] + (a,) + r[i + 1:]
                                     for r, a in zip(row_list, choice))
                if oracle_satisfies(struct, vars, new_rows, f.body):
                    return True
            return False
        for choice in itertools.product(range(n), repeat=len(row_list)):
            new_rows = frozenset(r + (a,) for r, a in zip(row_list, choice))
            if oracle_satisfies(struct, vars + (f.var,), new_rows, f.body):
                return True
        return False
    if isinstance(f, Forall):
        n = struct.size
        if f.var in vars:
            i = vars.index(f.var)
            new_rows = frozenset(r[:i] + (a,) + r[i + 1:]
                                 for r in rows for a in range(n))
            return oracle_satisfies(struct, vars, new_rows, f.body)
        new_rows = frozenset(r + (a,) for r in rows for a in range(n))
        return oracle_satisfies(struct, vars + (f.var,), new_rows, f.body)
    raise AssertionError(f"cannot evaluate {f!r}")


def oracle_sentence_truth(struct: Structure, f: Formula) -> bool:
    return oracle_satisfies(struct, (), frozenset({()}), f)


# ---------------------------------------------------------------------------
# Classical / function-sentence oracle (dict tables)
# ---------------------------------------------------------------------------

def _oracle_term(struct: Structure, env, t, tables) -> int:
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Const):
        return struct.constants[t.name]
    if isinstance(t, App):
        args = tuple(_oracle_term(struct, env, a, tables) for a in t.args)
        if t.fn in tables:
            return tables[t.fn][args]
        return struct.fn_value(t.fn, args)
    raise AssertionError(f"not a term: {t!r}")


def oracle_fo(struct: Structure, env: dict[str, int], f: Formula,
              tables: dict[str, dict[tuple[int, ...], int]] | None = None) -> bool:
    tables = tables or {}
    if isinstance(f, RelAtom):
        args = tuple(_oracle_term(struct, env, a, tables) for a in f.args)
        return (args in struct.relations[f.rel]) != f.negated
    if isinstance(f, Equal):
        same = (_oracle_term(struct, env, f.left, tables)
                == _oracle_term(struct, env, f.right, tables))
        return same != f.negated
    if isinstance(f, Bool):
        return f.value
    if isinstance(f, And):
        return (oracle_fo(struct, env, f.left, tables)
                and oracle_fo(struct, env, f.right, tables))
    if isinstance(f, Or):
        return (oracle_fo(struct, env, f.left, tables)
                or oracle_fo(struct, env, f.right, tables))
    if isinstance(f, Exists):
        return any(oracle_fo(struct, {**env, f.var: a}, f.body, tables)
                   for a in range(struct.size))
    if isinstance(f, Forall):
        return all(oracle_fo(struct, {**env, f.var: a}, f.body, tables)
                   for a in range(struct.size))
    raise AssertionError(f"cannot evaluate {f!r}")


def _all_tables(n: int, arity: int):
    points = list(itertools.product(range(n), repeat=arity))
    for values in itertools.product(range(n), repeat=len(points)):
        yield dict(zip(points, values))


def oracle_eso(struct: Structure, s: EsoSentence) -> bool:
    """Truth of a function sentence by brute force over dict tables."""
    n = struct.size

    def body(env, i):
        if i == len(s.prefix):
            return oracle_fo(struct, env, s.matrix, tables)
        kind, var = s.prefix[i]
        vals = range(n)
        if kind == "forall":
            return all(body({**env, var: a}, i + 1) for a in vals)
        return any(body({**env, var: a}, i + 1) for a in vals)

    tables: dict[str, dict[tuple[int, ...], int]] = {}

    def search(j):
        if j == len(s.functions):
            return body({}, 0)
        name, ar = s.functions[j]
        for tab in _all_tables(n, ar):
            tables[name] = tab
            if search(j + 1):
                return True
        tables.pop(name, None)
        return False

    return search(0)


def oracle_value(struct: Structure, sentence) -> bool:
    """Sentence truth by the matching oracle."""
    if isinstance(sentence, EsoSentence):
        return oracle_eso(struct, sentence)
    return oracle_sentence_truth(struct, sentence)
