"""Team-semantics model checking for dependence logic, by exhaustive search.

A team satisfies:

* a first-order literal iff every row satisfies it classically;
* a dependence atom =(t1,...,tn) iff rows agreeing on t1..t(n-1) agree on
  tn (the empty atom =() is universally true);
* a negated dependence atom iff the team is empty;
* a conjunction iff it satisfies both conjuncts;
* a disjunction iff it splits into two subteams satisfying the disjuncts;
* an existential quantifier iff some choice of one value per row makes the
  extended team satisfy the body;
* a universal quantifier iff extending every row with every domain value
  satisfies the body.

The empty team satisfies every formula.

The search is exhaustive but takes verdict-preserving shortcuts: formulas
without dependence atoms are evaluated row by row (satisfaction of such
formulas only depends on the individual rows); disjunction splits are
searched as two-colorings, which suffices because satisfaction is preserved
under shrinking a team; and existential value choices are searched row by
row depth-first, abandoning a partial choice as soon as the partially
extended team already fails the body (a failing subteam cannot be part of
a satisfying extension). Results are memoized per subformula and team.
"""

from __future__ import annotations

import itertools

from .budget import Budget
from .errors import EvalError, ShapeError
from .structures import Structure, Team, eval_term
from .syntax import (
    And, Bool, DepAtom, Equal, Exists, Forall, Formula, Or, RelAtom,
    check_symbols, contains_dep_atom, free_vars, iter_subformulas,
)

__all__ = ["satisfies", "sentence_truth"]


class _TeamEvaluator:
    def __init__(self, struct: Structure, root: Formula, budget: Budget | None):
        self.struct = struct
        self.n = struct.size
        self.budget = budget
        self.root = root  # keeps subformula ids stable
        self.dep_free: dict[int, bool] = {}
        for sub in iter_subformulas(root):
            self.dep_free[id(sub)] = not contains_dep_atom(sub)
        self.memo: dict[tuple, bool] = {}

    def _spend(self, amount: int, context: str) -> None:
        if self.budget is not None:
            self.budget.spend(amount, context)

    # -- classical per-row evaluation (dependence-free subformulas) --------

    def _row_sat(self, f: Formula, env: dict[str, int]) -> bool:
        self._spend(1, "row evaluation")
        if isinstance(f, RelAtom):
            args = tuple(eval_term(self.struct, env, a) for a in f.args)
            return self.struct.rel_holds(f.rel, args) != f.negated
        if isinstance(f, Equal):
            same = (eval_term(self.struct, env, f.left)
                    == eval_term(self.struct, env, f.right))
            return same != f.negated
        if isinstance(f, Bool):
            return f.value
        if isinstance(f, And):
            return self._row_sat(f.left, env) and self._row_sat(f.right, env)
        if isinstance(f, Or):
            return self._row_sat(f.left, env) or self._row_sat(f.right, env)
        if isinstance(f, Exists):
            return any(self._row_sat(f.body, {**env, f.var: a}) for a in range(self.n))
        if isinstance(f, Forall):
            return all(self._row_sat(f.body, {**env, f.var: a}) for a in range(self.n))
        raise EvalError(f"dependence atom in row-wise evaluation: {f!r}")

    # -- team evaluation ----------------------------------------------------

    def eval(self, f: Formula, vars: tuple[str, ...],
             rows: frozenset[tuple[int, ...]]) -> bool:
        if not rows:
            return True
        key = (id(f), vars, rows)
        hit = self.memo.get(key)
        if hit is None:
            hit = self._eval(f, vars, rows)
            self.memo[key] = hit
        return hit

    def _eval(self, f: Formula, vars: tuple[str, ...],
              rows: frozenset[tuple[int, ...]]) -> bool:
        if self.dep_free[id(f)]:
            return all(self._row_sat(f, dict(zip(vars, row))) for row in rows)
        if isinstance(f, DepAtom):
            return self._eval_dep(f, vars, rows)
        if isinstance(f, And):
            return self.eval(f.left, vars, rows) and self.eval(f.right, vars, rows)
        if isinstance(f, Or):
            return self._eval_or(f, vars, rows)
        if isinstance(f, Exists):
            return self._eval_exists(f, vars, rows)
        if isinstance(f, Forall):
            return self._eval_forall(f, vars, rows)
        raise EvalError(f"cannot evaluate {f!r}")

    def _eval_dep(self, f: DepAtom, vars: tuple[str, ...],
                  rows: frozenset[tuple[int, ...]]) -> bool:
        if f.negated:
            return False  # only the empty team satisfies a negated dependence atom
        if not f.terms:
            return True
        self._spend(len(rows), "dependence atom")
        determined: dict[tuple[int, ...], int] = {}
        for row in rows:
            env = dict(zip(vars, row))
            key = tuple(eval_term(self.struct, env, t) for t in f.terms[:-1])
            val = eval_term(self.struct, env, f.terms[-1])
            old = determined.setdefault(key, val)
            if old != val:
                return False
        return True

    def _eval_or(self, f: Or, vars: tuple[str, ...],
                 rows: frozenset[tuple[int, ...]]) -> bool:
        row_list = sorted(rows)
        m = len(row_list)
        for mask in range(2 ** m):
            self._spend(1, "disjunction split")
            left = frozenset(row_list[j] for j in range(m) if mask >> j & 1)
            right = frozenset(row_list[j] for j in range(m) if not mask >> j & 1)
            if self.eval(f.left, vars, left) and self.eval(f.right, vars, right):
                return True
        return False

    def _eval_forall(self, f: Forall, vars: tuple[str, ...],
                     rows: frozenset[tuple[int, ...]]) -> bool:
        self._spend(len(rows) * self.n, "universal extension")
        if f.var in vars:
            i = vars.index(f.var)
            new_rows = frozenset(r[:i] + (a,) + r[i + 1:]
                                 for r in rows for a in range(self.n))
            return self.eval(f.body, vars, new_rows)
        new_rows = frozenset(r + (a,) for r in rows for a in range(self.n))
        return self.eval(f.body, vars + (f.var,), new_rows)

    def _eval_exists(self, f: Exists, vars: tuple[str, ...],
                     rows: frozenset[tuple[int, ...]]) -> bool:
        # maximal run of existentials over fresh distinct variables is
        # extended jointly (each row independently picks a value tuple)
        block: list[str] = []
        body: Formula = f
        while (isinstance(body, Exists) and body.var not in vars
               and body.var not in block):
            block.append(body.var)
            body = body.body
        if block:
            new_vars = vars + tuple(block)
            row_list = sorted(rows)
            choices = list(itertools.product(range(self.n), repeat=len(block)))
            acc: list[tuple[int, ...]] = []

            def dfs(i: int) -> bool:
                if i == len(row_list):
                    return True
                for t in choices:
                    self._spend(1, "existential extension")
                    acc.append(row_list[i] + t)
                    if self.eval(body, new_vars, frozenset(acc)) and dfs(i + 1):
                        return True
                    acc.pop()
                return False

            return dfs(0)

        # rebinding an existing variable: overwrite its column row by row
        i = vars.index(f.var)
        row_list = sorted(rows)
        acc_set: set[tuple[int, ...]] = set()

        def dfs_over(j: int) -> bool:
            if j == len(row_list):
                return True
            r = row_list[j]
            for a in range(self.n):
                self._spend(1, "existential extension")
                replaced = r[:i] + (a,) + r[i + 1:]
                added = replaced not in acc_set
                if added:
                    acc_set.add(replaced)
                if self.eval(f.body, vars, frozenset(acc_set)) and dfs_over(j + 1):
                    return True
                if added:
                    acc_set.discard(replaced)
            return False

        return dfs_over(0)


def satisfies(struct: Structure, team: Team, formula: Formula,
              budget: Budget | None = None) -> bool:
    """Does the team satisfy the formula in the structure (team semantics)?"""
    check_symbols(formula, struct.sig)
    missing = free_vars(formula) - set(team.vars)
    if missing:
        raise EvalError(f"team does not bind free variables {sorted(missing)}")
    for r in team.rows:
        if not all(0 <= v < struct.size for v in r):
            raise ShapeError(f"team row {list(r)!r} outside domain of size {struct.size}")
    ev = _TeamEvaluator(struct, formula, budget)
    return ev.eval(formula, team.vars, team.rows)


def sentence_truth(struct: Structure, formula: Formula,
                   budget: Budget | None = None) -> bool:
    """Truth of a sentence: satisfaction by the team of the empty assignment."""
    loose = free_vars(formula)
    if loose:
        raise EvalError(f"not a sentence: free variables {sorted(loose)}")
    return satisfies(struct, Team.initial(), formula, budget)
