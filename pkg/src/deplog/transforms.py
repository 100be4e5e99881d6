"""Equivalence-preserving rewriting passes for both logics.

Dependence-logic passes (Formula sentences):

* to_prenex: hoist every quantifier into one leading prefix.
* simplify_atom_terms: make every dependence-atom argument a plain
  variable, pairwise distinct within each atom.
* extract_dep_atoms: split a quantifier-free body into fresh existential
  variables, one binding atom per dependence-atom occurrence, and a
  dependence-free matrix.
* to_normal_form: the three passes above packaged into a NormalFormD.
* skolemize_normal_form / d_to_eso: replace each constrained existential
  by a quantified function applied to the variables its atom lists.
* collapse_existential_to_fo: without universals, teams never grow past
  one row, so dependence atoms are decided by polarity alone.
* eliminate_width1: a dependence atom naming one variable pins it to a
  single value team-wide, which an existential placed in front of the
  prefix provides directly.
* single_forall_reuse: rebind every universal to one designated variable,
  recovering the original variable through a guarded existential.

Function-sentence passes (EsoSentence):

* skolemize_prefix_existentials: drop first-order existentials in favour
  of quantified functions over the preceding universals.
* star_normalize: rewrite until every quantified function is applied to a
  single tuple of pairwise-distinct variables, spending fresh universals
  on guard clauses and splitting off copies of functions that keep more
  than one call shape.
* snf_to_star: same goal for purely universal prefixes, but through
  canonical compositions; adds one shared block of fresh universals no
  wider than the widest rewritten function.
* deskolemize_functions / eso_to_d: replace each function by an
  existential constrained by a dependence atom over the call shape.

Fresh names come from numbered families (z1, z2, ... for guard variables,
y1, ... for extracted existentials, f1/g1/h1 ... for functions, and so
on), falling back to an underscore suffix on collision, so repeated runs
produce identical output.  ``reserved`` excludes extra names, e.g. the
symbols of a signature the formula does not happen to mention.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeError
from .syntax import (
    FALSE, TRUE, And, App, Bool, DepAtom, Equal, EsoSentence, Exists,
    Forall, Formula, Or, RelAtom, Term, Var, and_chain, contains_dep_atom,
    eso_symbols, free_vars, fresh_var, function_patterns, is_quantifier_free,
    iter_subformulas, iter_terms, or_chain, prenex_split, replace_term,
    satisfies_star, symbols_of,
)

__all__ = [
    "NormalFormD",
    "to_prenex", "simplify_atom_terms", "extract_dep_atoms",
    "to_normal_form", "skolemize_normal_form", "d_to_eso",
    "star_normalize", "deskolemize_functions", "eso_to_d",
    "skolemize_prefix_existentials", "snf_to_star",
    "collapse_existential_to_fo", "eliminate_width1", "single_forall_reuse",
]


class _Names:
    """Deterministic fresh names: family1, family2, ... with an underscore
    suffix whenever the numbered name is already taken."""

    def __init__(self, used: set[str], family: str):
        self.used = used
        self.family = family
        self.count = 0

    def new(self) -> str:
        self.count += 1
        name = fresh_var(self.used, f"{self.family}{self.count}")
        self.used.add(name)
        return name


def _wrap_prefix(prefix, matrix: Formula) -> Formula:
    out = matrix
    for kind, var in reversed(list(prefix)):
        out = Exists(var, out) if kind == "exists" else Forall(var, out)
    return out


def _map_terms(f: Formula, fix) -> Formula:
    if isinstance(f, RelAtom):
        return RelAtom(f.rel, tuple(fix(a) for a in f.args), f.negated)
    if isinstance(f, Equal):
        return Equal(fix(f.left), fix(f.right), f.negated)
    if isinstance(f, DepAtom):
        return DepAtom(tuple(fix(t) for t in f.terms), f.negated)
    if isinstance(f, Bool):
        return f
    if isinstance(f, And):
        return And(_map_terms(f.left, fix), _map_terms(f.right, fix))
    if isinstance(f, Or):
        return Or(_map_terms(f.left, fix), _map_terms(f.right, fix))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.var, _map_terms(f.body, fix))
    raise ShapeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Dependence logic: prenex form and the constrained-existential normal form
# ---------------------------------------------------------------------------

def to_prenex(f: Formula) -> Formula:
    """Hoist every quantifier of a sentence into one leading prefix.

    Requires each variable to be quantified at most once, which makes the
    hoisting capture-free; left operands contribute their quantifiers
    before right operands.
    """
    prefix, matrix = prenex_split(f)
    return _wrap_prefix(prefix, matrix)


def _distinct_vars(args: tuple[Term, ...]) -> bool:
    return (all(isinstance(a, Var) for a in args)
            and len({a.name for a in args}) == len(args))


def _simplify_core(prefix, matrix, used):
    """Repair dependence atoms over mirror variables; returns the extended
    prefix and the matrix with the defining equalities conjoined."""
    names = _Names(used, "z")
    order: list[str] = []
    equalities: list[Formula] = []

    def rewrite(g: Formula) -> Formula:
        if isinstance(g, DepAtom):
            if _distinct_vars(g.terms):
                return g
            # repair the whole atom: one fresh mirror per argument position
            args = []
            for t in g.terms:
                z = names.new()
                order.append(z)
                equalities.append(Equal(Var(z), t))
                args.append(Var(z))
            return DepAtom(tuple(args), g.negated)
        if isinstance(g, And):
            return And(rewrite(g.left), rewrite(g.right))
        if isinstance(g, Or):
            return Or(rewrite(g.left), rewrite(g.right))
        return g

    new_matrix = rewrite(matrix)
    if equalities:
        new_matrix = and_chain(equalities + [new_matrix])
    return list(prefix) + [("exists", z) for z in order], new_matrix


def simplify_atom_terms(f: Formula, reserved: tuple[str, ...] = ()) -> Formula:
    """Rewrite dependence atoms so each argument is a distinct variable.

    An atom whose arguments are already pairwise-distinct variables is left
    alone.  Any other atom is repaired wholesale: every argument t moves to
    a fresh existential z pinned by a conjunct z = t at the top level of
    the matrix.  The conjunct makes z mirror t on every row of every team
    reached during evaluation, so the swap preserves the verdict, and
    replacing all arguments at once keeps the atom's width unchanged.
    """
    prefix, matrix = prenex_split(f)
    used = symbols_of(f) | set(reserved)
    new_prefix, new_matrix = _simplify_core(prefix, matrix, used)
    return _wrap_prefix(new_prefix, new_matrix)


def _check_atom_args(matrix: Formula) -> None:
    for sub in iter_subformulas(matrix):
        if isinstance(sub, DepAtom):
            names = [t.name for t in sub.terms if isinstance(t, Var)]
            if len(names) != len(sub.terms) or len(set(names)) != len(names):
                raise ShapeError(
                    "dependence atom arguments must be pairwise-distinct "
                    "variables; run the atom simplification pass first")


def _extract_core(matrix, used):
    """Replace each dependence atom in place and collect its binding."""
    names = _Names(used, "y")
    bindings: list[DepAtom] = []

    def rewrite(g: Formula) -> Formula:
        if isinstance(g, DepAtom):
            if g.negated:
                return FALSE  # only the empty team satisfies a negated atom
            if not g.terms:
                return TRUE  # the empty atom holds in every team
            y = names.new()
            bindings.append(DepAtom(tuple(g.terms[:-1]) + (Var(y),)))
            return Equal(Var(y), g.terms[-1])
        if isinstance(g, And):
            return And(rewrite(g.left), rewrite(g.right))
        if isinstance(g, Or):
            return Or(rewrite(g.left), rewrite(g.right))
        return g

    return bindings, rewrite(matrix)


def extract_dep_atoms(
    body: Formula, reserved: tuple[str, ...] = (),
) -> tuple[tuple[str, ...], tuple[DepAtom, ...], Formula]:
    """Hoist every dependence atom out of a quantifier-free body.

    Each positive occurrence =(z1, ..., zm) contributes a fresh
    existential y and the binding =(z1, ..., z(m-1), y), while the
    occurrence itself weakens to y = zm.  Negated atoms hold only in the
    empty team and become the false constant; empty atoms hold everywhere
    and become true.  The returned triple (variables, bindings, matrix)
    stands for the equivalent

        exists y1 ... exists yn . (bindings & matrix)

    Atom arguments must already be pairwise-distinct variables (run
    simplify_atom_terms first).  Quantified variables of an enclosing
    prefix that do not occur in the body should be passed via ``reserved``
    so the fresh names avoid them.
    """
    if not is_quantifier_free(body):
        raise ShapeError("the body must be quantifier free; prenex first")
    _check_atom_args(body)
    used = symbols_of(body) | set(reserved)
    bindings, theta = _extract_core(body, used)
    ys = tuple(b.terms[-1].name for b in bindings)
    return ys, tuple(bindings), theta


@dataclass(frozen=True)
class NormalFormD:
    """A sentence split into prefix, dependence constraints, and matrix.

    ``prefix`` is the original mixed quantifier block.  Each binding
    =(z1, ..., zm, y) constrains a fresh existential y, quantified after
    the prefix, to be a function of z1, ..., zm.  ``matrix`` is quantifier
    free and dependence free.  ``to_formula`` rebuilds

        prefix . exists y1 ... exists yn . (bindings & matrix)
    """

    prefix: tuple[tuple[str, str], ...]
    bindings: tuple[DepAtom, ...]
    matrix: Formula

    def __post_init__(self):
        if any(kind not in ("forall", "exists") for kind, _ in self.prefix):
            raise ShapeError("prefix kinds must be 'forall' or 'exists'")
        prefix_vars = [v for _, v in self.prefix]
        if len(set(prefix_vars)) != len(prefix_vars):
            raise ShapeError("prefix variables must be distinct")
        pool = set(prefix_vars)
        bound: list[str] = []
        for b in self.bindings:
            if not isinstance(b, DepAtom) or b.negated or not b.terms:
                raise ShapeError(
                    "each binding must be a positive non-empty dependence atom")
            if not all(isinstance(t, Var) for t in b.terms):
                raise ShapeError("binding arguments must be variables")
            names = [t.name for t in b.terms]
            if len(set(names)) != len(names):
                raise ShapeError("binding arguments must be pairwise distinct")
            if not set(names[:-1]) <= pool:
                raise ShapeError("binding patterns may only use prefix variables")
            if names[-1] in pool or names[-1] in bound:
                raise ShapeError("bound variables must be fresh and carry "
                                 "exactly one binding each")
            bound.append(names[-1])
        if not is_quantifier_free(self.matrix) or contains_dep_atom(self.matrix):
            raise ShapeError("matrix must be quantifier free and dependence free")
        if not free_vars(self.matrix) <= pool | set(bound):
            raise ShapeError("matrix may only use prefix and bound variables")

    @property
    def bound_vars(self) -> tuple[str, ...]:
        return tuple(b.terms[-1].name for b in self.bindings)

    def to_formula(self) -> Formula:
        prefix = list(self.prefix) + [("exists", y) for y in self.bound_vars]
        body = self.matrix
        if self.bindings:
            body = and_chain(list(self.bindings) + [body])
        return _wrap_prefix(prefix, body)


def to_normal_form(f: Formula, reserved: tuple[str, ...] = ()) -> NormalFormD:
    """Prenex the sentence, clean its atoms, and hoist them, in one go."""
    prefix, matrix = prenex_split(f)
    used = symbols_of(f) | set(reserved)
    prefix, matrix = _simplify_core(prefix, matrix, used)
    bindings, theta = _extract_core(matrix, used)
    return NormalFormD(tuple(prefix), tuple(bindings), theta)


def skolemize_normal_form(nf: NormalFormD,
                          reserved: tuple[str, ...] = ()) -> EsoSentence:
    """Turn each binding into a quantified function.

    A binding =(z1, ..., zm, y) says y is a function of z1, ..., zm, so
    the sentence holds exactly when some function f supplies the value:
    every occurrence of y becomes f(z1, ..., zm).
    """
    used = {v for _, v in nf.prefix}
    used.update(nf.bound_vars)
    used |= symbols_of(nf.matrix)
    used |= set(reserved)
    names = _Names(used, "f")
    functions: list[tuple[str, int]] = []
    matrix = nf.matrix
    for b in nf.bindings:
        fn = names.new()
        pattern = b.terms[:-1]
        functions.append((fn, len(pattern)))
        matrix = replace_term(matrix, b.terms[-1], App(fn, pattern))
    return EsoSentence(tuple(functions), nf.prefix, matrix)


def d_to_eso(f: Formula, reserved: tuple[str, ...] = ()) -> EsoSentence:
    """Full pipeline from a dependence-logic sentence to a function sentence."""
    return skolemize_normal_form(to_normal_form(f, reserved), reserved)


# ---------------------------------------------------------------------------
# Function sentences: Skolem prefixes and single call shapes
# ---------------------------------------------------------------------------

def skolemize_prefix_existentials(s: EsoSentence,
                                  reserved: tuple[str, ...] = ()) -> EsoSentence:
    """Remove first-order existentials: each becomes a quantified function
    applied to the universals quantified before it."""
    if all(kind == "forall" for kind, _ in s.prefix):
        return s
    used = eso_symbols(s) | set(reserved)
    names = _Names(used, "g")
    functions = list(s.functions)
    matrix = s.matrix
    new_prefix: list[tuple[str, str]] = []
    outer: list[str] = []
    for kind, v in s.prefix:
        if kind == "forall":
            outer.append(v)
            new_prefix.append((kind, v))
        else:
            g = names.new()
            functions.append((g, len(outer)))
            matrix = replace_term(
                matrix, Var(v), App(g, tuple(Var(u) for u in outer)))
    return EsoSentence(tuple(functions), tuple(new_prefix), matrix)


def _fn_tuples(matrix: Formula, fn: str) -> list[tuple[Term, ...]]:
    """Distinct argument tuples of one function, first-occurrence order."""
    out: list[tuple[Term, ...]] = []
    for t in iter_terms(matrix):
        if isinstance(t, App) and t.fn == fn and t.args not in out:
            out.append(t.args)
    return out


def star_normalize(s: EsoSentence, reserved: tuple[str, ...] = ()) -> EsoSentence:
    """Rewrite until every quantified function has a single call shape
    consisting of pairwise-distinct universal variables.

    Three stages, each one equivalence preserving:

    1. Flatten.  An application f(t1, ..., tm) whose arguments are not
       pairwise-distinct variables becomes f(z1, ..., zm) over fresh
       trailing universals, guarded by
       ~(z1 = t1) | ... | ~(zm = tm) | matrix', which only bites on the
       one value tuple where z equals t.  All occurrences of the same
       application share one guard.
    2. Re-ground.  Any remaining shape that is not all-universal, or that
       shares a variable with the shape its function keeps, is flattened
       the same way; stage 3 needs the kept shapes to range over the whole
       domain independently of the split-off ones.
    3. Split.  A function left with shapes p1, ..., pr keeps p1 and hands
       each pi (i >= 2) to a fresh copy fi, with the coherence guard
       ~(p1_1 = pi_1) | ... | ~(p1_m = pi_m) | f(p1) = fi(pi)
       conjoined, forcing fi to agree with f wherever it is applied.
    """
    outer_universals = {v for kind, v in s.prefix if kind == "forall"}
    if satisfies_star(s) and all(
            a.name in outer_universals
            for pats in function_patterns(s).values() for p in pats for a in p):
        return s
    used = eso_symbols(s) | set(reserved)
    znames = _Names(used, "z")
    prefix = list(s.prefix)
    matrix = s.matrix
    fn_names = [n for n, _ in s.functions]
    arities = dict(s.functions)

    def flatten(fn: str, args: tuple[Term, ...]) -> None:
        nonlocal matrix
        fresh = tuple(Var(znames.new()) for _ in args)
        prefix.extend(("forall", v.name) for v in fresh)
        rewritten = replace_term(matrix, App(fn, args), App(fn, fresh))
        mismatches = [Equal(z, t, negated=True) for z, t in zip(fresh, args)]
        matrix = or_chain(mismatches + [rewritten])

    for fn in fn_names:
        while True:
            bad = next((t for t in _fn_tuples(matrix, fn)
                        if not _distinct_vars(t)), None)
            if bad is None:
                break
            flatten(fn, bad)

    universals = {v for kind, v in prefix if kind == "forall"}
    for fn in fn_names:
        kept: set[str] | None = None
        for args in _fn_tuples(matrix, fn):
            names = {a.name for a in args}
            if names <= universals and (kept is None or not names & kept):
                if kept is None:
                    kept = names
            else:
                flatten(fn, args)
                if kept is None:
                    kept = set()  # a fresh shape overlaps nothing

    guards: list[Formula] = []
    functions = list(s.functions)
    for fn in fn_names:
        tuples = _fn_tuples(matrix, fn)
        copies = _Names(used, fn + "_")
        for args in tuples[1:]:
            copy = copies.new()
            functions.append((copy, arities[fn]))
            matrix = replace_term(matrix, App(fn, args), App(copy, args))
            mismatches = [Equal(a, b, negated=True)
                          for a, b in zip(tuples[0], args)]
            guards.append(or_chain(
                mismatches + [Equal(App(fn, tuples[0]), App(copy, args))]))
    if guards:
        matrix = and_chain(guards + [matrix])
    return EsoSentence(tuple(functions), tuple(prefix), matrix)


def deskolemize_functions(s: EsoSentence,
                          reserved: tuple[str, ...] = ()) -> Formula:
    """Replace every quantified function by a constrained existential.

    Needs the single distinct-variable call shape (run star_normalize
    first).  A function f used as f(z1, ..., zm) becomes an existential y
    quantified after the first-order prefix and constrained by
    =(z1, ..., zm, y); functions with no occurrence are dropped, since any
    witness works for them.
    """
    if not satisfies_star(s):
        raise ShapeError("every function needs a single distinct-variable "
                         "call shape; run star normalization first")
    used = eso_symbols(s) | set(reserved)
    names = _Names(used, "y")
    patterns = function_patterns(s)
    bindings: list[DepAtom] = []
    matrix = s.matrix
    for fn, _ in s.functions:
        if not patterns[fn]:
            continue
        (pattern,) = patterns[fn]
        y = names.new()
        bindings.append(DepAtom(pattern + (Var(y),)))
        matrix = replace_term(matrix, App(fn, pattern), Var(y))
    prefix = list(s.prefix) + [("exists", b.terms[-1].name) for b in bindings]
    if bindings:
        matrix = and_chain(list(bindings) + [matrix])
    return _wrap_prefix(prefix, matrix)


def eso_to_d(s: EsoSentence, reserved: tuple[str, ...] = ()) -> Formula:
    """Full pipeline from a function sentence to a dependence-logic sentence."""
    return deskolemize_functions(star_normalize(s, reserved), reserved)


def snf_to_star(s: EsoSentence, reserved: tuple[str, ...] = ()) -> EsoSentence:
    """Single call shapes for a purely universal prefix, by composition.

    Where star_normalize spends fresh universals per rewritten call shape,
    this pass first pushes every application into one of two canonical
    forms over the prefix x1, ..., xk:

    * simple: f(x1, ..., xa), the first a prefix variables in order;
    * composed: f(u1, ..., ua), each argument a prefix variable or a
      simple application of another quantified function, no variable or
      function repeated among the arguments and none equal to f.

    Helper functions (h family) absorb non-canonical arguments through
    defining equalities h(x1, ..., xk) = t conjoined to the matrix.  Every
    function still used in composed form is then rewritten over a single
    shared block of fresh universals v1, ..., vL, where L is the widest
    such function: each composed shape u gets the guard
    ~(v1 = u1) | ... | ~(va = ua) | f(v1, ..., va) = h'(x1, ..., xk)
    pinning a fresh helper h' to the composed value, composed occurrences
    are replaced by their helper, simple occurrences move onto the fresh
    block, and the matrix is only required on the diagonal:
    ~(x1 = v1) | ... | matrix'.  The output keeps the k original
    universals plus the L fresh ones, so at most 2k in total.

    Inputs already in single-call-shape form are returned unchanged.
    Otherwise every function arity must be at most k, or no canonical
    shape over the prefix exists.
    """
    if any(kind != "forall" for kind, _ in s.prefix):
        raise ShapeError("prefix must be purely universal; skolemize the "
                         "existentials first")
    if satisfies_star(s):
        return s
    wide = [n for n, a in s.functions if a > len(s.prefix)]
    if wide:
        raise ShapeError("function arity exceeds the universal count: "
                         + ", ".join(wide))
    used = eso_symbols(s) | set(reserved)
    hnames = _Names(used, "h")
    vnames = _Names(used, "v")
    xs = tuple(Var(v) for _, v in s.prefix)
    k = len(xs)
    functions = list(s.functions)
    arities = dict(s.functions)
    matrix = s.matrix

    def quantified(t: Term) -> bool:
        return isinstance(t, App) and t.fn in arities

    def simple(t: Term) -> bool:
        return quantified(t) and t.args == xs[:len(t.args)]

    def composed(t: Term) -> bool:
        if not quantified(t) or not t.args:
            return False
        keys = []
        for a in t.args:
            if isinstance(a, Var):
                keys.append(("var", a.name))
            elif simple(a) and a.fn != t.fn:
                keys.append(("fn", a.fn))
            else:
                return False
        return len(set(keys)) == len(keys)

    while True:
        target = next((t for t in iter_terms(matrix)
                       if quantified(t) and not simple(t) and not composed(t)),
                      None)
        if target is None:
            break
        helpers = []
        equalities = []
        for arg in target.args:
            h = hnames.new()
            functions.append((h, k))
            arities[h] = k
            helpers.append(App(h, xs))
            equalities.append(Equal(App(h, xs), arg))
        matrix = replace_term(matrix, target, App(target.fn, tuple(helpers)))
        matrix = and_chain([matrix] + equalities)

    # no symbol may stay on both sides of a composition
    outer: set[str] = set()
    inner: set[str] = set()
    for t in iter_terms(matrix):
        if quantified(t) and not simple(t):
            outer.add(t.fn)
            inner.update(a.fn for a in t.args if isinstance(a, App))
    for g in [n for n, _ in list(functions) if n in outer & inner]:
        h = hnames.new()
        a = arities[g]
        functions.append((h, a))
        arities[h] = a

        def fix(t: Term, _g=g, _h=h) -> Term:
            if not isinstance(t, App):
                return t
            args = tuple(fix(x, _g, _h) for x in t.args)
            if t.fn in arities:
                args = tuple(App(_h, x.args)
                             if isinstance(x, App) and x.fn == _g else x
                             for x in args)
            return App(t.fn, args)

        matrix = _map_terms(matrix, fix)
        matrix = And(matrix, Equal(App(g, xs[:a]), App(h, xs[:a])))

    rewritten: list[str] = []
    shapes: dict[str, list[tuple[Term, ...]]] = {}
    for n, _ in functions:
        comp = [t for t in _fn_tuples(matrix, n) if t != xs[:arities[n]]]
        if comp:
            rewritten.append(n)
            shapes[n] = comp
    if not rewritten:
        return EsoSentence(tuple(functions), s.prefix, matrix)

    width = max(arities[n] for n in rewritten)
    vs = tuple(Var(vnames.new()) for _ in range(width))
    guards: list[Formula] = []
    for n in rewritten:
        a = arities[n]
        for shape in shapes[n]:
            h = hnames.new()
            functions.append((h, k))
            arities[h] = k
            guards.append(or_chain(
                [Equal(v, u, negated=True) for v, u in zip(vs, shape)]
                + [Equal(App(n, vs[:a]), App(h, xs))]))
            matrix = replace_term(matrix, App(n, shape), App(h, xs))
        if a <= k:
            matrix = replace_term(matrix, App(n, xs[:a]), App(n, vs[:a]))
    diagonal = or_chain(
        [Equal(x, v, negated=True) for x, v in zip(xs, vs)] + [matrix])
    new_prefix = tuple(s.prefix) + tuple(("forall", v.name) for v in vs)
    return EsoSentence(tuple(functions), new_prefix,
                       and_chain(guards + [diagonal]))


# ---------------------------------------------------------------------------
# Special-purpose eliminations
# ---------------------------------------------------------------------------

def collapse_existential_to_fo(f: Formula) -> Formula:
    """Replace dependence atoms by their polarity in a universal-free
    sentence.

    Without universals every team reached during evaluation has at most
    one row.  On such teams a positive dependence atom always holds, and a
    negated one holds exactly when the team is empty, which is the truth
    condition of the false constant.
    """
    if free_vars(f):
        raise ShapeError("only sentences can be collapsed")
    if any(isinstance(sub, Forall) for sub in iter_subformulas(f)):
        raise ShapeError("sentence quantifies universally; cannot collapse")

    def rewrite(g: Formula) -> Formula:
        if isinstance(g, DepAtom):
            return FALSE if g.negated else TRUE
        if isinstance(g, And):
            return And(rewrite(g.left), rewrite(g.right))
        if isinstance(g, Or):
            return Or(rewrite(g.left), rewrite(g.right))
        if isinstance(g, Exists):
            return Exists(g.var, rewrite(g.body))
        return g

    return rewrite(f)


def eliminate_width1(f: Formula, reserved: tuple[str, ...] = ()) -> Formula:
    """Remove dependence atoms of width at most one.

    =(t) forces one shared value of t across the team, so the function
    translation produces only 0-ary quantified functions; existentials
    placed in front of the prefix supply those constants directly, leaving
    an ordinary first-order sentence.  =() is simply true and disappears.
    """
    for sub in iter_subformulas(f):
        if isinstance(sub, DepAtom) and len(sub.terms) > 1:
            raise ShapeError("a dependence atom has width above one")
    e = d_to_eso(f, reserved)
    used = eso_symbols(e) | set(reserved)
    names = _Names(used, "w")
    front: list[tuple[str, str]] = []
    matrix = e.matrix
    for fn, arity in e.functions:
        assert arity == 0  # width <= 1 atoms leave empty binding patterns
        w = names.new()
        front.append(("exists", w))
        matrix = replace_term(matrix, App(fn, ()), Var(w))
    return _wrap_prefix(front + list(e.prefix), matrix)


def single_forall_reuse(f: Formula, designated: str = "x") -> Formula:
    """Rebind every universal quantifier to one designated variable.

    Each "forall y: body" becomes "forall designated: exists y:
    (designated = y & body)": the universal ranges over the designated
    variable and the old variable copies its value row by row.  The output
    reuses the designated variable, so it abandons the one-quantifier-per-
    variable discipline; evaluation handles this by rebinding.
    """
    if designated in symbols_of(f):
        raise ShapeError(f"designated variable {designated!r} already occurs")

    def rewrite(g: Formula) -> Formula:
        if isinstance(g, Forall):
            return Forall(designated,
                          Exists(g.var,
                                 And(Equal(Var(designated), Var(g.var)),
                                     rewrite(g.body))))
        if isinstance(g, Exists):
            return Exists(g.var, rewrite(g.body))
        if isinstance(g, And):
            return And(rewrite(g.left), rewrite(g.right))
        if isinstance(g, Or):
            return Or(rewrite(g.left), rewrite(g.right))
        return g

    return rewrite(f)
