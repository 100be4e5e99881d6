"""Syntax for dependence-logic and existential second-order sentences.

Grammar (one shared lexical space; identifiers match [A-Za-z_][A-Za-z0-9_]*;
``forall``, ``exists``, ``fn``, ``true``, ``false`` are reserved):

    formula := ("forall" | "exists") VAR "." formula | disj
    disj    := conj ("|" conj)*
    conj    := unit ("&" unit)*
    unit    := "(" formula ")" | ["~"] atom
    atom    := "=(" [terms] ")" | REL "(" [terms] ")"
             | term "=" term | "true" | "false"
    term    := VAR | CONST | FUN "(" [terms] ")"
    terms   := term ("," term)*

    eso     := ("exists" "fn" FUN "/" ARITY ".")* formula

"&" binds tighter than "|"; both are left-associative. Negation is only
permitted on atoms, so every parsed formula is in negation normal form;
"~true" and "~false" fold to the opposite constant. The first-order part
of an ESO sentence may contain nested quantifiers as long as no variable
is quantified twice; they are hoisted into a prenex prefix at parse time.

Parsing runs in one of two modes. With a Signature, every symbol must be
declared and arities are checked. Without one, the classification is
inferred: a bare identifier is a variable, an applied identifier in atom
position is a relation, and an applied identifier in term position is a
function (an application followed by "=" is a term, e.g. "f(x) = y").
Constants are never inferred; they only come from explicit signatures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Union

from .errors import ParseError, ShapeError

__all__ = [
    "Var", "Const", "App", "Term",
    "RelAtom", "Equal", "DepAtom", "Bool", "And", "Or", "Exists", "Forall",
    "Formula", "TRUE", "FALSE",
    "Signature", "EsoSentence",
    "parse_formula", "parse_formula_infer", "parse_eso", "parse_eso_infer",
    "render_term", "render_formula", "render_eso",
    "term_vars", "free_vars", "symbols_of", "eso_symbols",
    "function_patterns", "satisfies_star",
    "single_quantification", "prenex_split", "fresh_var", "replace_term",
    "check_symbols", "iter_subformulas", "iter_terms", "collect_apps",
    "contains_dep_atom", "is_quantifier_free", "and_chain", "or_chain",
]


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple["Term", ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Var, Const, App]


# ---------------------------------------------------------------------------
# Formulas (negation normal form by construction)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelAtom:
    rel: str
    args: tuple[Term, ...]
    negated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term
    negated: bool = False


@dataclass(frozen=True)
class DepAtom:
    """Dependence atom =(t1,...,tn): the last term is determined by the rest.

    The empty atom =() is universally true. A negated dependence atom is
    satisfied only by the empty team.
    """

    terms: tuple[Term, ...]
    negated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


@dataclass(frozen=True)
class Bool:
    value: bool


TRUE = Bool(True)
FALSE = Bool(False)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[RelAtom, Equal, DepAtom, Bool, And, Or, Exists, Forall]

_ATOMS = (RelAtom, Equal, DepAtom, Bool)


def and_chain(parts: list[Formula]) -> Formula:
    """Left-fold a nonempty list into a conjunction (single item unchanged)."""
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def or_chain(parts: list[Formula]) -> Formula:
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------

_KEYWORDS = frozenset({"forall", "exists", "fn", "true", "false"})
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _check_symbol_name(name: str) -> None:
    if not isinstance(name, str) or not _IDENT_RE.fullmatch(name) or name in _KEYWORDS:
        raise ShapeError(f"bad symbol name: {name!r}")


@dataclass
class Signature:
    """Relation, function, and constant symbols with arities.

    Constants are written bare in formulas; function symbols always take a
    parenthesized argument list (a zero-arity function is written "c()").
    """

    relations: dict[str, int] = field(default_factory=dict)
    functions: dict[str, int] = field(default_factory=dict)
    constants: frozenset[str] = frozenset()

    def __post_init__(self):
        self.relations = dict(self.relations)
        self.functions = dict(self.functions)
        self.constants = frozenset(self.constants)
        names = list(self.relations) + list(self.functions) + list(self.constants)
        if len(names) != len(set(names)):
            raise ShapeError("signature symbol names must be pairwise distinct")
        for name in names:
            _check_symbol_name(name)
        for rel, ar in self.relations.items():
            if not isinstance(ar, int) or isinstance(ar, bool) or ar < 0:
                raise ShapeError(f"bad arity for relation {rel!r}: {ar!r}")
        for fn, ar in self.functions.items():
            if not isinstance(ar, int) or isinstance(ar, bool) or ar < 0:
                raise ShapeError(f"bad arity for function {fn!r}: {ar!r}")

    def all_names(self) -> frozenset[str]:
        return frozenset(self.relations) | frozenset(self.functions) | self.constants

    def to_json_dict(self) -> dict:
        return {
            "relations": {r: self.relations[r] for r in sorted(self.relations)},
            "functions": {f: self.functions[f] for f in sorted(self.functions)},
            "constants": sorted(self.constants),
        }

    @classmethod
    def from_json_dict(cls, data) -> "Signature":
        if not isinstance(data, dict):
            raise ShapeError("signature JSON must be an object")
        unknown = set(data) - {"relations", "functions", "constants"}
        if unknown:
            raise ShapeError(f"unknown signature keys: {sorted(unknown)}")
        rels = data.get("relations") or {}
        fns = data.get("functions") or {}
        consts = data.get("constants") or []
        if not isinstance(rels, dict) or not isinstance(fns, dict):
            raise ShapeError("'relations' and 'functions' must be objects")
        if not isinstance(consts, list):
            raise ShapeError("'constants' must be a list")
        return cls(dict(rels), dict(fns), frozenset(consts))


# ---------------------------------------------------------------------------
# ESO sentences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EsoSentence:
    """Existentially quantified function symbols, a first-order quantifier
    prefix, and a quantifier-free matrix.

    The matrix is classical first-order: dependence atoms are rejected.
    """

    functions: tuple[tuple[str, int], ...]
    prefix: tuple[tuple[str, str], ...]
    matrix: Formula

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple((n, a) for n, a in self.functions))
        object.__setattr__(self, "prefix", tuple((k, v) for k, v in self.prefix))
        fn_names = [n for n, _ in self.functions]
        if len(fn_names) != len(set(fn_names)):
            raise ShapeError("duplicate quantified function symbol")
        for n, a in self.functions:
            _check_symbol_name(n)
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                raise ShapeError(f"bad arity for quantified function {n!r}: {a!r}")
        pvars = [v for _, v in self.prefix]
        if len(pvars) != len(set(pvars)):
            raise ShapeError("duplicate variable in quantifier prefix")
        for k, v in self.prefix:
            if k not in ("forall", "exists"):
                raise ShapeError(f"bad quantifier kind {k!r}")
            _check_symbol_name(v)
        if set(pvars) & set(fn_names):
            raise ShapeError("quantified function name collides with a prefix variable")
        if not is_quantifier_free(self.matrix):
            raise ShapeError("ESO matrix must be quantifier-free")
        if contains_dep_atom(self.matrix):
            raise ShapeError("dependence atoms are not ESO syntax")
        loose = free_vars(self.matrix) - set(pvars)
        if loose:
            raise ShapeError(f"ESO matrix uses unquantified variables: {sorted(loose)}")
        arities = dict(self.functions)
        for t in iter_terms(self.matrix):
            if isinstance(t, App) and t.fn in arities and len(t.args) != arities[t.fn]:
                raise ShapeError(
                    f"{t.fn} declared with arity {arities[t.fn]} but applied to {len(t.args)} arguments")

    @property
    def function_arities(self) -> dict[str, int]:
        return dict(self.functions)

    def universals(self) -> list[str]:
        return [v for k, v in self.prefix if k == "forall"]

    def existentials(self) -> list[str]:
        return [v for k, v in self.prefix if k == "exists"]


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

class _Tok(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<punct>[()=,.~&|/]))")


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.isspace():
                break
            bad = pos + (len(rest) - len(rest.lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        assert kind is not None
        word = m.group(kind)
        toks.append(_Tok(kind, word, m.end() - len(word)))
        pos = m.end()
    return toks


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, sig: Signature | None,
                 bound_fns: dict[str, int] | None = None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.infer = sig is None
        # function symbols bound by an ESO prefix; checked in both modes
        self.bound_fns: dict[str, int] = dict(bound_fns or {})
        self.inf_rels: dict[str, int] = {}
        self.inf_fns: dict[str, int] = {}
        self.inf_vars: set[str] = set()

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead: int = 0) -> _Tok | None:
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def take(self) -> _Tok:
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        return t

    def at_punct(self, ch: str, ahead: int = 0) -> bool:
        t = self.peek(ahead)
        return t is not None and t.kind == "punct" and t.text == ch

    def at_word(self, word: str, ahead: int = 0) -> bool:
        t = self.peek(ahead)
        return t is not None and t.kind == "ident" and t.text == word

    def expect(self, ch: str) -> _Tok:
        t = self.peek()
        if t is None:
            raise ParseError(f"expected {ch!r}", len(self.text))
        if t.kind != "punct" or t.text != ch:
            raise ParseError(f"expected {ch!r}, found {t.text!r}", t.pos)
        return self.take()

    def finish(self) -> None:
        t = self.peek()
        if t is not None:
            raise ParseError(f"unexpected trailing input {t.text!r}", t.pos)

    # -- symbol bookkeeping --------------------------------------------------

    def _take_name(self, role: str) -> _Tok:
        t = self.peek()
        if t is None:
            raise ParseError(f"expected a {role} name", len(self.text))
        if t.kind != "ident":
            raise ParseError(f"expected a {role} name, found {t.text!r}", t.pos)
        if t.text in _KEYWORDS:
            raise ParseError(f"keyword {t.text!r} cannot be used as a {role} name", t.pos)
        return self.take()

    def bind_var(self, role: str = "variable") -> str:
        t = self._take_name(role)
        name = t.text
        if name in self.bound_fns:
            raise ParseError(f"{name!r} is a quantified function symbol", t.pos)
        if self.infer:
            if name in self.inf_rels or name in self.inf_fns:
                raise ParseError(f"{name!r} already used as a relation or function", t.pos)
            self.inf_vars.add(name)
        else:
            assert self.sig is not None
            if name in self.sig.all_names():
                raise ParseError(f"{name!r} is a declared signature symbol", t.pos)
        return name

    def _classify_applied(self, name: str, nargs: int, pos: int, *,
                          term_position: bool) -> str:
        """Return 'function' or 'relation' for ``name(...)``; check arity."""
        if name in self.bound_fns:
            if self.bound_fns[name] != nargs:
                raise ParseError(
                    f"{name!r} has arity {self.bound_fns[name]}, got {nargs} arguments", pos)
            return "function"
        if not self.infer:
            assert self.sig is not None
            if name in self.sig.relations:
                if term_position:
                    raise ParseError(f"relation {name!r} used in term position", pos)
                if self.sig.relations[name] != nargs:
                    raise ParseError(
                        f"{name!r} has arity {self.sig.relations[name]}, got {nargs} arguments", pos)
                return "relation"
            if name in self.sig.functions:
                if self.sig.functions[name] != nargs:
                    raise ParseError(
                        f"{name!r} has arity {self.sig.functions[name]}, got {nargs} arguments", pos)
                return "function"
            if name in self.sig.constants:
                raise ParseError(f"constant {name!r} cannot take arguments", pos)
            raise ParseError(f"undeclared symbol {name!r}", pos)
        # inference mode
        if name in self.inf_vars:
            raise ParseError(f"{name!r} already used as a variable", pos)
        if term_position:
            if name in self.inf_rels:
                raise ParseError(f"{name!r} already used as a relation", pos)
            old = self.inf_fns.setdefault(name, nargs)
            if old != nargs:
                raise ParseError(f"{name!r} used with arities {old} and {nargs}", pos)
            return "function"
        if name in self.inf_fns:
            raise ParseError(f"{name!r} already used as a function", pos)
        old = self.inf_rels.setdefault(name, nargs)
        if old != nargs:
            raise ParseError(f"{name!r} used with arities {old} and {nargs}", pos)
        return "relation"

    def leaf_term(self, name: str, pos: int) -> Term:
        if name in self.bound_fns:
            raise ParseError(f"function {name!r} needs an argument list", pos)
        if not self.infer:
            assert self.sig is not None
            if name in self.sig.constants:
                return Const(name)
            if name in self.sig.functions:
                raise ParseError(f"function {name!r} needs an argument list", pos)
            if name in self.sig.relations:
                raise ParseError(f"relation {name!r} used in term position", pos)
            return Var(name)
        if name in self.inf_rels or name in self.inf_fns:
            raise ParseError(f"{name!r} already used as a relation or function", pos)
        self.inf_vars.add(name)
        return Var(name)

    # -- grammar -------------------------------------------------------------

    def formula(self) -> Formula:
        if self.at_word("forall") or self.at_word("exists"):
            t = self.peek()
            assert t is not None
            if t.text == "exists" and self.at_word("fn", 1):
                raise ParseError(
                    "function quantifiers are only allowed at the front of an ESO sentence",
                    t.pos)
            self.take()
            var = self.bind_var()
            self.expect(".")
            body = self.formula()
            return Forall(var, body) if t.text == "forall" else Exists(var, body)
        return self.disj()

    def disj(self) -> Formula:
        f = self.conj()
        while self.at_punct("|"):
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unit()
        while self.at_punct("&"):
            self.take()
            f = And(f, self.unit())
        return f

    def unit(self) -> Formula:
        if self.at_punct("("):
            self.take()
            f = self.formula()
            self.expect(")")
            return f
        if self.at_punct("~"):
            t = self.take()
            if self.at_punct("("):
                raise ParseError(
                    "negation may only be applied to atoms (push it inward first)", t.pos)
            return self.atom(negated=True)
        return self.atom(negated=False)

    def atom(self, negated: bool) -> Formula:
        t = self.peek()
        if t is None:
            raise ParseError("expected an atom", len(self.text))
        if t.kind == "punct" and t.text == "=":
            self.take()
            self.expect("(")
            terms: tuple[Term, ...] = ()
            if not self.at_punct(")"):
                terms = tuple(self.terms())
            self.expect(")")
            return DepAtom(terms, negated)
        if t.kind == "ident" and t.text == "true":
            self.take()
            return FALSE if negated else TRUE
        if t.kind == "ident" and t.text == "false":
            self.take()
            return TRUE if negated else FALSE
        if t.kind == "ident":
            if t.text in _KEYWORDS:
                raise ParseError(f"keyword {t.text!r} cannot start an atom", t.pos)
            if self.at_punct("(", 1):
                name_tok = self.take()
                self.take()  # "("
                args: tuple[Term, ...] = ()
                if not self.at_punct(")"):
                    args = tuple(self.terms())
                self.expect(")")
                # "R(x,y)" is a relation atom unless continued by "=",
                # in which case it was a function term: "f(x) = y"
                if self.at_punct("="):
                    self._classify_applied(name_tok.text, len(args), name_tok.pos,
                                           term_position=True)
                    self.take()  # "="
                    right = self.term()
                    return Equal(App(name_tok.text, args), right, negated)
                kind = self._classify_applied(name_tok.text, len(args), name_tok.pos,
                                              term_position=False)
                if kind == "function":
                    raise ParseError(
                        f"function application {name_tok.text!r} is not an atom "
                        "(expected '=' to continue an equality)", name_tok.pos)
                return RelAtom(name_tok.text, args, negated)
            left = self.term()
            eq = self.peek()
            if eq is None or eq.kind != "punct" or eq.text != "=":
                raise ParseError("expected '=' after a term", eq.pos if eq else len(self.text))
            self.take()
            right = self.term()
            return Equal(left, right, negated)
        raise ParseError(f"unexpected token {t.text!r} in atom", t.pos)

    def terms(self) -> list[Term]:
        out = [self.term()]
        while self.at_punct(","):
            self.take()
            out.append(self.term())
        return out

    def term(self) -> Term:
        t = self._take_name("term")
        if self.at_punct("("):
            self.take()
            args: tuple[Term, ...] = ()
            if not self.at_punct(")"):
                args = tuple(self.terms())
            self.expect(")")
            self._classify_applied(t.text, len(args), t.pos, term_position=True)
            return App(t.text, args)
        return self.leaf_term(t.text, t.pos)

    def inferred_signature(self) -> Signature:
        return Signature(dict(self.inf_rels), dict(self.inf_fns), frozenset())


def parse_formula(text: str, sig: Signature | None = None) -> Formula:
    """Parse a dependence-logic formula (also plain first-order).

    With ``sig`` all symbols must be declared; without it the symbol roles
    are inferred (bare identifiers become variables).
    """
    p = _Parser(text, sig)
    f = p.formula()
    p.finish()
    return f


def parse_formula_infer(text: str) -> tuple[Formula, Signature]:
    """Parse without a signature; also return the inferred signature."""
    p = _Parser(text, None)
    f = p.formula()
    p.finish()
    return f, p.inferred_signature()


def _parse_eso_with(p: _Parser) -> EsoSentence:
    fns: list[tuple[str, int]] = []
    while p.at_word("exists") and p.at_word("fn", 1):
        p.take()
        p.take()
        name_tok = p._take_name("function")
        name = name_tok.text
        if name in p.bound_fns:
            raise ParseError(f"function {name!r} quantified twice", name_tok.pos)
        if not p.infer:
            assert p.sig is not None
            if name in p.sig.all_names():
                raise ParseError(
                    f"quantified function {name!r} collides with a signature symbol",
                    name_tok.pos)
        p.expect("/")
        ar_tok = p.peek()
        if ar_tok is None or ar_tok.kind != "num":
            raise ParseError("expected an arity after '/'",
                             ar_tok.pos if ar_tok else len(p.text))
        p.take()
        p.expect(".")
        fns.append((name, int(ar_tok.text)))
        p.bound_fns[name] = int(ar_tok.text)
    f = p.formula()
    p.finish()
    if contains_dep_atom(f):
        raise ParseError("dependence atoms are not allowed in an ESO sentence")
    prefix, matrix = prenex_split(f)
    return EsoSentence(tuple(fns), tuple(prefix), matrix)


def parse_eso(text: str, sig: Signature | None = None) -> EsoSentence:
    """Parse an ESO sentence: function quantifiers, then a first-order part.

    The first-order part is hoisted to prenex form; it must be a sentence
    and must not quantify any variable twice.
    """
    return _parse_eso_with(_Parser(text, sig))


def parse_eso_infer(text: str) -> tuple[EsoSentence, Signature]:
    p = _Parser(text, None)
    s = _parse_eso_with(p)
    return s, p.inferred_signature()


# ---------------------------------------------------------------------------
# Rendering (inverse of parsing: parse(render(f)) == f)
# ---------------------------------------------------------------------------

def render_term(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, App):
        return f"{t.fn}({','.join(render_term(a) for a in t.args)})"
    raise ShapeError(f"not a term: {t!r}")


def _render_atom(f: Formula) -> str:
    if isinstance(f, Bool):
        return "true" if f.value else "false"
    neg = "~" if f.negated else ""  # type: ignore[union-attr]
    if isinstance(f, DepAtom):
        return f"{neg}=({','.join(render_term(t) for t in f.terms)})"
    if isinstance(f, RelAtom):
        return f"{neg}{f.rel}({','.join(render_term(a) for a in f.args)})"
    if isinstance(f, Equal):
        return f"{neg}{render_term(f.left)} = {render_term(f.right)}"
    raise ShapeError(f"not an atom: {f!r}")


def _render_unit(f: Formula) -> str:
    if isinstance(f, _ATOMS):
        return _render_atom(f)
    return f"({render_formula(f)})"


def _render_conj(f: Formula) -> str:
    if isinstance(f, And):
        return f"{_render_conj(f.left)} & {_render_unit(f.right)}"
    return _render_unit(f)


def _render_disj(f: Formula) -> str:
    if isinstance(f, Or):
        return f"{_render_disj(f.left)} | {_render_conj(f.right)}"
    return _render_conj(f)


def render_formula(f: Formula) -> str:
    if isinstance(f, (Forall, Exists)):
        kw = "forall" if isinstance(f, Forall) else "exists"
        if isinstance(f.body, (And, Or)):
            return f"{kw} {f.var}. ({_render_disj(f.body)})"
        return f"{kw} {f.var}. {render_formula(f.body)}"
    return _render_disj(f)


def render_eso(s: EsoSentence) -> str:
    parts = [f"exists fn {n}/{a}. " for n, a in s.functions]
    parts.extend(f"{k} {v}. " for k, v in s.prefix)
    if parts and isinstance(s.matrix, (And, Or)):
        body = f"({_render_disj(s.matrix)})"
    else:
        body = render_formula(s.matrix)
    return "".join(parts) + body


# ---------------------------------------------------------------------------
# Walks and queries
# ---------------------------------------------------------------------------

def iter_subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over all subformulas, including ``f`` itself."""
    yield f
    if isinstance(f, (And, Or)):
        yield from iter_subformulas(f.left)
        yield from iter_subformulas(f.right)
    elif isinstance(f, (Exists, Forall)):
        yield from iter_subformulas(f.body)


def _atom_terms(f: Formula) -> tuple[Term, ...]:
    if isinstance(f, RelAtom):
        return f.args
    if isinstance(f, Equal):
        return (f.left, f.right)
    if isinstance(f, DepAtom):
        return f.terms
    return ()


def _iter_term_nodes(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from _iter_term_nodes(a)


def iter_terms(f: Formula) -> Iterator[Term]:
    """Every term node in the formula (nested subterms included), pre-order."""
    for sub in iter_subformulas(f):
        for t in _atom_terms(sub):
            yield from _iter_term_nodes(t)


def collect_apps(f: Formula, fn: str | None = None) -> list[App]:
    """Function applications in pre-order, optionally restricted to one symbol.

    Duplicates are preserved; callers that need distinct occurrences can
    dedupe while keeping order with dict.fromkeys.
    """
    return [t for t in iter_terms(f)
            if isinstance(t, App) and (fn is None or t.fn == fn)]


def contains_dep_atom(f: Formula) -> bool:
    return any(isinstance(sub, DepAtom) for sub in iter_subformulas(f))


def is_quantifier_free(f: Formula) -> bool:
    return not any(isinstance(sub, (Exists, Forall)) for sub in iter_subformulas(f))


def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    out: frozenset[str] = frozenset()
    for a in t.args:
        out |= term_vars(a)
    return out


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, _ATOMS):
        out: frozenset[str] = frozenset()
        for t in _atom_terms(f):
            out |= term_vars(t)
        return out
    if isinstance(f, (And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise ShapeError(f"not a formula: {f!r}")


def _term_symbols(t: Term) -> set[str]:
    if isinstance(t, (Var, Const)):
        return {t.name}
    out = {t.fn}
    for a in t.args:
        out |= _term_symbols(a)
    return out


def symbols_of(f: Formula) -> set[str]:
    """All identifiers occurring in the formula: variables (free and bound),
    relation, function, and constant symbols. Used as a freshness pool."""
    out: set[str] = set()
    for sub in iter_subformulas(f):
        if isinstance(sub, RelAtom):
            out.add(sub.rel)
        elif isinstance(sub, (Exists, Forall)):
            out.add(sub.var)
        for t in _atom_terms(sub):
            out |= _term_symbols(t)
    return out


def eso_symbols(s: EsoSentence) -> set[str]:
    out = {n for n, _ in s.functions}
    out.update(v for _, v in s.prefix)
    out |= symbols_of(s.matrix)
    return out


def function_patterns(s: EsoSentence) -> dict[str, list[tuple[Term, ...]]]:
    """Distinct argument tuples of each quantified function, in first
    occurrence order (pre-order over the matrix).

    Functions with no occurrence map to an empty list.
    """
    quantified = {n for n, _ in s.functions}
    out: dict[str, list[tuple[Term, ...]]] = {n: [] for n, _ in s.functions}
    for t in iter_terms(s.matrix):
        if isinstance(t, App) and t.fn in quantified and t.args not in out[t.fn]:
            out[t.fn].append(t.args)
    return out


def _distinct_var_tuple(args: tuple[Term, ...]) -> bool:
    return (all(isinstance(a, Var) for a in args)
            and len({a.name for a in args}) == len(args))


def satisfies_star(s: EsoSentence) -> bool:
    """True when every quantified function is applied to a single argument
    tuple consisting of pairwise-distinct variables."""
    return all(len(pats) <= 1 and all(_distinct_var_tuple(p) for p in pats)
               for pats in function_patterns(s).values())


def single_quantification(f: Formula) -> bool:
    """True when no variable is bound by two different quantifiers."""
    seen: set[str] = set()

    def walk(g: Formula) -> bool:
        if isinstance(g, (Exists, Forall)):
            if g.var in seen:
                return False
            seen.add(g.var)
            return walk(g.body)
        if isinstance(g, (And, Or)):
            return walk(g.left) and walk(g.right)
        return True

    return walk(f)


def prenex_split(f: Formula) -> tuple[list[tuple[str, str]], Formula]:
    """Split a sentence into a quantifier prefix and a quantifier-free matrix.

    Quantifiers are hoisted out of conjunctions and disjunctions in
    leftmost-outermost order. Requires a sentence in which no variable is
    quantified twice: under that restriction a hoisted variable cannot occur
    in the sibling operand, which makes every hoisting step an equivalence
    in both team semantics and classical semantics.
    """
    loose = free_vars(f)
    if loose:
        raise ShapeError(f"not a sentence: free variables {sorted(loose)}")
    if not single_quantification(f):
        raise ShapeError("a variable is quantified more than once; rename apart first")

    def split(g: Formula) -> tuple[list[tuple[str, str]], Formula]:
        if isinstance(g, Forall):
            p, m = split(g.body)
            return [("forall", g.var)] + p, m
        if isinstance(g, Exists):
            p, m = split(g.body)
            return [("exists", g.var)] + p, m
        if isinstance(g, And):
            p1, m1 = split(g.left)
            p2, m2 = split(g.right)
            return p1 + p2, And(m1, m2)
        if isinstance(g, Or):
            p1, m1 = split(g.left)
            p2, m2 = split(g.right)
            return p1 + p2, Or(m1, m2)
        return [], g

    return split(f)


def fresh_var(used, hint: str = "z") -> str:
    """First name not in ``used``: the hint itself, then hint_1, hint_2, ..."""
    if hint not in used:
        return hint
    i = 1
    while f"{hint}_{i}" in used:
        i += 1
    return f"{hint}_{i}"


def check_symbols(f: Formula, sig: Signature,
                  extra_fns: dict[str, int] | None = None) -> None:
    """Raise ShapeError unless every symbol in ``f`` is declared with the
    right arity, either in the signature or in ``extra_fns`` (name -> arity,
    e.g. quantified function symbols)."""
    extra = extra_fns or {}
    for sub in iter_subformulas(f):
        if isinstance(sub, RelAtom):
            if sub.rel not in sig.relations:
                raise ShapeError(f"undeclared relation {sub.rel!r}")
            if sig.relations[sub.rel] != len(sub.args):
                raise ShapeError(
                    f"relation {sub.rel!r} has arity {sig.relations[sub.rel]}, "
                    f"got {len(sub.args)} arguments")
    for t in iter_terms(f):
        if isinstance(t, Const):
            if t.name not in sig.constants:
                raise ShapeError(f"undeclared constant {t.name!r}")
        elif isinstance(t, App):
            if t.fn in extra:
                want = extra[t.fn]
            elif t.fn in sig.functions:
                want = sig.functions[t.fn]
            else:
                raise ShapeError(f"undeclared function {t.fn!r}")
            if want != len(t.args):
                raise ShapeError(
                    f"function {t.fn!r} has arity {want}, got {len(t.args)} arguments")


def _replace_in_term(t: Term, old: Term, new: Term) -> Term:
    if t == old:
        return new
    if isinstance(t, App):
        return App(t.fn, tuple(_replace_in_term(a, old, new) for a in t.args))
    return t


def replace_term(f: Formula, old: Term, new: Term) -> Formula:
    """Replace every occurrence of the exact term ``old`` (nested ones too)."""
    r = lambda t: _replace_in_term(t, old, new)
    if isinstance(f, RelAtom):
        return RelAtom(f.rel, tuple(r(a) for a in f.args), f.negated)
    if isinstance(f, Equal):
        return Equal(r(f.left), r(f.right), f.negated)
    if isinstance(f, DepAtom):
        return DepAtom(tuple(r(t) for t in f.terms), f.negated)
    if isinstance(f, Bool):
        return f
    if isinstance(f, And):
        return And(replace_term(f.left, old, new), replace_term(f.right, old, new))
    if isinstance(f, Or):
        return Or(replace_term(f.left, old, new), replace_term(f.right, old, new))
    if isinstance(f, Exists):
        return Exists(f.var, replace_term(f.body, old, new))
    if isinstance(f, Forall):
        return Forall(f.var, replace_term(f.body, old, new))
    raise ShapeError(f"not a formula: {f!r}")
