"""Command-line interface.

One executable, ``deplog``, with a subcommand per layer of the package:

* parse: parse a formula file and echo the canonical rendering.
* check: sentence truth in one structure; team semantics for
  dependence-logic sentences, function-table search for function
  sentences.  Exit 0 when true, 1 when false.
* eval: team satisfaction of an open dependence-logic formula.
* translate: run one rewriting pass and print the result.
* classify: print the fragment report as JSON.
* equiv: exhaustive equivalence check up to a domain size; prints the
  verdict as JSON.  Exit 0 when equivalent, 3 on a counterexample.
* corpus: list the built-in formulas, or print one by name.
* enum: stream every structure of a signature at one size, one JSON
  object per line.

Formula files hold concrete syntax; a file is treated as a function
sentence exactly when it uses the ``fn`` keyword.  Structure, team, and
signature files hold JSON.  check and eval need no signature file: symbol
roles come from the structure file (a bare name listed under "constants"
parses as a constant), with arities read off the tables and, where a
table leaves the arity open, off the formula's own usage.

Exit codes: 0 success (true / equivalent); 1 false; 2 any input or usage
error; 3 counterexample; 4 work budget exhausted (DEPLOG_BUDGET or
--budget raise the limits).
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .budget import default_check_budget, default_structure_budget
from .errors import BudgetExceededError, DeplogError, ShapeError
from .fragments import classify_d, classify_eso
from .harness import corpus, corpus_item, equiv_check, sentence_value
from .structures import (
    enumerate_structures, structure_from_json_dict, structure_to_json_dict,
    team_from_json_dict,
)
from .syntax import (
    EsoSentence, Signature, and_chain, Exists, Forall, fresh_var,
    parse_eso, parse_eso_infer, parse_formula, parse_formula_infer,
    prenex_split, render_eso, render_formula, symbols_of,
)
from .team_eval import satisfies
from .transforms import (
    collapse_existential_to_fo, d_to_eso, eliminate_width1, eso_to_d,
    extract_dep_atoms, simplify_atom_terms, single_forall_reuse,
    skolemize_normal_form, skolemize_prefix_existentials, snf_to_star,
    star_normalize, to_normal_form, to_prenex,
)

__all__ = ["main"]

_FN_KEYWORD = re.compile(r"\bfn\b")


def _is_eso_text(text: str) -> bool:
    return _FN_KEYWORD.search(text) is not None


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _render(out) -> str:
    return render_eso(out) if isinstance(out, EsoSentence) else render_formula(out)


def _parse_any(text: str, sig: Signature | None):
    if _is_eso_text(text):
        return parse_eso(text, sig) if sig else parse_eso_infer(text)[0]
    return parse_formula(text, sig) if sig else parse_formula_infer(text)[0]


# ---------------------------------------------------------------------------
# Signature reconciliation for check/eval (no --sig flag there)
# ---------------------------------------------------------------------------

def _sig_from_structure(raw, inferred: Signature) -> Signature:
    """Symbol roles from a structure file, arities from its tables.

    An empty relation or a one-element-domain function table does not pin
    its arity, so the formula's own usage decides those; symbols the
    structure omits keep their inferred shape and fail later with a clear
    message when the structure is validated.
    """
    if not isinstance(raw, dict):
        raise ShapeError("structure JSON must be an object")
    size = raw.get("domain")
    if not isinstance(size, int) or isinstance(size, bool) or size < 1:
        raise ShapeError("structure 'domain' must be a positive integer")
    rels: dict[str, int] = {}
    for name, tuples in (raw.get("relations") or {}).items():
        if isinstance(tuples, list) and tuples and isinstance(tuples[0], list):
            rels[name] = len(tuples[0])
        else:
            rels[name] = inferred.relations.get(name, 1)
    fns: dict[str, int] = {}
    for name, table in (raw.get("functions") or {}).items():
        rows = len(table) if isinstance(table, list) else 0
        arity = inferred.functions.get(name, 1)
        if size > 1 and rows > 0:
            arity = 0
            while size ** arity < rows:
                arity += 1
        fns[name] = arity
    consts = frozenset((raw.get("constants") or {}).keys())
    for name, ar in inferred.relations.items():
        rels.setdefault(name, ar)
    for name, ar in inferred.functions.items():
        fns.setdefault(name, ar)
    return Signature(rels, fns, consts)


def _parse_against_structure(text: str, raw):
    if _is_eso_text(text):
        _, inferred = parse_eso_infer(text)
        sig = _sig_from_structure(raw, inferred)
        return parse_eso(text, sig), sig
    _, inferred = parse_formula_infer(text)
    sig = _sig_from_structure(raw, inferred)
    return parse_formula(text, sig), sig


# ---------------------------------------------------------------------------
# Translate passes
# ---------------------------------------------------------------------------

def _extract_pass(f):
    prefix, body = prenex_split(f)
    ys, bindings, theta = extract_dep_atoms(
        body, reserved=tuple(symbols_of(f)))
    matrix = and_chain(list(bindings) + [theta]) if bindings else theta
    out = matrix
    for kind, var in reversed(prefix + [("exists", y) for y in ys]):
        out = Exists(var, out) if kind == "exists" else Forall(var, out)
    return out


def _single_forall_pass(f):
    return single_forall_reuse(f, fresh_var(symbols_of(f), "x"))


_D_PASSES = {
    "prenex": to_prenex,
    "simplify-atoms": simplify_atom_terms,
    "extract": _extract_pass,
    "skolemize": lambda f: skolemize_normal_form(to_normal_form(f)),
    "d2eso": d_to_eso,
    "fo-collapse": collapse_existential_to_fo,
    "width1": eliminate_width1,
    "single-forall": _single_forall_pass,
}

_ESO_PASSES = {
    "star": star_normalize,
    "eso2d": eso_to_d,
    "snf": skolemize_prefix_existentials,
    "prop36": snf_to_star,
}

_PASS_ORDER = ["prenex", "simplify-atoms", "extract", "skolemize", "d2eso",
               "star", "eso2d", "snf", "prop36", "fo-collapse", "width1",
               "single-forall"]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_parse(args) -> int:
    sig = Signature.from_json_dict(_load_json(args.sig)) if args.sig else None
    print(_render(_parse_any(_read(args.file), sig)))
    return 0


def _cmd_check(args) -> int:
    raw = _load_json(args.structure)
    sentence, sig = _parse_against_structure(_read(args.formula), raw)
    struct = structure_from_json_dict(raw, sig)
    value = sentence_value(struct, sentence, default_check_budget())
    print("true" if value else "false")
    return 0 if value else 1


def _cmd_eval(args) -> int:
    text = _read(args.formula)
    if _is_eso_text(text):
        raise ShapeError("eval works on dependence-logic formulas; "
                         "use check for function sentences")
    raw = _load_json(args.structure)
    formula, sig = _parse_against_structure(text, raw)
    struct = structure_from_json_dict(raw, sig)
    team = team_from_json_dict(_load_json(args.team), struct.size)
    value = satisfies(struct, team, formula, default_check_budget())
    print("true" if value else "false")
    return 0 if value else 1


def _cmd_translate(args) -> int:
    text = _read(args.input)
    name = args.pass_name
    if name in _ESO_PASSES:
        out = _ESO_PASSES[name](parse_eso_infer(text)[0])
    else:
        out = _D_PASSES[name](parse_formula_infer(text)[0])
    print(_render(out))
    return 0


def _cmd_classify(args) -> int:
    text = _read(args.input)
    if _is_eso_text(text):
        report = classify_eso(parse_eso_infer(text)[0])
    else:
        report = classify_d(parse_formula_infer(text)[0])
    print(json.dumps(report.to_dict()))
    return 0


def _cmd_equiv(args) -> int:
    sig = Signature.from_json_dict(_load_json(args.sig))
    left = _parse_any(_read(args.left), sig)
    right = _parse_any(_read(args.right), sig)
    verdict = equiv_check(left, right, sig, args.max_size, budget=args.budget)
    print(json.dumps(verdict.to_dict()))
    return 0 if verdict.outcome == "equivalent" else 3


def _cmd_corpus(args) -> int:
    if args.name:
        item = corpus_item(args.name)
        if args.json:
            print(json.dumps({
                "name": item.name, "kind": item.kind, "text": item.text,
                "signature": item.sig.to_json_dict(),
                "team_vars": list(item.team_vars), "note": item.note,
            }))
        else:
            print(item.text)
        return 0
    for item in corpus():
        print(f"{item.name:13} {item.kind:4} {item.note}")
    return 0


def _cmd_enum(args) -> int:
    sig = Signature.from_json_dict(_load_json(args.sig))
    for struct in enumerate_structures(sig, args.size,
                                       default_structure_budget()):
        print(json.dumps(structure_to_json_dict(struct)))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="deplog",
        description="dependence-logic and function-sentence toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a formula file and echo it")
    p.add_argument("file")
    p.add_argument("--sig", help="signature JSON (default: infer roles)")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("check", help="sentence truth in one structure")
    p.add_argument("--formula", required=True)
    p.add_argument("--structure", required=True)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("eval", help="team satisfaction of an open formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--structure", required=True)
    p.add_argument("--team", required=True)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("translate", help="run one rewriting pass")
    p.add_argument("--pass", dest="pass_name", required=True,
                   choices=_PASS_ORDER)
    p.add_argument("--input", required=True)
    p.set_defaults(fn=_cmd_translate)

    p = sub.add_parser("classify", help="fragment report as JSON")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("equiv", help="equivalence check up to a domain size")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--budget", type=int,
                   help="cap on structures and on semantic work")
    p.set_defaults(fn=_cmd_equiv)

    p = sub.add_parser("corpus", help="list corpus items or print one")
    p.add_argument("--name")
    p.add_argument("--json", action="store_true",
                   help="with --name, print full metadata")
    p.set_defaults(fn=_cmd_corpus)

    p = sub.add_parser("enum", help="stream structures as JSON lines")
    p.add_argument("--sig", required=True)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(fn=_cmd_enum)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except DeplogError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
