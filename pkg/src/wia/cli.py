"""Command-line interface: parse form/involution expressions, dispatch to
the library, and emit text or JSON reports.

Exit codes: 0 decided, 3 undecided, 1 error.
"""

from __future__ import annotations

import argparse
import json
import re
import shlex
import sys
from dataclasses import dataclass, field as dc_field

from .errors import ParseError, WiaError
from .exactnum import BaseField, QQ, elem_to_text, quad_field
from .hyperbolic import (
    classify_at_real_closure,
    hyperbolic_over_sqrt,
    is_hyperbolic_inv,
    t_hyperbolic_inv,
    weakly_hyperbolic,
)
from .involution import QuatOO, profile, quat_orth_iso, trace_form
from .oracle import SearchBudget
from .parser import (
    form_to_text,
    inv_to_text,
    parse_element_text,
    parse_form_text,
    parse_inv_text,
    parse_preord_text,
)
from .qform import QForm, signature, witt_decompose
from .wittring import INFINITE, preordering, t_hyperbolic_form, torsion_order, witt_class

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 3

_VERBS = (
    "sign",
    "witt",
    "hyp",
    "weak-hyp",
    "torsion-order",
    "t-hyp",
    "classify",
    "trace",
    "iso-quat",
    "profile",
    "hyp-sqrt",
)

_FIELD_RE = re.compile(r"^\s*Q\s*\(\s*sqrt\s*(-?\d+)\s*\)\s*$")


def parse_field(text: str) -> BaseField:
    if text.strip() == "Q":
        return QQ
    m = _FIELD_RE.match(text)
    if m:
        return quad_field(int(m.group(1)))
    raise ParseError(f"bad field {text!r}; use Q or Q(sqrt d)", 0, ("Q", "Q(sqrt d)"))


@dataclass
class Query:
    field: BaseField
    command: str
    expressions: tuple[str, ...]
    output_mode: str = "text"  # or "json"
    preord: str | None = None
    ordering: str | None = None
    adjoin: str | None = None
    budget: SearchBudget = dc_field(default_factory=SearchBudget)


def _parse_either(text: str, base: BaseField):
    """A form when the grammar says so, otherwise an involution expression."""
    try:
        return parse_form_text(text, base)
    except ParseError:
        return parse_inv_text(text, base)


def _ordering_from(query: Query):
    orderings = query.field.orderings()
    if not orderings:
        raise WiaError(f"{query.field} has no orderings")
    if query.ordering is None:
        if len(orderings) == 1:
            return orderings[0]
        raise WiaError("this field has two orderings; pass --ordering plus|minus")
    want = query.ordering.lower()
    if want not in ("plus", "minus"):
        raise WiaError("--ordering must be plus or minus")
    if query.field.is_rational:
        return orderings[0]
    return orderings[0] if want == "plus" else orderings[1]


def _preordering_from(query: Query):
    raw = (query.preord or "").strip()
    if raw.startswith("preord"):
        return parse_preord_text(raw, query.field)
    gens = [
        parse_element_text(part, query.field)
        for part in raw.split(",")
        if part.strip()
    ]
    return preordering(query.field, gens)


# ---------------------------------------------------------------------------
# verbs

def _run_sign(query: Query) -> dict:
    expr = _parse_either(query.expressions[0], query.field)
    sigs = {}
    for p in query.field.orderings():
        if isinstance(expr, QForm):
            sigs[p.name] = signature(expr, p)
        else:
            from .involution import inv_signature

            sigs[p.name] = inv_signature(expr, p)
    return {"signatures": sigs}


def _run_witt(query: Query) -> dict:
    form = parse_form_text(query.expressions[0], query.field)
    dec = witt_decompose(form, query.budget)
    return {
        "anisotropic": form_to_text(dec.anisotropic_part),
        "witt_index": dec.witt_index,
        "witnesses": [[str(x) for x in w] for w in dec.isotropic_witnesses],
    }


def _run_hyp(query: Query) -> dict:
    expr = parse_inv_text(query.expressions[0], query.field)
    return is_hyperbolic_inv(expr).to_json()


def _run_weak_hyp(query: Query) -> dict:
    expr = parse_inv_text(query.expressions[0], query.field)
    ok, n = weakly_hyperbolic(expr)
    out = {"status": "True" if ok else "False", "criterion": "plgp-signature"}
    if n is not None:
        out["witness"] = {"n": n}
    return out


def _run_torsion(query: Query) -> dict:
    form = parse_form_text(query.expressions[0], query.field)
    order = torsion_order(witt_class(form))
    return {"torsion_order": "infinite" if order == INFINITE else order}


def _run_t_hyp(query: Query) -> dict:
    pre = _preordering_from(query)
    expr = _parse_either(query.expressions[0], query.field)
    if isinstance(expr, QForm):
        ok, wit = t_hyperbolic_form(expr, pre)
    else:
        ok, wit = t_hyperbolic_inv(expr, pre)
    out = {"status": "True" if ok else "False", "criterion": "pre-pfister-signature"}
    if wit is not None:
        out["witness"] = {
            "pfister": form_to_text(wit.form),
            "slots": [elem_to_text(s) for s in wit.slots],
        }
    return out


def _run_classify(query: Query) -> dict:
    expr = parse_inv_text(query.expressions[0], query.field)
    cls = classify_at_real_closure(expr, _ordering_from(query))
    return {
        "case": cls.case_label,
        "r": cls.r,
        "hyperbolic_over_closure": cls.hyperbolic_over_closure,
        "two_times_hyperbolic_over_closure": cls.two_times_hyperbolic_over_closure,
        "trace_signature": cls.trace_signature,
    }


def _run_trace(query: Query) -> dict:
    expr = parse_inv_text(query.expressions[0], query.field)
    t = trace_form(expr)
    out = {
        "trace_form": form_to_text(t.as_qform()),
        "core": form_to_text(t.core),
        "scale_two": t.scale_two,
    }
    if t.pfister_factor is not None:
        out["pfister_factor"] = elem_to_text(t.pfister_factor)
    return out


def _run_iso_quat(query: Query) -> dict:
    atoms = [parse_inv_text(e, query.field) for e in query.expressions[:2]]
    for atom in atoms:
        if not isinstance(atom, QuatOO):
            raise WiaError("iso-quat compares two orthogonal atoms qo(a,b)")
    lhs, rhs = atoms
    return {"isomorphic": quat_orth_iso(lhs.a, lhs.b, rhs.a, rhs.b)}


def _run_profile(query: Query) -> dict:
    expr = parse_inv_text(query.expressions[0], query.field)
    p = profile(expr)
    out = {
        "type": p.type_name,
        "kind": p.kind,
        "degree": p.degree,
        "degenerate": p.degenerate,
        "centre": None if p.centre_disc is None else elem_to_text(p.centre_disc),
    }
    if p.ramification is not None:
        out["ramification"] = sorted(
            (v.name for v in p.ramification),
            key=lambda s: (s != "inf", int(s) if s != "inf" else 0),
        )
        out["index"] = p.index
    return out


def _run_hyp_sqrt(query: Query) -> dict:
    expr = parse_inv_text(query.expressions[0], query.field)
    if query.adjoin is None:
        raise WiaError("hyp-sqrt needs --adjoin a")
    a = parse_element_text(query.adjoin, query.field)
    return hyperbolic_over_sqrt(expr, a).to_json()


_HANDLERS = {
    "sign": _run_sign,
    "witt": _run_witt,
    "hyp": _run_hyp,
    "weak-hyp": _run_weak_hyp,
    "torsion-order": _run_torsion,
    "t-hyp": _run_t_hyp,
    "classify": _run_classify,
    "trace": _run_trace,
    "iso-quat": _run_iso_quat,
    "profile": _run_profile,
    "hyp-sqrt": _run_hyp_sqrt,
}

SCHEMA_BY_VERB = {
    "sign": "signatures-v1",
    "witt": "witt-v1",
    "hyp": "verdict-v1",
    "weak-hyp": "verdict-v1",
    "torsion-order": "torsion-order-v1",
    "t-hyp": "verdict-v1",
    "classify": "classify-v1",
    "trace": "trace-v1",
    "iso-quat": "quat-iso-v1",
    "profile": "profile-v1",
    "hyp-sqrt": "verdict-v1",
}


def run(query: Query) -> dict:
    """Dispatch a parsed query to the library; returns the report dict."""
    return _HANDLERS[query.command](query)


def _exit_code(report: dict) -> int:
    return EXIT_UNDECIDED if report.get("status") == "Undecided" else EXIT_OK


def _text_report(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            inner = ", ".join(f"{k}={v}" for k, v in value.items())
            lines.append(f"{key}: {inner}")
        elif isinstance(value, list):
            lines.append(f"{key}: {value}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument handling

def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wia",
        description="Exact quadratic-form and involution-algebra calculator",
    )
    ap.add_argument("--field", default="Q", help="Q (default) or 'Q(sqrt d)'")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--preord", default=None, help="preordering generators t1,...,tk")
    ap.add_argument("--ordering", default=None, help="plus or minus (quadratic fields)")
    ap.add_argument("--adjoin", default=None, help="element a for hyp-sqrt")
    ap.add_argument("--height", type=int, default=None, help="oracle height bound")
    ap.add_argument("--rounds", type=int, default=None, help="oracle escalation rounds")
    ap.add_argument("--config", default=None, help="key=value file with oracle budgets")
    ap.add_argument("--batch", default=None, help="file of 'verb expression' lines")
    ap.add_argument("verb", nargs="?", choices=_VERBS)
    ap.add_argument("expressions", nargs="*", help="form / involution expressions")
    return ap


def _read_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise WiaError(f"bad config line {line!r}; expected key=value")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out


def _budget_from(args) -> SearchBudget:
    height, rounds = args.height, args.rounds
    if args.config:
        conf = _read_config(args.config)
        if height is None and "height" in conf:
            height = int(conf["height"])
        if rounds is None and "rounds" in conf:
            rounds = int(conf["rounds"])
    default = SearchBudget()
    return SearchBudget(
        height_bound=height if height is not None else default.height_bound,
        escalation_factor=default.escalation_factor,
        max_rounds=rounds if rounds is not None else default.max_rounds,
    )


def parse_query(argv_args, base: BaseField) -> Query:
    if argv_args.verb is None:
        raise WiaError("no verb given (and no --batch file)")
    if not argv_args.expressions and argv_args.verb != "iso-quat":
        raise WiaError(f"{argv_args.verb} needs an expression argument")
    return Query(
        field=base,
        command=argv_args.verb,
        expressions=tuple(argv_args.expressions),
        output_mode="json" if argv_args.json else "text",
        preord=argv_args.preord,
        ordering=argv_args.ordering,
        adjoin=argv_args.adjoin,
        budget=_budget_from(argv_args),
    )


def _emit(report: dict, mode: str, stream=None):
    stream = stream or sys.stdout
    if mode == "json":
        print(json.dumps(report, sort_keys=True), file=stream)
    else:
        print(_text_report(report), file=stream)


def _error_report(exc: Exception) -> dict:
    code = getattr(exc, "code", "error")
    return {"error": {"code": code, "message": str(exc)}}


def _run_batch(args, base: BaseField) -> int:
    worst = EXIT_OK
    with open(args.batch) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    for line in lines:
        parts = shlex.split(line)
        verb, exprs = parts[0], parts[1:]
        if verb not in _VERBS:
            _emit(_error_report(WiaError(f"unknown verb {verb!r}")), "json" if args.json else "text")
            worst = EXIT_ERROR
            continue
        query = Query(
            field=base,
            command=verb,
            expressions=tuple(exprs),
            output_mode="json" if args.json else "text",
            preord=args.preord,
            ordering=args.ordering,
            adjoin=args.adjoin,
            budget=_budget_from(args),
        )
        try:
            report = run(query)
        except WiaError as exc:
            _emit(_error_report(exc), query.output_mode)
            worst = EXIT_ERROR
            continue
        _emit(report, query.output_mode)
        if worst == EXIT_OK:
            worst = _exit_code(report)
    return worst


def main(argv=None) -> int:
    args = _build_argparser().parse_intermixed_args(argv)
    try:
        base = parse_field(args.field)
        if args.batch:
            return _run_batch(args, base)
        query = parse_query(args, base)
        report = run(query)
    except WiaError as exc:
        _emit(_error_report(exc), "json" if args.json else "text", sys.stderr)
        return EXIT_ERROR
    _emit(report, query.output_mode)
    return _exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
