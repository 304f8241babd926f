"""Command-line front end.

Words are written in the compact syntax "P(k1,...,kr;d1,...,dr)", optionally
in rational linear combinations like "4*P(3,1;0,0)+2*P(3;1)-2*P(3;0)"; any
argument starting with "{" is instead parsed as the JSON encoding.  Exit
codes: 0 on success, 1 when a computation declines to produce a value (a
divergent limit, no quasimodular representation), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize, verify
from .brackets import (
    InsufficientOrder,
    degree_probe,
    qbracket_fast,
    qbracket_float,
    quasimod_detect,
    word_log_power,
)
from .exact import rat_str
from .mzv import bimzv, degree, zdegree_limit
from .partitions import check_partition
from .peval import PartitionFunction, moller_transform, qbracket_enum
from .serialize import WordSyntaxError, format_word, format_wordsum, parse_wordsum
from .words import (
    SEKI,
    WordSum,
    derive,
    get_model,
    iota,
    regularize,
    shuffle,
    stuffle,
    words_up_to_weight,
)


class CommandError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _parse_expr(text: str) -> tuple:
    """Compact or JSON word-sum input; returns (model or None, WordSum)."""
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CommandError(f"malformed JSON: {exc}") from None
        model, u = serialize.wordsum_from_json(doc)
        return model, u
    try:
        return None, parse_wordsum(text)
    except WordSyntaxError as exc:
        raise CommandError(f"malformed word expression: {exc}") from None


def _resolve_model(flag_value, json_model):
    name = flag_value or (json_model.name if json_model else None) or "seki"
    try:
        return get_model(name)
    except ValueError as exc:
        raise CommandError(str(exc)) from None


def _single_word(u: WordSum) -> tuple:
    if len(u.terms) != 1:
        raise CommandError("this command needs a single basis word")
    word, c = next(iter(u.terms.items()))
    if c != 1:
        raise CommandError("this command needs a single basis word with coefficient 1")
    return word


def _parse_partition(text: str) -> tuple:
    try:
        doc = json.loads(text)
        return check_partition(doc)
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise CommandError(f"malformed partition: {exc}") from None


def _emit(args, text_lines, json_doc):
    if args.json:
        print(json.dumps(json_doc, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _series_text(series) -> str:
    parts = []
    for n, c in enumerate(series.coeffs):
        if c == 0:
            continue
        if n == 0:
            parts.append(rat_str(c))
        else:
            q = "q" if n == 1 else f"q^{n}"
            parts.append(q if rat_str(c) == "1" else f"{rat_str(c)}*{q}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_qbracket(args):
    json_model, u = _parse_expr(args.expr)
    model = _resolve_model(args.model, json_model)
    if args.method == "enum":
        series = qbracket_enum(PartitionFunction.word(model, u), args.order)
    else:
        series = qbracket_fast(model, u, args.order)
    _emit(
        args,
        [f"<{format_wordsum(u)}>_q over {model.name} to order {args.order}:",
         _series_text(series)],
        serialize.qseries_to_json(series),
    )
    return 0


def _binary_product(args, op_name):
    json_model1, u = _parse_expr(args.left)
    json_model2, v = _parse_expr(args.right)
    model = _resolve_model(args.model, json_model1 or json_model2)
    if op_name == "shuffle":
        if model != SEKI:
            raise CommandError("the shuffle product is defined on the seki model")
        out = shuffle(u, v)
    else:
        out = stuffle(model, u, v)
    _emit(
        args,
        [format_wordsum(out)],
        serialize.wordsum_to_json(model, out),
    )
    return 0


def cmd_stuffle(args):
    return _binary_product(args, "stuffle")


def cmd_shuffle(args):
    return _binary_product(args, "shuffle")


def cmd_iota(args):
    json_model, u = _parse_expr(args.expr)
    model = _resolve_model(args.model, json_model)
    if model != SEKI:
        raise CommandError("the involution is implemented on the seki model")
    out = iota(u)
    _emit(args, [format_wordsum(out)], serialize.wordsum_to_json(model, out))
    return 0


def cmd_derive(args):
    json_model, u = _parse_expr(args.expr)
    model = _resolve_model(args.model, json_model)
    out = derive(model, u)
    _emit(args, [format_wordsum(out)], serialize.wordsum_to_json(model, out))
    return 0


def cmd_regularize(args):
    _, u = _parse_expr(args.expr)
    parts = regularize(u)
    lines = []
    for p, ws in enumerate(parts):
        lines.append(f"T^{p}: {format_wordsum(ws)}")
    if not parts:
        lines.append("0")
    _emit(
        args,
        lines,
        {"powers": [serialize.wordsum_to_json("binomial", ws)["terms"] for ws in parts]},
    )
    return 0


def cmd_bimzv(args):
    _, u = _parse_expr(args.expr)
    val = bimzv(u)
    values = val.values(args.cutoff)
    lines = [repr(val)]
    if values:
        lines.append(
            "numeric: "
            + " + ".join(
                f"({v:.10g})" + ("" if p == 0 else f"*T^{p}" if p > 1 else "*T")
                for p, v in enumerate(values)
            )
        )
    doc = serialize.bimzv_to_json(val)
    doc["numeric"] = list(values)
    _emit(args, lines, doc)
    return 0


def cmd_degree(args):
    _, u = _parse_expr(args.expr)
    word = _single_word(u)
    info = degree(word)
    _emit(
        args,
        [f"degree {info.degree}, best split at {info.argmax}, "
         + ("unique" if info.unique else "not unique")],
        {"degree": info.degree, "argmax": info.argmax, "unique": info.unique},
    )
    return 0


def cmd_limit(args):
    _, u = _parse_expr(args.expr)
    word = _single_word(u)
    lim = zdegree_limit(word)
    if lim.divergent:
        message = f"divergent: the degree {lim.degree} split is not unique"
        if args.json:
            print(json.dumps({"degree": lim.degree, "divergent": True}, sort_keys=True))
        else:
            print(message)
        return 1
    numeric = lim.value.value(args.cutoff)
    probe = degree_probe(
        lambda q: qbracket_float(WordSum.single(word), q),
        lim.degree,
        log_power=word_log_power(word),
    )
    doc = {
        "degree": lim.degree,
        "divergent": False,
        "value": serialize.mzvlin_to_json(lim.value),
        "numeric": numeric,
        "probe": probe.estimate,
    }
    _emit(
        args,
        [f"degree {lim.degree}",
         f"limit  {lim.value}",
         f"numeric {numeric:.10g} (probe near q=1: {probe.estimate:.6g})"],
        doc,
    )
    return 0


def cmd_quasimod(args):
    json_model, u = _parse_expr(args.expr)
    model = _resolve_model(args.model, json_model)
    weight = args.weight if args.weight is not None else u.max_weight()
    series = qbracket_fast(model, u, args.order)
    try:
        poly = quasimod_detect(series, weight)
    except InsufficientOrder as exc:
        raise CommandError(str(exc)) from None
    if poly is None:
        message = (
            f"no polynomial in G2, G4, G6 of mixed weight <= {weight} matches "
            f"the bracket to order {args.order}"
        )
        if args.json:
            print(json.dumps({"detected": False, "weight": weight}, sort_keys=True))
        else:
            print(message)
        return 1
    _emit(
        args,
        [f"consistent with the quasimodular form (to order {args.order}):",
         repr(poly)],
        {"detected": True, **serialize.quasimod_to_json(poly)},
    )
    return 0


def cmd_moller(args):
    json_model, u = _parse_expr(args.expr)
    model = _resolve_model(args.model, json_model)
    lam = _parse_partition(args.partition)
    fn = PartitionFunction.word(model, u)
    value = moller_transform(fn, lam)
    _emit(args, [rat_str(value)], {"value": rat_str(value)})
    return 0


def cmd_eval(args):
    lam = _parse_partition(args.partition)
    if args.function:
        try:
            fn = serialize.partition_function_from_json(json.loads(args.function))
        except (json.JSONDecodeError, ValueError, KeyError) as exc:
            raise CommandError(f"malformed function description: {exc}") from None
    elif args.expr:
        json_model, u = _parse_expr(args.expr)
        fn = PartitionFunction.word(_resolve_model(args.model, json_model), u)
    else:
        raise CommandError("give a word expression or --function JSON")
    value = fn(lam)
    _emit(args, [rat_str(value)], {"value": rat_str(value)})
    return 0


def cmd_basis(args):
    words = words_up_to_weight(args.weight)
    if args.count:
        _emit(args, [str(len(words))], {"weight": args.weight, "count": len(words)})
        return 0
    _emit(
        args,
        [format_word(w) for w in words],
        {"weight": args.weight, "count": len(words),
         "words": [[[k, d] for k, d in w] for w in words]},
    )
    return 0


_SUITE_BOUND_FLAGS = {
    "double-shuffle": {"weight": "max_weight_sum", "order": "order"},
    "iota": {"weight": "max_weight", "order": "order"},
    "oracle": {"weight": "max_weight", "order": "order"},
    "bloch-okounkov": {"order": "order"},
    "moller": {"order": "order"},
    "limits": {"weight": "max_weight"},
    "sum-formula": {"weight": "max_ab"},
    "quasimod": {"order": "order"},
    "three-one": {"order": "order"},
}


def cmd_verify(args):
    kwargs = {}
    mapping = _SUITE_BOUND_FLAGS.get(args.suite, {})
    if args.weight is not None:
        if "weight" not in mapping:
            raise CommandError(f"suite {args.suite} takes no --weight")
        kwargs[mapping["weight"]] = args.weight
    if args.order is not None:
        if "order" not in mapping:
            raise CommandError(f"suite {args.suite} takes no --order")
        kwargs[mapping["order"]] = args.order
    try:
        report = verify.run_suite(args.suite, **kwargs)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    if args.json:
        print(json.dumps(report, sort_keys=True, default=str))
    else:
        for case in report["cases"]:
            status = "PASS" if case["passed"] else "FAIL"
            if args.verbose or not case["passed"]:
                extras = {
                    k: v for k, v in case.items() if k not in ("id", "passed")
                }
                print(f"{status} {case['id']} {extras if extras else ''}")
            else:
                print(f"{status} {case['id']}")
        n_pass = sum(1 for c in report["cases"] if c["passed"])
        print(f"suite {args.suite}: {n_pass}/{len(report['cases'])} passed")
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partition-mzv",
        description="Exact calculus of polynomial functions on partitions "
        "and their multiple zeta value limits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("qbracket", cmd_qbracket, help="q-bracket of a word sum")
    p.add_argument("expr")
    p.add_argument("--model", default=None)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--method", choices=("fast", "enum"), default="fast")

    for name, handler in (("stuffle", cmd_stuffle), ("shuffle", cmd_shuffle)):
        p = add(name, handler, help=f"{name} product of two word sums")
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--model", default=None)

    p = add("iota", cmd_iota, help="conjugation involution of a seki word sum")
    p.add_argument("expr")
    p.add_argument("--model", default=None)

    p = add("derive", cmd_derive, help="word-level q d/dq derivation")
    p.add_argument("expr")
    p.add_argument("--model", default=None)

    p = add("regularize", cmd_regularize, help="admissible decomposition in powers of P(1;0)")
    p.add_argument("expr")

    p = add("bimzv", cmd_bimzv, help="regularized MZV value in Q[T]")
    p.add_argument("expr")
    p.add_argument("--cutoff", type=int, default=200_000)

    p = add("degree", cmd_degree, help="pole order of the bracket at q = 1")
    p.add_argument("expr")

    p = add("limit", cmd_limit, help="degree limit as a multiple zeta combination")
    p.add_argument("expr")
    p.add_argument("--cutoff", type=int, default=200_000)

    p = add("quasimod", cmd_quasimod, help="detect a quasimodular q-bracket")
    p.add_argument("expr")
    p.add_argument("--model", default=None)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--weight", type=int, default=None)

    p = add("moller", cmd_moller, help="character-squared average at a partition")
    p.add_argument("expr")
    p.add_argument("--model", default=None)
    p.add_argument("--partition", required=True)

    p = add("eval", cmd_eval, help="evaluate a partition function")
    p.add_argument("expr", nargs="?")
    p.add_argument("--model", default=None)
    p.add_argument("--function", default=None, help="JSON tag-union description")
    p.add_argument("--partition", required=True)

    p = add("basis", cmd_basis, help="basis words up to a weight")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--count", action="store_true")

    p = add("verify", cmd_verify, help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    p.add_argument("--weight", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--verbose", "-v", action="store_true")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
