"""Command-line driver.

Commands: check, derive, orbifold, eval, cerf, fuzz.  Exit status is 0
when every executed check passed, 1 when a check failed, and 2 when an
error stopped the run; errors print one machine-readable line
``error: category=<parse|type|degenerate-pairing|check-failure> ...`` to
stderr.  Output is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from .algebra import (
    GFrobeniusAlgebra,
    check_axioms,
    check_cocommutativity,
    check_frobenius_diagram,
    derive,
    group_algebra,
    load_algebra,
    save_algebra,
)
from .cobordism import Cobordism, Piece, parse, random_cobordism, rewrite_equivalent
from .cobordism import tensor as tensor_words
from .errors import EngineError, SchemaError
from .exactlin import Matrix, format_matrix, format_scalar, kron
from .groups import FiniteGroup, builtin_from_string, load_group
from .orbifold import orbifold_algebra
from .report import CheckReport, failing
from .tqft import BlockLinearMap, Evaluator, cerf_check, evaluate, word_functoriality_witness


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    algebra: str | None = None
    cobordism: str | None = None
    case: str | None = None
    labels: str | None = None
    all_labels: bool = False
    seed: int = 0
    budget: int = 8
    count: int = 1000
    fmt: str = "human"


def format_report(report: CheckReport, mode: str = "human") -> str:
    """Render a report; "human" is an aligned table, "records" is one JSON
    object per line with a summary record first."""
    passed = sum(1 for e in report.entries if e.passed)
    failed = len(report.entries) - passed
    if mode == "records":
        lines = [json.dumps({"record": "summary", "passed": passed, "failed": failed})]
        for e in report.entries:
            rec: dict = {"record": "check", "name": e.name, "passed": e.passed}
            if e.witness is not None:
                rec["witness"] = {
                    "context": dict(e.witness.context),
                    "left": e.witness.left,
                    "right": e.witness.right,
                }
            lines.append(json.dumps(rec))
        return "\n".join(lines)
    lines = [f"checks: {passed} passed, {failed} failed"]
    for e in report.entries:
        if e.passed:
            lines.append(f"PASS  {e.name}")
        else:
            ctx = ""
            if e.witness is not None:
                pairs = " ".join(f"{k}={v}" for k, v in e.witness.context)
                ctx = f"  [{pairs}]  left={e.witness.left}  right={e.witness.right}"
            lines.append(f"FAIL  {e.name}{ctx}")
    return "\n".join(lines)


def parse_records(text: str) -> tuple[int, int]:
    """Read back a records-mode report as (passed, failed) counts."""
    passed = failed = 0
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if rec.get("record") == "check":
            if rec["passed"]:
                passed += 1
            else:
                failed += 1
    return passed, failed


def _load_group_source(source: str) -> FiniteGroup:
    path = Path(source)
    if path.exists():
        with open(path, "r", encoding="utf-8") as fh:
            return load_group(json.load(fh))
    return builtin_from_string(source)


def _load_algebra_source(config: RunConfig) -> GFrobeniusAlgebra:
    source = config.algebra
    if source is None:
        raise SchemaError("--algebra is required for this command")
    if source == "builtin:group-algebra":
        if config.group is None:
            raise SchemaError("builtin:group-algebra needs --group")
        return group_algebra(_load_group_source(config.group))
    path = Path(source)
    if not path.exists():
        raise SchemaError(f"algebra file not found: {source}")
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {source}: {exc}") from None
    return load_algebra(doc)


def _read_cobordism_text(source: str) -> str:
    path = Path(source)
    if path.exists():
        return path.read_text(encoding="utf-8")
    return source


def _print_block_map(value: BlockLinearMap, group: FiniteGroup, mode: str) -> str:
    if mode == "records":
        return json.dumps(
            {
                "record": "map",
                "domain": [group.name(g) for g in value.domain],
                "codomain": [group.name(g) for g in value.codomain],
                "matrix": [[format_scalar(x) for x in row] for row in value.matrix.data],
            }
        )
    lines = [
        "domain:   [" + ", ".join(group.name(g) for g in value.domain) + "]",
        "codomain: [" + ", ".join(group.name(g) for g in value.codomain) + "]",
        f"matrix ({value.matrix.rows} x {value.matrix.cols}):",
    ]
    lines.extend(format_matrix(value.matrix))
    return "\n".join(lines)


def _cmd_check(config: RunConfig) -> int:
    a = _load_algebra_source(config)
    report = check_axioms(a)
    try:
        d = derive(a)
    except EngineError as exc:
        report = report.merge(
            CheckReport((failing("derived-structure", (("error", str(exc)),), "", ""),))
        )
    else:
        report = report.merge(check_frobenius_diagram(a, d))
        report = report.merge(check_cocommutativity(a, d))
    print(format_report(report, config.fmt))
    return 0 if report.passed else 1


def _cmd_derive(config: RunConfig) -> int:
    a = _load_algebra_source(config)
    d = derive(a)
    group = a.group
    out = []
    if config.fmt == "records":
        for g in group.elements():
            out.append(
                json.dumps(
                    {
                        "record": "pairing",
                        "g": group.name(g),
                        "matrix": [[format_scalar(x) for x in row] for row in d.pairings[g].data],
                    }
                )
            )
        for g in group.elements():
            out.append(
                json.dumps(
                    {
                        "record": "handle-diagonal",
                        "g": group.name(g),
                        "matrix": [[format_scalar(x) for x in row] for row in d.euler[g].data],
                    }
                )
            )
        for g in group.elements():
            for h in group.elements():
                t = d.coproducts[(g, h)]
                out.append(
                    json.dumps(
                        {
                            "record": "coproduct",
                            "g": group.name(g),
                            "h": group.name(h),
                            "tensor": [
                                [[format_scalar(x) for x in row] for row in plane]
                                for plane in t.data
                            ],
                        }
                    )
                )
    else:
        for g in group.elements():
            out.append(f"pairing[{group.name(g)}]:")
            out.extend(format_matrix(d.pairings[g]))
        for g in group.elements():
            out.append(f"euler-element[{group.name(g)}] (rows: grade, cols: inverse grade):")
            out.extend(format_matrix(d.euler[g]))
        for g in group.elements():
            for h in group.elements():
                t = d.coproducts[(g, h)]
                out.append(
                    f"coproduct[{group.name(g)},{group.name(h)}] "
                    f"(matrix of the splitting map, rows flatten the two output legs):"
                )
                grid = [
                    tuple(t.data[c][i][j] for c in range(t.dim0))
                    for i in range(t.dim1)
                    for j in range(t.dim2)
                ]
                out.extend(format_matrix(Matrix(t.dim1 * t.dim2, t.dim0, grid)))
    print("\n".join(out))
    return 0


def _cmd_orbifold(config: RunConfig) -> int:
    a = _load_algebra_source(config)
    orb = orbifold_algebra(a)
    doc = save_algebra(orb.as_trivial_algebra())
    doc["group"] = "cyclic:1"
    print(json.dumps(doc, indent=2, sort_keys=True))
    if not orb.certification.passed:
        print(format_report(orb.certification, config.fmt), file=sys.stderr)
        return 1
    return 0


def _cmd_eval(config: RunConfig) -> int:
    a = _load_algebra_source(config)
    if config.cobordism is None:
        raise SchemaError("--cobordism is required for eval")
    text = _read_cobordism_text(config.cobordism)
    word = parse(text, a.group)
    value = evaluate(a, word)
    print(_print_block_map(value, a.group, config.fmt))
    return 0


def _cmd_cerf(config: RunConfig) -> int:
    a = _load_algebra_source(config)
    if config.case is None:
        raise SchemaError("--case is required for cerf")
    if config.all_labels:
        report = cerf_check(a, config.case, all_labels=True)
    else:
        if config.labels is None:
            raise SchemaError("cerf needs --labels or --all-labels")
        names = [s.strip() for s in config.labels.split(",") if s.strip()]
        labels = tuple(a.group.index(name) for name in names)
        report = cerf_check(a, config.case, labels=labels)
    print(format_report(report, config.fmt))
    return 0 if report.passed else 1


def minimize_word(word: Cobordism, predicate) -> Cobordism:
    """Greedy shrink of a failing word: drop layers while the predicate
    still holds, then push labels toward the identity element."""
    current = word
    changed = True
    while changed:
        changed = False
        for idx in range(len(current.layers)):
            layers = current.layers[:idx] + current.layers[idx + 1 :]
            if not layers:
                continue
            try:
                candidate = Cobordism(current.group, layers)
            except EngineError:
                continue
            if predicate(candidate):
                current = candidate
                changed = True
                break

    e = current.group.identity
    changed = True
    while changed:
        changed = False
        for li, layer in enumerate(current.layers):
            for pi, piece in enumerate(layer):
                for slot, label in enumerate(piece.labels):
                    if label == e:
                        continue
                    labels = piece.labels[:slot] + (e,) + piece.labels[slot + 1 :]
                    new_layer = layer[:pi] + (Piece(piece.kind, labels),) + layer[pi + 1 :]
                    layers = (
                        current.layers[:li] + (new_layer,) + current.layers[li + 1 :]
                    )
                    try:
                        candidate = Cobordism(current.group, layers)
                    except EngineError:
                        continue
                    if predicate(candidate):
                        current = candidate
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return current


def _cmd_fuzz(config: RunConfig) -> int:
    a = _load_algebra_source(config)
    ev = Evaluator(a)
    rng = random.Random(config.seed)
    previous: Cobordism | None = None
    for index in range(config.count):
        word = random_cobordism(a.group, rng.getrandbits(32), config.budget)
        witness = word_functoriality_witness(ev, word)
        if witness is not None:
            shrunk = minimize_word(
                word, lambda w: word_functoriality_witness(ev, w) is not None
            )
            print(f"fuzz: functoriality failed at word {index}")
            print(f"word: {word.to_text()}")
            print(f"minimized: {shrunk.to_text()}")
            print(f"witness: {dict(witness.context)}")
            return 1
        rewritten = rewrite_equivalent(word, rng)
        if rewritten is not None and ev(rewritten).matrix != ev(word).matrix:
            bad = rewritten

            def still_differs(w, original=word):
                return ev(w).matrix != ev(original).matrix

            shrunk = minimize_word(bad, still_differs)
            print(f"fuzz: rewrite equality failed at word {index}")
            print(f"word: {word.to_text()}")
            print(f"rewritten: {shrunk.to_text()}")
            return 1
        if previous is not None and index % 10 == 0:
            side_by_side = ev(tensor_words(previous, word))
            separate = kron(ev(previous).matrix, ev(word).matrix)
            if side_by_side.matrix != separate:
                print(f"fuzz: tensor functoriality failed at word {index}")
                print(f"left: {previous.to_text()}")
                print(f"right: {word.to_text()}")
                return 1
        previous = word
    print(
        f"fuzz: {config.count} words over budget {config.budget} passed "
        f"functoriality, rewrite-equality and type checks (seed={config.seed})"
    )
    return 0


_COMMANDS = {
    "check": _cmd_check,
    "derive": _cmd_derive,
    "orbifold": _cmd_orbifold,
    "eval": _cmd_eval,
    "cerf": _cmd_cerf,
    "fuzz": _cmd_fuzz,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        print(f"error: category=parse unknown command {config.command!r}", file=sys.stderr)
        return 2
    try:
        return handler(config)
    except EngineError as exc:
        category = getattr(exc, "category", "check-failure")
        print(f"error: category={category} {exc}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gtqft",
        description="Exact checker and evaluator for graded Frobenius algebras "
        "and the surface field theories they generate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_algebra=True):
        p.add_argument("--group", help="group file or builtin spec like cyclic:4")
        if needs_algebra:
            p.add_argument(
                "--algebra",
                required=True,
                help='algebra file or "builtin:group-algebra" (with --group)',
            )
        p.add_argument(
            "--format",
            dest="fmt",
            choices=["human", "records"],
            default="human",
            help="human-readable table or line-delimited JSON records",
        )

    common(sub.add_parser("check", help="run the law checks on an algebra"))
    common(sub.add_parser("derive", help="print pairings, coproducts and handle elements"))
    common(sub.add_parser("orbifold", help="emit the invariant subalgebra as an algebra file"))

    p_eval = sub.add_parser("eval", help="evaluate a surface word")
    common(p_eval)
    p_eval.add_argument("--cobordism", required=True, help="word text or a file containing it")

    p_cerf = sub.add_parser("cerf", help="compare alternative decompositions")
    common(p_cerf)
    p_cerf.add_argument("--case", required=True, choices=["111", "202", "301", "103"])
    p_cerf.add_argument("--labels", help="comma-separated element names")
    p_cerf.add_argument("--all-labels", action="store_true", dest="all_labels")

    p_fuzz = sub.add_parser("fuzz", help="random words with functoriality assertions")
    common(p_fuzz)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--budget", type=int, default=8, help="maximum pieces per word")
    p_fuzz.add_argument("--count", type=int, default=1000, help="number of words")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        group=getattr(args, "group", None),
        algebra=getattr(args, "algebra", None),
        cobordism=getattr(args, "cobordism", None),
        case=getattr(args, "case", None),
        labels=getattr(args, "labels", None),
        all_labels=getattr(args, "all_labels", False),
        seed=getattr(args, "seed", 0),
        budget=getattr(args, "budget", 8),
        count=getattr(args, "count", 1000),
        fmt=getattr(args, "fmt", "human"),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
