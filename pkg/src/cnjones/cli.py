"""Command-line front end: compute invariants, generate families, verify.

Exit codes are a stable contract: 0 all good, 1 a verification suite
failed, 2 bad input or parameters (with a violation list on stderr),
3 crossing limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .diagram import (
    DiagramError,
    crossing_change,
    crossing_sign,
    from_json_dict,
    oriented_smoothing,
    simplify,
    to_json_dict,
    validate,
)
from .families import (
    basics,
    family_JK,
    marked_from_json_dict,
    marked_to_json_dict,
    tangle_clasp,
    tangle_trivial,
    tangle_twist,
    torus_N,
    unlink,
)
from .harness import (
    verify_congruences,
    verify_divisibility,
    verify_j_identities,
    verify_kanenobu,
    verify_lemma_3_2,
    verify_main,
    verify_special_values,
)
from .invariants import (
    CROSSING_LIMIT_ENV,
    CrossingLimitError,
    InvariantError,
    arf_knot,
    conway,
    jones,
    jones_skein,
    kauffman_bracket,
    simplified_polynomial,
    special_values,
)
from .laurent import (
    HalfLaurent,
    derivative_at_one,
    exact_divide,
    format_half_laurent,
    parse_half_laurent,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CROSSING_LIMIT = 3


class CliInputError(Exception):
    """Bad file contents or parameters; carries printable violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def _parse_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
    else:
        lo = hi = text
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise CliInputError([f"bad range {text!r}; expected A..B"])
    if hi_i < lo_i:
        raise CliInputError([f"empty range {text!r}"])
    return range(lo_i, hi_i + 1)


def _load(path: str):
    """Diagram from a JSON file, plus the marking when the file has one."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliInputError([f"cannot read {path}: {exc}"])
    except json.JSONDecodeError as exc:
        raise CliInputError([f"invalid JSON in {path}: {exc}"])
    if not isinstance(data, dict):
        raise CliInputError([f"{path}: top level must be a JSON object"])
    try:
        diagram = from_json_dict(data)
    except DiagramError as exc:
        raise CliInputError([f"{path}: {exc}"])
    problems = validate(diagram)
    if problems:
        raise CliInputError([f"{path}: {p}" for p in problems])
    marked = None
    if "c1" in data or "pairs" in data:
        try:
            marked = marked_from_json_dict(data)
        except (DiagramError, ValueError) as exc:
            raise CliInputError([f"{path}: {exc}"])
    return diagram, marked


def cmd_compute(args) -> int:
    diagram, _ = _load(args.path)
    limit = args.crossing_limit
    wanted = {}

    selectors = [args.jones, args.conway, args.bracket, args.special,
                 args.arf, args.det, args.simplified,
                 args.derivatives is not None]
    if args.jones or not any(selectors):
        wanted["jones"] = format_half_laurent(jones(diagram, limit))
    if args.conway:
        wanted["conway"] = conway(diagram, limit).format()
    if args.bracket:
        wanted["bracket"] = kauffman_bracket(diagram, limit).format()
    if args.special:
        sv = special_values(diagram, limit)
        wanted["special"] = {
            "components": sv.components,
            "proper": sv.proper,
            "total_linking": sv.total_linking,
            "at_one": sv.at_one,
            "at_omega": sv.at_omega,
            "at_i": str(sv.at_i),
            "at_minus_one": str(sv.at_minus_one),
            "determinant": sv.determinant,
            "derivative_at_one": str(sv.derivative_at_one),
        }
    if args.derivatives is not None:
        if args.derivatives < 1:
            raise CliInputError(["--derivatives needs a positive order"])
        v = jones(diagram, limit)
        wanted["derivatives"] = {
            str(order): str(derivative_at_one(v, order))
            for order in range(1, args.derivatives + 1)
        }
    if args.arf:
        try:
            wanted["arf"] = arf_knot(diagram, limit)
        except InvariantError as exc:
            raise CliInputError([str(exc)])
    if args.det:
        wanted["det"] = special_values(diagram, limit).determinant
    if args.simplified:
        wanted["simplified"] = format_half_laurent(
            simplified_polynomial(diagram, limit))

    if args.format == "json":
        _emit(args, json.dumps(wanted, indent=2, sort_keys=True))
    elif len(wanted) == 1 and not isinstance(next(iter(wanted.values())), dict):
        _emit(args, str(next(iter(wanted.values()))))
    else:
        lines = []
        for key in sorted(wanted):
            value = wanted[key]
            if isinstance(value, dict):
                for sub in sorted(value):
                    lines.append(f"{key}.{sub}: {value[sub]}")
            else:
                lines.append(f"{key}: {value}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


_GENERATORS = {
    "unknot": lambda args: basics("unknot"),
    "unlink": lambda args: unlink(_need(args, "r")),
    "hopf": lambda args: basics("hopf", args.sign),
    "trefoil": lambda args: basics("trefoil",
                                   "left" if args.sign < 0 else "right"),
    "torus": lambda args: torus_N(_need(args, "m")),
    "kn": lambda args: family_JK(_need(args, "n"))[1],
}


def _need(args, field):
    value = getattr(args, field)
    if value is None:
        raise CliInputError([f"missing required flag --{field}"])
    return value


def cmd_generate(args) -> int:
    kind = args.family
    try:
        if kind == "jn":
            marked, _ = family_JK(_need(args, "n"))
            payload = marked_to_json_dict(marked)
        elif kind in _GENERATORS:
            payload = to_json_dict(_GENERATORS[kind](args))
        else:
            raise CliInputError([f"unknown family {kind!r}"])
    except ValueError as exc:
        raise CliInputError([str(exc)])
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _verify_reports(suite: str, ns: range):
    if suite == "main":
        if ns.start < 3:
            raise CliInputError([f"main suite needs n >= 3, got {ns.start}"])
        for n in ns:
            yield verify_main(n)
    elif suite == "kanenobu":
        if ns.start < 3:
            raise CliInputError([f"kanenobu suite needs n >= 3, got {ns.start}"])
        for n in ns:
            yield verify_kanenobu(n)
    elif suite == "divisibility":
        if ns.start < 3:
            raise CliInputError([f"divisibility suite needs n >= 3, got {ns.start}"])
        for n in ns:
            marked, partner = family_JK(n)
            yield verify_divisibility(marked.diagram, partner, n)
    elif suite == "congruences":
        if ns.start < 3:
            raise CliInputError([f"congruence suite needs n >= 3, got {ns.start}"])
        for n in ns:
            yield verify_congruences(n)
    elif suite == "identities":
        if ns.start < 5:
            raise CliInputError([f"identity suite needs n >= 5, got {ns.start}"])
        for n in ns:
            yield verify_j_identities(n)
    elif suite == "sliding":
        if ns.start < 3:
            raise CliInputError([f"sliding suite needs n >= 3, got {ns.start}"])
        tangles = [tangle_trivial(), tangle_twist(1), tangle_twist(-1),
                   tangle_clasp()]
        for n in ns:
            yield verify_lemma_3_2(n, tangles)
    elif suite == "special":
        corpus = [basics("unknot"), unlink(2), unlink(3),
                  basics("hopf", 1), basics("hopf", -1),
                  basics("trefoil", "right"), basics("trefoil", "left")]
        corpus += [torus_N(m) for m in range(0, 9)]
        for n in ns:
            corpus.append(tuple(d for d in _jk_pair(n)))
        yield verify_special_values(corpus)
    else:
        raise CliInputError([f"unknown suite {suite!r}"])


def _jk_pair(n):
    marked, partner = family_JK(n)
    return marked.diagram, partner


def cmd_verify(args) -> int:
    ns = _parse_range(args.n_range or args.n or "3..8")
    if args.crossing_limit is not None:
        if args.crossing_limit < 1:
            raise CliInputError(["crossing limit must be >= 1"])
        os.environ[CROSSING_LIMIT_ENV] = str(args.crossing_limit)
    all_pass = True
    for report in _verify_reports(args.suite, ns):
        print(report.to_json_line())
        all_pass = all_pass and report.passed
    return EXIT_OK if all_pass else EXIT_VERIFY_FAILED


def cmd_selftest(args) -> int:
    """Quick deterministic property battery over the algebra and diagrams."""
    rng = random.Random(20250825)
    failures = []

    def rand_poly():
        return HalfLaurent.from_dict(
            {rng.randint(-6, 6): rng.randint(-9, 9) for _ in range(rng.randint(0, 5))})

    for _ in range(400):
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        if (p + q) * r != p * r + q * r:
            failures.append("ring distributivity")
            break
        if p * q != q * p or (p + q) - q != p:
            failures.append("ring commutativity")
            break
        if not q.is_zero():
            prod = p * q
            back = exact_divide(prod, q)
            if back != p:
                failures.append("division round-trip")
                break

    for _ in range(60):
        word = [rng.choice((1, -1, 2, -2)) for _ in range(rng.randint(2, 8))]
        from .families import closed_braid
        d = closed_braid(3, word)
        probs = validate(d)
        if probs:
            failures.append(f"generated braid invalid: {probs[0]}")
            break
        if jones(d) != jones_skein(d):
            failures.append("engine mismatch on random braid")
            break
        if not d.crossings:
            continue
        c = rng.randrange(len(d.crossings))
        sign = crossing_sign(d, c)
        plus = d if sign > 0 else crossing_change(d, c)
        minus = crossing_change(d, c) if sign > 0 else d
        zero = oriented_smoothing(d, c)
        x = HalfLaurent.from_dict({1: 1})
        lhs = (HalfLaurent.from_dict({-2: 1}) * jones(plus)
               - HalfLaurent.from_dict({2: 1}) * jones(minus))
        rhs = (x - HalfLaurent.from_dict({-1: 1})) * jones(zero)
        if lhs != rhs:
            failures.append("skein relation failed on random sample")
            break
        v = jones(d)
        parity_ok = (v.has_only_integer_t_powers()
                     if d.n_components % 2 == 1 else
                     not v.is_zero() and not v.has_only_integer_t_powers())
        if not parity_ok:
            failures.append("exponent parity law failed")
            break

    simplified_ok = simplify(basics("trefoil", "right")) is not None
    if not simplified_ok:
        failures.append("simplify unavailable")

    if failures:
        for f in failures:
            print(f"selftest FAIL: {f}")
        return EXIT_VERIFY_FAILED
    print("selftest: all property suites passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnjones",
        description="Exact Jones/Conway invariants and family verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="invariants of a diagram file")
    p_compute.add_argument("path")
    for flag in ("jones", "conway", "bracket", "special", "arf", "det",
                 "simplified"):
        p_compute.add_argument(f"--{flag}", action="store_true")
    p_compute.add_argument("--derivatives", type=int, metavar="L")
    p_compute.add_argument("--format", choices=("text", "json"), default="text")
    p_compute.add_argument("--crossing-limit", type=int, dest="crossing_limit")
    p_compute.add_argument("--out")
    p_compute.set_defaults(func=cmd_compute)

    p_generate = sub.add_parser("generate", help="write a family diagram file")
    p_generate.add_argument("family",
                            choices=("jn", "kn", "torus", "unlink", "unknot",
                                     "hopf", "trefoil"))
    p_generate.add_argument("--n", type=int)
    p_generate.add_argument("--m", type=int)
    p_generate.add_argument("--r", type=int)
    p_generate.add_argument("--sign", type=int, default=1)
    p_generate.add_argument("--out")
    p_generate.set_defaults(func=cmd_generate)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite",
                          choices=("main", "kanenobu", "divisibility",
                                   "congruences", "identities", "sliding",
                                   "special"))
    p_verify.add_argument("--n", type=str)
    p_verify.add_argument("--n-range", type=str, dest="n_range")
    p_verify.add_argument("--crossing-limit", type=int, dest="crossing_limit")
    p_verify.set_defaults(func=cmd_verify)

    p_selftest = sub.add_parser("selftest", help="internal property suites")
    p_selftest.set_defaults(func=cmd_selftest)

    return parser


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as exc:
        for violation in exc.violations:
            print(f"error: {violation}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except CrossingLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CROSSING_LIMIT
    except (DiagramError, InvariantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
