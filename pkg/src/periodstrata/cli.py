"""Command line entry point: ``period-strata``.

Exit status is 0 on success, 1 when a check fails (invalid datum,
verification failure, a stratum that is not constant, a family whose datum
differs from its declared one) and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .drdatum import (
    DatumError,
    DeRhamDatum,
    classify,
    compare,
    dimensions,
    min_covers,
    parse_datum,
    truncate,
    twist,
)
from .family import (
    DifTower,
    cohomology_dims,
    family_datum,
    sen_polynomial,
    stabilized_plus_dim,
    weight_multiplicities,
)
from .generate import GenerationError, generate_random_family
from .io import InputError, parse_poly, read_family, serialize_family
from .rings import RingMap, factor_irreducible
from .strata import stratum_report, strata_decomposition
from .verify import SUITES, run_suite

__all__ = ["main", "run_command"]

SEED_ENV = "PERIOD_STRATA_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


class _Out:
    """Text tables or JSON records, one per line."""

    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def line(self, text: str = ""):
        if self.fmt == "text":
            print(text, file=self.stream)

    def record(self, kind: str, text: str | None = None, **fields: Any):
        if self.fmt == "records":
            print(json.dumps({"record": kind, **fields}, sort_keys=True), file=self.stream)
        elif text is not None:
            print(text, file=self.stream)


def _datum_record(D: DeRhamDatum) -> dict:
    return {"omega": {str(w): m for w, m in D.omega},
            "delta": {f"{i},{j}": d for i, j, d in D.delta},
            "literal": D.to_literal()}


def _read_datum(text: str) -> DeRhamDatum:
    try:
        return parse_datum(text)
    except DatumError as exc:
        raise InputError(f"invalid datum: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _parse_point(T: DifTower, text: str) -> RingMap:
    """A rational value, or an irreducible polynomial naming a closed point."""
    var = T.ring.var
    if not T.ring.is_poly:
        raise InputError(f"--at needs a family over Q[{var}], got {T.ring}")
    p = parse_poly(text, var)
    if p.degree <= 0:
        if p.is_zero() and text.strip() not in ("0", "-0", "+0"):
            raise InputError(f"bad point {text!r}")
        return RingMap.evaluate_at(T.ring, p.coeff(0))
    fac = factor_irreducible(p)
    if len(fac) != 1 or fac[0][1] != 1:
        raise InputError(f"{text!r} is not irreducible; use --artinian for thickenings")
    g = fac[0][0]
    if g.degree == 1:
        return RingMap.evaluate_at(T.ring, -g.coeff(0))
    return RingMap.project_to_quotient(T.ring, g)


def _parse_artinian(T: DifTower, text: str) -> RingMap:
    var = T.ring.var
    if not T.ring.is_poly:
        raise InputError(f"--artinian needs a family over Q[{var}], got {T.ring}")
    p = parse_poly(text, var)
    fac = factor_irreducible(p) if p.degree >= 1 else []
    if len(fac) != 1 or fac[0][0].degree != 1:
        raise InputError(f"--artinian expects a power of a linear polynomial like (x-a)^e, got {text!r}")
    g, e = fac[0]
    return RingMap.project_to_quotient(T.ring, g ** e)


def _load(path: str) -> tuple[DifTower, dict]:
    return read_family(path)


def _windows(i: int, j: int) -> list[tuple[int, int]]:
    return [(k, l) for k in range(i, j + 1) for l in range(k + 1, j + 2)]


# -- subcommands ----------------------------------------------------------------

def cmd_analyze(args, out: _Out) -> int:
    if (args.i is None) != (args.j is None):
        raise InputError("--i and --j go together")
    if args.i is not None and args.i > args.j:
        raise InputError(f"empty interval [{args.i}, {args.j}]")
    T, meta = _load(args.file)
    if not T.ring.is_integral:
        raise InputError(f"analyze needs an integral base (Q, Q[x] or a residue field), got {T.ring}; "
                         "use cohomology for Artinian bases")
    var = T.ring.var
    P = sen_polynomial(T)
    omega = weight_multiplicities(P)
    D = family_datum(T)
    status = 0
    out.record("family", f"family\t{meta.get('name', args.file)}\tring {T.ring}\trank {T.rank}\tdepth {T.depth}",
               name=meta.get("name", args.file), ring=str(T.ring), rank=T.rank, depth=T.depth)
    out.record("sen", f"sen polynomial\t{P.to_string()}", polynomial=P.to_string())
    om_text = ", ".join(f"{w}: {m}" for w, m in sorted(omega.items())) or "none"
    out.record("omega", f"weights\t{{{om_text}}}", omega={str(w): m for w, m in sorted(omega.items())})
    flags, dims = classify(D), dimensions(D)
    out.record("datum", f"generic datum\t{D.to_literal()}", **_datum_record(D))
    out.record("flags", f"flags\tfull={flags.full}\thodge_tate={flags.hodge_tate}\tsen={flags.sen}"
               f"\tsd={dims.sd}\thtd={dims.htd}\tdrd={dims.drd}", **flags._asdict(), **dims._asdict())
    if "expected" in meta:
        expected = _read_datum(str(meta["expected"]))
        ok = expected == D
        out.record("expected", f"declared datum\t{expected.to_literal()}\t{'match' if ok else 'MISMATCH'}",
                   expected=expected.to_literal(), match=ok)
        if not ok:
            status = 1
    if not T.ring.is_poly:
        return status
    if args.i is not None:
        i, j = args.i, args.j
    elif not D.is_zero:
        i, j = D.L, D.U
    else:
        i, j = 0, 0
    if i > j:
        raise InputError(f"empty interval [{i}, {j}]")
    strata = strata_decomposition(T, i, j)
    out.line(f"strata on [{i}, {j}]")
    out.line("datum\tlocus\tdelta\tverdict")
    for S in strata:
        deltas, verdicts, witness = [], [], None
        for w in _windows(i, j):
            rep = stratum_report(T, S, w, args.samples)
            deltas.append(f"{w}={rep.expected}")
            verdicts.append(rep.verdict)
            if rep.verdict == "counterexample" and witness is None:
                witness = f"{w} at {rep.counterexample}"
        verdict = "counterexample" if "counterexample" in verdicts else (
            "vacuous" if all(v == "vacuous" for v in verdicts) else "constant")
        if verdict == "counterexample":
            status = 1
        loc = S.locus.describe(var)
        out.record("stratum", "\t".join([S.datum.to_literal(), loc, " ".join(deltas),
                                         verdict + (f" {witness}" if witness else "")]),
                   datum=S.datum.to_literal(), locus=loc, interval=[i, j],
                   delta={f"{k},{l}": S.datum.delta_at(k, l) for k, l in _windows(i, j)},
                   verdict=verdict, counterexample=witness)
    return status


def cmd_cohomology(args, out: _Out) -> int:
    T, _ = _load(args.file)
    if args.l <= args.k:
        raise InputError(f"need k < l, got k={args.k} l={args.l}")
    if args.at is not None and args.artinian is not None:
        raise InputError("--at and --artinian are exclusive")
    locus = None
    where = "generic"
    if args.at is not None:
        locus = _parse_point(T, args.at)
        where = f"at {args.at}"
    elif args.artinian is not None:
        locus = _parse_artinian(T, args.artinian)
        where = f"over {locus.target}"
    h0, h1 = cohomology_dims(T, args.k, args.l, locus)
    out.record("cohomology", f"h0={h0} h1={h1}\t[{args.k}, {args.l}) {where}",
               k=args.k, l=args.l, locus=where, h0=h0, h1=h1)
    if args.stable:
        d, l_star, seq = stabilized_plus_dim(T, args.k, locus)
        out.record("stable", f"stabilized h0={d} from l={l_star}\tsequence {seq}",
                   k=args.k, h0=d, l_star=l_star, sequence=seq)
    return 0


def cmd_datum(args, out: _Out) -> int:
    op = args.op
    if op == "validate":
        try:
            D = parse_datum(args.datum)
        except DatumError as exc:
            for v in exc.violations:
                out.record("violation", f"condition ({v.condition})\t{v.message}",
                           condition=v.condition, witness=[list(w) if isinstance(w, tuple) else w
                                                           for w in v.witness], message=v.message)
            return 1
        except ValueError as exc:
            raise InputError(str(exc)) from None
        flags, dims = classify(D), dimensions(D)
        out.record("valid", f"valid\t{D.to_literal()}\tfull={flags.full} hodge_tate={flags.hodge_tate} "
                   f"sen={flags.sen} sd={dims.sd} htd={dims.htd} drd={dims.drd}",
                   **_datum_record(D), **flags._asdict(), **dims._asdict())
        return 0
    D = _read_datum(args.datum)
    if op == "mincovers":
        try:
            covers = min_covers(D, args.i, args.j)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        for E in covers:
            out.record("cover", E.to_literal(), **_datum_record(E))
        return 0
    if op == "truncate":
        if args.i > args.j:
            raise InputError(f"empty interval [{args.i}, {args.j}]")
        E = truncate(D, args.i, args.j)
        out.record("datum", E.to_literal(), **_datum_record(E))
        return 0
    if op == "twist":
        E = twist(D, args.n)
        out.record("datum", E.to_literal(), **_datum_record(E))
        return 0
    if op == "compare":
        E = _read_datum(args.other)
        interval = (args.i, args.j) if args.i is not None and args.j is not None else None
        c = compare(D, E, interval)
        out.record("comparison", f"{c.relation}\tstrict_in_interval={c.strict_in_interval}",
                   relation=c.relation, strict_in_interval=c.strict_in_interval)
        return 0
    raise InputError(f"unknown datum operation {op!r}")


def _seed(args) -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{SEED_ENV}={env!r} is not an integer") from None
    return args.seed


def cmd_verify(args, out: _Out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    seed = _seed(args)
    status = 0
    for name in names:
        rep = run_suite(name, seed)
        out.record("suite", rep.summary(), suite=rep.suite, seed=seed, cases=rep.cases,
                   failures=len(rep.failures), elapsed=round(rep.elapsed, 3), passed=rep.passed)
        for h in rep.hypotheses:
            out.record("hypothesis", f"  hypothesis\t{h.status}\t{h.name}" + (f"\t{h.note}" if h.note else ""),
                       suite=rep.suite, name=h.name, status=h.status, note=h.note)
        for f in rep.failures[: args.max_failures]:
            out.record("failure", f"  failure\t{f.case}\t{f.detail}", suite=rep.suite, case=f.case,
                       detail=f.detail)
        if not rep.passed:
            status = 1
    return status


def cmd_random(args, out: _Out) -> int:
    D = _read_datum(args.datum)
    seed = _seed(args)
    try:
        T = generate_random_family(D, seed, rank=args.rank, depth=args.depth)
    except GenerationError as exc:
        raise InputError(str(exc)) from None
    text = serialize_family(T, {"name": f"random seed {seed}", "expected": D.to_literal()})
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.record("written", f"wrote {args.output}", path=args.output, seed=seed)
    elif out.fmt == "records":
        out.record("family", None, seed=seed, family=json.loads(text))
    else:
        out.stream.write(text)
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="period-strata", description="Sen data, de Rham data and strata of towers.")
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="plain tables (default) or one JSON record per line")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    a = sub.add_parser("analyze", help="Sen polynomial, weights, generic datum and strata table")
    a.add_argument("file")
    a.add_argument("--i", type=int, help="lower end of the strata interval")
    a.add_argument("--j", type=int, help="upper end of the strata interval")
    a.add_argument("--samples", type=int, default=25, help="sample points per cofinite stratum")

    c = sub.add_parser("cohomology", help="(h0, h1) of one window")
    c.add_argument("file")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int, required=True)
    c.add_argument("--at", help="rational value or irreducible polynomial")
    c.add_argument("--artinian", help='thickened point such as "(x-1)^2"')
    c.add_argument("--stable", action="store_true", help="also report the stabilized h0 for this k")

    d = sub.add_parser("datum", help="operations on datum literals")
    d.add_argument("op", choices=("validate", "mincovers", "truncate", "twist", "compare"))
    d.add_argument("datum", help="'omega: {w: m}; delta: {(i, j): d}'")
    d.add_argument("other", nargs="?", help="second datum for compare")
    d.add_argument("--i", type=int)
    d.add_argument("--j", type=int)
    d.add_argument("--n", type=int, help="twist amount")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=(*SUITES, "all"))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-failures", type=int, default=10)

    r = sub.add_parser("random", help="a random family realizing a datum")
    r.add_argument("--datum", required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--rank", type=int)
    r.add_argument("--depth", type=int)
    r.add_argument("--output", "-o")
    return p


def _check_datum_args(args):
    if args.op in ("mincovers", "truncate") and (args.i is None or args.j is None):
        raise InputError(f"datum {args.op} needs --i and --j")
    if args.op == "twist" and args.n is None:
        raise InputError("datum twist needs --n")
    if args.op == "compare" and args.other is None:
        raise InputError("datum compare needs a second datum")
    if args.op != "compare" and args.other is not None:
        raise InputError(f"unexpected argument {args.other!r}")


_COMMANDS = {
    "analyze": cmd_analyze,
    "cohomology": cmd_cohomology,
    "datum": cmd_datum,
    "verify": cmd_verify,
    "random": cmd_random,
}


def run_command(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "datum":
            _check_datum_args(args)
        return _COMMANDS[args.command](args, _Out(args.format, stdout))
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
