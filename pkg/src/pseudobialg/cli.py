"""Command line front end: ``pseudobialg COMMAND FILE [options]``.

Exit status is 0 when every requested check passes, 1 when one fails and 2 on
errors (bad input, incompatible flags, insufficient truncation).  A report is
printed in every case.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .annihilation import AnnihilationAlgebra, convolution_bracket, phi
from .bialgebra import (
    check_coalgebra,
    check_cocycle,
    coboundary_delta,
    cybe_check,
    dualize_to_cobracket,
    round_trip_discrepancy,
    zero_cobracket,
)
from .dual import DualElement, TruncationInsufficient
from .fileformat import Document, ParseError, format_square, parse_definition, serialize
from .manin import double, double_restrictions
from .pseudoalg import BracketTable, check_conformal_axioms, check_lie_axioms

COMMANDS = ("check", "dualize", "coboundary", "double", "annihilate")
DEFAULT_SAMPLE_DEGREE = 4
DEFAULT_CUTOFF = 6
SUFFIX = ".pbd"


class UsageError(Exception):
    pass


class Run:
    def __init__(self, command, instance):
        self.command = command
        self.instance = instance
        self.checks = []
        self.artifacts = []
        self.lines = []
        self.error = None

    def check(self, name, passed, witness=None):
        entry = {"name": name, "pass": bool(passed)}
        if not passed and witness is not None:
            entry["witness"] = str(witness)
        self.checks.append(entry)

    def report(self):
        out = {"command": self.command, "instance": self.instance,
               "checks": self.checks, "artifacts": self.artifacts}
        if self.error is not None:
            out["error"] = self.error
        return out

    def exit_code(self):
        if self.error is not None:
            return 2
        return 0 if all(c["pass"] for c in self.checks) else 1

    def text(self):
        out = [f"{self.command} {self.instance}"]
        for c in self.checks:
            mark = "pass" if c["pass"] else "FAIL"
            out.append(f"  {c['name']}: {mark}")
            if "witness" in c:
                out.append(f"    witness: {c['witness']}")
        out += [f"  {line}" for line in self.lines]
        out += [f"  wrote {path}" for path in self.artifacts]
        if self.error is not None:
            out.append(f"  error: {self.error}")
        return "\n".join(out) + "\n"


def _first(report):
    if not report.failures:
        return None
    f = report.failures[0]
    return f"{f[0]} at {f[1]}: {f[2]}" if len(f) >= 3 else str(f)


def _write(run, path, text):
    Path(path).write_text(text, encoding="utf-8")
    run.artifacts.append(str(path))


def _artifact_path(args, stem, tag):
    if args.out:
        return args.out
    return str(Path(args.file).with_name(f"{stem}.{tag}{SUFFIX}"))


def _require(doc, section, flag):
    if getattr(doc, section) is None:
        raise UsageError(f"{flag} needs a [{section}] section")


def cmd_check(doc, args, run):
    run.check("lie_axioms", *_verdict(check_lie_axioms(doc.table)))
    if args.conformal:
        degree = args.sample_degree or doc.options.get("sample_degree", DEFAULT_SAMPLE_DEGREE)
        run.check("conformal", *_verdict(check_conformal_axioms(doc.table, sample_degree=degree)))
    if args.coalgebra:
        run.check("coalgebra", *_verdict(check_coalgebra(doc.cobracket)))
    if args.cocycle:
        run.check("cocycle", *_verdict(check_cocycle(doc.table, doc.cobracket)))


def _verdict(report):
    return bool(report), _first(report)


def cmd_dualize(doc, args, run):
    C = dualize_to_cobracket(doc.table, name=doc.table.module.name + "*")
    run.check("coalgebra", *_verdict(check_coalgebra(C)))
    gap = round_trip_discrepancy(doc.table)
    run.check("round_trip", not gap, next(iter(gap.items()), None))
    dual = Document(doc.alg, BracketTable(doc.alg, doc.table.labels, name=doc.name + "*"), C,
                    None, {}, doc.name + "*")
    _write(run, _artifact_path(args, doc.name, "dual"), serialize(dual))


def cmd_coboundary(doc, args, run):
    T, r = doc.table, doc.r
    verdict = cybe_check(T, r)
    sym = verdict["invariance_defect"]
    witness = None
    if sym:
        l, value = next(iter(sym.items()))
        witness = f"label {l}: {format_square(value, T.labels)}"
    run.check("invariance", verdict["invariance"], witness)
    run.check("cybe_mod", verdict["cybe_mod"], _first_item(verdict["cybe_mod_defect"]))
    delta = coboundary_delta(T, r)
    if doc.cobracket is not None:
        bad = [l for l in T.labels if delta.values[l] != doc.cobracket.values[l]]
        witness = None
        if bad:
            l = bad[0]
            witness = (f"label {l}: delta_r = {format_square(delta.values[l], T.labels)}; "
                       f"file = {format_square(doc.cobracket.values[l], T.labels)}")
        run.check("delta_matches_cobracket", not bad, witness)
    run.lines.append(f"quasitriangular: {verdict['quasitriangular']}")
    out = Document(doc.alg, T, delta, r, dict(doc.options), doc.name)
    _write(run, _artifact_path(args, doc.name, "coboundary"), serialize(out))


def _first_item(defects):
    if not defects:
        return None
    key, value = next(iter(defects.items()))
    return f"label {key}: {value}"


def cmd_double(doc, args, run):
    T = doc.table
    C = doc.cobracket if doc.cobracket is not None else zero_cobracket(doc.alg, T.labels, T.module.name)
    run.check("cocycle", *_verdict(check_cocycle(T, C)))
    D = double(T, C)
    run.check("lie_axioms", *_verdict(check_lie_axioms(D.table)))
    restr = double_restrictions(T, C, D)
    on_l = [f for f in restr.failures if f[0] == "restriction-L"]
    on_dual = [f for f in restr.failures if f[0] == "restriction-L*"]
    for name, bad in (("restriction_L", on_l), ("restriction_dual", on_dual)):
        witness = f"label {bad[0][1]}: {format_square(bad[0][2], D.table.labels)}" if bad else None
        run.check(name, not bad, witness)
    verdict = cybe_check(D.table, D.r)
    run.check("quasitriangular", verdict["quasitriangular"], verdict["rr_reduced"] or None)
    out = Document(doc.alg, D.table, D.cobracket, D.r, {}, doc.name + "_double")
    _write(run, _artifact_path(args, doc.name, "double"), serialize(out))


def parse_pairs(text, alg, labels):
    """``M:i*N:j`` items separated by commas; M, N are exponents joined by '.'."""
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            left, right = item.split("*")
            pairs.append((_slot(left, alg, labels), _slot(right, alg, labels)))
        except ValueError as exc:
            raise UsageError(f"bad pair '{item}': {exc}") from None
    return pairs


def _slot(text, alg, labels):
    index, label = text.strip().split(":")
    J = tuple(int(e) for e in index.split("."))
    if len(J) != alg.dim or any(e < 0 for e in J):
        raise ValueError(f"index needs {alg.dim} nonnegative exponents")
    label = int(label)
    if label not in labels:
        raise ValueError(f"undeclared basis label {label}")
    return J, label


def _default_pairs(alg, labels, degree):
    monos = list(alg.monomials(degree))
    return [((m, i), (n, j)) for m in monos for n in monos if sum(m) + sum(n) <= degree
            for i in labels for j in labels]


def _show_slot(J, label):
    return ".".join(str(e) for e in J) + f":{label}"


def cmd_annihilate(doc, args, run):
    T, alg = doc.table, doc.alg
    cutoff = args.cutoff if args.cutoff is not None else doc.options.get("cutoff", DEFAULT_CUTOFF)
    if args.pairs:
        pairs = parse_pairs(args.pairs, alg, T.labels)
    else:
        pairs = _default_pairs(alg, T.labels, min(2, cutoff))
    needed = max((sum(m) + sum(n) for (m, _), (n, _) in pairs), default=0)
    if needed > cutoff:
        raise TruncationInsufficient(needed, cutoff)
    A = AnnihilationAlgebra(T, cutoff=cutoff)
    C = dualize_to_cobracket(T)
    conv_cut = None if alg.abelian else cutoff
    hom_bad, skew_bad, rows = [], [], []
    for (m, i), (n, j) in pairs:
        u = A.pure(DualElement.basis(alg, m), i)
        v = A.pure(DualElement.basis(alg, n), j)
        uv = A.bracket(u, v)
        if not phi(uv).agrees(convolution_bracket(C, phi(u), phi(v), conv_cut)):
            hom_bad.append((m, i, n, j))
        if not (uv + A.bracket(v, u)).is_zero():
            skew_bad.append((m, i, n, j))
        rows.append(f"[{_show_slot(m, i)}, {_show_slot(n, j)}] = {uv}")
    run.check("homomorphism", not hom_bad, hom_bad[0] if hom_bad else None)
    run.check("antisymmetry", not skew_bad, skew_bad[0] if skew_bad else None)
    _write(run, _artifact_path(args, doc.name, "annihilation").replace(SUFFIX, ".txt"),
           "\n".join(rows) + "\n")


HANDLERS = {
    "check": cmd_check,
    "dualize": cmd_dualize,
    "coboundary": cmd_coboundary,
    "double": cmd_double,
    "annihilate": cmd_annihilate,
}


def _validate(args, doc):
    if args.command != "check" and (args.conformal or args.coalgebra or args.cocycle or args.sample_degree):
        raise UsageError("--conformal, --coalgebra, --cocycle and --sample-degree only apply to check")
    if args.command != "annihilate" and (args.cutoff is not None or args.pairs):
        raise UsageError("--cutoff and --pairs only apply to annihilate")
    if args.command == "check" and args.out:
        raise UsageError("check writes no artifact, --out is not accepted")
    if args.sample_degree is not None and not args.conformal:
        raise UsageError("--sample-degree needs --conformal")
    if args.coalgebra:
        _require(doc, "cobracket", "--coalgebra")
    if args.cocycle:
        _require(doc, "cobracket", "--cocycle")
    if args.command == "coboundary":
        _require(doc, "r", "coboundary")
    if args.command in ("dualize", "double", "annihilate") and doc.table.rule is not None:
        raise UsageError(f"{args.command} needs a free module of finite rank")


def build_parser():
    p = argparse.ArgumentParser(prog="pseudobialg", description="Checks and constructions for Lie pseudoalgebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="definition file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="path for the emitted artifact")
    p.add_argument("--conformal", action="store_true", help="add the x-bracket suite (check)")
    p.add_argument("--coalgebra", action="store_true", help="check co-Jacobi of [cobracket] (check)")
    p.add_argument("--cocycle", action="store_true", help="check the cocycle condition (check)")
    p.add_argument("--sample-degree", type=int, help="x-bracket sample degree (default 4)")
    p.add_argument("--cutoff", type=int, help="annihilation truncation degree (default 6)")
    p.add_argument("--pairs", help="annihilation samples, e.g. '1:1*2:2,0:1*0:2'")
    return p


def run_command(args):
    instance = Path(args.file).stem
    run = Run(args.command, instance)
    try:
        text = Path(args.file).read_text(encoding="utf-8")
        doc = parse_definition(text, instance)
        _validate(args, doc)
        HANDLERS[args.command](doc, args, run)
    except TruncationInsufficient as exc:
        run.error = f"{exc}; rerun with --cutoff {exc.needed}" if isinstance(exc.needed, int) else str(exc)
    except (ParseError, UsageError, OSError, ValueError) as exc:
        run.error = str(exc)
    return run


def main(argv=None):
    args = build_parser().parse_args(argv)
    run = run_command(args)
    if args.format == "json":
        sys.stdout.write(json.dumps(run.report(), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(run.text())
    return run.exit_code()


if __name__ == "__main__":
    sys.exit(main())
