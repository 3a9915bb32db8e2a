"""Command-line interface.

Exit codes: 0 all required checks pass, 1 semantic failure (a check fails or a
construction's hypotheses do not hold), 2 input error (unreadable or malformed
documents, bad arguments).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .constructions import (
    OPPOSITE_VARIANTS,
    coboundary_from_r,
    cocommutator_hom_lie_coalgebra,
    commutator_hom_lie,
    derived,
    dualize,
    hom_lie_of,
    opposite,
    perturb,
    twist_by_morphism,
)
from .errors import (
    ConstructionError,
    DocumentError,
    HombiError,
    InternalConsistencyError,
    QuiverError,
    RationalParseError,
)
from .io import dumps, format_structure, load_r, load_structure, structure_to_json
from .linalg import LinMap, fzeros, parse_rational, xeinsum
from .quiver import parse_quiver, parse_quiver_morphism, path_bialgebra, quiver_twist
from .rmatrix import (
    assoc_yb_coords,
    balanceator_coords,
    classical_yb_coords,
    commutator_constants,
    star_delta,
)
from .structures import (
    AxiomResult,
    EpsHomBialgebra,
    HomAlgebra,
    HomCoalgebra,
    Report,
    Structure,
    compare,
    verify_structure,
)
from .suites import SUITE_NAMES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad arguments or unreadable files (exit 2)."""


# ---------------------------------------------------------------- checks beyond the axioms


def r_checks(S: Structure) -> list[AxiomResult]:
    """AHYBE/CHYBE/balanceator results. Informational unless S is flagged quasi-triangular."""
    out: list[AxiomResult] = []
    qt = S.quasi_triangular
    if isinstance(S, EpsHomBialgebra):
        bal = balanceator_coords(S)
        out.append(compare("balanceator symmetric", bal, np.einsum("jiab->ijab", bal), 2, required=False))
    if S.r is None:
        return out
    r = S.r.coords
    out.append(compare("r alpha-invariant", xeinsum("ai,bj,ij->ab", S.A, S.A, r), r, 0, required=qt))
    if isinstance(S, EpsHomBialgebra):
        out.append(compare("coboundary (Delta = [-, r]_*)", S.delta, star_delta(S.mu, S.A, r), 1, required=qt))
    lie = S.kind.startswith("hom_lie")
    if not lie:
        out.append(compare("AHYBE A(r) = 0", assoc_yb_coords(S.mu, S.A, r), 0, 0, required=qt))
    bracket = S.mu if lie else commutator_constants(S.mu)
    out.append(compare("CHYBE C(r) = 0", classical_yb_coords(bracket, S.A, r), 0, 0, required=qt and lie))
    return out


def full_report(S: Structure, only: list[str] | None = None) -> Report:
    rep = verify_structure(S)
    if S.has_mu:
        for res in r_checks(S):
            rep.add(res)
    if only:
        known = {r.name for r in rep}
        unknown = [n for n in only if n not in known]
        if unknown:
            raise InputError(f"unknown check(s): {', '.join(unknown)}; available: {', '.join(sorted(known))}")
        rep.results = [r for r in rep if r.name in only]
    return rep


# ---------------------------------------------------------------- output helpers


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report_text(S: Structure, rep: Report, title: str) -> str:
    head = f"{title} {S.name or '(unnamed)'} [{S.kind}]: {'ok' if rep.ok else 'FAILED'}"
    return "\n".join([head] + ["  " + line for line in rep.lines()]) + "\n"


def _report_json(S: Structure, rep: Report) -> str:
    doc = {"structure": S.name, "kind": S.kind}
    doc.update(rep.to_json())
    return dumps(doc)


def _load(path: str) -> Structure:
    try:
        return load_structure(path)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _load_matrix(path: str, S: Structure) -> tuple[LinMap, str]:
    """A morphism document: {"matrix": [[...]], optional "basis", optional "label"}."""
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise DocumentError(f"{path}: a morphism document is an object with a 'matrix' field")
    if "basis" in doc and list(doc["basis"]) != list(S.space.labels):
        raise DocumentError(f"{path}: basis differs from the structure's basis")
    n = S.dim
    rows = doc["matrix"]
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(row, list) or len(row) != n for row in rows):
        raise DocumentError(f"{path}: matrix must be {n}×{n}")
    m = fzeros((n, n))
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            m[i, j] = parse_rational(v)
    label = doc.get("label", Path(path).stem)
    return LinMap(S.space, m), str(label)


# ---------------------------------------------------------------- commands


def cmd_verify(args) -> int:
    S = _load(args.file)
    rep = full_report(S, args.check)
    _emit(_report_json(S, rep) if args.format == "json" else _report_text(S, rep, "verify"), args.out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_report(args) -> int:
    S = _load(args.file)
    base = full_report(S)
    if not base.ok:
        sys.stderr.write("input structure is not valid; identity suites not run\n")
        _emit(_report_json(S, base) if args.format == "json" else _report_text(S, base, "verify"), args.out)
        return EXIT_FAIL
    rep = run_suites(S, args.suite or SUITE_NAMES)
    _emit(_report_json(S, rep) if args.format == "json" else _report_text(S, rep, "report"), args.out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _need(S: Structure, cls, what: str) -> None:
    if not isinstance(S, cls):
        raise ConstructionError(f"{what} needs a {cls.kind} input, got {S.kind}")


def _construct(args) -> Structure:
    sub = args.construction
    if sub == "quiver-build":
        return _quiver_structure(args)
    S = _load(args.file)
    if sub == "twist":
        _need(S, EpsHomBialgebra, "twist")
        f, label = _load_matrix(args.morphism, S)
        r = load_r(args.r, S.space) if args.r else None
        return twist_by_morphism(S, f, r=r, label=args.label or label)
    if sub == "derive":
        if args.n < 0:
            raise InputError("--n must be non-negative")
        return derived(S, args.n)
    if sub == "dual":
        _need(S, EpsHomBialgebra, "dual")
        return dualize(S)
    if sub == "opposite":
        _need(S, EpsHomBialgebra, "opposite")
        return opposite(S, args.variant)
    if sub == "coboundary-from-r":
        if not S.has_mu or S.kind.startswith("hom_lie"):
            raise ConstructionError(f"coboundary-from-r needs an associative input, got {S.kind}")
        if args.r:
            r = load_r(args.r, S.space)
        elif S.r is not None:
            r = S.r
        else:
            raise InputError("no r: pass --r or include 'r' in the document")
        return coboundary_from_r(S, r)
    if sub == "perturb":
        _need(S, EpsHomBialgebra, "perturb")
        outcome = perturb(S, load_r(args.r, S.space))
        if not outcome.condition_holds:
            lab = S.space.labels[outcome.witness]
            raise ConstructionError(f"perturbation condition fails at basis vector {lab}", witness=outcome.witness)
        return outcome.result
    if sub == "hom-lie":
        if isinstance(S, EpsHomBialgebra):
            return hom_lie_of(S)
        if isinstance(S, HomAlgebra):
            return commutator_hom_lie(S)
        if isinstance(S, HomCoalgebra):
            return cocommutator_hom_lie_coalgebra(S)
        raise ConstructionError(f"hom-lie needs an associative input, got {S.kind}")
    raise InputError(f"unknown construction {sub!r}")


def _quiver_structure(args) -> Structure:
    Q = parse_quiver(_read_text(args.quiver))
    name = args.name if args.name is not None else Path(args.quiver).stem
    if args.morphism:
        m = parse_quiver_morphism(_read_text(args.morphism), Q)
        return quiver_twist(Q, m, label=Path(args.morphism).stem).replace(name=name)
    return path_bialgebra(Q, name)


def _emit_structure(S: Structure, args) -> int:
    rep = full_report(S)
    if not rep.ok:
        sys.stderr.write("refusing to emit a structure that fails its checks\n")
        sys.stderr.write(_report_text(S, rep, "verify"))
        return EXIT_FAIL
    doc = structure_to_json(S)
    if args.out:
        Path(args.out).write_text(doc, encoding="utf-8")
    if args.format == "json":
        if not args.out:
            sys.stdout.write(doc)
        else:
            sys.stdout.write(_report_json(S, rep))
    else:
        sys.stdout.write("\n".join(format_structure(S)) + "\n")
        sys.stdout.write(_report_text(S, rep, "verify"))
    return EXIT_OK


def cmd_construct(args) -> int:
    return _emit_structure(_construct(args), args)


def cmd_quiver(args) -> int:
    return _emit_structure(_quiver_structure(args), args)


# ---------------------------------------------------------------- argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report (verify/report) or the document (construct) here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hombi", description="Hom-associative and Hom-Lie (co/bi)algebra toolkit")
    parser.add_argument("--version", action="version", version=f"hombi {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check every axiom of a structure document")
    p.add_argument("file")
    p.add_argument("--check", action="append", help="restrict to the named check (repeatable)")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="run the identity suites on a structure document")
    p.add_argument("file")
    p.add_argument("--suite", action="append", choices=SUITE_NAMES, help="restrict to the named suite (repeatable)")
    _common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("construct", help="build a new structure")
    csub = p.add_subparsers(dest="construction", required=True)
    c = csub.add_parser("twist", help="A_f for an eps-bialgebra endomorphism f")
    c.add_argument("file")
    c.add_argument("--morphism", required=True, help='JSON {"matrix": [[...]]}, columns are images')
    c.add_argument("--r", help="r document; must be fixed by f⊗f")
    c.add_argument("--label")
    c = csub.add_parser("derive", help="the n-th derived structure")
    c.add_argument("file")
    c.add_argument("--n", type=int, required=True)
    c = csub.add_parser("dual", help="the dual eps-Hom-bialgebra")
    c.add_argument("file")
    c = csub.add_parser("opposite", help="one of the opposite eps-Hom-bialgebras")
    c.add_argument("file")
    c.add_argument("--variant", choices=OPPOSITE_VARIANTS, required=True)
    c = csub.add_parser("coboundary-from-r", help="Delta = [-, r]_*")
    c.add_argument("file")
    c.add_argument("--r", help="r document (defaults to the input's r)")
    c = csub.add_parser("perturb", help="Delta + [-, r]_*")
    c.add_argument("file")
    c.add_argument("--r", required=True)
    c = csub.add_parser("hom-lie", help="commutator bracket and cocommutator cobracket")
    c.add_argument("file")
    c = csub.add_parser("quiver-build", help="path eps-bialgebra of a quiver")
    c.add_argument("quiver")
    c.add_argument("--morphism")
    c.add_argument("--name")
    for c in csub.choices.values():
        _common(c)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("quiver", help="quiver tools")
    qsub = p.add_subparsers(dest="quiver_command", required=True)
    q = qsub.add_parser("build", help="path eps-bialgebra of a quiver, optionally twisted by a quiver morphism")
    q.add_argument("quiver")
    q.add_argument("--morphism")
    q.add_argument("--name")
    _common(q)
    p.set_defaults(func=cmd_quiver)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DocumentError, RationalParseError, QuiverError) as e:
        sys.stderr.write(f"input error: {e}\n")
        return EXIT_INPUT
    except OSError as e:
        sys.stderr.write(f"input error: {e.filename}: {e.strerror}\n")
        return EXIT_INPUT
    except ConstructionError as e:
        sys.stderr.write(f"construction failed: {e}\n")
        if e.report is not None:
            sys.stderr.write("\n".join("  " + line for line in e.report.lines()) + "\n")
        return EXIT_FAIL
    except InternalConsistencyError as e:
        sys.stderr.write(f"internal consistency failure: {e}\n")
        return EXIT_FAIL
    except HombiError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
