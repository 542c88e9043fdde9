"""Command-line driver: ``ruled-equiv <command> ...``.

Exit status: 0 success, 1 not equivalent (or a corpus mismatch), 2 input
error, 3 budget exceeded or solver limit.  Run ``ruled-equiv --help`` for the
command list; the structured output schema is described in the README.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from collections import Counter
from importlib import resources
from pathlib import Path

from .algebra.groebner import BudgetExceeded
from .algebra.numberfield import AlgElem
from .algebra.scalars import FieldError, format_scalar
from .algebra.solve import SolverError
from .engine import Equivalence, EquivalenceSet, equivalences, verify
from .isometry import classify_isometry, involutions, kind_tally, symmetries
from .maps import AffineMap, Reparam
from .surface import InvalidSurface, RuledSurface, classify, normalize
from .surface_file import FileFormatError, format_map, parse_map, read_surface

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
METRIC_COMMANDS = {"isometries", "symmetries", "involutions"}


class InputError(ValueError):
    pass


def corpus_dir() -> Path:
    return Path(str(resources.files("ruled_equiv") / "corpus"))


def load_surface(ref: str, base: Path | None = None) -> RuledSurface:
    """A surface from a path, or from the bundled corpus by name."""
    candidates = [Path(ref)]
    if base is not None:
        candidates.insert(0, base / ref)
        candidates.insert(1, base / f"{ref}.surf")
    candidates.append(corpus_dir() / f"{ref}.surf")
    for path in candidates:
        if path.is_file():
            return read_surface(path)
    raise InputError(f"{ref}: no such surface file or corpus entry")


# ---------------------------------------------------------------------------
# scalar rendering


def _scalar(x, structured: bool) -> str:
    if isinstance(x, AlgElem) and not x.is_rational():
        a = x.to_algnum()
        if structured:
            # one whitespace-free token
            return f"root({a.poly.format('x')};{a.lo};{a.hi})={float(a):.12g}~"
        return a.format()
    return format_scalar(x)


def _vec(v, structured: bool) -> str:
    sep = " " if structured else ", "
    body = sep.join(_scalar(x, structured) for x in v)
    return body if structured else f"({body})"


def _poly_coeffs(p) -> str:
    return " ".join(format_scalar(c) for c in p.c) if p.c else "0"


# ---------------------------------------------------------------------------
# reports


def _kind_text(f: AffineMap) -> str | None:
    try:
        return classify_isometry(f).describe()
    except ValueError:
        return None


def _member_lines(i, m: Equivalence, structured: bool, metric: bool) -> list[str]:
    """``i`` is a 1-based index, or a label such as ``rep`` for a family representative."""
    f, phi = m.f, m.phi
    if structured:
        out = [f"MEMBER index={i}"]
        out += [f"A row={r + 1} {_vec(row, True)}" for r, row in enumerate(f.A)]
        out.append(f"B {_vec(f.b, True)}")
        out.append(f"PSI {_vec(phi.psi.as_tuple(), True)}")
        out.append(f"K {_scalar(phi.k, True)}")
        out.append(f"C num={_poly_coeffs(phi.c.num)} den={_poly_coeffs(phi.c.den)}")
        if m.lam is not None:
            out.append(f"LAMBDA {_scalar(m.lam, True)}")
        if metric:
            kind = _kind_text(f)
            if kind:
                out.append(f"KIND {kind.replace(', ', ',')}")
        return out
    out = [f"[{i}] A = [" + "; ".join(" ".join(_scalar(x, False) for x in row) for row in f.A) + "]"]
    out.append(f"    b = {_vec(f.b, False)}")
    out.append(f"    psi = (alpha, beta, gamma, delta) = {_vec(phi.psi.as_tuple(), False)}")
    out.append(f"    k = {_scalar(phi.k, False)}")
    out.append(f"    c(t) = {phi.c.format()}")
    if m.lam is not None:
        out.append(f"    lambda = {_scalar(m.lam, False)}")
    if metric:
        kind = _kind_text(f)
        if kind:
            out.append(f"    kind: {kind}")
    return out


def _tally_text(members, structured: bool) -> str:
    tally = kind_tally(members)
    items = sorted(tally.items())
    if structured:
        return "TALLY " + " ".join(f"{k}={v}" for k, v in items)
    return "kinds: " + (", ".join(f"{v} {k}" for k, v in items) if items else "identity only")


def report(title: str, res: EquivalenceSet, structured: bool, metric: bool) -> list[str]:
    lines = []
    count = "inf" if res.kind == "infinite" else str(res.count)
    if structured:
        lines.append(f"RESULT kind={res.kind} count={count}")
    else:
        head = {"none": "not equivalent", "finite": f"{res.count} map(s)",
                "infinite": "infinitely many maps", "not_supported": "not supported"}[res.kind]
        lines.append(f"{title}: {head}")
        if res.reason:
            lines.append(f"  reason: {res.reason}")
    for i, m in enumerate(res.members, 1):
        lines += _member_lines(i, m, structured, metric)
    for j, fam in enumerate(res.families, 1):
        rep = fam.representative or (fam.samples[0] if fam.samples else None)
        free = ",".join(fam.free) or "-"
        if structured:
            lines.append(f"FAMILY index={j} free={free} samples={len(fam.samples)}")
        else:
            lines.append(f"family {j}: free parameters {free}, {len(fam.samples)} verified sample(s)")
        if rep is not None:
            lines += _member_lines(f"rep{j}", rep, structured, metric)
    for j, red in enumerate(res.reductions, 1):
        curve = [f.format() for f in red.section_curve]
        if structured:
            lines.append(f"REDUCTION index={j} direction={_vec(red.direction, True).replace(' ', ',')} "
                         f"section={';'.join(c.replace(' ', '') for c in curve)}")
        else:
            lines.append(f"section {j}: rulings along {_vec(red.direction, False)}, "
                         f"curve ({', '.join(curve)})")
    if metric and res.members:
        lines.append(_tally_text(res.members, structured))
    if structured:
        lines.append("END")
    return lines


# ---------------------------------------------------------------------------
# commands


def _budget(args) -> int | None:
    return args.budget


def _save_maps(res: EquivalenceSet, directory: str | None):
    if not directory:
        return
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for i, m in enumerate(res.members, 1):
        (out / f"map_{i}.map").write_text(format_map(m.f, m.phi))


def cmd_classify(args, out) -> int:
    S = load_surface(args.surface)
    c = classify(normalize(S))
    if args.format == "structured":
        vertex = f" vertex={_vec(c.vertex, True).replace(' ', ',')}" if c.vertex else ""
        out(f"CLASS tag={c.tag} rank={c.rank} n={normalize(S).n}{vertex}")
        out("END")
    else:
        name = S.name or args.surface
        if c.tag == "conical":
            out(f"{name}: Conical, vertex {_vec(c.vertex, False)}")
        else:
            label = {"general": "General", "planar-directions": "Planar directions",
                     "cylindrical": "Cylindrical"}[c.tag]
            out(f"{name}: {label} (direction rank {c.rank})")
    return EXIT_OK


def _pair_command(mode: str):
    def run(args, out) -> int:
        S1, S2 = load_surface(args.surface1), load_surface(args.surface2)
        res = equivalences(S1, S2, mode, budget=_budget(args))
        title = f"{args.command} {S1.name or args.surface1} -> {S2.name or args.surface2}"
        for line in report(title, res, args.format == "structured", mode == "isometry"):
            out(line)
        _save_maps(res, args.save_maps)
        return EXIT_NONE if res.kind == "none" else EXIT_OK
    return run


def cmd_symmetries(args, out) -> int:
    S = load_surface(args.surface)
    res = symmetries(S, include_identity=not args.no_identity, budget=_budget(args))
    for line in report(f"symmetries of {S.name or args.surface}", res,
                       args.format == "structured", True):
        out(line)
    _save_maps(res, args.save_maps)
    return EXIT_NONE if res.kind == "none" else EXIT_OK


def cmd_involutions(args, out) -> int:
    S = load_surface(args.surface)
    res = involutions(S, budget=_budget(args))
    for line in report(f"involutions of {S.name or args.surface}", res,
                       args.format == "structured", True):
        out(line)
    _save_maps(res, args.save_maps)
    return EXIT_NONE if res.kind == "none" else EXIT_OK


def cmd_verify(args, out) -> int:
    S1, S2 = normalize(load_surface(args.surface1)), normalize(load_surface(args.surface2))
    d = S1.field_d() or S2.field_d()
    path = Path(args.map)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"{path}: cannot read: {e.strerror}") from None
    f, parts = parse_map(text, d, path)
    if parts is None:
        raise InputError(f"{path}: the map file needs psi (and k, c_num, c_den) to be verified")
    psi, k, c, n = parts
    if n is not None and n != S1.n:
        raise InputError(f"{path}: n = {n} but the surfaces have direction degree {S1.n}")
    ok = verify(f, Reparam(psi, k, c, S1.n), S1, S2)
    if args.format == "structured":
        out(f"VERIFY ok={'true' if ok else 'false'}")
        out("END")
    else:
        out("verified: the map carries the first surface onto the second" if ok
            else "not verified: the map does not satisfy the defining identity")
    return EXIT_OK if ok else EXIT_NONE


# ---------------------------------------------------------------------------
# corpus runner


JOB_COMMANDS = {"affine-equiv": "affine", "isometries": "isometry", "similarities": "similarity",
                "symmetries": None, "involutions": None}


def parse_jobs(text: str, path=None) -> list[dict]:
    """``<command> <surface> [<surface>] expect=<count|inf|none|not_supported> [tally=Kind:n,...]``."""
    jobs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        cmd = toks[0]
        if cmd not in JOB_COMMANDS:
            raise FileFormatError(f"unknown job command {cmd!r}", path, lineno)
        opts = dict(t.split("=", 1) for t in toks[1:] if "=" in t)
        names = [t for t in toks[1:] if "=" not in t]
        need = 1 if cmd in ("symmetries", "involutions") else 2
        if len(names) != need:
            raise FileFormatError(f"{cmd} takes {need} surface(s)", path, lineno)
        if "expect" not in opts:
            raise FileFormatError("missing expect=", path, lineno)
        tally = None
        if "tally" in opts:
            tally = Counter()
            for item in opts["tally"].split(","):
                kind, _, num = item.partition(":")
                if not num.isdigit():
                    raise FileFormatError(f"bad tally item {item!r}", path, lineno)
                tally[kind] = int(num)
        jobs.append({"command": cmd, "surfaces": names, "expect": opts["expect"], "tally": tally,
                     "line": lineno})
    return jobs


def run_job(job: dict, base: Path, budget=None):
    """(observed count string, observed tally, passed)."""
    surfaces = [load_surface(n, base) for n in job["surfaces"]]
    cmd = job["command"]
    if cmd == "symmetries":
        res = symmetries(surfaces[0], budget=budget)
    elif cmd == "involutions":
        res = involutions(surfaces[0], budget=budget)
    else:
        res = equivalences(surfaces[0], surfaces[1], JOB_COMMANDS[cmd], budget=budget)
    if res.kind == "infinite":
        got = "inf"
    elif res.kind in ("none", "not_supported"):
        got = res.kind if job["expect"] in ("none", "not_supported") else str(res.count)
    else:
        got = str(res.count)
    if job["expect"] == "0" and res.kind == "none":
        got = "0"
    tally = kind_tally(res.members) if cmd in METRIC_COMMANDS else None
    ok = got == job["expect"]
    if job["tally"] is not None:
        ok = ok and tally == job["tally"]
    return got, tally, ok


def cmd_corpus(args, out) -> int:
    base = Path(args.directory) if args.directory else corpus_dir()
    if base.is_file():
        jobs_path, base = base, base.parent
    else:
        found = sorted(base.glob("*.jobs"))
        if not found:
            raise InputError(f"{base}: no *.jobs file")
        jobs_path = found[0]
    jobs = parse_jobs(jobs_path.read_text(), jobs_path)
    structured = args.format == "structured"
    failed = 0
    for job in jobs:
        label = " ".join([job["command"]] + job["surfaces"])
        t0 = time.perf_counter()
        try:
            got, tally, ok = run_job(job, base, _budget(args))
        except (BudgetExceeded, SolverError) as e:
            got, tally, ok = f"error({type(e).__name__})", None, False
        elapsed = time.perf_counter() - t0
        failed += not ok
        tally_s = ",".join(f"{k}:{v}" for k, v in sorted(tally.items())) if tally else ""
        status = "PASS" if ok else "FAIL"
        if structured:
            out(f"JOB status={status} command={job['command']} surfaces={','.join(job['surfaces'])} "
                f"expect={job['expect']} got={got}" + (f" tally={tally_s}" if tally_s else ""))
        else:
            msg = f"{status} {label}: expected {job['expect']}, got {got}"
            if tally_s:
                msg += f" [{tally_s}]"
            if args.timings:
                msg += f" ({elapsed:.2f}s)"
            out(msg)
    if structured:
        out(f"SUMMARY jobs={len(jobs)} failed={failed}")
        out("END")
    else:
        out(f"{len(jobs) - failed}/{len(jobs)} jobs passed")
    return EXIT_OK if not failed else EXIT_NONE


# ---------------------------------------------------------------------------


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    # subcommands suppress defaults so an option given before the command survives
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"),
                        default=argparse.SUPPRESS if suppress else "text",
                        help="report style (default: text)")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS if suppress else None,
                        help="Groebner reduction-step budget (default: $RULED_EQUIV_BUDGET or 10^7)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options(suppress=True)
    p = argparse.ArgumentParser(prog="ruled-equiv", parents=[_common_options(suppress=False)],
                                description="Exact affine equivalences and symmetries of rational ruled surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="general / conical / cylindrical")
    s.add_argument("surface")
    s.set_defaults(run=cmd_classify)

    for name, mode, help_ in (("affine-equiv", "affine", "affine equivalences S1 -> S2"),
                              ("isometries", "isometry", "isometries S1 -> S2"),
                              ("similarities", "similarity", "similarities S1 -> S2")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("surface1")
        s.add_argument("surface2")
        s.add_argument("--save-maps", metavar="DIR", help="write each map as DIR/map_<i>.map")
        s.set_defaults(run=_pair_command(mode))

    s = sub.add_parser("symmetries", parents=[common], help="isometries of S onto itself")
    s.add_argument("surface")
    s.add_argument("--no-identity", action="store_true", help="omit the identity map")
    s.add_argument("--save-maps", metavar="DIR")
    s.set_defaults(run=cmd_symmetries)

    s = sub.add_parser("involutions", parents=[common], help="symmetries f with f(f(x)) = x")
    s.add_argument("surface")
    s.add_argument("--save-maps", metavar="DIR")
    s.set_defaults(run=cmd_involutions)

    s = sub.add_parser("verify", parents=[common], help="check a map file exactly")
    s.add_argument("surface1")
    s.add_argument("surface2")
    s.add_argument("map")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("corpus", parents=[common], help="run a jobs file against expected counts")
    s.add_argument("directory", nargs="?", help="directory holding *.jobs and *.surf (default: bundled)")
    s.add_argument("--timings", action="store_true", help="append wall-clock time per job")
    s.set_defaults(run=cmd_corpus)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.budget is None and os.environ.get("RULED_EQUIV_BUDGET"):
        try:
            args.budget = int(os.environ["RULED_EQUIV_BUDGET"])
        except ValueError:
            print("error: RULED_EQUIV_BUDGET must be an integer", file=stderr)
            return EXIT_INPUT

    def out(line: str):
        print(line, file=stdout)

    try:
        return args.run(args, out)
    except (InputError, FileFormatError, InvalidSurface, FieldError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    except BudgetExceeded as e:
        print(f"error: {e}", file=stderr)
        return EXIT_BUDGET
    except SolverError as e:
        print(f"error: solver limit: {e}", file=stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
