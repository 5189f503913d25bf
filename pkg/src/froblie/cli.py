"""Command-line front end.

Algebra files are JSON documents::

    {"dim": 3, "field": {"kind": "cyclotomic", "n": 3},
     "brackets": [[1, 2, [[3, "1"]]]],
     "phi": [["w", "0", "0"], ...], "h": [[...]] or null,
     "frobenius": {"n": 3, "q": 2, "r": 2}}

Indices are 1-based. A bracket ``[i, j, vec]`` also sets ``[e_j, e_i] = -vec``
unless ``[j, i, ...]`` is listed explicitly. Scalars are strings: ``"2/3"``
over the rationals, polynomials in ``w`` over cyclotomic fields, integers
over prime fields.

Exit codes: 0 ok, 1 counterexample, 2 hypothesis or configuration error,
3 parse error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field as dc_field

from . import __version__
from .errors import FroblieError, HypothesisError, InvalidSpec, ParseError
from .fdlie import StructAlgebra, check_algebra
from .frobact import (AlgebraAction, FrobeniusDescriptor, decompose, fixed_profile,
                      grading_violations, h_stability_violations as grading_h_violations,
                      index_orbits, projection_check, sylow_reduction, validate_action,
                      validate_descriptor)
from .gradcent import (build_tower, build_Z, check_centralizer_property, codimension_violations,
                       h_stability_violations, nesting_violations, orbit_closure_violations,
                       quasi_vanishing_check, tower_rows, verify_vanishing)
from .malcev import class_correspondence, equivariance_check, group_check
from .mkhsh import BoundsConfig, OrbitIdeals, build_Y, engine_class, multilinear_commutator
from .scalars import FieldSpec, make_field

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_HYPOTHESIS, EXIT_PARSE = 0, 1, 2, 3
DESK_SCALE_U = 12


# -- input -------------------------------------------------------------------------------

def _locate(text: str, needle: str):
    """Line and column (1-based) of the first occurrence of ``needle``."""
    at = text.find(needle)
    if at < 0:
        return None, None
    line = text.count("\n", 0, at) + 1
    return line, at - (text.rfind("\n", 0, at) + 1) + 1


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1)
    return doc


def parse_algebra_text(text: str):
    doc = load_document(text)

    def fail(msg, key):
        line, col = _locate(text, f'"{key}"')
        raise ParseError(msg, line, col)

    for key in ("dim", "field", "brackets", "phi", "frobenius"):
        if key not in doc:
            fail(f"missing key {key!r}", "{")
    try:
        spec = FieldSpec.from_json(doc["field"])
    except InvalidSpec as exc:
        fail(str(exc), "field")
    F = make_field(spec)
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 0:
        fail("dim must be a non-negative integer", "dim")

    def scalar(value, where):
        try:
            return F.parse(str(value))
        except (ValueError, ZeroDivisionError, FroblieError) as exc:
            fail(f"{where}: {exc}", where.split("[")[0])

    table, given = {}, set()
    for k, entry in enumerate(doc["brackets"]):
        try:
            i, j, vec = entry
            i, j = int(i) - 1, int(j) - 1
            parsed = {int(a) - 1: scalar(c, f"brackets[{k}]") for a, c in vec}
        except (TypeError, ValueError):
            fail(f"brackets[{k}] must be [i, j, [[k, scalar], ...]]", "brackets")
        if not (0 <= i < dim and 0 <= j < dim) or any(not 0 <= a < dim for a in parsed):
            fail(f"brackets[{k}] has an index outside 1..{dim}", "brackets")
        acc = table.setdefault((i, j), {})
        for a, c in parsed.items():
            acc[a] = F.add(acc.get(a, F.zero()), c)
        given.add((i, j))
    for (i, j), vec in list(table.items()):
        if (j, i) not in given:
            table[j, i] = F.scale(F.neg(F.one()), vec)
    alg = StructAlgebra(F, dim, table, doc.get("name", ""))

    def matrix(key):
        rows = doc.get(key)
        if rows is None:
            return None
        if not isinstance(rows, list) or len(rows) != dim or any(
                not isinstance(r, list) or len(r) != dim for r in rows):
            fail(f"{key} must be a {dim}x{dim} matrix", key)
        return [[scalar(a, f"{key}[{r}][{c}]") for c, a in enumerate(row)]
                for r, row in enumerate(rows)]

    fro = doc["frobenius"]
    try:
        desc = FrobeniusDescriptor(int(fro["n"]), int(fro.get("q", 1)), int(fro.get("r", 1)))
    except (KeyError, TypeError, ValueError):
        fail("frobenius needs integer n, q, r", "frobenius")
    return alg, AlgebraAction(matrix("phi"), matrix("h"), desc)


def parse_algebra(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_algebra_text(text)


def algebra_to_json(alg: StructAlgebra, action: AlgebraAction, name: str = "") -> dict:
    """Inverse of :func:`parse_algebra_text` (lists each bracket pair once)."""
    F = alg.field
    brackets = []
    for (i, j), vec in sorted(alg.table.items()):
        if i < j:
            brackets.append([i + 1, j + 1, [[k + 1, F.fmt(c)] for k, c in sorted(vec.items())]])
    mat = lambda M: None if M is None else [[F.fmt(a) for a in row] for row in M]
    doc = {"name": name or alg.name, "dim": alg.dim, "field": F.spec.to_json(),
           "brackets": brackets, "phi": mat(action.phi), "h": mat(action.h),
           "frobenius": action.descriptor.to_json()}
    return doc


def dumps_algebra(doc: dict) -> str:
    """JSON text with one top-level key per line and one matrix row per line."""
    lines = []
    for key, value in doc.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            body = ",\n  ".join(json.dumps(row) for row in value)
            lines.append(f'"{key}": [\n  {body}\n ]')
        else:
            lines.append(f"{json.dumps(key)}: {json.dumps(value)}")
    return "{\n " + ",\n ".join(lines) + "\n}\n"


# -- reports -------------------------------------------------------------------------------

@dataclass
class Report:
    """Ordered ``(section, key, value)`` rows; rendered as text or tab-separated rows."""

    rows: list = dc_field(default_factory=list)
    failed: bool = False

    def add(self, section: str, key: str, value) -> None:
        self.rows.append((section, key, _fmt(value)))

    def check(self, section: str, key: str, ok: bool, detail="") -> None:
        self.add(section, key, "ok" if ok else f"FAIL {detail}".rstrip())
        self.failed |= not ok

    def render(self, fmt: str) -> str:
        if fmt == "rows":
            return "".join(f"{s}\t{k}\t{v}\n" for s, k, v in self.rows)
        out, last = [], None
        width = max((len(k) for _, k, _ in self.rows), default=0)
        for s, k, v in self.rows:
            if s != last:
                out.append(f"[{s}]")
                last = s
            out.append(f"  {k.ljust(width)}  {v}")
        return "\n".join(out) + "\n"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


@dataclass
class RunConfig:
    command: str
    inputs: list
    f: int | None = None
    T: int | None = None
    U: int | None = None
    weight_cap: int | None = None
    seed: int = 0
    format: str = "text"
    extra: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for name in ("f", "T", "U", "weight_cap"):
            v = getattr(self, name)
            if v is not None and v < (0 if name == "f" else 1):
                raise HypothesisError(f"--{name.replace('_', '-')} must be positive")

    def echo(self, report: Report) -> None:
        report.add("config", "command", self.command)
        report.add("config", "inputs", self.inputs)
        for name in ("f", "T", "U", "weight_cap"):
            report.add("config", name, "default" if getattr(self, name) is None else getattr(self, name))
        for k in sorted(self.extra):
            v = self.extra[k]
            report.add("config", k, "default" if v is None else v)
        report.add("config", "seed", self.seed)


def _hypotheses(alg: StructAlgebra, action: AlgebraAction, allow_char_n: bool = False) -> None:
    """Characteristic must not divide ``q``; dividing ``n`` needs the Sylow route."""
    p = alg.field.characteristic
    d = action.descriptor
    if p and d.q % p == 0:
        raise HypothesisError(
            f"characteristic {p} divides q={d.q}; the complement order must be "
            "invertible in the field (hypothesis: characteristic does not divide q)")
    if p and d.n % p == 0 and not allow_char_n:
        raise HypothesisError(
            f"characteristic {p} divides n={d.n}; phi is not diagonalizable. "
            "Rerun `decompose --sylow` for the p-Sylow reduction")


# -- subcommands -------------------------------------------------------------------------------

def cmd_validate(cfg: RunConfig, report: Report) -> None:
    alg, action = parse_algebra(cfg.inputs[0])
    report.add("algebra", "dim", alg.dim)
    report.add("algebra", "field", alg.field.spec)
    bad = check_algebra(alg)
    report.check("algebra", "lie identities", not bad, "; ".join(str(v) for v in bad[:5]))
    d = action.descriptor
    verdict = validate_descriptor(d.n, d.q, d.r)
    report.check("frobenius", f"n={d.n} q={d.q} r={d.r}", bool(verdict), str(verdict))
    _hypotheses(alg, action, allow_char_n=True)
    issues = validate_action(alg, action)
    report.check("action", "automorphisms", not issues, "; ".join(issues))
    if action.h is None:
        report.add("action", "complement", "absent (kernel-only)")
    if bad or issues:
        return
    prof = fixed_profile(alg, action)
    report.add("invariants", "m", prof.m)
    report.add("invariants", "c", "n/a" if prof.c is None else prof.c)


def cmd_decompose(cfg: RunConfig, report: Report) -> None:
    alg, action = parse_algebra(cfg.inputs[0])
    sylow = cfg.extra.get("sylow", False)
    _hypotheses(alg, action, allow_char_n=sylow)
    p = alg.field.characteristic
    if sylow and p and action.descriptor.n % p == 0:
        res = sylow_reduction(alg, action, p)
        report.add("sylow", "p-part order", res.psi_order)
        report.add("sylow", "p'-part order", res.chi_order)
        report.add("sylow", "dim C_L(chi)", res.centralizer.dim)
        report.check("sylow", "dim <= m p^k", res.certificate.ok, str(res.certificate))
        report.add("sylow", "m", res.certificate.m)
        return
    decomp = decompose(alg, action)
    report.add("grading", "dims", decomp.dims())
    report.add("grading", "m", decomp.m)
    report.check("grading", "sum of dims", sum(decomp.dims()) == alg.dim)
    bad = grading_violations(alg, decomp)
    report.check("grading", "[L_s, L_t] in L_s+t", not bad, str(bad[:5]))
    report.check("grading", "projections", projection_check(alg, action, decomp))
    if action.h is not None:
        bad = grading_h_violations(alg, action, decomp)
        report.check("grading", "L_i^h = L_ri", not bad, str(bad))


def cmd_orbits(cfg: RunConfig, report: Report) -> None:
    n, q, r = cfg.extra["n"], cfg.extra["q"], cfg.extra["r"]
    verdict = validate_descriptor(n, q, r)
    report.check("frobenius", f"n={n} q={q} r={r}", bool(verdict), str(verdict))
    if not verdict:
        return
    desc = FrobeniusDescriptor(n, q, r)
    for k, orb in enumerate(index_orbits(desc)):
        report.add("orbits", f"orbit {k}", orb)


def cmd_mkhsh(cfg: RunConfig, report: Report) -> None:
    n, q, r, c = (cfg.extra[k] for k in ("n", "q", "r", "c"))
    verdict = validate_descriptor(n, q, r)
    if not verdict:
        raise HypothesisError(f"not a Frobenius descriptor: {verdict}")
    desc = FrobeniusDescriptor(n, q, r)
    slots = cfg.extra["slots"]
    cap = cfg.weight_cap or len(slots) + 1
    engine = OrbitIdeals(build_Y(desc, slots), c, cap)
    mode = cfg.extra["mode"]
    if mode == "empirical-f":
        cls = engine_class(engine)
        report.add("mkhsh", "quotient dims by weight", cls.quotient_dims)
        report.add("mkhsh", "class of K/(J+I)", cls.nilpotency_class)
        return
    x = multilinear_commutator(engine)
    report.add("mkhsh", "input", f"[{', '.join(f'y{s}_0' for s in range(1, len(slots) + 1))}]")
    ok, cert = engine.membership(x)
    report.add("mkhsh", "in J + I", ok)
    if not ok:
        report.failed = True
        return
    report.check("mkhsh", "certificate", engine.verify_certificate(cert))
    if mode == "membership":
        for line in cert.describe(engine.field):
            report.add("certificate", "piece", line)
        return
    result = engine.transform(x)
    problems = engine.structural_scan(x, result)
    report.check("transform", "structural scan", not problems, "; ".join(problems))
    report.add("transform", "terms", len(result.terms))
    for line in engine.describe(result):
        report.add("transform", "term", line)


def _bounds(cfg: RunConfig, alg, action) -> BoundsConfig:
    prof = fixed_profile(alg, action)
    c = prof.c if prof.c is not None else 1
    f = cfg.f if cfg.f is not None else 1
    bounds = BoundsConfig.resolve(action.descriptor.q, c, f, cfg.T, cfg.U)
    if cfg.U is None and bounds.U > DESK_SCALE_U:
        raise HypothesisError(f"the default U = V(T, T-1, q, c) = {bounds.U} is beyond desk "
                              "scale; pass --U explicitly")
    return bounds


def _tower(cfg: RunConfig, report: Report):
    alg, action = parse_algebra(cfg.inputs[0])
    _hypotheses(alg, action)
    issues = validate_action(alg, action)
    if issues:
        report.check("action", "automorphisms", False, "; ".join(issues))
        return None, None
    bounds = _bounds(cfg, alg, action)
    report.add("bounds", "f", bounds.f)
    report.add("bounds", "T", bounds.T)
    report.add("bounds", "U", bounds.U)
    tower = build_tower(alg, action, bounds)
    report.add("tower", "m", tower.m)
    return alg, tower


def _z_rows(tower, report: Report):
    z = build_Z(tower)
    report.add("Z", "dim", z.dim)
    report.add("Z", "codim", z.codim)
    report.add("Z", "graded dims", z.components)
    report.check("Z", "graded", z.graded)
    if z.h_invariant is None:
        report.add("Z", "h-invariant", "n/a (kernel-only)")
    else:
        report.check("Z", "h-invariant", z.h_invariant)
    report.add("Z", "lower central series dims", z.series_dims)
    report.add("Z", "nilpotency class", "not nilpotent" if z.nilpotency_class is None
               else z.nilpotency_class)
    return z


def cmd_tower(cfg: RunConfig, report: Report) -> None:
    alg, tower = _tower(cfg, report)
    if tower is None:
        return
    rng = random.Random(cfg.seed)
    for t, j, dim, codim, reps in tower_rows(tower):
        report.add("levels", f"t={t} j={j}", f"dim {dim} codim {codim} reps {reps}")
    report.add("tower", "representatives per level", [lev.rep_count() for lev in tower.levels])
    report.check("tower", "nesting", not nesting_violations(tower))
    report.check("tower", "h-stability", not h_stability_violations(tower))
    report.check("tower", "codimension ledger", not codimension_violations(tower))
    report.check("tower", "orbit closure", not orbit_closure_violations(tower))
    for t in range(1, tower.T + 1):
        res = check_centralizer_property(tower, t, rng=rng)
        mode = "exhaustive" if res.exhaustive else "sampled"
        report.check("tower", f"centralizer property t={t} ({mode}, {res.checked})", res.ok,
                     str(res.counterexample))
    res = quasi_vanishing_check(tower, 200, rng)
    report.check("tower", f"quasirepresentative vanishing ({res.checked} samples)", res.ok,
                 str(res.counterexample))
    _z_rows(tower, report)


def cmd_verify_z(cfg: RunConfig, report: Report) -> None:
    alg, tower = _tower(cfg, report)
    if tower is None:
        return
    _z_rows(tower, report)
    u_eff = cfg.extra.get("u_effective") or tower.U
    res = verify_vanishing(tower, u_eff, rng=random.Random(cfg.seed))
    mode = "exhaustive" if res.exhaustive else "sampled"
    report.check("vanishing", f"weight {u_eff} commutators ({mode}, {res.checked})", res.ok,
                 str(res.counterexample))


def cmd_bch_check(cfg: RunConfig, report: Report) -> None:
    alg, action = parse_algebra(cfg.inputs[0])
    samples = cfg.extra.get("samples", 100)
    rng = random.Random(cfg.seed)
    res = group_check(alg, samples, rng)
    report.check("group", f"laws on {res.checked} samples", res.ok, str(res.violation))
    comp = class_correspondence(alg.whole(), alg, rng=rng)
    report.add("group", "algebra class", comp.algebra_class)
    report.add("group", "group class", comp.group_class)
    report.check("group", "classes agree", comp.equal)
    for name, M in (("phi", action.phi), ("h", action.h)):
        if M is not None:
            res = equivariance_check(alg, M, 50, rng)
            report.check("group", f"{name}-equivariance", res.ok, str(res.violation))


COMMANDS = {"validate": cmd_validate, "decompose": cmd_decompose, "orbits": cmd_orbits,
            "mkhsh": cmd_mkhsh, "tower": cmd_tower, "verify-z": cmd_verify_z,
            "bch-check": cmd_bch_check}


def run(cfg: RunConfig) -> tuple:
    """Execute one subcommand; returns ``(exit status, report text)``."""
    report = Report()
    cfg.echo(report)
    try:
        COMMANDS[cfg.command](cfg, report)
    except ParseError as exc:
        report.add("error", "parse", exc)
        return EXIT_PARSE, report.render(cfg.format)
    except HypothesisError as exc:
        report.add("error", "hypothesis", exc)
        return EXIT_HYPOTHESIS, report.render(cfg.format)
    except FroblieError as exc:
        report.add("error", type(exc).__name__, f"{cfg.command}: {exc}")
        return EXIT_HYPOTHESIS, report.render(cfg.format)
    status = EXIT_COUNTEREXAMPLE if report.failed else EXIT_OK
    report.add("result", "status", "counterexample" if report.failed else "ok")
    return status, report.render(cfg.format)


def _slots(text: str) -> list:
    try:
        return [int(s) for s in text.split(",") if s]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"slots must be comma-separated integers: {text}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--f", type=int, help="the function value f(q, c); T defaults to f + 1")
    common.add_argument("--T", type=int, help="number of centralizer levels")
    common.add_argument("--U", type=int, help="maximal commutator weight for the tower")
    common.add_argument("--weight-cap", type=int, help="free Lie algebra truncation")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--format", choices=("text", "rows"), default="text")

    parser = argparse.ArgumentParser(prog="froblie", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("validate", "bch-check"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("path")
        if name == "bch-check":
            p.add_argument("--samples", type=int, default=100)
    p = sub.add_parser("decompose", parents=[common])
    p.add_argument("path")
    p.add_argument("--sylow", action="store_true",
                   help="run the p-Sylow reduction when the characteristic divides n")
    p = sub.add_parser("orbits", parents=[common])
    for k in ("n", "q", "r"):
        p.add_argument(k, type=int)
    p = sub.add_parser("mkhsh", parents=[common])
    for k in ("n", "q", "r"):
        p.add_argument(f"--{k}", type=int, required=True)
    p.add_argument("--c", type=int, default=1, help="class bound for C_K(H)")
    p.add_argument("--slots", type=_slots, default=[1, 1], help="indices of the orbit slots")
    p.add_argument("--mode", choices=("membership", "transform", "empirical-f"),
                   default="transform")
    for name in ("tower", "verify-z"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("path")
        if name == "verify-z":
            p.add_argument("--U-effective", type=int, dest="u_effective")
    return parser


def config_from_args(args) -> RunConfig:
    base = {"command", "path", "f", "T", "U", "weight_cap", "seed", "format"}
    extra = {k: v for k, v in vars(args).items() if k not in base}
    inputs = [args.path] if getattr(args, "path", None) else []
    return RunConfig(args.command, inputs, args.f, args.T, args.U, args.weight_cap,
                     args.seed, args.format, extra)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    status, text = run(cfg)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
