"""Command-line front end.

Exit status: 0 when every asserted check passes, 1 when a check fails or a
computation runs out of window, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .catalog import (
    ALGEBRAS,
    GLINF_ACTIONS,
    build_algebra,
    default_character,
    oracle_diff,
    pdiff_translation_modes,
)
from .conformal import (
    AXIOMS,
    GammaConformalAlgebra,
    SamplePlan,
    alpha_product,
    check_conformal_axiom,
    parse_gen,
    parse_mod_elem,
    product_support,
    render_mod_elem,
)
from .dist import WindowError, check_locality, decompose, field_bracket
from .modes import (
    LITERAL_TABLES,
    LiteralDomainError,
    ModeAlgebra,
    derived_mode_algebra,
    literal_mode_algebra,
    parse_mode_elem,
    render_mode_elem,
    render_mode_key,
)
from .scalar import ONE, ScalarError, parse_scalar
from .suite import run_suite

__all__ = ["Command", "UsageError", "parse_cli", "emit_table", "table_from_json", "main"]

SUBCOMMANDS = ("list", "axioms", "product", "bracket", "locality", "table", "oracle-diff", "suite")
ORACLES = ("qtorus", "pdiff", "glinf_trunc(M)")
_CALL_RE = re.compile(r"(gc1|vector_sin)\((.+)\)$")


class UsageError(ValueError):
    pass


@dataclass
class Command:
    subcommand: str
    algebra: str | None = None
    group: str | None = None
    N: int | None = None
    q: tuple | None = None
    range: int = 4
    fmt: str = "text"
    out: str | None = None
    args: list = field(default_factory=list)
    axioms: tuple = AXIOMS
    window: int = 12
    reading: str = "plus"
    default: bool = False
    negative_control: bool = False
    suite_algebras: list = field(default_factory=list)


def _known_names():
    return list(ALGEBRAS) + [t for t in LITERAL_TABLES if t not in ALGEBRAS] + ["pdiff_plus", "pdiff_minus"]


def _parser():
    p = argparse.ArgumentParser(prog="gammaconf", description="Gamma-conformal algebras: checks and tables")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, algebra=True):
        if algebra:
            sp.add_argument("algebra")
        sp.add_argument("--group", help="group for gc1: Z, Z^2, Z/4, Z2xZ, Dinf")
        sp.add_argument("--N", type=int, help="rank for vector_sin")
        sp.add_argument("--q", help="character values, comma separated (default: symbolic q)")
        sp.add_argument("--range", type=int, help="sample box half-width (env GC_RANGE)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write output to this file (suite: directory)")

    common(sub.add_parser("list", help="catalog names, tables and oracles"), algebra=False)
    sp = sub.add_parser("axioms", help="check the conformal axioms on the sample box")
    common(sp)
    sp.add_argument("--axiom", action="append", choices=AXIOMS)
    sp = sub.add_parser("product", help="alpha-product a_(alpha) b")
    common(sp)
    sp.add_argument("a")
    sp.add_argument("alpha")
    sp.add_argument("b")
    sp = sub.add_parser("bracket", help="mode bracket [x, y]")
    common(sp)
    sp.add_argument("x")
    sp.add_argument("y")
    sp = sub.add_parser("locality", help="field bracket, locality and pole decomposition")
    common(sp)
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--window", type=int, default=12)
    sp = sub.add_parser("table", help="structure constants on the sample box")
    common(sp)
    sp = sub.add_parser("oracle-diff", help="compare against an independent oracle")
    common(sp)
    sp.add_argument("oracle", help="qtorus, pdiff or glinf_trunc(M)")
    sp.add_argument("--reading", choices=("plus", "minus"), default="plus",
                    help="sign of the second delta's shift for the pdiff mode table")
    sp = sub.add_parser("suite", help="run the acceptance checks")
    common(sp, algebra=False)
    sp.add_argument("--default", action="store_true", help="all checks on the default box")
    sp.add_argument("--algebra", action="append", default=[], help="restrict to one catalog entry or table")
    sp.add_argument("--negative-control", action="store_true", help="corrupt the sin table; must exit 1")
    return p


def parse_cli(argv) -> Command:
    """Parse ``argv`` into a :class:`Command`; raises :class:`UsageError`."""
    p = _parser()
    try:
        ns = p.parse_args(argv)
    except SystemExit as e:
        if e.code in (0, None):  # --help, --version
            raise
        raise UsageError("invalid arguments") from e
    rng = ns.range
    if rng is None:
        env = os.environ.get("GC_RANGE")
        rng = int(env) if env else 4
    if rng < 0:
        raise UsageError("range must be non-negative")
    cmd = Command(ns.subcommand, getattr(ns, "algebra", None), ns.group, ns.N, None, rng, ns.format, ns.out)
    if ns.q:
        try:
            cmd.q = tuple(parse_scalar(v) for v in ns.q.split(","))
        except (ScalarError, ValueError, ZeroDivisionError) as e:
            raise UsageError(f"malformed scalar in --q: {e}") from None
        if any(not v for v in cmd.q):
            raise UsageError("character values must be nonzero")
    if cmd.subcommand == "suite":
        cmd.default = ns.default
        cmd.negative_control = ns.negative_control
        cmd.suite_algebras = ns.algebra
        cmd.algebra = None
        for name in ns.algebra:
            _check_name(_split_call(name)[0])
        return cmd
    if cmd.algebra is not None:
        cmd.algebra, group, N = _split_call(cmd.algebra)
        cmd.group = cmd.group or group
        cmd.N = cmd.N if cmd.N is not None else N
        _check_name(cmd.algebra)
    if cmd.subcommand == "axioms":
        cmd.axioms = tuple(ns.axiom) if ns.axiom else AXIOMS
    elif cmd.subcommand == "product":
        cmd.args = [ns.a, ns.alpha, ns.b]
    elif cmd.subcommand == "bracket":
        cmd.args = [ns.x, ns.y]
    elif cmd.subcommand == "locality":
        cmd.args = [ns.a, ns.b]
        cmd.window = ns.window
    elif cmd.subcommand == "oracle-diff":
        cmd.args = [ns.oracle]
        cmd.reading = ns.reading
    return cmd


def _split_call(name):
    m = _CALL_RE.fullmatch(name)
    if not m:
        return name, None, None
    if m.group(1) == "gc1":
        return "gc1", m.group(2), None
    return "vector_sin", None, int(m.group(2))


def _check_name(name):
    if name not in _known_names():
        raise UsageError(f"unknown algebra {name!r}; known: {', '.join(_known_names())}")


# -- building the objects a command talks about ------------------------------


def _conformal(cmd: Command) -> GammaConformalAlgebra:
    if cmd.algebra not in ALGEBRAS:
        raise UsageError(f"{cmd.algebra} is a literal table, not a conformal algebra")
    try:
        return build_algebra(cmd.algebra, group=cmd.group, N=cmd.N)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _character(R: GammaConformalAlgebra, cmd: Command):
    if cmd.q is None:
        return default_character(R)
    vals = list(cmd.q)
    G = R.spec
    if G.has_flip and len(vals) == G.rank:
        vals = [-ONE] + vals  # the flip goes to -1 unless given
    try:
        return default_character(R, vals)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _mode_algebra(cmd: Command) -> ModeAlgebra:
    if cmd.algebra in ALGEBRAS:
        R = _conformal(cmd)
        return derived_mode_algebra(R, _character(R, cmd))
    if cmd.algebra in ("pdiff_plus", "pdiff_minus"):
        return pdiff_translation_modes(cmd.algebra.split("_")[1])
    qbar = cmd.q if cmd.algebra == "vector_sin" else None
    return literal_mode_algebra(cmd.algebra, qbar)


# -- tables -------------------------------------------------------------------


def _term_list(v, var):
    out = []
    for (g, n), c in v.sorted_items():
        out.append({"family": g.family, "index": list(g.index), "mode": n, "coefficient": c.render(var)})
    return out


def _sort_key(k):
    g, n = k
    return (g.family, g.index, n)


def emit_table(cmd: Command) -> dict:
    """Structure constants on the sample box as a deterministic document."""
    A = _mode_algebra(cmd)
    plan = SamplePlan(cmd.range, cmd.range)
    keys = sorted(A.basis(plan), key=_sort_key)
    entries = []
    undefined = 0
    for x in keys:
        for y in keys:
            try:
                v = A.bracket_basis(x, y)
            except LiteralDomainError:
                undefined += 1
                continue
            if v:
                entries.append({"left": render_mode_key(x), "right": render_mode_key(y),
                                "result": _term_list(v, A.var)})
    char = getattr(A, "character", None)
    doc = {
        "header": {
            "algebra": A.name,
            "provenance": A.provenance,
            "character": char.render() if char is not None else None,
            "var": A.var,
            "ranges": {"gen_bound": plan.gen_bound, "mode_bound": plan.group_bound},
            "tool_version": __version__,
            "schema": "gammaconf.table/1",
        },
        "entries": entries,
        "discrepancies": None,
    }
    if undefined:
        doc["header"]["outside_formula_domain"] = undefined
    return doc


def table_from_json(text: str) -> dict:
    """Parse a table document, turning coefficient strings back into Scalars."""
    doc = json.loads(text)
    var = doc["header"].get("var", "q")
    for e in doc["entries"]:
        for t in e["result"]:
            t["coefficient"] = parse_scalar(t["coefficient"], var)
    return doc


def _render_table_text(doc):
    h = doc["header"]
    lines = [f"# {h['algebra']}  character {h['character']}  box {h['ranges']}"]
    for e in doc["entries"]:
        terms = " + ".join(f"({t['coefficient']})*{t['family']}[{','.join(map(str, t['index']))};{t['mode']}]"
                           for t in e["result"])
        lines.append(f"[{e['left']}, {e['right']}] = {terms}")
    d = doc.get("discrepancies")
    if d is not None:
        lines.append(f"# {d['name']}: {d['compared']} compared, {len(d['records'])} differ")
        for r in d["records"][:50]:
            lines.append(f"  {r['pair']}: {r['lhs']}  vs  {r['rhs']}")
    return "\n".join(lines)


# -- subcommands ------------------------------------------------------------------


def _emit(cmd: Command, doc, text):
    out = json.dumps(doc, indent=2, sort_keys=True) if cmd.fmt == "json" else text
    if cmd.out:
        Path(cmd.out).write_text(out + "\n", encoding="utf-8")
    else:
        print(out)


def _cmd_list(cmd):
    doc = {
        "algebras": list(ALGEBRAS),
        "parameters": {"gc1": "--group (Z, Z^N, Z/M, Z2xZ, Dinf)", "vector_sin": "--N"},
        "literal_tables": list(LITERAL_TABLES) + ["pdiff_plus", "pdiff_minus"],
        "oracles": list(ORACLES),
        "axioms": list(AXIOMS),
        "gl_inf_actions": list(GLINF_ACTIONS),
    }
    text = "\n".join(f"{k}: {', '.join(v) if isinstance(v, list) else v}" for k, v in doc.items())
    _emit(cmd, doc, text)
    return 0


def _cmd_axioms(cmd):
    R = _conformal(cmd)
    plan = SamplePlan(cmd.range, cmd.range)
    reps = [check_conformal_axiom(R, ax, plan) for ax in cmd.axioms]
    _emit(cmd, {"algebra": R.name, "reports": [r.to_dict() for r in reps]},
          "\n".join(r.summary() for r in reps))
    return 0 if all(r.ok for r in reps) else 1


def _cmd_product(cmd):
    R = _conformal(cmd)
    G = R.spec
    try:
        a = parse_mod_elem(cmd.args[0], G)
        alpha = G.parse_elem(cmd.args[1])
        b = parse_mod_elem(cmd.args[2], G)
        p = alpha_product(R, R.canon(a), alpha, R.canon(b))
    except (ValueError, ScalarError, ZeroDivisionError) as e:
        raise UsageError(str(e)) from None
    supp = sorted(g.render() for g in product_support(R, a, b))
    _emit(cmd, {"algebra": R.name, "a": cmd.args[0], "alpha": alpha.render(), "b": cmd.args[2],
                "product": render_mod_elem(p), "support": supp}, render_mod_elem(p))
    return 0


def _cmd_bracket(cmd):
    A = _mode_algebra(cmd)
    try:
        x = parse_mode_elem(cmd.args[0], A.var)
        y = parse_mode_elem(cmd.args[1], A.var)
    except (ValueError, ScalarError, ZeroDivisionError) as e:
        raise UsageError(str(e)) from None
    v = A.bracket(x, y)
    _emit(cmd, {"algebra": A.name, "x": cmd.args[0], "y": cmd.args[1],
                "result": render_mode_elem(v, A.var), "terms": _term_list(v, A.var)},
          render_mode_elem(v, A.var))
    return 0


def _cmd_locality(cmd):
    R = _conformal(cmd)
    chi = _character(R, cmd)
    A = derived_mode_algebra(R, chi)
    G = R.spec
    try:
        ga, gb = parse_gen(cmd.args[0]), parse_gen(cmd.args[1])
        for g in (ga, gb):
            if not R.is_generator(g):
                raise ValueError(f"{g.render()} is not a generator of {R.name}")
    except ValueError as e:
        raise UsageError(str(e)) from None
    a, b = R.canon(parse_mod_elem(cmd.args[0], G)), R.canon(parse_mod_elem(cmd.args[1], G))
    supp = sorted(g for g in product_support(R, a, b) if alpha_product(R, a, g, b))
    poles = []
    for g in supp:
        if chi(g) not in poles:
            poles.append(chi(g))
    d = field_bracket(A, ga, gb, cmd.window)
    doc = {"algebra": R.name, "character": chi.render(), "a": cmd.args[0], "b": cmd.args[1],
           "window": cmd.window, "exact_radius": d.radius, "support": [g.render() for g in supp],
           "poles": [s.render() for s in poles]}
    lines = [f"# support {doc['support']} -> poles {doc['poles']}", d.dump(A.var)]
    status = 0
    if poles:
        ok, witness = check_locality(d, poles)
        doc["local"] = ok
        lines.append(f"# local: {ok}" + ("" if ok else f", witness at {witness[0]}"))
        status = 0 if ok else 1
        dec = decompose(d, poles)
        doc["parts_radius"] = dec.parts_radius
        doc["parts"] = {}
        lines.append(f"# parts exact for |N| <= {dec.parts_radius}")
        for s, c in dec.parts.items():
            row = {str(N): render_mode_elem(v, A.var) for N, v in sorted(c.items())}
            doc["parts"][s.render()] = row
            lines.append(f"# part at {s.render()}:")
            lines.extend(f"#   {N} -> {v}" for N, v in row.items())
        zero, key = dec.remainder.is_zero_on_valid()
        doc["remainder_zero"] = zero
        lines.append(f"# remainder zero on |m|,|n| <= {dec.remainder.radius}: {zero}")
        status = status or (0 if zero else 1)
    else:
        zero = d.is_zero_on_valid()[0]
        doc["local"] = zero
        lines.append(f"# empty support; bracket vanishes: {zero}")
        status = 0 if zero else 1
    _emit(cmd, doc, "\n".join(lines))
    return status


def _cmd_table(cmd):
    doc = emit_table(cmd)
    _emit(cmd, doc, _render_table_text(doc))
    return 0


def _cmd_oracle_diff(cmd):
    oracle = cmd.args[0]
    if not (oracle in ("qtorus", "pdiff") or re.fullmatch(r"glinf_trunc\(\d+\)", oracle)):
        raise UsageError(f"unknown oracle {oracle!r}; known: {', '.join(ORACLES)}")
    plan = SamplePlan(cmd.range, cmd.range)
    if oracle == "pdiff":
        if cmd.algebra not in ("sin", "pdiff_plus", "pdiff_minus"):
            raise UsageError("the pdiff oracle compares the translation-mode table (sin, pdiff_plus, pdiff_minus)")
        reading = cmd.algebra.split("_")[1] if cmd.algebra.startswith("pdiff_") else cmd.reading
        subject = pdiff_translation_modes(reading)
        table_cmd = Command("table", f"pdiff_{reading}", range=cmd.range)
    elif oracle == "qtorus":
        if cmd.algebra != "sin":
            raise UsageError("the qtorus oracle compares the sin mode algebra")
        R = _conformal(cmd)
        subject = derived_mode_algebra(R, _character(R, cmd))
        table_cmd = cmd
    else:
        subject = _conformal(cmd)
        table_cmd = cmd
    try:
        rep = oracle_diff(subject, oracle, cmd.range, plan)
    except ValueError as e:
        raise UsageError(str(e)) from None
    doc = emit_table(table_cmd)
    doc["discrepancies"] = rep.to_dict()
    _emit(cmd, doc, _render_table_text(doc))
    return 0 if rep.empty else 1


def _cmd_suite(cmd):
    out = Path(cmd.out or "gammaconf-reports")
    plan = SamplePlan(cmd.range, cmd.range)
    return run_suite(out, labels=cmd.suite_algebras or None, negative_control=cmd.negative_control, plan=plan)


_DISPATCH = {
    "list": _cmd_list,
    "axioms": _cmd_axioms,
    "product": _cmd_product,
    "bracket": _cmd_bracket,
    "locality": _cmd_locality,
    "table": _cmd_table,
    "oracle-diff": _cmd_oracle_diff,
    "suite": _cmd_suite,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cmd = parse_cli(argv)
        return _DISPATCH[cmd.subcommand](cmd)
    except UsageError as e:
        if str(e) != "invalid arguments":
            print(f"gammaconf: error: {e}", file=sys.stderr)
        return 2
    except WindowError as e:
        print(f"gammaconf: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
