"""``gt``: command-line front end emitting JSON documents.

Exit status is 0 on success, 1 for malformed input and 2 for domain errors;
errors are reported as ``{"v": 1, "error": code, "message": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import completion as C
from .bialgebra import LoopCombo, goldman_bracket, turaev_cobracket, unframed_cobracket
from .checks import run_checks
from .errors import GTError, ParseError
from .framings import (
    FreeGroupAuto,
    framing_cocycle,
    orbit_invariants,
    orbit_search,
    point_push_automorphism,
    pushforward_framing,
    quasi_algebraic_framing_exists,
    same_mcg_orbit,
)
from .loops import Framing, local_degrees, rotation_number
from .surface import build_surface


def load_schema(command: str) -> dict:
    """JSON schema shipped for the output of ``command`` (or ``"error"``)."""
    return json.loads(resources.files("goldman_turaev").joinpath("schemas", f"{command}.json").read_text())


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _text(value: str) -> str:
    if value.startswith("@"):
        try:
            return Path(value[1:]).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {value[1:]}: {exc}") from None
    # bare paths to JSON documents are accepted too
    if value.endswith(".json") and Path(value).is_file():
        return Path(value).read_text()
    return value


def _json_or_word(value: str):
    raw = _text(value).strip()
    if raw[:1] in "[{":
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from None
    return raw


def _framing(S, value):
    if value is None:
        return Framing(S)
    doc = _json_or_word(value)
    if not isinstance(doc, dict):
        raise ParseError('framing must be a JSON object like {"t": {"x1": 0}}')
    return Framing.from_json(S, doc)


def _combo(S, value) -> LoopCombo:
    return LoopCombo.from_json(S, _json_or_word(value))


def _auto(S, args) -> FreeGroupAuto:
    if args.push:
        try:
            j, alpha = args.push.split(":", 1)
            j = int(j)
        except ValueError:
            raise ParseError('--push expects "j:word", e.g. "1:x1"') from None
        return point_push_automorphism(S, j, alpha)
    if args.auto:
        return FreeGroupAuto.from_json(S, _json_or_word(args.auto))
    raise ParseError("give --auto or --push")


def _expansion(S, args):
    if getattr(args, "fixed", False):
        return C.boundary_fixed_expansion(S, args.N)
    return C.exp_expansion(S, args.N)


def cmd_bracket(S, args):
    out = goldman_bracket(S, _combo(S, args.a), _combo(S, args.b), threads=args.threads)
    return {"terms": out.to_json()}, out.format()


def cmd_cobracket(S, args):
    a = _combo(S, args.a)
    if args.unframed:
        out = unframed_cobracket(S, a, threads=args.threads)
    else:
        out = turaev_cobracket(_framing(S, args.framing), a, threads=args.threads)
    return {"terms": out.to_json()}, out.format()


def cmd_rot(S, args):
    r = rotation_number(_framing(S, args.framing), _text(args.word))
    return {"rot": r}, f"rot = {r}"


def cmd_degrees(S, args):
    d = list(local_degrees(_framing(S, args.framing)))
    return {"d": d}, f"d = {d}"


def cmd_classify(S, args):
    xi = _framing(S, args.framing)
    inv = orbit_invariants(xi)
    doc = inv.to_json()
    doc["same_orbit"] = same_mcg_orbit(xi, _framing(S, args.other)) if args.other else None
    doc["quasi_algebraic"] = quasi_algebraic_framing_exists(xi)
    return doc, ", ".join(f"{k} = {v}" for k, v in doc.items())


def cmd_orbit(S, args):
    xi = _framing(S, args.framing)
    seen = orbit_search(xi, bound=args.bound, limit=args.limit)
    doc = {"visited": len(seen), "bound": args.bound, "reached": None, "same_orbit": None}
    if args.other:
        other = _framing(S, args.other)
        doc["reached"] = other.twists in seen
        doc["same_orbit"] = same_mcg_orbit(xi, other)
    return doc, f"{len(seen)} framings reached within |t| <= {args.bound}"


def cmd_exists_qaf(S, args):
    ok = quasi_algebraic_framing_exists(_framing(S, args.framing))
    return {"exists": ok}, "a quasi-algebraic framing exists" if ok else "no quasi-algebraic framing"


def cmd_push(S, args):
    xi = _framing(S, args.framing)
    psi = _auto(S, args)
    out = pushforward_framing(psi, xi)
    doc = out.to_json()
    doc["d"] = list(local_degrees(out))
    return doc, json.dumps(out.to_json()["t"])


def cmd_cocycle(S, args):
    f = framing_cocycle(_auto(S, args), _framing(S, args.framing))
    basis = S.generators[:2 * S.genus]
    return {"cocycle": list(f), "basis": basis}, ", ".join(f"{b}: {v}" for b, v in zip(basis, f))


def cmd_expand(S, args):
    theta = _expansion(S, args)
    if args.cyclic:
        s = C.expand_loop(theta, _combo(S, args.word))
    else:
        s = C.expand_word(theta, _text(args.word))
    return {"series": s.to_json(S), "level": _level(C.weight_level(s))}, repr(s)


def _level(v):
    return None if v == C.INF else int(v)


def cmd_boundary_defect(S, args):
    rep = C.boundary_report(_expansion(S, args))
    doc = {"defect": rep.defect.to_json(S), "weight2_ok": rep.weight2_ok, "zero": rep.is_zero}
    return doc, repr(rep.defect)


def cmd_filtration_report(S, args):
    theta = _expansion(S, args)
    rep = C.filtration_report(theta, _framing(S, args.framing), _combo(S, args.a), _combo(S, args.b))
    doc = rep.to_json()
    return doc, f"bracket pass = {rep.bracket_pass}, cobracket pass = {rep.cobracket_pass}"


def cmd_check(S, args):
    surfaces = [S]
    for item in args.surface or []:
        try:
            g, n = (int(v) for v in item.split(","))
        except ValueError:
            raise ParseError(f"--surface expects g,n; got {item!r}") from None
        surfaces.append(build_surface(g, n))
    doc = run_checks(surfaces, samples=args.samples, seed=args.seed)
    return doc, f"{doc['passed']} passed, {doc['failed']} failed"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gt", description="Goldman bracket, Turaev cobracket and framings on punctured surfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--g", type=int, required=True, help="genus")
        sp.add_argument("--n", type=int, required=True, help="number of punctures besides puncture 0")
        sp.add_argument("--pretty", action="store_true", help="indent and add a human-readable rendering")
        sp.add_argument("--threads", type=int, default=1)
        sp.set_defaults(func=fn)
        return sp

    def framing(sp, required=False):
        sp.add_argument("--framing", required=required, help='inline JSON {"t": {...}} or @file')

    sp = add("bracket", cmd_bracket, "Goldman bracket of two loop combinations")
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("cobracket", cmd_cobracket, "framed (or unframed) Turaev cobracket")
    framing(sp)
    sp.add_argument("--unframed", action="store_true")
    sp.add_argument("a")

    sp = add("rot", cmd_rot, "rotation number of a loop")
    framing(sp)
    sp.add_argument("--word", required=True)

    framing(add("degrees", cmd_degrees, "local degrees d_0, ..., d_n"))

    sp = add("classify", cmd_classify, "orbit invariants of a framing")
    framing(sp)
    sp.add_argument("--other", help="second framing to compare with")

    sp = add("orbit", cmd_orbit, "breadth-first orbit search under elementary moves")
    framing(sp)
    sp.add_argument("--other")
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--limit", type=int, default=20000)

    framing(add("exists-qaf", cmd_exists_qaf, "decide existence of a quasi-algebraic framing"))

    for name, fn, help_ in (("push", cmd_push, "push a framing forward"), ("cocycle", cmd_cocycle, "framing cocycle")):
        sp = add(name, fn, help_)
        framing(sp)
        sp.add_argument("--auto", help='automorphism JSON {"images": {...}} or @file')
        sp.add_argument("--push", help='point push "j:word"')

    sp = add("expand", cmd_expand, "expand a word (or loop combination with --cyclic)")
    sp.add_argument("--word", required=True)
    sp.add_argument("--cyclic", action="store_true")

    add("boundary-defect", cmd_boundary_defect, "defect of the boundary condition")

    sp = add("filtration-report", cmd_filtration_report, "weight-filtration checks")
    framing(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    for name in ("expand", "boundary-defect", "filtration-report"):
        sp = sub.choices[name]
        sp.add_argument("--N", type=int, default=4, help="truncation weight")
        sp.add_argument("--fixed", action="store_true", help="use the boundary-corrected expansion")

    sp = add("check", cmd_check, "run the bundled invariant suites")
    sp.add_argument("--surface", action="append", help="extra surface g,n (repeatable)")
    sp.add_argument("--samples", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    pretty = False
    try:
        args = build_parser().parse_args(argv)
        pretty = args.pretty
        N = getattr(args, "N", None)
        if N is not None and not 2 <= N <= 12:
            raise ParseError("--N must be between 2 and 12")
        S = build_surface(args.g, args.n)
        doc, human = args.func(S, args)
        doc = {"v": 1, **doc}
        if pretty:
            doc["text"] = human
        code = 0
    except ParseError as exc:
        doc, code = {"v": 1, "error": exc.code, "message": str(exc)}, 1
    except GTError as exc:
        doc, code = {"v": 1, "error": exc.code, "message": str(exc)}, 2
    stdout.write(json.dumps(doc, indent=2 if pretty else None) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
