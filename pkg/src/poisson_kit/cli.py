"""Command-line front end: ``pk <command> --structure FILE [options]``.

Output is JSON on stdout.  Exit status 0 on success, 2 on invalid input
(with a JSON error object), 1 on an internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Dict, List, Optional

from . import connect, homalg, quantize
from .forms import KForm, form_from_text, form_to_text, poisson_two_form
from .poisson import PoissonStructure, is_poisson, jacobiator
from .poly import ParseError, Ring, parse_poly
from .reduce import MasslessSystem, reduce_demo


class InputError(ValueError):
    """Invalid command input; reported with exit status 2."""


# -- input -------------------------------------------------------------------------


def corpus_names() -> List[str]:
    root = resources.files("poisson_kit") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _read_source(src: str) -> str:
    if src == "-":
        return sys.stdin.read()
    if src.lstrip().startswith("{"):
        return src
    if src.startswith("corpus:"):
        name = src[len("corpus:"):]
        if name not in corpus_names():
            raise InputError(f"no bundled structure named {name!r}")
        return (resources.files("poisson_kit") / "corpus" / f"{name}.json").read_text()
    try:
        with open(src, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {src}: {exc.strerror}") from None


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc.msg} at position {exc.pos}") from None


def structure_from_json(data) -> PoissonStructure:
    """Validate ``{"vars": [...], "bivector": {"i,j": "<poly>"}}`` strictly."""
    if not isinstance(data, dict):
        raise InputError("structure must be a JSON object")
    unknown = sorted(set(data) - {"vars", "bivector"})
    if unknown:
        raise InputError(f"unknown structure keys: {unknown}")
    if "vars" not in data or "bivector" not in data:
        raise InputError("structure needs both 'vars' and 'bivector'")
    names = data["vars"]
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise InputError("'vars' must be a list of strings")
    try:
        ring = Ring(tuple(names))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    biv = data["bivector"]
    if not isinstance(biv, dict):
        raise InputError("'bivector' must be an object")
    entries = {}
    for key, text in biv.items():
        if not isinstance(text, str):
            raise InputError(f"bivector entry {key!r} must be a polynomial string")
        parts = [s.strip() for s in key.split(",")]
        if len(parts) != 2:
            raise InputError(f"bivector key {key!r} must look like 'i,j'")
        idx = []
        for s in parts:
            if s.isdigit():
                idx.append(int(s))
            elif s in ring.names:
                idx.append(ring.index(s))
            else:
                raise InputError(f"bivector key {key!r}: unknown index {s!r}")
        if any(i >= ring.n for i in idx):
            raise InputError(f"bivector key {key!r} out of range")
        if tuple(idx) in entries or tuple(reversed(idx)) in entries:
            raise InputError(f"bivector pair {key!r} given twice")
        entries[tuple(idx)] = _parse(text, ring)
    try:
        return PoissonStructure(ring, entries)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _parse(text: str, ring: Ring, gaussian: bool = False):
    try:
        return parse_poly(text, ring, gaussian=gaussian)
    except ParseError as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from None


def load_structure(src: Optional[str]) -> PoissonStructure:
    if src is None:
        raise InputError("--structure is required for this command")
    return structure_from_json(_load_json(_read_source(src), "structure"))


def theta_from_json(text: str, ring: Ring) -> KForm:
    data = _load_json(_read_source(text), "theta")
    if not isinstance(data, dict) or set(data) - {"k", "coeffs"} or "coeffs" not in data:
        raise InputError("theta must be {\"k\": 1, \"coeffs\": {\"i\": \"<poly>\"}}")
    if data.get("k", 1) != 1 or not isinstance(data["coeffs"], dict):
        raise InputError("theta must be a 1-form")
    try:
        return form_from_text(ring, 1, data["coeffs"])
    except (ValueError, IndexError) as exc:
        raise InputError(f"bad theta: {exc}") from None


# -- commands ----------------------------------------------------------------------


def _potential(P: PoissonStructure, args) -> KForm:
    if args.theta is not None:
        th = theta_from_json(args.theta, P.ring)
        try:
            quantize.require_potential(P, th)
        except quantize.NotAPotentialError as exc:
            raise InputError(str(exc)) from None
        return th
    th = homalg.solve_coboundary(P, poisson_two_form(P), args.bound)
    if th is None:
        raise InputError(f"no potential with coefficient degree <= {args.bound}; pass --theta")
    return th


def _require_poisson(P):
    report = is_poisson(P)
    if not report:
        raise InputError(f"bivector fails Jacobi on generators {list(report.witness)}")


def cmd_check(args) -> Dict:
    P = load_structure(args.structure)
    report = is_poisson(P)
    out = {"poisson": report.ok}
    if not report.ok:
        i, j, k = report.witness
        g = P.ring.gens()
        if jacobiator(P, g[i], g[j], g[k]) != report.value:
            raise ArithmeticError("Jacobi witness failed re-verification")
        out["witness"] = {"generators": [P.ring.names[t] for t in (i, j, k)],
                          "jacobiator": str(report.value)}
    return out


def _dims(args, fn) -> Dict:
    P = load_structure(args.structure)
    _require_poisson(P)
    try:
        table = fn(P, args.kmax, args.dmax, cutoff=args.cutoff)
    except homalg.InhomogeneousBivectorError as exc:
        raise InputError(f"{exc}; use --cutoff for the truncated complex") from None
    return table.to_json()


def cmd_cohomology(args):
    return _dims(args, homalg.cohomology_dims)


def cmd_homology(args):
    return _dims(args, homalg.homology_dims)


def cmd_potential(args) -> Dict:
    P = load_structure(args.structure)
    _require_poisson(P)
    pi = poisson_two_form(P)
    th = homalg.solve_coboundary(P, pi, args.bound)
    if th is None:
        return {"exists": False}
    return {"exists": True, "theta": form_to_text(th)}


def cmd_curvature(args) -> Dict:
    P = load_structure(args.structure)
    _require_poisson(P)
    if args.theta is not None:
        th = theta_from_json(args.theta, P.ring)
    else:
        th = _potential(P, args)
    nabla = connect.RankOneConnection(th, args.mode)
    omega = connect.curvature(P, nabla)
    return {"mode": args.mode, "theta": form_to_text(th), "curvature": form_to_text(omega),
            "bianchi_zero": connect.bianchi_defect(P, nabla).is_zero()}


def _observables(args, ring, gaussian=False, need=None):
    texts = args.observable or []
    if need is not None and len(texts) != need:
        raise InputError(f"expected exactly {need} --observable values")
    return [(t, _parse(t, ring, gaussian)) for t in texts]


def cmd_dirac(args) -> Dict:
    P = load_structure(args.structure)
    _require_poisson(P)
    th = _potential(P, args)
    (ta, a), (tb, b) = _observables(args, P.ring, need=2)
    s = _parse(args.section, P.ring, gaussian=True)
    defect = quantize.dirac_defect(P, th, a, b, s)
    return {"a": ta, "b": tb, "section": str(s), "theta": form_to_text(th),
            "defect": str(defect), "zero": defect.is_zero()}


def cmd_quantize_op(args) -> Dict:
    if args.structure is None:
        system = MasslessSystem()
        alpha = _parse(args.section, system.ring, gaussian=True)
        phi = quantize.ExpWave(system, alpha)
        rows = []
        for text, f in _observables(args, system.ring):
            try:
                out = quantize.half_form_apply(system, f, phi)
            except quantize.InadmissibleObservableError as exc:
                raise InputError(str(exc)) from None
            row = {"observable": text, "amplitude": str(out.amplitude)}
            if system.is_affine_in_x(f) and alpha.degree_in(range(4)) == 0:
                row["closed_form_agrees"] = quantize.wave_apply(system, f, phi) == out
            rows.append(row)
        return {"system": "massless", "section": str(alpha), "actions": rows}
    P = load_structure(args.structure)
    _require_poisson(P)
    th = _potential(P, args)
    s = _parse(args.section, P.ring, gaussian=True)
    apply = quantize.prequant_apply if args.mode == "imaginary" else quantize.real_rep_apply
    rows = [{"observable": t, "result": str(apply(P, th, f, s))}
            for t, f in _observables(args, P.ring)]
    return {"mode": args.mode, "theta": form_to_text(th), "section": str(s), "actions": rows}


def cmd_reduce_demo(args) -> Dict:
    return reduce_demo()


COMMANDS = {
    "check": cmd_check,
    "cohomology": cmd_cohomology,
    "homology": cmd_homology,
    "potential": cmd_potential,
    "curvature": cmd_curvature,
    "dirac": cmd_dirac,
    "quantize-op": cmd_quantize_op,
    "reduce-demo": cmd_reduce_demo,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pk", description="Exact Poisson algebra computations.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--structure", help="structure JSON: path, '-', inline, or corpus:NAME")
    parser.add_argument("--kmax", type=int, default=2)
    parser.add_argument("--dmax", type=int, default=3)
    parser.add_argument("--bound", type=int, default=1)
    parser.add_argument("--cutoff", action="store_true",
                        help="truncated complex for inhomogeneous bivectors")
    parser.add_argument("--mode", choices=connect.MODES, default="imaginary")
    parser.add_argument("--observable", action="append")
    parser.add_argument("--section", default="1")
    parser.add_argument("--theta", help="1-form JSON {\"k\":1,\"coeffs\":{...}}")
    parser.add_argument("--json-indent", type=int, default=None)
    parser.add_argument("--pretty", action="store_true", help="human-readable table")
    return parser


def _pretty(result: Dict) -> str:
    if "rows" in result:
        lines = [f"{result['kind']} ({result['mode']})", f"{'k':>3} {'d':>3} {'z':>5} {'b':>5} {'h':>5}"]
        for r in result["rows"]:
            lines.append(f"{r['k']:>3} {r['d']:>3} {r['z']:>5} {r['b']:>5} {r['h']:>5}")
        return "\n".join(lines)
    return json.dumps(result, sort_keys=True, indent=2)


def render(result, indent=None) -> str:
    if indent is None:
        return json.dumps(result, sort_keys=True, separators=(",", ":"))
    return json.dumps(result, sort_keys=True, indent=indent)


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    out = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        for name in ("kmax", "dmax", "bound"):
            if getattr(args, name) < 0:
                raise InputError(f"--{name} must be nonnegative")
        result = COMMANDS[args.command](args)
    except InputError as exc:
        out.write(render({"error": {"kind": "input", "message": str(exc)}}) + "\n")
        return 2
    except Exception as exc:  # noqa: BLE001 - reported as an internal failure
        out.write(render({"error": {"kind": "internal", "type": type(exc).__name__,
                                    "message": str(exc)}}) + "\n")
        return 1
    out.write((_pretty(result) if args.pretty else render(result, args.json_indent)) + "\n")
    return 0


def main():  # pragma: no cover
    sys.exit(run())
