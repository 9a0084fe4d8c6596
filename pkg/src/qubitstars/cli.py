"""Command line front end.

Reads a state (or density matrix) as JSON from ``--input`` or stdin, or builds
one from an inline fixture name, runs one pipeline and prints the report.

    qubitstars fixtures ghz3 | qubitstars tangle
    qubitstars stars gghz:0.3141592653589793 --format csv

Exit codes: 0 success, 1 domain error, 2 usage, file or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, TextIO

import numpy as np

from . import serialize as ser
from .acin import acin_canonical, tangle_from_acin
from .context import DEFAULT, NumericContext
from .errors import InvalidOperationError, InvalidStateError, QubitStarsError
from .fixtures import FIXTURE_NAMES, fixture
from .invariants3 import concurrence2, hyperdet3, three_tangle
from .invariants_n import four_invariants, inv5_F
from .majorana import constellation_of
from .mixed import mixed_constellations
from .qstate import DensityMatrix, LocalOpChain, PureState, symmetric_to_spin, symmetry_defect
from .symmetrize import symmetrize


class UsageError(Exception):
    pass


def _c(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _chain_json(chain: LocalOpChain, n: int) -> list[dict]:
    return [
        {"slot": k, "matrix": ser.matrix_to_json(m), "det": _c(np.linalg.det(m))}
        for k, m in enumerate(chain.composite(n))
    ]


def _load(args: argparse.Namespace, stdin: TextIO) -> PureState | DensityMatrix:
    if args.fixture:
        try:
            return fixture(args.fixture)
        except InvalidOperationError as exc:
            raise UsageError(str(exc)) from None
    try:
        if args.input in (None, "-"):
            text = stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        doc = json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read input: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not valid JSON: {exc}") from None
    if isinstance(doc, dict) and "rho" in doc:
        return ser.density_from_json(doc)
    return ser.state_from_json(doc)


def _pure(obj) -> PureState:
    if not isinstance(obj, PureState):
        raise UsageError("this verb needs a pure state, got a density matrix")
    return obj


def _tangle(state: PureState, ctx: NumericContext) -> dict:
    n = state.n
    if n == 2:
        return {"n": 2, "concurrence": concurrence2(state)}
    if n == 3:
        return {"n": 3, "tau3": three_tangle(state, ctx.norm_tol), "hyperdet": _c(hyperdet3(state))}
    if n == 4:
        return _invariants4(state, ctx)
    if n == 5:
        return _invariant5(state, ctx)
    raise InvalidOperationError(f"no tangle defined here for {n} qubits")


def _invariants4(state: PureState, ctx: NumericContext) -> dict:
    inv = four_invariants(state)
    return {"n": 4, "H": _c(inv.H), "L": _c(inv.L), "M": _c(inv.M), "D": _c(inv.D)}


def _invariant5(state: PureState, ctx: NumericContext) -> dict:
    return {"n": 5, "F": _c(inv5_F(state))}


def _acin(state: PureState, ctx: NumericContext) -> dict:
    res = acin_canonical(state, ctx)
    f = res.form
    return {
        "lambdas": list(f.lambdas),
        "phi": f.phi,
        "tau3": tangle_from_acin(f),
        "residual": res.residual(state),
        "chain": _chain_json(res.chain, 3),
    }


def _symmetrize(state: PureState, ctx: NumericContext) -> dict:
    res = symmetrize(state, ctx)
    form = None
    if res.input_form is not None:
        form = {"lambdas": list(res.input_form.lambdas), "phi": res.input_form.phi}
    return {
        "class": res.class_tag.value,
        "vartheta": res.vartheta,
        "scale": _c(res.scale),
        "renormalized": res.renormalized,
        "input_form": form,
        "chain": _chain_json(res.chain, 3),
        "output": ser.state_to_json(res.output),
        "symmetry_defect": symmetry_defect(res.output),
    }


def _stars(state: PureState, ctx: NumericContext) -> tuple[dict, object]:
    note = None
    if state.n == 3 and symmetry_defect(state) > ctx.symmetry_tol:
        res = symmetrize(state, ctx)
        state = res.output
        note = f"input was not symmetric; symmetrized into the {res.class_tag.value} representative"
    c = constellation_of(symmetric_to_spin(state, ctx.symmetry_tol), ctx)
    doc = ser.constellation_to_json(c)
    if note:
        doc["note"] = note
    return doc, c


def _mixed(obj, ctx: NumericContext) -> tuple[dict, list]:
    if not isinstance(obj, DensityMatrix):
        raise UsageError("mixed-stars needs a density matrix JSON input")
    spheres = mixed_constellations(obj, ctx=ctx)
    return ser.mixed_to_json((obj.dim - 1) / 2, spheres), spheres


_PURE_VERBS: dict[str, Callable[[PureState, NumericContext], dict]] = {
    "tangle": _tangle,
    "acin": _acin,
    "symmetrize": _symmetrize,
    "invariants4": lambda s, ctx: _invariants4(_require(s, 4), ctx),
    "invariant5": lambda s, ctx: _invariant5(_require(s, 5), ctx),
}


def _require(state: PureState, n: int) -> PureState:
    if state.n != n:
        raise InvalidStateError(f"expected a {n}-qubit state, got {state.n} qubits")
    return state


HELP = {
    "tangle": "concurrence (n=2), three-tangle (n=3), H/L/M/D (n=4) or F (n=5)",
    "acin": "canonical form and the unitaries that reach it",
    "symmetrize": "SL chain mapping a three-qubit state onto a symmetric one",
    "stars": "Majorana constellation of a symmetric state",
    "invariants4": "the four-qubit invariants H, L, M, D",
    "invariant5": "the five-qubit degree-6 invariant F",
    "mixed-stars": "rank spheres of a spin density matrix",
    "fixtures": "print a named state as JSON",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qubitstars", description="Entanglement invariants and Majorana stars.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", required=True)
    for verb, text in HELP.items():
        p = sub.add_parser(verb, help=text, description=text)
        if verb == "fixtures":
            p.add_argument("fixture", metavar="NAME", help=f"one of {', '.join(FIXTURE_NAMES)} (with :params)")
            continue
        p.add_argument("fixture", nargs="?", metavar="FIXTURE", help="inline fixture instead of JSON input")
        p.add_argument("--input", metavar="PATH", help="JSON file, or - for stdin (default)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--tol", type=float, help="normalization and symmetry tolerance")
        p.add_argument("--cluster-radius", type=float, help="root clustering radius")
    return parser


def _context(args: argparse.Namespace) -> NumericContext:
    tol = getattr(args, "tol", None)
    radius = getattr(args, "cluster_radius", None)
    for name, val in (("--tol", tol), ("--cluster-radius", radius)):
        if val is not None and not (np.isfinite(val) and val > 0):
            raise UsageError(f"{name} must be a positive number")
    return DEFAULT.with_overrides(norm_tol=tol, symmetry_tol=tol, cluster_radius=radius)


def _dispatch(args: argparse.Namespace, stdin: TextIO) -> str:
    ctx = _context(args)
    if args.verb == "fixtures":
        try:
            obj = fixture(args.fixture)
        except InvalidOperationError as exc:
            raise UsageError(str(exc)) from None
        if isinstance(obj, DensityMatrix):
            return ser.dumps(ser.density_to_json(obj))
        return ser.dumps(ser.state_to_json(obj))

    obj = _load(args, stdin)
    csv_ok = args.verb in ("stars", "mixed-stars")
    if args.format == "csv" and not csv_ok:
        raise UsageError(f"--format csv is only available for stars and mixed-stars, not {args.verb}")

    if args.verb == "stars":
        doc, c = _stars(_pure(obj), ctx)
        if args.format == "csv":
            return ser.emit_plot_csv(c)
        return ser.dumps(doc)
    if args.verb == "mixed-stars":
        doc, spheres = _mixed(obj, ctx)
        if args.format == "csv":
            parts = [ser.emit_plot_csv(s.constellation, {"k": s.k, "r": s.radius}) for s in spheres]
            # one header, then every sphere's rows
            head = parts[0].splitlines()[0] if parts else "k,r," + ",".join(ser.CSV_FIELDS)
            rows = [line for p in parts for line in p.splitlines()[1:]]
            return "\n".join([head, *rows]) + "\n"
        return ser.dumps(doc)
    return ser.dumps(_PURE_VERBS[args.verb](_pure(obj), ctx))


def run(argv: list[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = _dispatch(args, stdin)
    except (UsageError, ser.SchemaError) as exc:
        print(f"qubitstars {args.verb}: {exc}", file=stderr)
        return 2
    except QubitStarsError as exc:
        print(f"qubitstars {args.verb}: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())
