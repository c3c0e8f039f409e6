"""Command-line front end.

Exit codes: 0 completed (no counterexample / verified), 1 counterexample found,
2 input error, 3 premise undecided.  JSON on stdout (or ``--out``) is the
source of truth; ``--format text`` renders the same payload as a table.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import Algebra, builtin_algebra, validate_algebra
from .constructions import cosyzygy_embedding, embed_into_finite_pd, syzygy_t_resolution, torsionfree_compress
from .errors import AlgebraError, LabError, ModuleError, PreconditionError, ResourceLimit
from .harness import (CLAIM_IDS, ParameterError, Params, construction_roundtrips, describe,
                      falsify_claim)
from .invariants import (DEFAULT_BOUND, DimResult, auslander_bridger_check, gorenstein_dimension,
                         injective_coresolution_pd_profile, orthogonal_dimension, projective_dimension,
                         self_injective_dimension, torsion_status, torsionfree_dimension_upper)
from .linalg import Field
from .modules import validate_module
from .serialize import (FormatError, algebra_from_json, algebra_to_json, builtin_reference, dumps,
                        module_from_json, sequence_to_json)

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


# -- loading -----------------------------------------------------------------------

def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from None


def load_algebra(spec: str, field: Field | None = None) -> Algebra:
    """A built-in name such as ``A2`` or ``NAKAYAMA(2,2)``, or a JSON file."""
    if Path(spec).is_file():
        return algebra_from_json(_read_json(spec), field)
    try:
        return builtin_algebra(spec, field)
    except AlgebraError:
        if spec.endswith(".json") or "/" in spec:
            raise InputError(f"cannot read {spec}: no such file") from None
        raise


def load_module(path: str, a: Algebra):
    return module_from_json(_read_json(path), a)


# -- commands -----------------------------------------------------------------------

def _dim(fn, *args) -> DimResult:
    try:
        return fn(*args)
    except ResourceLimit as exc:
        return DimResult.unknown(f"resource limit: {exc}")


def _need_module(args, a: Algebra):
    if not args.module:
        raise InputError("--module is required for this command")
    return load_module(args.module, a)


def _algebra_summary(a: Algebra) -> dict:
    return {"dim": a.dim, "name": a.name, "field": a.field.spec(),
            "reference": builtin_reference(a) or algebra_to_json(a)}


def cmd_validate(args, a: Algebra):
    rep = validate_algebra(a)
    out = {"algebra": {"dim": a.dim, "name": a.name, "ok": rep.ok, "errors": rep.errors}}
    if args.module:
        m = module_from_json(_read_json(args.module), a, validate=False)
        mrep = validate_module(m)
        out["module"] = {"side": m.side, "dim": m.dim, "ok": mrep.ok, "errors": mrep.errors}
        if not mrep.ok:
            return out, EXIT_INPUT
    return out, EXIT_OK


def cmd_invariants(args, a: Algebra):
    m = _need_module(args, a)
    b = args.bound
    out = {"algebra": _algebra_summary(a), "module": {"side": m.side, "dim": m.dim, "name": m.name},
           "bound": b,
           "pd": _dim(projective_dimension, m, b),
           "orthdim": _dim(orthogonal_dimension, m, b),
           "gdim": _dim(gorenstein_dimension, m, b),
           "tdim_upper": _dim(torsionfree_dimension_upper, m, b)}
    try:
        out["torsion_status"] = torsion_status(m, b)
        out["auslander_bridger"] = auslander_bridger_check(m)
    except ResourceLimit as exc:
        out["torsion_status"] = {"unknown": str(exc)}
    return out, EXIT_OK


def cmd_selfinjdim(args, a: Algebra):
    out = {"algebra": _algebra_summary(a), "bound": args.bound,
           "left": self_injective_dimension(a, "left", args.bound),
           "right": self_injective_dimension(a, "right", args.bound)}
    return out, EXIT_OK


def cmd_profile(args, a: Algebra):
    prof = injective_coresolution_pd_profile(a, args.side, args.length, args.bound)
    return {"algebra": _algebra_summary(a), "side": args.side, "length": args.length,
            "bound": args.bound, "pd": prof}, EXIT_OK


def cmd_construct(args, a: Algebra):
    m = _need_module(args, a)
    n = args.n
    if n is None or n < 0:
        raise InputError("--n must be a non-negative integer")
    kind = args.construction
    if kind == "prop2.1":
        if n < 1:
            raise InputError("--n must be at least 1 for prop2.1")
        seq = cosyzygy_embedding(m, n)
        certs = {"exact": seq.exact, "tail_in_perp": bool(seq.notes.get("tail_in_perp"))}
    else:
        t = torsionfree_dimension_upper(m, args.bound)
        if not (t.is_finite and t.certified and t.value <= n):
            raise PreconditionError(f"torsionfree dimension is not certified <= {n} ({t})")
        if kind == "prop3.4":
            res = torsionfree_compress(m, syzygy_t_resolution(m, t.value), t.value, args.bound)
        else:
            res = embed_into_finite_pd(m, t.value, bound=args.bound)
        seq, certs = res.sequence, res.certificates
    return {"construction": kind, "n": n, "sequence": sequence_to_json(seq),
            "certificates": certs}, EXIT_OK


def _params(args) -> Params:
    if args.samples < 1:
        raise InputError("--samples must be at least 1")
    return Params(args.n, args.k, args.bound, args.samples, args.seed)


def cmd_check(args, a: Algebra):
    rep = falsify_claim(args.claim, a, _params(args))
    out = rep.to_json()
    out["procedure"] = describe(rep.claim)
    return out, rep.exit_code


def cmd_roundtrips(args, a: Algebra):
    rep = construction_roundtrips(a, _params(args))
    return rep.to_json(), rep.exit_code


COMMANDS = {"validate": cmd_validate, "invariants": cmd_invariants, "selfinjdim": cmd_selfinjdim,
            "coresolution-profile": cmd_profile, "construct": cmd_construct, "check": cmd_check,
            "roundtrips": cmd_roundtrips}


# -- output ----------------------------------------------------------------------

def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        if set(obj) >= {"value", "certified"} and not isinstance(obj["value"], (dict, list)):
            mark = "" if obj["certified"] else " [up to bound]"
            yield prefix, f"{obj['value']}{mark}"
            return
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj) if isinstance(obj, list) else str(obj)


def render_text(payload: dict) -> str:
    plain = json.loads(dumps(payload))
    rows = [(k, v) for k, v in _flatten(plain) if ".action" not in k and not k.endswith("action")]
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _emit(payload: dict, args):
    text = dumps(payload) if args.format == "json" else render_text(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# -- parsing ---------------------------------------------------------------------

def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned value")
    return v


def _bound(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid bound {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("bound must be at least 1")
    return v


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, help="built-in name (e.g. A2, NG3) or JSON file")
    common.add_argument("--module", help="module JSON file")
    common.add_argument("--field", type=_field, default=None, help="gf:p or qq (default gf:32003)")
    common.add_argument("--bound", type=_bound, default=DEFAULT_BOUND)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--n", type=int, default=None)
    sampling.add_argument("--k", type=int, default=None)
    sampling.add_argument("--samples", type=int, default=50)
    sampling.add_argument("--seed", type=_seed, default=0)

    p = _Parser(prog="torsionfree-lab", description="Homological invariants and claim checks "
                "for finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("validate", parents=[common], help="validate an algebra (and module)")
    sub.add_parser("invariants", parents=[common], help="dimension table of a module")
    sub.add_parser("selfinjdim", parents=[common], help="left and right self-injective dimension")
    prof = sub.add_parser("coresolution-profile", parents=[common],
                          help="pd of the terms of a minimal injective coresolution of R")
    prof.add_argument("--side", choices=("left", "right"), default="left")
    prof.add_argument("--length", type=int, default=3)
    con = sub.add_parser("construct", parents=[common], help="emit a constructed exact sequence")
    con.add_argument("construction", choices=("prop2.1", "prop3.4", "cor3.5"))
    con.add_argument("--n", type=int, default=None)
    chk = sub.add_parser("check", parents=[common, sampling], help="falsification check of a claim")
    chk.add_argument("--claim", required=True, type=str.upper, choices=CLAIM_IDS)
    sub.add_parser("roundtrips", parents=[common, sampling], help="run every construction on samples")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        a = load_algebra(args.algebra, args.field)
        payload, code = COMMANDS[args.command](args, a)
    except (InputError, FormatError, AlgebraError, ModuleError, PreconditionError, ParameterError) as exc:
        msg = {"error": type(exc).__name__, "message": str(exc)}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            msg["witness"] = list(witness)
        sys.stderr.write(dumps(msg))
        return EXIT_INPUT
    except LabError as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_INPUT
    _emit(payload, args)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
