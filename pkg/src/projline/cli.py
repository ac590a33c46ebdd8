"""``projline`` command-line interface.

Every command prints one JSON document with sorted keys. Settings come from
flags, falling back to a JSON file named by the ``CONFIG`` environment variable,
then to built-in defaults. Exit codes: 0 success, 2 input error, 3 verification
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import algebra, ktheory, monoid, normal_form, selftest, toeplitz
from .errors import BadCertificate, ProjlineError
from .monoid import Geometry

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3


class InputError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    geometry: Geometry = Geometry.PROJLINE
    truncation_N: int = 32
    float_tolerance: float = toeplitz.DEFAULT_TOLERANCE
    eta_sign_flip: bool = False

    def __post_init__(self):
        if self.truncation_N < 2:
            raise InputError(f"truncation must be at least 2, got {self.truncation_N}")
        if not self.float_tolerance >= 0:
            raise InputError(f"tolerance must be nonnegative, got {self.float_tolerance}")


def load_config(args: argparse.Namespace, environ=os.environ) -> Config:
    base = {}
    path = environ.get("CONFIG")
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(base, dict):
            raise InputError("config file must hold a JSON object")

    def pick(flag, key, default):
        v = getattr(args, flag, None)
        return v if v is not None else base.get(key, default)

    try:
        return Config(
            geometry=Geometry.parse(pick("geometry", "geometry", "projline")),
            truncation_N=int(pick("truncation", "truncation", 32)),
            float_tolerance=float(pick("tolerance", "tolerance", toeplitz.DEFAULT_TOLERANCE)),
            eta_sign_flip=bool(pick("eta_sign_flip", "eta_sign_flip", False)),
        )
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


# -- input parsing -------------------------------------------------------------

def _read_stdin_json():
    text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON on stdin: {exc}") from exc


def parse_class(token) -> monoid.ProjClass:
    """A class from compact text (``positive(1,3)``), a JSON string, or a decoded object."""
    try:
        if isinstance(token, dict):
            return monoid.from_json(token)
        token = token.strip()
        if token.startswith("{"):
            return monoid.from_json(json.loads(token))
        return monoid.parse_compact(token)
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc


def parse_spec(token) -> normal_form.BlockSpec:
    try:
        if isinstance(token, dict):
            return normal_form.spec_from_json(token)
        token = token.strip()
        if token.startswith("{"):
            return normal_form.spec_from_json(json.loads(token))
        return normal_form.parse_compact_spec(token)
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc


# -- commands ------------------------------------------------------------------

def cmd_mul(args, cfg: Config):
    if args.classes:
        classes = [parse_class(t) for t in args.classes]
    else:
        data = _read_stdin_json()
        if not isinstance(data, list):
            raise InputError("stdin must hold a JSON list of classes")
        classes = [parse_class(c) for c in data]
    if not classes:
        raise InputError("mul needs at least one class")
    return monoid.to_json(monoid.monoid_product(classes, cfg.geometry)), EXIT_OK


def cmd_classify(args, cfg: Config):
    spec = parse_spec(args.spec) if args.spec is not None else parse_spec(_read_stdin_json())
    cls = normal_form.classify(spec, cfg.geometry)
    out = {"class": monoid.to_json(cls), "rank": normal_form.rank_of_spec(spec)}
    if args.certificate or args.verify:
        reduced, cert = normal_form.reduce(spec, cfg.geometry)
        out["certificate"] = normal_form.certificate_to_json(cert)
        if reduced != cls:
            out["verified"] = False
            out["error"] = f"reduction reached {monoid.format_compact(reduced)}"
            return out, EXIT_VERIFY
        if args.verify:
            try:
                out["verified"] = normal_form.verify_certificate(spec, cert, cls, cfg.geometry)
            except BadCertificate as exc:
                out["verified"] = False
                out["error"] = str(exc)
                return out, EXIT_VERIFY
    return out, EXIT_OK


def cmd_kclass(args, cfg: Config):
    return ktheory.k0_of_class(parse_class(args.cls), cfg.geometry).to_json(), EXIT_OK


def cmd_cone(args, cfg: Config):
    x = ktheory.K0Class(args.a, args.b)
    return {"a": args.a, "b": args.b, "geometry": cfg.geometry.value,
            "in_cone": ktheory.in_positive_cone(x, cfg.geometry)}, EXIT_OK


def cmd_linebundle(args, cfg: Config):
    cls = monoid.line_bundle_class(args.k)
    return {"degree": args.k, "class": monoid.to_json(cls)}, EXIT_OK


def cmd_eta(args, cfg: Config):
    kg = ktheory.k_groups(cfg.geometry, cfg.eta_sign_flip)
    return {
        "geometry": cfg.geometry.value,
        "eta": list(kg.eta),
        "sign_flip": cfg.eta_sign_flip,
        "iota_kernel": list(kg.iota_kernel),
        "exact_at_ideal": kg.exact_at_ideal,
        "k0_rank": kg.k0_rank,
        "k0_torsion": kg.k0_torsion,
        "k0_basis": list(kg.basis),
        "k1_trivial": kg.k1 is not None,
    }, EXIT_OK


def cmd_represent(args, cfg: Config):
    try:
        f = algebra.standard_element(args.name, args.k)
    except (ValueError, ProjlineError) as exc:
        raise InputError(str(exc)) from exc
    op = toeplitz.represent(f, cfg.truncation_N)
    return {"N": op.N, "matrix": op.to_json()}, EXIT_OK


def cmd_selftest(args, cfg: Config):
    report = selftest.run(args.level, cfg.truncation_N, cfg.float_tolerance, cfg.eta_sign_flip)
    for line in report.lines():
        print(line, file=sys.stderr)
    return report.to_json(), EXIT_OK if report.ok else EXIT_VERIFY


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's unset flag from hiding one given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--geometry", choices=[g.value for g in Geometry])
    common.add_argument("--truncation", type=int, metavar="N")
    common.add_argument("--tolerance", type=float)
    common.add_argument("--eta-sign-flip", action="store_true")

    p = argparse.ArgumentParser(prog="projline", parents=[common],
                                description="Projections and K-theory over the quantum projective line.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mul", parents=[common], help="direct-sum product of classes")
    s.add_argument("classes", nargs="*", help="e.g. rank0(1,2) positive(1,3); JSON list on stdin if omitted")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("classify", parents=[common], help="class of a block-diagonal projection")
    s.add_argument("spec", nargs="?", help="e.g. cofinite(1,2)+finite(3,1); JSON on stdin if omitted")
    s.add_argument("--certificate", action="store_true", help="emit the unitary moves")
    s.add_argument("--verify", action="store_true", help="replay the moves exactly")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("kclass", parents=[common], help="K0 coordinates of a class")
    s.add_argument("cls", metavar="class")
    s.set_defaults(func=cmd_kclass)

    s = sub.add_parser("cone", parents=[common], help="positive-cone membership of a K0 element")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.set_defaults(func=cmd_cone)

    s = sub.add_parser("linebundle", parents=[common], help="class of the degree-k line bundle")
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_linebundle)

    s = sub.add_parser("eta", parents=[common], help="index map and K-groups")
    s.set_defaults(func=cmd_eta)

    s = sub.add_parser("represent", parents=[common], help="truncated matrix of a named degree-0 element")
    s.add_argument("name", choices=list(algebra.STANDARD_NAMES))
    s.add_argument("k", type=int, nargs="?")
    s.set_defaults(func=cmd_represent)

    s = sub.add_parser("selftest", parents=[common], help="run the identity suite")
    s.add_argument("--level", choices=["fast", "full"], default="fast")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        out, code = args.func(args, cfg)
    except (InputError, ProjlineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps(out, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
