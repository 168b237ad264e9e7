"""Command-line surface.

Exit codes: 0 success / certificate verified, 1 certificate rejected,
2 invalid input, 3 internal invariant violation, 10 consistent measure,
20 obstruction certificate.  Machine-readable output always serializes
rationals as "p/q" strings; decimals appear only in Monte-Carlo reports.
Every run prints a manifest line (command, input hashes, seed, version,
outcome, timing) to stderr; primary stdout output is byte-reproducible
given equal inputs and seed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import platform
import secrets
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .amenability import (
    BaseOutsideClassError,
    Certificate,
    ConsistentMeasure,
    MalformedCertificateError,
    decide_base,
    verify_certificate,
)
from .chains import (
    CoordinateCylinder,
    cylinder_estimate,
    enumerate_valid,
    matrix_type,
    pushforward_check,
    sample_uniform_ordering,
)
from .expansions import get_plugin, plugin_names
from .serialize import (
    certificate_from_json,
    certificate_to_json,
    frac_str,
    measure_to_json,
    structure_from_json,
)
from .vmeasure import ClassCountEvent, count_bases_with_coords, measure_nwk

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3
EXIT_MEASURE = 10
EXIT_CERTIFICATE = 20


@dataclass
class RunManifest:
    """What a run consumed and produced; re-running with the same manifest
    reproduces the primary output byte for byte."""

    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    seed: int | None = None
    version: str = __version__
    python: str = platform.python_version()
    outcome_code: int = 0
    elapsed_s: float = 0.0

    def emit(self) -> None:
        print("manifest: " + json.dumps(self.__dict__, sort_keys=True), file=sys.stderr)


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


class InputError(Exception):
    pass


def _load_structure(path: str, plugin_name: str):
    plugin = get_plugin(plugin_name)
    try:
        s = structure_from_json(_load_json(path))
    except (OSError, json.JSONDecodeError, ValueError, TypeError) as exc:
        raise InputError(f"cannot read structure from {path}: {exc}") from exc
    if not plugin.accepts(s):
        raise InputError(f"structure kind does not match class {plugin_name!r}")
    return plugin, s


def cmd_expansions(args) -> int:
    plugin, s = _load_structure(args.base, getattr(args, "cls"))
    exps = plugin.expansions_of(s)
    print(f"count: {len(exps)}")
    for e in exps:
        print(plugin.exp_key(e))
    if not exps:
        print("note: the structure admits no expansion; it lies outside the class", file=sys.stderr)
    return EXIT_OK


def cmd_decide(args) -> int:
    plugin, s = _load_structure(args.base, getattr(args, "cls"))
    try:
        outcome = decide_base(s, plugin)
    except BaseOutsideClassError as exc:
        raise InputError(str(exc)) from exc
    if isinstance(outcome, Certificate):
        doc = certificate_to_json(outcome)
        doc["outcome"] = "certificate"
        code = EXIT_CERTIFICATE
    else:
        assert isinstance(outcome, ConsistentMeasure)
        doc = measure_to_json(outcome)
        doc["outcome"] = "measure"
        code = EXIT_MEASURE
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code


def cmd_verify(args) -> int:
    try:
        doc = _load_json(args.certificate)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read certificate: {exc}") from exc
    try:
        cert = certificate_from_json(doc)
        ok = verify_certificate(cert, get_plugin(cert.plugin_name))
    except MalformedCertificateError as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    print("certificate: " + ("VALID" if ok else "INVALID"))
    return EXIT_OK if ok else EXIT_REJECTED


def cmd_measure_nwk(args) -> int:
    try:
        event = ClassCountEvent(q=args.q, m=args.m, k=args.k)
        res = measure_nwk(event)
    except (ValueError, RuntimeError) as exc:
        raise InputError(str(exc)) from exc
    how = "enumerated" if res.enumerated else "closed-form"
    print(f"nwk(q={args.q}, m={args.m}, k={args.k}) = {frac_str(res.value)} [{how}]")
    return EXIT_OK


def cmd_measure_basis_count(args) -> int:
    try:
        coords = tuple(int(t) for t in args.coords.split(","))
        n = count_bases_with_coords(args.q, args.m, coords)
    except (ValueError, RuntimeError) as exc:
        raise InputError(str(exc)) from exc
    print(f"bases(q={args.q}, m={args.m}, coords={args.coords}) = {n}")
    return EXIT_OK


def cmd_chains_valid(args) -> int:
    try:
        mats = enumerate_valid(args.n, args.q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    by_type: dict[int, int] = {}
    for M in mats:
        by_type[matrix_type(M)] = by_type.get(matrix_type(M), 0) + 1
    print(f"count: {len(mats)}")
    for k in sorted(by_type):
        print(f"type {k}: {by_type[k]}")
    for M in mats:
        print(";".join("".join(str(a) for a in row) for row in M.entries))
    return EXIT_OK


def cmd_chains_pushforward(args) -> int:
    try:
        rep = pushforward_check(args.q, args.m)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(
        f"orderings: {rep.n_orderings}\nsequences: {rep.n_sequences}\n"
        f"fiber sizes: {sorted(set(rep.fiber_sizes))}\nuniform: {rep.uniform}"
    )
    return EXIT_OK if rep.uniform else EXIT_INTERNAL


def cmd_chains_cylinder(args) -> int:
    q, k, n, depth = args.q, args.k, args.n, args.depth
    try:
        if args.vectors:
            vectors = [tuple(int(c) for c in v) for v in args.vectors.split(",")]
        else:
            vectors = [tuple(1 if j == i else 0 for j in range(depth)) for i in range(n)]
        if args.prefixes:
            prefixes = [tuple(int(c) for c in s) for s in args.prefixes.split(",")]
        else:
            prefixes = [(1,) * k for _ in range(n)]
        cyl = CoordinateCylinder(q=q, k=k, vectors=vectors, prefixes=prefixes)
        est = cylinder_estimate(cyl, depth=depth, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    target = q ** (-k * n)
    print(
        f"seed: {est.seed}\nsamples: {est.samples}\nhits: {est.hits}\n"
        f"estimate: {est.estimate:.6f} +/- {est.stderr:.6f}\n"
        f"limit value: {target:.6f} (q^-kn)"
    )
    return EXIT_OK


def cmd_chains_sample(args) -> int:
    try:
        o = sample_uniform_ordering(args.q, args.m, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(f"seed: {args.seed}")
    print("least basis: " + "|".join("".join(str(a) for a in v) for v in o.least_basis))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amencert", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("expansions", help="list the expansions of a structure")
    sp.add_argument("--class", dest="cls", required=True, choices=plugin_names())
    sp.add_argument("--base", required=True, help="structure JSON file")
    sp.set_defaults(func=cmd_expansions)

    sp = sub.add_parser("decide", help="decide one base: measure or certificate")
    sp.add_argument("--class", dest="cls", required=True, choices=plugin_names())
    sp.add_argument("--base", required=True)
    sp.add_argument("--out", help="also write the artifact to this path")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("verify", help="verify an obstruction certificate")
    sp.add_argument("--certificate", required=True)
    sp.set_defaults(func=cmd_verify)

    meas = sub.add_parser("measure", help="exact ordering-measure computations")
    msub = meas.add_subparsers(dest="subcommand", required=True)
    sp = msub.add_parser("nwk", help="measure of the class-count event")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_measure_nwk)
    sp = msub.add_parser("basis-count", help="ordered bases giving fixed coordinates")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--coords", required=True, help="comma-separated tuple, e.g. 1,0")
    sp.set_defaults(func=cmd_measure_basis_count)

    ch = sub.add_parser("chains", help="ordered-inclusion matrices and sampling")
    csub = ch.add_subparsers(dest="subcommand", required=True)
    sp = csub.add_parser("valid", help="enumerate valid inclusion matrices")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_chains_valid)
    sp = csub.add_parser("pushforward", help="exhaustive pushforward uniformity check")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_chains_pushforward)
    sp = csub.add_parser("cylinder", help="Monte-Carlo cylinder estimate")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--vectors", help="comma-separated digit strings, one per vector")
    sp.add_argument("--prefixes", help="comma-separated digit strings, one per vector")
    sp.set_defaults(func=cmd_chains_cylinder)
    sp = csub.add_parser("sample", help="one seeded uniform ordering")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(func=cmd_chains_sample)

    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    manifest = RunManifest(command=["amencert", *argv])
    if hasattr(args, "seed") and args.seed is None:
        args.seed = secrets.randbits(32)
        manifest.seed = args.seed
    elif getattr(args, "seed", None) is not None:
        manifest.seed = args.seed
    for attr in ("base", "certificate"):
        path = getattr(args, attr, None)
        if path:
            try:
                manifest.inputs[path] = _sha256(path)
            except OSError as exc:
                print(f"error: cannot read {path}: {exc}", file=sys.stderr)
                manifest.outcome_code = EXIT_INPUT
                manifest.emit()
                return EXIT_INPUT
    start = time.perf_counter()
    try:
        code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        code = EXIT_INTERNAL
    manifest.outcome_code = code
    manifest.elapsed_s = round(time.perf_counter() - start, 6)
    manifest.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
