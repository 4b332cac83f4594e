"""Command-line front end.

Exit codes: 0 pass/success, 1 scientific failure, 2 usage or format error.
Reports go to stdout as JSON; diagnostics go to stderr.
"""

import argparse
import sys

import numpy as np

from . import analysis, io, schmidt, superop
from .hermitian import random_hermitian
from .tensor import DimProfile

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dims(text):
    try:
        return DimProfile.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return val


def _nonneg_int(text):
    val = int(text)
    if val < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return val


def _seed(text):
    val = int(text)
    if not 0 <= val < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return val


def _tol(text):
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {text}")
    return val


def _flags(text):
    flags = tuple(tok.strip() for tok in text.split(","))
    if any(f not in superop.FLAG_NAMES for f in flags):
        raise argparse.ArgumentTypeError(f"flags must be a comma list of 'id'/'t', got {text}")
    return flags


def _emit(text, out=None):
    if out:
        io.write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _load_map(path, profile=None):
    """A PreserverMap file, or a CanonicalForm file converted to its map."""
    obj = io.read_json(path)
    if not isinstance(obj, dict):
        raise io.FormatError(f"{path}: expected a JSON object")
    if "flags" in obj:
        form = superop.CanonicalForm.from_json(obj)
        if profile is not None and form.profile != profile:
            raise UsageError(f"--dims {profile.dims} does not match the file's dims {form.profile.dims}")
        return superop.canonical_map(form)
    return superop.PreserverMap.from_json(obj)


def _require_size(phi, profile):
    if phi.N != profile.N:
        raise UsageError(f"map acts on H_{phi.N} but --dims {profile.dims} gives N={profile.N}")


def cmd_gen(args):
    kind = args.kind
    if kind in ("canonical", "certificate", "map") and args.dims is None:
        raise UsageError(f"gen {kind} needs --dims")
    if kind == "canonical":
        if args.flags is not None and len(args.flags) != args.dims.m:
            raise UsageError(f"--flags needs {args.dims.m} entries")
        form = superop.random_canonical_form(args.dims, args.seed, args.sign, args.flags)
        payload = form.to_json()
    elif kind == "unitary":
        n = args.n or (args.dims.N if args.dims else None)
        if n is None:
            raise UsageError("gen unitary needs --n or --dims")
        payload = io.matrix_to_json(superop.haar_unitary(n, args.seed))
    elif kind == "random-hermitian":
        n = args.n or (args.dims.N if args.dims else None)
        if n is None:
            raise UsageError("gen random-hermitian needs --n or --dims")
        payload = io.matrix_to_json(random_hermitian(n, np.random.default_rng(args.seed)))
    elif kind == "certificate":
        if args.dims.m < 2:
            raise UsageError("certificates need at least two factors in --dims")
        certs = analysis.certificate_matrices(args.dims)
        payload = {"dims": list(args.dims.dims), "certificates": [io.matrix_to_json(C) for C in certs]}
    else:
        payload = _gen_map(args).to_json()
    _emit(io.dumps(payload), args.out)
    return EXIT_OK


def _gen_map(args):
    profile = args.dims
    if args.form == "canonical":
        form = superop.random_canonical_form(profile, args.seed, args.sign, args.flags)
        phi = superop.canonical_map(form)
    elif args.form == "identity":
        phi = superop.identity_map(profile.N)
    elif args.form == "transpose":
        phi = superop.transpose_map(profile.N)
    else:
        if not 1 <= args.slot <= profile.m:
            raise UsageError(f"--slot must lie in 1..{profile.m}")
        phi = superop.partial_transpose_map(profile, args.slot)
    if args.perturb:
        noise = np.random.default_rng([args.seed, 7]).standard_normal(phi.matrix.shape)
        phi = superop.PreserverMap(phi.N, phi.matrix + args.perturb * noise)
    return phi


def cmd_apply(args):
    phi = _load_map(args.map)
    X = io.matrix_from_json(io.read_json(args.matrix))
    if X.shape != (phi.N, phi.N):
        raise UsageError(f"matrix shape {X.shape} does not match map size N={phi.N}")
    _emit(io.dumps(io.matrix_to_json(superop.apply(phi, X))), args.out)
    return EXIT_OK


def cmd_check(args):
    phi = _load_map(args.map, args.dims)
    _require_size(phi, args.dims)
    kw = dict(samples=args.samples, seed=args.seed, tol=args.tol)
    if args.mode == "spectrum":
        report = analysis.check_spectrum_preservation(phi, args.dims, **kw)
    elif args.mode == "radius":
        report = analysis.check_radius_preservation(phi, args.dims, **kw)
    else:
        if args.dims.m < 2:
            raise UsageError("global mode needs at least two factors in --dims")
        inner = "radius" if args.mode == "global-radius" else "spectrum"
        report = analysis.check_global_form(phi, args.dims, mode=inner, **kw)
    _emit(io.dumps(report.to_json()))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_decompose(args):
    if args.dims.m > args.max_parties:
        raise UsageError(f"{args.dims.m} factors exceeds --max-parties {args.max_parties}")
    phi = _load_map(args.map, args.dims)
    _require_size(phi, args.dims)
    result = analysis.decompose_canonical(phi, args.dims, args.mode, args.tol, args.max_parties)
    _emit(io.dumps(result.to_json()), args.out)
    return EXIT_OK if result.success else EXIT_FAIL


def _check_mn(args, size):
    if args.m * args.n != size:
        raise UsageError(f"--m {args.m} x --n {args.n} does not match size {size}")


def cmd_norm(args):
    obj = io.read_json(args.path)
    is_matrix = isinstance(obj, dict) and "rows" in obj
    if args.op and not is_matrix:
        raise UsageError("--op needs a matrix file")
    if not 1 <= args.k <= min(args.m, args.n):
        raise UsageError(f"--k must lie in 1..{min(args.m, args.n)}")
    if is_matrix:
        C = io.matrix_from_json(obj)
        if C.shape[0] != C.shape[1]:
            raise UsageError("operator norm needs a square matrix")
        _check_mn(args, C.shape[0])
        value = schmidt.k_operator_norm(C, args.m, args.n, args.k, args.restarts,
                                        args.iterations, seed=args.seed)
        payload = {"kind": "operator", "k": args.k, "m": args.m, "n": args.n,
                   "restarts": args.restarts, "seed": args.seed, "value": value}
    else:
        w = io.vector_from_json(obj)
        _check_mn(args, w.size)
        payload = {"kind": "vector", "k": args.k, "m": args.m, "n": args.n,
                   "value": schmidt.k_vector_norm(w, args.m, args.n, args.k)}
    _emit(io.dumps(payload), args.out)
    return EXIT_OK


def cmd_schmidt(args):
    w = io.vector_from_json(io.read_json(args.path))
    _check_mn(args, w.size)
    try:
        dec = schmidt.schmidt_decompose(w, args.m, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {
        "coefficients": [float(s) for s in dec.coefficients],
        "rank": dec.rank,
        "left_vectors": io.matrix_to_json(dec.left_vectors),
        "right_vectors": io.matrix_to_json(dec.right_vectors),
    }
    _emit(io.dumps(payload), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="tensorpreservers", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate canonical forms, unitaries, certificates, maps")
    p.add_argument("kind", choices=["canonical", "unitary", "certificate", "random-hermitian", "map"])
    p.add_argument("--dims", type=_dims)
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--sign", type=int, choices=[1, -1], default=1)
    p.add_argument("--flags", type=_flags)
    p.add_argument("--form", choices=["canonical", "identity", "transpose", "partial-transpose"],
                   default="canonical", help="map kind for 'gen map'")
    p.add_argument("--slot", type=int, default=2, help="partial-transpose slot for 'gen map'")
    p.add_argument("--perturb", type=float, default=0.0,
                   help="add this multiple of a seeded Gaussian matrix to 'gen map' output")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("apply", help="apply a map to a Hermitian matrix")
    p.add_argument("map")
    p.add_argument("matrix")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("check", help="sampled preservation check")
    p.add_argument("map")
    p.add_argument("--dims", type=_dims, required=True)
    p.add_argument("--mode", choices=["spectrum", "radius", "global", "global-radius"], default="spectrum")
    p.add_argument("--samples", type=_nonneg_int, default=200)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--tol", type=_tol, default=1e-9)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="recover sign, unitary and transposition flags")
    p.add_argument("map")
    p.add_argument("--dims", type=_dims, required=True)
    p.add_argument("--mode", choices=["spectrum", "radius"], default="spectrum")
    p.add_argument("--tol", type=_tol, default=analysis.DECOMP_TOL)
    p.add_argument("--max-parties", type=_positive_int, default=analysis.MAX_PARTIES)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("norm", help="k-norm of a vector, or |||C|||_k of a matrix with --op")
    p.add_argument("path")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--op", action="store_true", help="require a matrix input")
    p.add_argument("--restarts", type=_positive_int, default=32)
    p.add_argument("--iterations", type=_positive_int, default=200)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("schmidt", help="Schmidt decomposition of a vector")
    p.add_argument("path")
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_schmidt)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except (UsageError, io.FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
