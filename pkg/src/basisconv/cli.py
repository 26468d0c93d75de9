"""Command-line front end: convert, compose, matrix, bench, selftest.

Coefficient I/O uses a JSON object {"modulus": "<decimal>", "coeffs":
["<decimal>", ...]} with coefficients as decimal strings in [0, p); index i
is the coefficient of x^i (or of P_i on a family basis).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .compseq import compute_g, eval_seq, eval_seq_inv, eval_seq_t, parse_sequence
from .densemat import conversion_matrix
from .errors import AlgebraError
from .families import family_names, from_monomial, parse_family, to_monomial
from .modfield import DEFAULT_PRIME, Modulus, Poly
from .oracle import horner_compose, matvec, naive_convert, stirling_matrices

USAGE_ERROR = 2
DOMAIN_ERROR = 1


class UsageError(Exception):
    pass


def _read_vector(args, mod):
    text = sys.stdin.read() if args.input == "-" else open(args.input).read()
    try:
        obj = json.loads(text)
        coeffs = [int(c) for c in obj["coeffs"]]
        declared = obj.get("modulus")
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed input JSON: {exc}") from None
    if declared is not None and int(declared) != mod.p:
        raise UsageError(
            f"input declares modulus {declared}, command uses {mod.p}"
        )
    return [c % mod.p for c in coeffs]


def _write_vector(args, mod, coeffs):
    obj = {"modulus": str(mod.p), "coeffs": [str(c % mod.p) for c in coeffs]}
    out = json.dumps(obj)
    if args.output == "-":
        print(out)
    else:
        with open(args.output, "w") as fh:
            fh.write(out + "\n")


def _modulus(args):
    p = args.modulus
    try:
        return Modulus(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_convert(args):
    mod = _modulus(args)
    fam = parse_family(mod, args.family)
    a = _read_vector(args, mod)
    n = args.n if args.n is not None else max(len(a), 1)
    mod.check_precision(n)
    if args.dir == "to-monomial":
        out = to_monomial(a, fam, n, mod).coeffs
    else:
        out = from_monomial(Poly(mod, a, n), fam, n, mod)
    _write_vector(args, mod, out)
    return 0


def cmd_compose(args):
    mod = _modulus(args)
    try:
        ops = parse_sequence(args.sequence, mod)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    a = _read_vector(args, mod)
    n = args.n if args.n is not None else max(len(a), 1)
    mod.check_precision(n)
    A = Poly(mod, a, n)
    if args.transpose:
        out = eval_seq_t(A, ops, n)
    elif args.inverse:
        out = eval_seq_inv(A, ops, n)
    else:
        out = eval_seq(A, ops, n)
    _write_vector(args, mod, out.coeffs)
    return 0


def cmd_matrix(args):
    mod = _modulus(args)
    fam = parse_family(mod, args.family)
    n = args.n
    mod.check_precision(n)
    rows = [[0] * n for _ in range(n)]
    for j in range(n):
        e = [0] * n
        e[j] = 1
        if args.dir == "to-monomial":
            col = to_monomial(e, fam, n, mod).coeffs
        else:
            col = from_monomial(Poly(mod, e, n), fam, n, mod)
        for i in range(n):
            rows[i][j] = col[i]
    lines = [",".join(str(x) for x in row) for row in rows]
    text = "\n".join(lines)
    if args.output == "-":
        print(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return 0


def _bench_naive_matrix(fam, n, mod):
    """Conversion matrix assembled in one shot; setup for the naive timing."""
    return conversion_matrix(fam.spec, n, mod)


def cmd_bench(args):
    mod = _modulus(args)
    fam = parse_family(mod, args.family)
    rng = random.Random(12345)
    lines = ["n,fast_s,naive_s,naive_with_setup_s"]
    crossover = None
    n = 16
    while n <= args.n_max:
        a = [rng.randrange(mod.p) for _ in range(n)]
        to_monomial(a, fam, n, mod)       # warm caches (trees, twiddles)
        t0 = time.perf_counter()
        to_monomial(a, fam, n, mod)
        fast_s = time.perf_counter() - t0
        if n <= args.naive_max:
            t1 = time.perf_counter()
            M = _bench_naive_matrix(fam, n, mod)
            setup_s = time.perf_counter() - t1
            cs = fam.prefactor(n)
            b = [a[j] * mod.inv(cs[j]) % mod.p for j in range(n)]
            t2 = time.perf_counter()
            matvec(mod, M, b)
            naive_s = time.perf_counter() - t2
            lines.append(
                f"{n},{fast_s:.6f},{naive_s:.6f},{naive_s + setup_s:.6f}"
            )
            if crossover is None and fast_s < naive_s:
                crossover = n
        else:
            lines.append(f"{n},{fast_s:.6f},,")
        n *= 2
    text = "\n".join(lines)
    if args.csv == "-":
        print(text)
    else:
        with open(args.csv, "w") as fh:
            fh.write(text + "\n")
    if crossover is not None:
        print(f"# fast path first beats naive apply at n = {crossover}", file=sys.stderr)
    return 0


def cmd_selftest(args):
    mod = _modulus(args)
    rng = random.Random(2024)
    sizes = [8, 24] if args.quick else [8, 24, 48, 64]
    names = ["laguerre(alpha=3)", "hermite", "falling", "bell"]
    if not args.quick:
        names += ["jacobi(alpha=3,beta=5)", "fibonacci", "mott", "bessel",
                  "charlier(a=2)", "mittag_leffler"]
    failures = 0
    for name in names:
        fam = parse_family(mod, name)
        for n in sizes:
            a = [rng.randrange(mod.p) for _ in range(n)]
            # oracle equivalence of the h-sequence evaluation
            truncs = compute_g(fam.spec.h_ops, n, mod)
            g = truncs.g[-1] if fam.spec.h_ops else Poly.x(mod, n)
            fast = eval_seq(Poly(mod, a, n), fam.spec.h_ops, n)
            slow = horner_compose(Poly(mod, a, n), g, n)
            if fast.coeffs != slow.coeffs:
                print(f"FAIL eval oracle {name} n={n}")
                failures += 1
            # round trip through the basis conversion
            try:
                A = to_monomial(a, fam, n, mod)
                back = from_monomial(A, fam, n, mod)
                if back != a:
                    print(f"FAIL round-trip {name} n={n}")
                    failures += 1
            except AlgebraError as exc:
                print(f"FAIL conversion {name} n={n}: {exc}")
                failures += 1
    # Stirling ground truth for the falling-factorial entry
    n = 12
    s, S = stirling_matrices(mod, n)
    fam = parse_family(mod, "falling")
    for j in range(n):
        e = [0] * n
        e[j] = 1
        col = to_monomial(e, fam, n, mod).coeffs
        if col != [s[j][i] for i in range(n)]:
            print(f"FAIL stirling column {j}")
            failures += 1
    if failures:
        print(f"selftest: {failures} failure(s)")
        return 1
    print("selftest: all checks passed")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="basisconv",
        description="Polynomial basis conversion over a prime field.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_required=False):
        p.add_argument("--modulus", type=int, default=DEFAULT_PRIME)
        if n_required:
            p.add_argument("--n", type=int, required=True)
        else:
            p.add_argument("--n", type=int, default=None)

    pc = sub.add_parser("convert", help="convert between bases")
    pc.add_argument("--family", required=True,
                    help="e.g. hermite or jacobi(alpha=3,beta=5); known: "
                         + ", ".join(family_names()))
    pc.add_argument("--dir", choices=["to-monomial", "from-monomial"], required=True)
    common(pc)
    pc.add_argument("--input", default="-")
    pc.add_argument("--output", default="-")
    pc.set_defaults(func=cmd_convert)

    pk = sub.add_parser("compose", help="apply a composition-sequence map")
    pk.add_argument("--sequence", required=True,
                    help='semicolon tokens A:a M:l P:k R:k,alpha,r Inv E L')
    common(pk)
    grp = pk.add_mutually_exclusive_group()
    grp.add_argument("--transpose", action="store_true")
    grp.add_argument("--inverse", action="store_true")
    pk.add_argument("--input", default="-")
    pk.add_argument("--output", default="-")
    pk.set_defaults(func=cmd_compose)

    pm = sub.add_parser("matrix", help="dump a conversion matrix as CSV")
    pm.add_argument("--family", required=True)
    pm.add_argument("--dir", choices=["to-monomial", "from-monomial"],
                    default="to-monomial")
    common(pm, n_required=True)
    pm.add_argument("--output", default="-")
    pm.set_defaults(func=cmd_matrix)

    pb = sub.add_parser("bench", help="benchmark fast vs naive conversion")
    pb.add_argument("--family", required=True)
    pb.add_argument("--modulus", type=int, default=DEFAULT_PRIME)
    pb.add_argument("--n-max", type=int, default=4096)
    pb.add_argument("--naive-max", type=int, default=4096,
                    help="largest n for the quadratic baseline columns")
    pb.add_argument("--csv", default="-")
    pb.set_defaults(func=cmd_bench)

    ps = sub.add_parser("selftest", help="run built-in oracle checks")
    ps.add_argument("--modulus", type=int, default=DEFAULT_PRIME)
    ps.add_argument("--quick", action="store_true")
    ps.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except AlgebraError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
