"""Composition sequences and their evaluation maps.

A composition sequence is a list of power-series operators (add, mul, power,
root, inverse, exp, log) that, applied in order starting from the identity
series x, builds a target series g.  This module computes the staggered
truncations of every intermediate series, evaluates the linear map
A -> A(g) mod x^n by structural recursion over the sequence, and provides
the transposed and inverse maps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AmbiguousValuation,
    DomainViolation,
    InvalidOperatorParam,
    NotInvertible,
    NotTangentToIdentity,
)
from .evalgrid import exp_map, exp_map_t, log_map, log_map_t
from .modfield import Modulus, Poly, mul_trunc, mul_trunc_t
from .polyops import (
    find_degrees,
    lincomb,
    lincomb_t,
    power_subst,
    power_subst_t,
    reverse,
    scale,
    split,
    split_t,
    taylor_shift,
    taylor_shift_t,
    truncate,
)
from .seriesops import (
    series_add_const,
    series_exp,
    series_log,
    series_mul_const,
    series_pow,
    series_root,
    unit_pow,
)


@dataclass(frozen=True)
class Add:
    a: int


@dataclass(frozen=True)
class Mul:
    lam: int


@dataclass(frozen=True)
class Pow:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidOperatorParam("Pow needs k >= 1")


@dataclass(frozen=True)
class Root:
    k: int
    alpha: int
    r: int

    def __post_init__(self):
        if self.k < 1 or self.r < 0:
            raise InvalidOperatorParam("Root needs k >= 1 and r >= 0")


@dataclass(frozen=True)
class Inv:
    pass


@dataclass(frozen=True)
class Exp:
    pass


@dataclass(frozen=True)
class Log:
    pass


CompositionOp = Add | Mul | Pow | Root | Inv | Exp | Log


def _check_op(op: CompositionOp, mod: Modulus):
    if isinstance(op, Mul) and op.lam % mod.p == 0:
        raise InvalidOperatorParam("Mul needs a nonzero constant")
    if isinstance(op, Root) and op.alpha % mod.p == 0:
        raise InvalidOperatorParam("Root needs alpha != 0")


@dataclass(frozen=True)
class CompositionSequence:
    ops: tuple
    cost_class: str  # "M" or "MlogM"

    def __len__(self):
        return len(self.ops)


def cost_class_of(ops) -> str:
    return "MlogM" if any(isinstance(o, (Exp, Log)) for o in ops) else "M"


@dataclass(frozen=True)
class SequenceTruncations:
    """g_1..g_L at the staggered precisions of the root-aware schedule."""

    g: tuple          # tuple of Poly; g[i] is g_{i+1} at precision schedule[i]
    schedule: tuple   # n_1..n_L with n_L = n


def precision_schedule(ops, n):
    """n_L = n and n_{i-1} = n_i + r(k-1) across each root operator."""
    sched = [0] * (len(ops) + 1)
    sched[len(ops)] = n
    for i in range(len(ops), 0, -1):
        op = ops[i - 1]
        eps = op.r * (op.k - 1) if isinstance(op, Root) else 0
        sched[i - 1] = sched[i] + eps
    return sched


def _apply_op(op, g: Poly, n_out: int, step: int) -> Poly:
    """One operator applied to a truncation, with its domain check."""
    mod = g.mod
    if isinstance(op, Add):
        return truncate(series_add_const(g, op.a), n_out)
    if isinstance(op, Mul):
        return truncate(series_mul_const(g, op.lam), n_out)
    if isinstance(op, Pow):
        return series_pow(g, op.k, n_out)
    if isinstance(op, Inv):
        if g.constant() == 0:
            raise DomainViolation(f"step {step}: Inv needs g(0) != 0")
        from .seriesops import series_inv

        return series_inv(g, n_out)
    if isinstance(op, Exp):
        if g.constant() != 0:
            raise DomainViolation(f"step {step}: Exp needs g(0) = 0")
        return series_exp(truncate(g, n_out), n_out)
    if isinstance(op, Log):
        if g.constant() != 0:
            raise DomainViolation(f"step {step}: Log needs g(0) = 0")
        return series_log(truncate(g, n_out), n_out)
    if isinstance(op, Root):
        if g.valuation() is None:
            raise AmbiguousValuation(
                f"step {step}: truncation is zero, valuation unknown"
            )
        try:
            return series_root(g, op.k, op.alpha, op.r, n_out)
        except DomainViolation as exc:
            raise DomainViolation(f"step {step}: {exc}") from None
    raise TypeError(f"unknown operator {op!r}")


def compute_g(ops, n: int, mod: Modulus) -> SequenceTruncations:
    """Truncations of every intermediate series, following the schedule."""
    mod.check_precision(n)
    key = ("truncs", tuple(ops), n)
    cached = mod._memo.get(key)
    if cached is not None:
        return cached
    for op in ops:
        _check_op(op, mod)
    sched = precision_schedule(ops, n)
    g = Poly.x(mod, max(sched[0], 1))
    out = []
    for i, op in enumerate(ops):
        g = _apply_op(op, g, sched[i + 1], i + 1)
        out.append(g)
    result = SequenceTruncations(tuple(out), tuple(sched[1:]))
    mod._memo[key] = result
    return result


def validate(ops, n: int, mod: Modulus) -> CompositionSequence:
    """Check the sequence is defined at x (via its truncations) and tag it."""
    compute_g(ops, n, mod)
    return CompositionSequence(tuple(ops), cost_class_of(ops))


def _series_at(truncs: SequenceTruncations, mod, ell, n) -> Poly:
    """g_ell mod x^n (g_0 = x)."""
    if ell == 0:
        return Poly.x(mod, n)
    return truncate(truncs.g[ell - 1], n)


def _inv_unit_pow(ops, lp, e, n, truncs, mod):
    """g_lp^e mod x^n; input-independent, cached across evaluations."""
    key = ("upow", tuple(ops[:lp]), e, n)
    P = mod._memo.get(key)
    if P is None:
        P = unit_pow(_series_at(truncs, mod, lp, n), e, n)
        mod._memo[key] = P
    return P


def _root_powers(ops, ell, k, n, truncs, mod):
    """(1, h, ..., h^(k-1)) mod x^n for the root series h = g_ell; cached."""
    key = ("rootpow", tuple(ops[:ell]), k, n)
    powers = mod._memo.get(key)
    if powers is None:
        h = _series_at(truncs, mod, ell, n)
        powers = [Poly(mod, [1], n)]
        for _ in range(1, k):
            powers.append(mul_trunc(powers[-1], h, n))
        mod._memo[key] = powers
    return powers


def _eval_aux(A, m, n, ell, ops, truncs, mod):
    if ell == 0:
        return truncate(A, n)
    op = ops[ell - 1]
    lp = ell - 1
    if isinstance(op, Mul):
        return _eval_aux(scale(A, op.lam), m, n, lp, ops, truncs, mod)
    if isinstance(op, Add):
        return _eval_aux(taylor_shift(A, op.a), m, n, lp, ops, truncs, mod)
    if isinstance(op, Pow):
        B = power_subst(A, op.k)
        return _eval_aux(B, op.k * (m - 1) + 1, n, lp, ops, truncs, mod)
    if isinstance(op, Inv):
        B = reverse(A)
        C = _eval_aux(B, m, n, lp, ops, truncs, mod)
        return mul_trunc(C, _inv_unit_pow(ops, lp, 1 - m, n, truncs, mod), n)
    if isinstance(op, Root):
        dims = find_degrees(m, op.k)
        powers = _root_powers(ops, ell, op.k, n, truncs, mod)
        parts = split(A, op.k)
        outs = [
            _eval_aux(parts[i], max(dims[i], 1), n, lp, ops, truncs, mod)
            for i in range(op.k)
        ]
        return lincomb(outs, powers, n)
    if isinstance(op, Exp):
        return _eval_aux(exp_map(A, n), n, n, lp, ops, truncs, mod)
    if isinstance(op, Log):
        return _eval_aux(log_map(A, n), n, n, lp, ops, truncs, mod)
    raise TypeError(f"unknown operator {op!r}")


def eval_seq(A: Poly, ops, n: int, truncs: SequenceTruncations | None = None) -> Poly:
    """A(g) mod x^n where g is the series output by the sequence."""
    mod = A.mod
    mod.check_precision(n)
    if truncs is None:
        truncs = compute_g(ops, n, mod)
    return _eval_aux(truncate(A, n), n, n, len(ops), ops, truncs, mod)


def _eval_aux_t(A, m, n, ell, ops, truncs, mod):
    if ell == 0:
        return truncate(A, m)
    op = ops[ell - 1]
    lp = ell - 1
    if isinstance(op, Mul):
        B = _eval_aux_t(A, m, n, lp, ops, truncs, mod)
        return scale(B, op.lam)
    if isinstance(op, Add):
        B = _eval_aux_t(A, m, n, lp, ops, truncs, mod)
        return taylor_shift_t(B, op.a)
    if isinstance(op, Pow):
        B = _eval_aux_t(A, op.k * (m - 1) + 1, n, lp, ops, truncs, mod)
        return power_subst_t(B, op.k, m)
    if isinstance(op, Inv):
        B = mul_trunc_t(A, _inv_unit_pow(ops, lp, 1 - m, n, truncs, mod), n)
        C = _eval_aux_t(B, m, n, lp, ops, truncs, mod)
        return reverse(C)
    if isinstance(op, Root):
        dims = find_degrees(m, op.k)
        powers = _root_powers(ops, ell, op.k, n, truncs, mod)
        parts = lincomb_t(A, powers)
        outs = [
            _eval_aux_t(parts[i], max(dims[i], 1), n, lp, ops, truncs, mod)
            for i in range(op.k)
        ]
        return split_t(outs, m)
    if isinstance(op, Exp):
        B = _eval_aux_t(A, n, n, lp, ops, truncs, mod)
        return exp_map_t(B, m)
    if isinstance(op, Log):
        B = _eval_aux_t(A, n, n, lp, ops, truncs, mod)
        return log_map_t(B, m)
    raise TypeError(f"unknown operator {op!r}")


def eval_seq_t(A: Poly, ops, n: int, truncs: SequenceTruncations | None = None) -> Poly:
    """Transpose of eval_seq(., ops, n)."""
    mod = A.mod
    mod.check_precision(n)
    if truncs is None:
        truncs = compute_g(ops, n, mod)
    return _eval_aux_t(truncate(A, n), n, n, len(ops), ops, truncs, mod)


def reverse_sequence(ops, truncs: SequenceTruncations, mod: Modulus):
    """The sequence computing the compositional inverse of the output series.

    Requires the output g to have valuation exactly 1 (g(0)=0, g'(0)!=0);
    the compositional inverse exists precisely then.  Power operators
    reverse into roots: the intermediate the root acts on is the forward
    intermediate composed with the inverse series, which scales its leading
    coefficient by g'(0)^(-val).
    """
    L = len(ops)
    out = truncs.g[-1] if L else None
    if L == 0:
        return ()
    if out.dim < 2 or out.coeffs[0] != 0 or out.coeffs[1] == 0:
        raise NotTangentToIdentity(
            "sequence output has no compositional inverse (needs valuation 1); "
            "use eval_inv for the general linear-map inverse"
        )
    g1_inv = mod.inv(out.coeffs[1])
    rev = []
    for i in range(L, 0, -1):
        op = ops[i - 1]
        if isinstance(op, Add):
            rev.append(Add((-op.a) % mod.p))
        elif isinstance(op, Mul):
            rev.append(Mul(mod.inv(op.lam)))
        elif isinstance(op, Inv):
            rev.append(Inv())
        elif isinstance(op, Exp):
            rev.append(Log())
        elif isinstance(op, Log):
            rev.append(Exp())
        elif isinstance(op, Root):
            rev.append(Pow(op.k))
        elif isinstance(op, Pow):
            prec = truncs.schedule[i - 2] if i >= 2 else max(truncs.schedule[0], 2)
            prev = _series_at(truncs, mod, i - 1, prec)
            val = prev.valuation()
            if val is None:
                raise AmbiguousValuation(
                    f"step {i}: zero truncation, cannot reverse powering"
                )
            alpha = prev.coeffs[val] * mod.pow(g1_inv, val) % mod.p
            rev.append(Root(op.k, alpha, val))
        else:
            raise TypeError(f"unknown operator {op!r}")
    return tuple(rev)


def eval_seq_inv(A: Poly, ops, n: int) -> Poly:
    """Inverse of eval_seq(., ops, n); needs g'(0) != 0."""
    mod = A.mod
    mod.check_precision(n)
    probe = compute_g(ops, max(n, 2), mod)
    out = probe.g[-1] if ops else Poly.x(mod, 2)
    g0 = out.coeffs[0]
    g1 = out.coeffs[1] if out.dim > 1 else 0
    if g1 == 0:
        raise NotInvertible("g'(0) = 0: evaluation map is singular")
    if g0 == 0 and g1 == 1:
        ext = tuple(ops)
    else:
        ext = tuple(ops) + (Add((-g0) % mod.p), Mul(mod.inv(g1)))
    truncs = compute_g(ext, max(n, 2), mod)
    rev_ops = reverse_sequence(ext, truncs, mod)
    B = eval_seq(truncate(A, n), rev_ops, n)
    if g0 == 0 and g1 == 1:
        return B
    return taylor_shift(scale(B, mod.inv(g1)), (-g0) % mod.p)


# -- sequence mini-language ------------------------------------------------


def _parse_scalar(token: str, mod: Modulus) -> int:
    token = token.strip()
    if "/" in token:
        num, den = token.split("/", 1)
        return int(num) * mod.inv(int(den) % mod.p) % mod.p
    return int(token) % mod.p


def parse_sequence(text: str, mod: Modulus):
    """Parse the semicolon-separated mini-language, e.g. "A:1;Inv;M:-2".

    Tokens: A:a  M:l  P:k  R:k,alpha,r  Inv  E  L.  Scalar parameters are
    integers (or a/b fractions) reduced mod p; k and r are plain integers.
    """
    ops = []
    for raw in text.split(";"):
        tok = raw.strip()
        if not tok:
            continue
        head, _, args = tok.partition(":")
        head = head.strip()
        if head == "A":
            ops.append(Add(_parse_scalar(args, mod)))
        elif head == "M":
            ops.append(Mul(_parse_scalar(args, mod)))
        elif head == "P":
            ops.append(Pow(int(args)))
        elif head == "R":
            k, alpha, r = args.split(",")
            ops.append(Root(int(k), _parse_scalar(alpha, mod), int(r)))
        elif head == "Inv":
            ops.append(Inv())
        elif head == "E":
            ops.append(Exp())
        elif head == "L":
            ops.append(Log())
        else:
            raise ValueError(f"unknown sequence token {tok!r}")
    for op in ops:
        _check_op(op, mod)
    return tuple(ops)


def format_sequence(ops) -> str:
    parts = []
    for op in ops:
        if isinstance(op, Add):
            parts.append(f"A:{op.a}")
        elif isinstance(op, Mul):
            parts.append(f"M:{op.lam}")
        elif isinstance(op, Pow):
            parts.append(f"P:{op.k}")
        elif isinstance(op, Root):
            parts.append(f"R:{op.k},{op.alpha},{op.r}")
        elif isinstance(op, Inv):
            parts.append("Inv")
        elif isinstance(op, Exp):
            parts.append("E")
        elif isinstance(op, Log):
            parts.append("L")
    return ";".join(parts)
