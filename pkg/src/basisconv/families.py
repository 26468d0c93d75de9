"""Catalog of classical polynomial families as structured bivariate specs.

Each family is described by the quintuple (u, v, f, g, h) of its generating
series  sum_n c_n P_n(x) t^n = u(x) v(t) f(g(x) h(t))  together with the
prefactor sequence c_n.  The public conversions speak in the actual
polynomials P_n: the prefactor diagonal is applied internally.

Families whose g/h sequences avoid exp and log convert in O(M(n)); the
Sheffer-type families (h built from a logarithm or exponential) convert in
O(M(n) log n).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bivariate import BivariateSpec, eval_bivariate, eval_bivariate_inv
from .compseq import Add, Exp, Inv, Log, Mul, Pow, Root, cost_class_of
from .errors import SpecViolation, ZeroCoefficient
from .modfield import Modulus, Poly
from .seriesops import series_inv, unit_pow


@dataclass(frozen=True)
class FamilyDescriptor:
    name: str
    params: dict
    spec: BivariateSpec
    prefactor: object     # callable n -> [c_0, ..., c_{n-1}]

    @property
    def cost_class(self):
        return cost_class_of(self.spec.g_ops + self.spec.h_ops)

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.params.items()))))


# -- coefficient generators ------------------------------------------------


def _ones(mod):
    return lambda n: [1] * n


def _inv_fact(mod):
    return lambda n: list(mod.inv_factorials(n))


def _exp_coeffs(mod, c):
    def gen(n):
        invf = mod.inv_factorials(n)
        out = []
        acc = 1
        for k in range(n):
            out.append(acc * invf[k] % mod.p)
            acc = acc * c % mod.p
        return out

    return gen


def _binomial_series(mod, c, e):
    """(1 + c t)^e for a field-element exponent e, via the term recurrence."""

    def gen(n):
        invs = mod.inverses(n)
        out = [1]
        for k in range(1, n):
            term = out[-1] * c % mod.p
            term = term * ((e - (k - 1)) % mod.p) % mod.p
            out.append(term * invs[k] % mod.p)
        return out

    return gen


def _hyp2f1_coeffs(mod, a, b, c):
    """Coefficients of 2F1(a, b; c; z): (a)_k (b)_k / ((c)_k k!)."""

    def gen(n):
        out = [1]
        for k in range(1, n):
            den = (c + k - 1) % mod.p
            if den == 0:
                raise ZeroCoefficient(
                    f"2F1 lower parameter hits zero at index {k}"
                )
            term = out[-1] * ((a + k - 1) % mod.p) % mod.p
            term = term * ((b + k - 1) % mod.p) % mod.p
            term = term * mod.inv(den * k % mod.p) % mod.p
            out.append(term)
        return out

    return gen


def _spread_f(mod):
    # z / (1 + 4z): f_0 = 0, f_k = (-4)^(k-1)
    def gen(n):
        out = [0]
        acc = 1
        for _ in range(1, n):
            out.append(acc)
            acc = acc * (-4) % mod.p
        return out

    return gen


def _unit_power_series(mod, base_fn, e):
    """coeffs of base^e where base(0) = 1 and e is a field residue."""

    def gen(n):
        base = Poly(mod, base_fn(n), n)
        return unit_pow(base, e % mod.p, n).coeffs

    return gen


def _exp_minus_one_over_t(mod):
    # (e^t - 1)/t: coefficient k is 1/(k+1)!
    def fn(n):
        invf = mod.inv_factorials(n + 1)
        return [invf[k + 1] for k in range(n)]

    return fn


def _log_one_plus_over_t(mod):
    # log(1+t)/t: coefficient k is (-1)^k/(k+1)
    def fn(n):
        invs = mod.inverses(n + 1)
        return [(-1) ** k * invs[k + 1] % mod.p for k in range(n)]

    return fn


def _inv_series(mod, base_fn):
    def gen(n):
        return series_inv(Poly(mod, base_fn(n), n), n).coeffs

    return gen


# -- prefactor sequences ---------------------------------------------------


def _poch_ratio(mod, num, den):
    """(num)_n / (den)_n; raises if a denominator factor vanishes."""

    def gen(n):
        dens = []
        for k in range(1, n):
            d = (den + k - 1) % mod.p
            if d == 0:
                raise ZeroCoefficient(f"Pochhammer ({den})_{k} vanishes")
            dens.append(d)
        dinvs = mod.batch_inv(dens)
        out = [1]
        for k in range(1, n):
            out.append(out[-1] * ((num + k - 1) % mod.p) % mod.p * dinvs[k - 1] % mod.p)
        return out

    return gen


def _poch_over_fact(mod, beta):
    def gen(n):
        invs = mod.inverses(n)
        out = [1]
        for k in range(1, n):
            out.append(out[-1] * ((beta + k - 1) % mod.p) % mod.p * invs[k] % mod.p)
        return out

    return gen


def _binom_prefactor(mod, N):
    def gen(n):
        invs = mod.inverses(n)
        out = [1]
        for k in range(1, n):
            out.append(out[-1] * ((N - k + 1) % mod.p) % mod.p * invs[k] % mod.p)
        return out

    return gen


# -- composition-sequence builders ----------------------------------------


def moebius_ops(mod, a, b, c, d):
    """Sequence for (a t + b)/(c t + d) as a power series; needs c d != 0."""
    a, b, c, d = a % mod.p, b % mod.p, c % mod.p, d % mod.p
    if c == 0 or d == 0:
        raise SpecViolation("moebius sequence needs c and d nonzero")
    e = (b - a * d % mod.p * mod.inv(c)) % mod.p
    f = a * mod.inv(c) % mod.p
    if e == 0:
        raise SpecViolation("degenerate moebius transform (constant value)")
    ops = [Mul(c), Add(d), Inv(), Mul(e)]
    if f:
        ops.append(Add(f))
    return tuple(ops)


def _jacobi_h_ops(mod):
    # 2t / (1+t)^2
    half = mod.inv(2)
    return (Add(1), Inv(), Mul(mod.p - 2), Add(1), Pow(2), Mul(mod.p - 1), Add(1), Mul(half))


def _fibonacci_h_ops(mod):
    # t / (1 - t^2)
    half = mod.inv(2)
    return (
        Pow(2),
        Mul(mod.p - 1),
        Add(1),
        Inv(),
        Mul(2),
        Add(mod.p - 1),
        Pow(2),
        Add(mod.p - 1),
        Root(2, 2, 1),
        Mul(half),
    )


def _mott_h_ops(mod):
    # (1 - sqrt(1 - t^2)) / t; the final root has leading term t/2
    half = mod.inv(2)
    return (
        Pow(2),
        Mul(mod.p - 1),
        Add(1),
        Root(2, 1, 0),
        Add(1),
        Inv(),
        Mul(2),
        Add(mod.p - 1),
        Root(2, half, 1),
    )


def _bessel_h_ops(mod):
    # 1 - sqrt(1 - 2t)
    return (Mul(mod.p - 2), Add(1), Root(2, 1, 0), Mul(mod.p - 1), Add(1))


def _log_ratio_ops(mod, a, b, c, d):
    """log((a t + b)/(c t + d)) with b = d (so the value at 0 is log 1 = 0)."""
    return moebius_ops(mod, a, b, c, d) + (Add(mod.p - 1), Log())


def _mittag_leffler_h_ops(mod):
    # log((1+t)/(1-t))
    return (Add(mod.p - 1), Inv(), Mul(mod.p - 2), Add(mod.p - 2), Log())


# -- family builders -------------------------------------------------------


def _int_param(params, key, default=None):
    if key not in params:
        if default is None:
            raise SpecViolation(f"missing parameter {key!r}")
        return default
    val = params[key]
    if not isinstance(val, int):
        raise SpecViolation(f"parameter {key!r} must be an integer")
    return val


def _sqrt_minus_one(mod):
    if mod.p % 4 != 1:
        raise SpecViolation(f"p = {mod.p} has no square root of -1 (p % 4 != 1)")
    return pow(mod.primitive_root, (mod.p - 1) // 4, mod.p)


def _build_laguerre(mod, params):
    alpha = _int_param(params, "alpha")
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(Mul(mod.p - 1),),
        h_ops=moebius_ops(mod, 1, 0, mod.p - 1, 1),
        v_coeffs=_binomial_series(mod, -1, -(1 + alpha)),
    )
    return FamilyDescriptor("laguerre", {"alpha": alpha}, spec, _ones(mod))


def _build_hermite(mod, params):
    def v(n):
        out = [0] * n
        invf = mod.inv_factorials(n)
        sign = 1
        for j in range(0, (n + 1) // 2):
            out[2 * j] = sign * invf[j] % mod.p
            sign = -sign
        return out

    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1), g_ops=(Mul(2),), h_ops=(), v_coeffs=v
    )
    return FamilyDescriptor("hermite", {}, spec, _inv_fact(mod))


def _build_jacobi(mod, params):
    alpha = _int_param(params, "alpha")
    beta = _int_param(params, "beta")
    half = mod.inv(2)
    s = (alpha + beta + 1) % mod.p
    spec = BivariateSpec(
        f_coeffs=_hyp2f1_coeffs(mod, s * half % mod.p, (s + 1) * half % mod.p, (beta + 1) % mod.p),
        g_ops=(Add(1),),
        h_ops=_jacobi_h_ops(mod),
        v_coeffs=_binomial_series(mod, 1, -s),
    )
    pref = _poch_ratio(mod, s, (beta + 1) % mod.p)
    return FamilyDescriptor("jacobi", {"alpha": alpha, "beta": beta}, spec, pref)


def _build_fibonacci(mod, params):
    def v(n):
        return [1 if k % 2 == 0 else 0 for k in range(n)]

    spec = BivariateSpec(
        f_coeffs=_ones(mod), g_ops=(), h_ops=_fibonacci_h_ops(mod), v_coeffs=v
    )
    return FamilyDescriptor("fibonacci", {}, spec, _ones(mod))


def _build_euler(mod, params):
    alpha = _int_param(params, "alpha")

    def base(n):
        # (e^t + 1)/2
        invf = mod.inv_factorials(n)
        half = mod.inv(2)
        return [1] + [half * invf[k] % mod.p for k in range(1, n)]

    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(),
        h_ops=(),
        v_coeffs=_unit_power_series(mod, base, -alpha),
    )
    return FamilyDescriptor("euler", {"alpha": alpha}, spec, _inv_fact(mod))


def _build_bernoulli(mod, params):
    alpha = _int_param(params, "alpha")
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(),
        h_ops=(),
        v_coeffs=_unit_power_series(mod, _exp_minus_one_over_t(mod), -alpha),
    )
    return FamilyDescriptor("bernoulli", {"alpha": alpha}, spec, _inv_fact(mod))


def _build_mott(mod, params):
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(Mul(mod.p - 1),),
        h_ops=_mott_h_ops(mod),
    )
    return FamilyDescriptor("mott", {}, spec, _inv_fact(mod))


def _build_spread(mod, params):
    def v(n):
        # (1+t)/(1-t)
        return [1] + [2] * (n - 1)

    h_ops = (Mul(mod.p - 1),) + _jacobi_h_ops(mod) + (Mul(mod.inv(mod.p - 2)),)
    spec = BivariateSpec(f_coeffs=_spread_f(mod), g_ops=(), h_ops=h_ops, v_coeffs=v)
    return FamilyDescriptor("spread", {}, spec, _ones(mod))


def _build_bessel(mod, params):
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1), g_ops=(), h_ops=_bessel_h_ops(mod)
    )
    return FamilyDescriptor("bessel", {}, spec, _inv_fact(mod))


def _build_falling(mod, params):
    spec = BivariateSpec(f_coeffs=_exp_coeffs(mod, 1), g_ops=(), h_ops=(Log(),))
    return FamilyDescriptor("falling", {}, spec, _inv_fact(mod))


def _build_bell(mod, params):
    spec = BivariateSpec(f_coeffs=_exp_coeffs(mod, 1), g_ops=(), h_ops=(Exp(),))
    return FamilyDescriptor("bell", {}, spec, _inv_fact(mod))


def _build_bernoulli2(mod, params):
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(),
        h_ops=(Log(),),
        v_coeffs=_inv_series(mod, _log_one_plus_over_t(mod)),
    )
    return FamilyDescriptor("bernoulli2", {}, spec, _inv_fact(mod))


def _build_charlier(mod, params):
    a = _int_param(params, "a")
    if a % mod.p == 0:
        raise SpecViolation("charlier needs a != 0")
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(),
        h_ops=(Mul(mod.inv(a)), Log()),
        v_coeffs=_exp_coeffs(mod, mod.p - 1),
    )
    return FamilyDescriptor("charlier", {"a": a}, spec, _inv_fact(mod))


def _build_actuarial(mod, params):
    beta = _int_param(params, "beta")
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(Mul(mod.p - 1),),
        h_ops=(Exp(),),
        v_coeffs=_exp_coeffs(mod, beta),
    )
    return FamilyDescriptor("actuarial", {"beta": beta}, spec, _inv_fact(mod))


def _build_narumi(mod, params):
    a = _int_param(params, "a")
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(),
        h_ops=(Log(),),
        v_coeffs=_unit_power_series(mod, _log_one_plus_over_t(mod), -a),
    )
    return FamilyDescriptor("narumi", {"a": a}, spec, _inv_fact(mod))


def _build_peters(mod, params):
    lam = _int_param(params, "lambda")
    mu = _int_param(params, "mu")

    def v(n):
        w = _binomial_series(mod, 1, lam)(n)   # (1+t)^lambda
        w[0] = (w[0] + 1) % mod.p              # 1 + (1+t)^lambda, constant 2
        half = mod.inv(2)
        base = Poly(mod, [c * half % mod.p for c in w], n)
        body = unit_pow(base, (-mu) % mod.p, n)
        scalar = mod.pow(2, -mu)               # mu must be a plain integer
        return [c * scalar % mod.p for c in body.coeffs]

    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1), g_ops=(), h_ops=(Log(),), v_coeffs=v
    )
    return FamilyDescriptor("peters", {"lambda": lam, "mu": mu}, spec, _inv_fact(mod))


def _build_meixner_pollaczek(mod, params):
    lam = _int_param(params, "lambda")
    s = _int_param(params, "s")        # plays e^{i phi}
    s %= mod.p
    if s == 0 or s * s % mod.p == 1:
        raise SpecViolation("meixner_pollaczek needs s with s^2 != 1 and s != 0")
    i_unit = params.get("i")
    if i_unit is None:
        i_unit = _sqrt_minus_one(mod)
    if i_unit * i_unit % mod.p != mod.p - 1:
        raise SpecViolation("parameter i must square to -1")

    def base(n):
        # (1 - s t)(1 - t/s) = 1 - (s + 1/s) t + t^2
        out = [0] * n
        out[0] = 1
        if n > 1:
            out[1] = (-(s + mod.inv(s))) % mod.p
        if n > 2:
            out[2] = 1
        return out

    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(Mul(i_unit),),
        h_ops=_log_ratio_ops(mod, (-s) % mod.p, 1, (-mod.inv(s)) % mod.p, 1),
        v_coeffs=_unit_power_series(mod, base, -lam),
    )
    return FamilyDescriptor(
        "meixner_pollaczek", {"lambda": lam, "s": s, "i": i_unit}, spec, _ones(mod)
    )


def _build_meixner(mod, params):
    beta = _int_param(params, "beta")
    c = _int_param(params, "c")
    c %= mod.p
    if c == 0 or c == 1:
        raise SpecViolation("meixner needs c outside {0, 1}")
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(),
        h_ops=_log_ratio_ops(mod, (-mod.inv(c)) % mod.p, 1, mod.p - 1, 1),
        v_coeffs=_binomial_series(mod, -1, -beta),
    )
    return FamilyDescriptor("meixner", {"beta": beta, "c": c}, spec, _poch_over_fact(mod, beta))


def _build_krawtchouk(mod, params):
    pk = params.get("p")
    if pk is None:
        raise SpecViolation("missing parameter 'p'")
    pk %= mod.p
    N = _int_param(params, "N")
    if pk == 0:
        raise SpecViolation("krawtchouk needs p != 0")
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1),
        g_ops=(),
        h_ops=_log_ratio_ops(mod, (pk - 1) % mod.p, pk, pk, pk),
        v_coeffs=_binomial_series(mod, 1, N),
    )
    return FamilyDescriptor("krawtchouk", {"p": pk, "N": N}, spec, _binom_prefactor(mod, N))


def _build_mittag_leffler(mod, params):
    spec = BivariateSpec(
        f_coeffs=_exp_coeffs(mod, 1), g_ops=(), h_ops=_mittag_leffler_h_ops(mod)
    )
    return FamilyDescriptor("mittag_leffler", {}, spec, _inv_fact(mod))


FAMILY_BUILDERS = {
    "laguerre": _build_laguerre,
    "hermite": _build_hermite,
    "jacobi": _build_jacobi,
    "fibonacci": _build_fibonacci,
    "euler": _build_euler,
    "bernoulli": _build_bernoulli,
    "mott": _build_mott,
    "spread": _build_spread,
    "bessel": _build_bessel,
    "falling": _build_falling,
    "bell": _build_bell,
    "bernoulli2": _build_bernoulli2,
    "charlier": _build_charlier,
    "actuarial": _build_actuarial,
    "narumi": _build_narumi,
    "peters": _build_peters,
    "meixner_pollaczek": _build_meixner_pollaczek,
    "meixner": _build_meixner,
    "krawtchouk": _build_krawtchouk,
    "mittag_leffler": _build_mittag_leffler,
}


def family(mod: Modulus, name: str, **params) -> FamilyDescriptor:
    """Build a family descriptor by name."""
    try:
        builder = FAMILY_BUILDERS[name]
    except KeyError:
        raise SpecViolation(f"unknown family {name!r}") from None
    return builder(mod, params)


def family_names():
    return sorted(FAMILY_BUILDERS)


def parse_family(mod: Modulus, text: str) -> FamilyDescriptor:
    """Parse "name" or "name(key=value, ...)" into a descriptor."""
    text = text.strip()
    if "(" not in text:
        return family(mod, text)
    if not text.endswith(")"):
        raise SpecViolation(f"malformed family string {text!r}")
    name, args = text[:-1].split("(", 1)
    params = {}
    for item in args.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise SpecViolation(f"malformed family parameter {item!r}")
        key, val = item.split("=", 1)
        val = val.strip()
        if "/" in val:
            num, den = val.split("/", 1)
            params[key.strip()] = int(num) * mod.inv(int(den) % mod.p) % mod.p
        else:
            params[key.strip()] = int(val)
    return family(mod, name.strip(), **params)


def _checked_prefactor(fam: FamilyDescriptor, n: int, mod: Modulus):
    key = ("prefac", fam, n)
    cs = mod._memo.get(key)
    if cs is None:
        cs = fam.prefactor(n)
        for j, c in enumerate(cs):
            if c % mod.p == 0:
                raise ZeroCoefficient(
                    f"{fam.name}: prefactor c_{j} vanishes; conversion undefined"
                )
        mod._memo[key] = cs
    return cs


def _prefactor_inverses(fam: FamilyDescriptor, n: int, mod: Modulus):
    key = ("prefinv", fam, n)
    cinv = mod._memo.get(key)
    if cinv is None:
        cinv = mod.batch_inv(_checked_prefactor(fam, n, mod))
        mod._memo[key] = cinv
    return cinv


def to_monomial(coeffs, fam: FamilyDescriptor, n: int, mod: Modulus) -> Poly:
    """sum_j coeffs[j] P_j(x) expressed in the monomial basis, mod x^n."""
    cinv = _prefactor_inverses(fam, n, mod)
    a = [coeffs[j] * cinv[j] % mod.p if j < len(coeffs) else 0 for j in range(n)]
    return eval_bivariate(a, fam.spec, n, mod)


def from_monomial(A: Poly, fam: FamilyDescriptor, n: int, mod: Modulus):
    """Coefficients of A on the family basis (exact inverse of to_monomial)."""
    cs = _checked_prefactor(fam, n, mod)
    b = eval_bivariate_inv(A, fam.spec, n, mod)
    return [b[j] * cs[j] % mod.p for j in range(n)]
