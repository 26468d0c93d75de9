"""Truncated power-series kernels: inverse, root, exp, log, powering.

A series truncation g mod x^n is just a Poly of dim n.  Newton iteration
doubles the precision at each step, so every kernel costs O(M(n)).
"""

from __future__ import annotations

from .errors import DomainViolation, InvalidOperatorParam, PrecisionExceedsModulus
from .modfield import Poly, mul_trunc
from .polyops import truncate


def series_add_const(g: Poly, a: int) -> Poly:
    out = list(g.coeffs)
    out[0] = (out[0] + a) % g.mod.p
    return Poly(g.mod, out)


def series_mul_const(g: Poly, lam: int) -> Poly:
    if lam % g.mod.p == 0:
        raise InvalidOperatorParam("scaling constant must be nonzero")
    p = g.mod.p
    return Poly(g.mod, [c * lam % p for c in g.coeffs])


def series_inv(g: Poly, n: int) -> Poly:
    """1/g mod x^n; requires g(0) != 0."""
    mod = g.mod
    if g.constant() == 0:
        raise DomainViolation("series inverse needs a nonzero constant term")
    y = Poly(mod, [mod.inv(g.constant())], 1)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        gy = mul_trunc(truncate(g, prec), y, prec)
        # y <- y * (2 - g*y)
        corr = [(-c) % mod.p for c in gy.coeffs]
        corr[0] = (corr[0] + 2) % mod.p
        y = mul_trunc(y, Poly(mod, corr, prec), prec)
    return truncate(y, n)


def _derivative(g: Poly) -> Poly:
    p = g.mod.p
    out = [i * c % p for i, c in enumerate(g.coeffs)][1:]
    return Poly(g.mod, out, max(g.dim - 1, 1))


def _integral(g: Poly, n: int) -> Poly:
    """Antiderivative with zero constant term, truncated to dim n."""
    mod = g.mod
    if n > 1:
        mod.check_precision(n - 1)
    out = [0] * n
    invs = mod.inverses(min(g.dim, n - 1) + 1)
    for i in range(min(g.dim, n - 1)):
        if g.coeffs[i]:
            out[i + 1] = g.coeffs[i] * invs[i + 1] % mod.p
    return Poly(mod, out, n)


def series_log(g: Poly, n: int) -> Poly:
    """log(1+g) mod x^n; requires g(0) = 0 and n < p."""
    mod = g.mod
    mod.check_precision(n)
    if g.constant() != 0:
        raise DomainViolation("log needs a series with zero constant term")
    if n == 1:
        return Poly.zero(mod, 1)
    one_plus = series_add_const(truncate(g, n), 1)
    quot = mul_trunc(_derivative(one_plus), series_inv(one_plus, n - 1), n - 1)
    return _integral(quot, n)


def series_exp(g: Poly, n: int) -> Poly:
    """exp(g) - 1 mod x^n; requires g(0) = 0 and n < p."""
    mod = g.mod
    mod.check_precision(n)
    if g.constant() != 0:
        raise DomainViolation("exp needs a series with zero constant term")
    # Newton coupled with log: y <- y * (1 + g - log y), y(0) = 1
    y = Poly(mod, [1], 1)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ln = series_log(series_add_const(y, -1), prec)
        corr = [0] * prec
        for i in range(prec):
            gi = g.coeffs[i] if i < g.dim else 0
            corr[i] = (gi - ln.coeffs[i]) % mod.p
        corr[0] = (corr[0] + 1) % mod.p
        y = mul_trunc(truncate(y, prec), Poly(mod, corr, prec), prec)
    return series_add_const(truncate(y, n), -1)


def _unit_pow_field(g: Poly, e: int, n: int) -> Poly:
    """g^e mod x^n for g(0)=1 and a field-element exponent e (via exp/log)."""
    mod = g.mod
    e %= mod.p
    if e == 0:
        return Poly(mod, [1], n)
    ln = series_log(series_add_const(truncate(g, n), -1), n)
    scaled = Poly(mod, [c * e % mod.p for c in ln.coeffs], n)
    return series_add_const(series_exp(scaled, n), 1)


def unit_pow(g: Poly, e: int, n: int) -> Poly:
    """g^e mod x^n for g(0) != 0 and any integer exponent e (possibly huge
    or negative); the scalar part uses Fermat exponentiation."""
    mod = g.mod
    c = g.constant()
    if c == 0:
        raise DomainViolation("unit_pow needs a nonzero constant term")
    ci = mod.inv(c)
    normalized = Poly(mod, [x * ci % mod.p for x in truncate(g, n).coeffs], n)
    body = _unit_pow_field(normalized, e % mod.p, n)
    lead = mod.pow(c, e)
    return Poly(mod, [x * lead % mod.p for x in body.coeffs], n)


def series_root(g: Poly, k: int, alpha: int, r: int, n: int) -> Poly:
    """g^(1/k) mod x^n: the unique series with leading term alpha*x^r whose
    k-th power is g.  Input must carry precision >= n + r*(k-1)."""
    mod = g.mod
    if k < 1 or r < 0 or alpha % mod.p == 0:
        raise InvalidOperatorParam("root needs k >= 1, r >= 0, alpha != 0")
    need = n + r * (k - 1)
    if g.dim < need:
        raise DomainViolation(
            f"root needs input precision {need}, got {g.dim}"
        )
    val = truncate(g, need).valuation()
    if val is None:
        raise DomainViolation("root of an identically-zero truncation")
    if val != r * k:
        raise DomainViolation(f"root expects valuation {r * k}, found {val}")
    if g.coeffs[val] != mod.pow(alpha, k):
        raise DomainViolation("leading coefficient is not alpha^k")
    if k == 1:
        return truncate(g, n)
    if mod.p % k == 0:
        raise PrecisionExceedsModulus(f"{k} is not invertible mod {mod.p}")
    if n <= r:
        return Poly.zero(mod, n)
    # normalize to constant term 1, take the root there, re-attach alpha*x^r
    lead_inv = mod.inv(g.coeffs[val])
    body_prec = n - r
    body = [g.coeffs[val + i] * lead_inv % mod.p for i in range(body_prec)]
    w = _unit_pow_field(Poly(mod, body, body_prec), mod.inv(k), body_prec)
    out = [0] * n
    for i in range(body_prec):
        out[r + i] = alpha * w.coeffs[i] % mod.p
    return Poly(mod, out, n)


def series_pow(g: Poly, k: int, n: int) -> Poly:
    """g^k mod x^n for k >= 1."""
    mod = g.mod
    if k < 1:
        raise InvalidOperatorParam("series_pow needs k >= 1")
    if k <= 8:
        acc = Poly(mod, [1], n)
        base = truncate(g, n)
        e = k
        while e:
            if e & 1:
                acc = mul_trunc(acc, base, n)
            e >>= 1
            if e:
                base = mul_trunc(base, base, n)
        return acc
    val = truncate(g, n).valuation()
    if val is None or val * k >= n:
        return Poly.zero(mod, n)
    if val == 0:
        return unit_pow(g, k, n)
    c = g.coeffs[val]
    body_prec = n - val * k
    ci = mod.inv(c)
    body = Poly(mod, [g.coeffs[val + i] * ci % mod.p for i in range(min(body_prec, g.dim - val))], body_prec)
    w = _unit_pow_field(body, k % mod.p, body_prec)
    lead = mod.pow(c, k)
    out = [0] * n
    for i in range(body_prec):
        out[val * k + i] = lead * w.coeffs[i] % mod.p
    return Poly(mod, out, n)
