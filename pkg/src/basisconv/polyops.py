"""Linear operators on polynomials: powering, reversal, truncation, scaling,
diagonal, Taylor shift, split and linear combination, plus every transpose.

All operators are pure functions Poly -> Poly (or tuples of Polys).  Dimension
metadata travels with each Poly, so a transposed operator knows both its
source and target spaces.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .modfield import Modulus, Poly, mul_trunc, mul_trunc_t


def power_subst(A: Poly, k: int) -> Poly:
    """A(x^k); result dim k*(m-1)+1.  No arithmetic."""
    if k < 1:
        raise DimensionMismatch("k must be >= 1")
    if k == 1:
        return A
    m = A.dim
    out = [0] * (k * (m - 1) + 1)
    for i, c in enumerate(A.coeffs):
        out[i * k] = c
    return Poly(A.mod, out)


def power_subst_t(A: Poly, k: int, m: int) -> Poly:
    """Transpose of power_subst: keep coefficients at indices 0, k, 2k, ..."""
    if k < 1:
        raise DimensionMismatch("k must be >= 1")
    out = [A.coeffs[i * k] if i * k < A.dim else 0 for i in range(m)]
    return Poly(A.mod, out, m)


def reverse(A: Poly) -> Poly:
    """x^(m-1) * A(1/x): coefficients reversed within dim m.  Self-transpose."""
    return Poly(A.mod, list(reversed(A.coeffs)))


def truncate(A: Poly, n: int) -> Poly:
    """A mod x^n (drops or zero-pads to dim n).  Transpose is truncate back."""
    if n == A.dim:
        return A
    return Poly(A.mod, A.coeffs, n)


def scale(A: Poly, lam: int) -> Poly:
    """A(lambda * x): coefficient i multiplied by lambda^i.  Self-transpose."""
    p = A.mod.p
    out = []
    acc = 1
    for c in A.coeffs:
        out.append(c * acc % p)
        acc = acc * lam % p
    return Poly(A.mod, out)


def diagonal(A: Poly, s) -> Poly:
    """Pointwise product with the sequence s (list of >= dim values)."""
    p = A.mod.p
    return Poly(A.mod, [c * s[i] % p for i, c in enumerate(A.coeffs)])


def _shift_kernel(A: Poly, a: int, transposed: bool) -> Poly:
    mod = A.mod
    m = A.dim
    mod.check_precision(m)
    fact = mod.factorials(m)
    inv_fact = mod.inv_factorials(m)
    # P = sum a^i x^i / i!
    P_coeffs = []
    acc = 1
    for i in range(m):
        P_coeffs.append(acc * inv_fact[i] % mod.p)
        acc = acc * a % mod.p
    P = Poly(mod, P_coeffs, m)
    if not transposed:
        B = reverse(diagonal(A, fact))
        C = mul_trunc(B, P, m)
        return diagonal(reverse(C), inv_fact)
    B = reverse(diagonal(A, inv_fact))
    C = mul_trunc_t(B, P, m)
    return diagonal(reverse(C), fact)


def taylor_shift(A: Poly, a: int) -> Poly:
    """A(x + a) via the factorial/convolution factorization; cost M(m)+O(m)."""
    if a % A.mod.p == 0:
        return A
    return _shift_kernel(A, a, transposed=False)


def taylor_shift_t(A: Poly, a: int) -> Poly:
    """Transpose of taylor_shift(., a) on K[x]_m."""
    if a % A.mod.p == 0:
        return A
    return _shift_kernel(A, a, transposed=True)


def find_degrees(m: int, k: int):
    """Dimensions (m_0, ..., m_{k-1}) of the k-section of K[x]_m.

    m_i counts indices congruent to i mod k below m, i.e.
    floor(m/k) + 1 exactly when i < m mod k.
    """
    if m < 1 or k < 1:
        raise DimensionMismatch("m and k must be >= 1")
    q, r = divmod(m, k)
    return tuple(q + (1 if i < r else 0) for i in range(k))


def split(A: Poly, k: int):
    """k-section: A(x) = sum_i parts[i](x^k) * x^i.  No arithmetic."""
    dims = find_degrees(A.dim, k)
    parts = []
    for i, di in enumerate(dims):
        # dims[i] may be 0 when k > m; represent that slice as the zero
        # polynomial of dim 1 so Poly invariants hold
        cs = A.coeffs[i::k]
        parts.append(Poly(A.mod, cs, max(di, 1)) if di else Poly.zero(A.mod, 1))
    return tuple(parts)


def split_t(parts, m: int) -> Poly:
    """Interleave the k parts back into K[x]_m (transpose of split)."""
    k = len(parts)
    dims = find_degrees(m, k)
    mod = parts[0].mod
    out = [0] * m
    for i, (part, di) in enumerate(zip(parts, dims)):
        if part.dim < di:
            raise DimensionMismatch(f"part {i} has dim {part.dim}, expected {di}")
        for j in range(di):
            out[i + j * k] = part.coeffs[j]
    return Poly(mod, out, m)


def lincomb(parts, G, n: int) -> Poly:
    """sum_i parts[i] * G[i] mod x^n."""
    if len(parts) != len(G):
        raise DimensionMismatch("parts and G must have equal length")
    mod = parts[0].mod
    acc = [0] * n
    for part, g in zip(parts, G):
        term = mul_trunc(part, g, n)
        for j, c in enumerate(term.coeffs):
            acc[j] = (acc[j] + c) % mod.p
    return Poly(mod, acc, n)


def lincomb_t(A: Poly, G):
    """Transpose of lincomb: component-wise transposed truncated products."""
    n = A.dim
    return tuple(mul_trunc_t(A, g, n) for g in G)
