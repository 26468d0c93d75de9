"""Prime-field arithmetic and the polynomial multiplication kernel.

Coefficients are plain Python ints in [0, p).  A Modulus bundles the prime
with NTT machinery (2-adicity, primitive root, per-size twiddle tables) and
shared caches (factorials).  A Poly is a dense coefficient list of a fixed
declared dimension over one modulus; trailing zeros are stored explicitly so
len(coeffs) == dim always holds.

The product kernel dispatches between schoolbook convolution (small sizes, or
moduli without enough roots of unity) and an iterative radix-2 NTT.  For
p < 2^31 the NTT runs vectorized on int64 numpy arrays; larger primes fall
back to a scalar big-int NTT.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    CapacityExceeded,
    DimensionMismatch,
    DivisionByZero,
    PrecisionExceedsModulus,
)

# Below this product length the schoolbook convolution beats transform setup.
NTT_THRESHOLD = 32

# Largest product length we accept for schoolbook when the modulus lacks
# transform capacity.
SCHOOLBOOK_LIMIT = 2048

DEFAULT_PRIME = 2013265921  # 15 * 2^27 + 1, primitive root 31

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factorize(n):
    """Trial-division factorization; fine for the word-size p-1 we see."""
    fs = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fs[d] = fs.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        fs[n] = fs.get(n, 0) + 1
    return fs


def _find_primitive_root(p):
    if p == 2:
        return 1
    factors = _factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root found for {p}")


class Modulus:
    """A prime modulus with cached NTT twiddle factors and factorials."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        two_adicity = 0
        m = p - 1
        while m % 2 == 0:
            m //= 2
            two_adicity += 1
        self.max_ntt_len = 1 << two_adicity
        self.primitive_root = _find_primitive_root(p)
        self._twiddles = {}      # (size, invert) -> np.ndarray or list
        self._bitrev = {}        # size -> np.ndarray
        self._fact = [1]
        self._inv_fact = [1]
        self._inverses = [0, 1] if p > 2 else [0, 1]
        self._grid_trees = {}    # used by evalgrid; keyed on point-set tag
        self._memo = {}          # cross-call cache for input-independent data
        self._use_numpy = p < (1 << 31)

    def __repr__(self):
        return f"Modulus({self.p})"

    def __eq__(self, other):
        return isinstance(other, Modulus) and other.p == self.p

    def __hash__(self):
        return hash(self.p)

    # -- scalar field arithmetic ------------------------------------------

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, e):
        """a^e for any integer e; negative e inverts (a != 0)."""
        a %= self.p
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 0 if e else 1
        return pow(a, e % (self.p - 1), self.p)

    def check_precision(self, n):
        if n >= self.p:
            raise PrecisionExceedsModulus(f"precision {n} >= modulus {self.p}")

    # -- factorial tables -------------------------------------------------

    def factorials(self, n):
        """[0!, 1!, ..., (n-1)!] mod p; requires n <= p."""
        if n > self.p:
            raise PrecisionExceedsModulus(f"factorials up to {n - 1} need p >= {n}")
        while len(self._fact) < n:
            k = len(self._fact)
            self._fact.append(self._fact[-1] * k % self.p)
        return self._fact[:n]

    def inv_factorials(self, n):
        fact = self.factorials(n)
        m = len(self._inv_fact)
        if m < n:
            # one inversion, then fill backwards: 1/k! = (k+1) * 1/(k+1)!
            tail = [0] * (n - m)
            tail[-1] = self.inv(fact[n - 1])
            for k in range(n - 2, m - 1, -1):
                tail[k - m] = tail[k - m + 1] * (k + 1) % self.p
            self._inv_fact.extend(tail)
        return self._inv_fact[:n]

    def inverses(self, n):
        """[0, 1/1, 1/2, ..., 1/(n-1)] mod p in O(n); requires n <= p."""
        if n > self.p:
            raise PrecisionExceedsModulus(f"inverses up to {n - 1} need p >= {n}")
        while len(self._inverses) < n:
            i = len(self._inverses)
            self._inverses.append(
                (self.p - self.p // i) * self._inverses[self.p % i] % self.p
            )
        return self._inverses[:n]

    def batch_inv(self, values):
        """Inverses of a list of nonzero residues with one field inversion."""
        prefix = [1] * (len(values) + 1)
        for i, v in enumerate(values):
            prefix[i + 1] = prefix[i] * v % self.p
        acc = self.inv(prefix[-1])
        out = [0] * len(values)
        for i in range(len(values) - 1, -1, -1):
            out[i] = acc * prefix[i] % self.p
            acc = acc * values[i] % self.p
        return out

    # -- NTT tables -------------------------------------------------------

    def _bitrev_indices(self, size):
        idx = self._bitrev.get(size)
        if idx is None:
            bits = size.bit_length() - 1
            idx = np.zeros(size, dtype=np.int64)
            for i in range(size):
                idx[i] = int(f"{i:0{bits}b}"[::-1], 2) if bits else 0
            self._bitrev[size] = idx
        return idx

    def _stage_twiddles(self, length, invert):
        key = (length, invert)
        tw = self._twiddles.get(key)
        if tw is None:
            w = pow(self.primitive_root, (self.p - 1) // length, self.p)
            if invert:
                w = pow(w, self.p - 2, self.p)
            half = length // 2
            ws = [1] * half
            for i in range(1, half):
                ws[i] = ws[i - 1] * w % self.p
            tw = np.array(ws, dtype=np.int64) if self._use_numpy else ws
            self._twiddles[key] = tw
        return tw


def _ntt_numpy(mod: Modulus, values, size, invert):
    p = mod.p
    a = np.zeros(size, dtype=np.int64)
    a[: len(values)] = values
    a = a[mod._bitrev_indices(size)]
    length = 2
    while length <= size:
        ws = mod._stage_twiddles(length, invert)
        half = length // 2
        a = a.reshape(-1, length)
        even = a[:, :half].copy()
        odd = a[:, half:] * ws % p
        a[:, :half] = (even + odd) % p
        a[:, half:] = (even - odd) % p
        a = a.reshape(-1)
        length *= 2
    if invert:
        a = a * pow(size, p - 2, p) % p
    return a


def _ntt_scalar(mod: Modulus, values, size, invert):
    p = mod.p
    a = [0] * size
    a[: len(values)] = [v % p for v in values]
    idx = mod._bitrev_indices(size)
    a = [a[int(i)] for i in idx]
    length = 2
    while length <= size:
        w = pow(mod.primitive_root, (p - 1) // length, p)
        if invert:
            w = pow(w, p - 2, p)
        half = length // 2
        for start in range(0, size, length):
            wk = 1
            for j in range(half):
                u = a[start + j]
                v = a[start + j + half] * wk % p
                a[start + j] = (u + v) % p
                a[start + j + half] = (u - v) % p
                wk = wk * w % p
        length *= 2
    if invert:
        ninv = pow(size, p - 2, p)
        a = [x * ninv % p for x in a]
    return a


def _convolve_schoolbook(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return [c % p for c in out]


def _convolve(mod: Modulus, a, b):
    """Exact cyclic-free product of two coefficient lists."""
    out_len = len(a) + len(b) - 1
    size = 1
    while size < out_len:
        size *= 2
    if out_len < NTT_THRESHOLD or size > mod.max_ntt_len:
        if out_len >= NTT_THRESHOLD and out_len > SCHOOLBOOK_LIMIT:
            raise CapacityExceeded(
                f"product length {out_len} exceeds transform capacity "
                f"{mod.max_ntt_len} of p={mod.p}"
            )
        return _convolve_schoolbook(a, b, mod.p)
    if mod._use_numpy:
        fa = _ntt_numpy(mod, a, size, False)
        fb = _ntt_numpy(mod, b, size, False)
        fc = fa * fb % mod.p
        # pointwise product of two residues < 2^31 stays below 2^62: exact
        res = _ntt_numpy(mod, fc, size, True)
        return [int(x) for x in res[:out_len]]
    fa = _ntt_scalar(mod, a, size, False)
    fb = _ntt_scalar(mod, b, size, False)
    fc = [x * y % mod.p for x, y in zip(fa, fb)]
    res = _ntt_scalar(mod, fc, size, True)
    return res[:out_len]


class Poly:
    """Dense polynomial in K[x]_dim: coefficient list of length exactly dim."""

    __slots__ = ("mod", "coeffs")

    def __init__(self, mod: Modulus, coeffs, dim=None):
        if dim is None:
            dim = max(1, len(coeffs))
        if dim < 1:
            raise DimensionMismatch("dim must be >= 1")
        cs = [c % mod.p for c in coeffs[:dim]]
        if len(cs) < dim:
            cs.extend([0] * (dim - len(cs)))
        self.mod = mod
        self.coeffs = cs

    @classmethod
    def zero(cls, mod, dim):
        return cls(mod, [], dim)

    @classmethod
    def x(cls, mod, dim):
        """The identity polynomial x (dim >= 2 gives an honest x)."""
        return cls(mod, [0, 1][:dim], dim)

    @property
    def dim(self):
        return len(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.mod == other.mod
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.mod.p, tuple(self.coeffs)))

    def __repr__(self):
        return f"Poly({self.coeffs}, p={self.mod.p})"

    def degree(self):
        """Degree of the stored truncation; -1 for the zero polynomial."""
        for i in range(self.dim - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def valuation(self):
        """Index of the first nonzero coefficient; None if all stored are zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def constant(self):
        return self.coeffs[0]


def poly_mul(a: Poly, b: Poly) -> Poly:
    """Exact product; result dim = dim(a) + dim(b) - 1."""
    if a.mod != b.mod:
        raise DimensionMismatch("mixed moduli")
    return Poly(a.mod, _convolve(a.mod, a.coeffs, b.coeffs))


def mul_trunc(a: Poly, P: Poly, n: int) -> Poly:
    """a * P mod x^n, result dim n."""
    mod = a.mod
    da, dp = a.degree(), P.degree()
    if da < 0 or dp < 0:
        return Poly.zero(mod, n)
    # truncating the inputs to n first keeps the transform size at O(n)
    ca = a.coeffs[: min(da + 1, n)]
    cp = P.coeffs[: min(dp + 1, n)]
    prod = _convolve(mod, ca, cp)
    return Poly(mod, prod[:n], n)


def mul_trunc_t(a: Poly, P: Poly, m: int) -> Poly:
    """Transpose of mul_trunc(., P, n) for n = dim(a); result dim m.

    Realized as the middle product (a * Rev(P) mod x^{n+d}) div x^d with
    d the stored degree bound of P.
    """
    mod = a.mod
    d = P.dim - 1
    rev = list(reversed(P.coeffs))
    prod = _convolve(mod, a.coeffs, rev) if a.degree() >= 0 and P.degree() >= 0 else []
    out = prod[d : d + m]
    return Poly(mod, out, m)
