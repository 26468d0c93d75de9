"""Multipoint evaluation and interpolation at the grid 0..n-1, their
transposes, and the four maps evaluating polynomials at exp(x)-1 / log(1+x).

Evaluation and interpolation use a subproduct tree with Newton-inverse
remaindering, O(M(n) log n).  The transposed maps use the generating-series
identity sum_i v_i / (1 - p_i x) = N(x) / D(x), where D is the reversal of
the root polynomial and N is built by an upward combine; the transposed
interpolation recovers the partial-fraction data by evaluating at the
reciprocal points.  Trees are cached per (modulus, n).
"""

from __future__ import annotations

import threading

from .modfield import Modulus, Poly, _convolve
from .polyops import diagonal, taylor_shift, taylor_shift_t, truncate
from .seriesops import series_inv

_tree_lock = threading.Lock()


def _mul(mod, a, b):
    if not a or not b:
        return []
    return _convolve(mod, a, b)


def _add(mod, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % mod.p
    return out


class _Node:
    __slots__ = ("poly", "rev", "left", "right", "lo", "hi", "_rev_inv")

    def __init__(self, poly, left, right, lo, hi):
        self.poly = poly                      # monic, coefficient list
        self.rev = list(reversed(poly))       # prod (1 - p_i x), top-padded
        self.left = left
        self.right = right
        self.lo = lo
        self.hi = hi
        self._rev_inv = None

    @property
    def deg(self):
        return len(self.poly) - 1

    def rev_inv(self, mod, prec):
        # inverse of the reversed monic polynomial, for Newton remaindering
        if self._rev_inv is None or len(self._rev_inv) < prec:
            inv = series_inv(Poly(mod, self.rev, max(prec, 1)), max(prec, 1))
            self._rev_inv = inv.coeffs
        return self._rev_inv[:prec]


class SubproductTree:
    """Subproduct tree over an arbitrary list of distinct points."""

    def __init__(self, mod: Modulus, points):
        self.mod = mod
        self.points = list(points)
        self.root = self._build(0, len(self.points))
        self._weights = None

    def _build(self, lo, hi):
        if hi - lo == 1:
            return _Node([(-self.points[lo]) % self.mod.p, 1], None, None, lo, hi)
        mid = (lo + hi) // 2
        left = self._build(lo, mid)
        right = self._build(mid, hi)
        return _Node(_mul(self.mod, left.poly, right.poly), left, right, lo, hi)

    # -- remaindering -----------------------------------------------------

    def _rem(self, coeffs, node):
        """coeffs mod node.poly, for len(coeffs)-1 < 2*deg roughly."""
        mod = self.mod
        d = node.deg
        cs = coeffs
        top = len(cs) - 1
        while top >= 0 and cs[top] == 0:
            top -= 1
        if top < d:
            return cs[: top + 1]
        qlen = top - d + 1
        rev_a = cs[top::-1]
        q_rev = _mul(mod, rev_a[:qlen], node.rev_inv(mod, qlen))[:qlen]
        q = q_rev[::-1]
        qm = _mul(mod, q, node.poly)
        return [(cs[i] - qm[i]) % mod.p for i in range(d)]

    def multieval(self, A: Poly):
        """Values of A at every point, in point order."""
        out = [0] * len(self.points)

        def descend(coeffs, node):
            if node.left is None:
                out[node.lo] = coeffs[0] if coeffs else 0
                return
            descend(self._rem(coeffs, node.left), node.left)
            descend(self._rem(coeffs, node.right), node.right)

        descend(self._rem(A.coeffs, self.root), self.root)
        return out

    # -- interpolation ----------------------------------------------------

    def weights(self):
        """1 / M'(p_i) for every point."""
        if self._weights is None:
            mod = self.mod
            deriv = [i * c % mod.p for i, c in enumerate(self.root.poly)][1:]
            vals = self.multieval(Poly(mod, deriv, max(len(deriv), 1)))
            self._weights = mod.batch_inv(vals)
        return self._weights

    def _combine(self, cs, node):
        # sum over the node's points of c_i * prod_{j != i} (x - p_j)
        if node.left is None:
            return [cs[node.lo]]
        lv = self._combine(cs, node.left)
        rv = self._combine(cs, node.right)
        return _add(
            self.mod,
            _mul(self.mod, lv, node.right.poly),
            _mul(self.mod, rv, node.left.poly),
        )

    def interp(self, values) -> Poly:
        """The unique polynomial of dim n taking the given values."""
        mod = self.mod
        cs = [v * w % mod.p for v, w in zip(values, self.weights())]
        combined = self._combine(cs, self.root)
        return Poly(mod, combined, len(self.points))

    def _combine_rev(self, vs, node):
        # numerator of sum over the node's points of v_i / (1 - p_i x)
        if node.left is None:
            return [vs[node.lo]]
        lv = self._combine_rev(vs, node.left)
        rv = self._combine_rev(vs, node.right)
        return _add(
            self.mod,
            _mul(self.mod, lv, node.right.rev),
            _mul(self.mod, rv, node.left.rev),
        )

    def numerator_rev(self, values):
        """N with N / prod(1 - p_i x) = sum v_i / (1 - p_i x); deg N < n."""
        return self._combine_rev(values, self.root)


def _grid_tree(mod: Modulus, n: int) -> SubproductTree:
    key = ("grid", n)
    tree = mod._grid_trees.get(key)
    if tree is None:
        with _tree_lock:
            tree = mod._grid_trees.get(key)
            if tree is None:
                tree = SubproductTree(mod, range(n))
                mod._grid_trees[key] = tree
    return tree


def _recip_tree(mod: Modulus, n: int) -> SubproductTree:
    """Tree over the points 1/1, 1/2, ..., 1/(n-1)."""
    key = ("recip", n)
    tree = mod._grid_trees.get(key)
    if tree is None:
        with _tree_lock:
            tree = mod._grid_trees.get(key)
            if tree is None:
                pts = mod.inverses(n)[1:]
                tree = SubproductTree(mod, pts)
                mod._grid_trees[key] = tree
    return tree


def multieval_grid(A: Poly):
    """(A(0), ..., A(n-1)) for A of dim n; requires n < p."""
    n = A.dim
    A.mod.check_precision(n)
    if n == 1:
        return [A.coeffs[0]]
    return _grid_tree(A.mod, n).multieval(A)


def interp_grid(mod: Modulus, values) -> Poly:
    """The unique A of dim n with A(i) = values[i]; requires n < p."""
    n = len(values)
    mod.check_precision(n)
    if n == 1:
        return Poly(mod, [values[0]], 1)
    return _grid_tree(mod, n).interp(values)


def multieval_grid_t(mod: Modulus, values) -> Poly:
    """Transposed multipoint evaluation: coefficient j of the result is
    sum_i values[i] * i^j."""
    n = len(values)
    mod.check_precision(n)
    if n == 1:
        return Poly(mod, [values[0]], 1)
    tree = _grid_tree(mod, n)
    num = tree.numerator_rev(values)
    den_inv = series_inv(Poly(mod, tree.root.rev, n), n)
    prod = _mul(mod, num, den_inv.coeffs)
    return Poly(mod, prod[:n], n)


def interp_grid_t(A: Poly):
    """Transposed interpolation: the unique y with
    multieval_grid_t(y) = A."""
    mod = A.mod
    n = A.dim
    mod.check_precision(n)
    if n == 1:
        return [A.coeffs[0]]
    tree = _grid_tree(mod, n)
    # D = prod_{i=1}^{n-1} (1 - i x) is the degree-(n-1) part of the
    # reversed root polynomial (the x-0 factor reverses into 1)
    D = tree.root.rev[:n]
    N = _mul(mod, A.coeffs, D)[:n]
    while len(N) < n:
        N.append(0)
    lead = D[n - 1]
    y0 = N[n - 1] * mod.inv(lead) % mod.p
    Nred = [(N[i] - y0 * D[i]) % mod.p for i in range(n)]
    Dprime = [i * c % mod.p for i, c in enumerate(D)][1:]
    rtree = _recip_tree(mod, n)
    nvals = rtree.multieval(Poly(mod, Nred, n))
    dvals = rtree.multieval(Poly(mod, Dprime, max(len(Dprime), 1)))
    dinvs = mod.batch_inv(dvals)
    out = [y0]
    for i in range(1, n):
        out.append((-i) * nvals[i - 1] * dinvs[i - 1] % mod.p)
    return out


# -- evaluation at exp(x)-1 and log(1+x) ----------------------------------


def exp_map(A: Poly, n: int) -> Poly:
    """A(exp(x) - 1) mod x^n."""
    mod = A.mod
    mod.check_precision(n)
    B = taylor_shift(truncate(A, n), mod.p - 1)
    C = multieval_grid_t(mod, B.coeffs)
    return diagonal(C, mod.inv_factorials(n))


def log_map(A: Poly, n: int) -> Poly:
    """A(log(1 + x)) mod x^n."""
    mod = A.mod
    mod.check_precision(n)
    B = diagonal(truncate(A, n), mod.factorials(n))
    C = interp_grid_t(B)
    return taylor_shift(Poly(mod, C, n), 1)


def exp_map_t(A: Poly, m: int) -> Poly:
    """Transpose of exp_map: K[x]_n -> K[x]_m for n = dim(A)."""
    mod = A.mod
    n = A.dim
    mod.check_precision(n)
    B = diagonal(A, mod.inv_factorials(n))
    vals = multieval_grid(B)
    C = taylor_shift_t(Poly(mod, vals, n), mod.p - 1)
    return truncate(C, m)


def log_map_t(A: Poly, m: int) -> Poly:
    """Transpose of log_map: K[x]_n -> K[x]_m for n = dim(A)."""
    mod = A.mod
    n = A.dim
    mod.check_precision(n)
    B = taylor_shift_t(A, 1)
    C = interp_grid(mod, B.coeffs)
    return truncate(diagonal(C, mod.factorials(n)), m)
