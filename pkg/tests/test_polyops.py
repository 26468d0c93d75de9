import random

import pytest

from basisconv import DimensionMismatch, Poly
from basisconv.oracle import horner_compose
from basisconv.polyops import (
    diagonal,
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


def _matrix_of(fn, n_in, n_out, mod):
    cols = []
    for j in range(n_in):
        e = [0] * n_in
        e[j] = 1
        cols.append(fn(Poly(mod, e, n_in)).coeffs)
    return [[cols[j][i] for j in range(n_in)] for i in range(n_out)]


def _transpose_check(fwd, bwd, n_in, n_out, mod):
    F = _matrix_of(fwd, n_in, n_out, mod)
    B = _matrix_of(bwd, n_out, n_in, mod)
    for i in range(n_in):
        for j in range(n_out):
            assert B[i][j] == F[j][i]


def test_power_subst(mod101):
    A = Poly(mod101, [3, 5, 7], 3)
    B = power_subst(A, 2)
    assert B.dim == 5 and B.coeffs == [3, 0, 5, 0, 7]
    assert power_subst(A, 1) is A
    with pytest.raises(DimensionMismatch):
        power_subst(A, 0)


def test_power_subst_t_matrix(mod101):
    # k=3, m=4: source K[x]_10, picks indices 0,3,6,9
    A = Poly(mod101, list(range(1, 11)), 10)
    assert power_subst_t(A, 3, 4).coeffs == [1, 4, 7, 10]
    _transpose_check(
        lambda P: power_subst(P, 3),
        lambda P: power_subst_t(P, 3, 4),
        4, 10, mod101,
    )


def test_reverse_scale_truncate_diagonal(mod101):
    A = Poly(mod101, [1, 2, 3], 3)
    assert reverse(A).coeffs == [3, 2, 1]
    assert scale(A, 2).coeffs == [1, 4, 12]
    assert truncate(A, 2).coeffs == [1, 2]
    assert truncate(A, 5).coeffs == [1, 2, 3, 0, 0]
    assert truncate(A, 3) is A
    assert diagonal(A, [10, 20, 30]).coeffs == [10, 40, 90]


def test_taylor_shift_matches_horner(mod101):
    rng = random.Random(11)
    for m in (1, 2, 5, 16, 33):
        A = Poly(mod101, [rng.randrange(101) for _ in range(m)], m)
        a = rng.randrange(101)
        g = Poly(mod101, [a, 1], max(m, 2))   # x + a
        want = horner_compose(A, g, m)
        assert taylor_shift(A, a).coeffs == want.coeffs


def test_taylor_shift_group_law(mod101):
    rng = random.Random(12)
    A = Poly(mod101, [rng.randrange(101) for _ in range(9)], 9)
    one = taylor_shift(taylor_shift(A, 4), 9)
    assert one.coeffs == taylor_shift(A, 13).coeffs
    assert taylor_shift(taylor_shift(A, 4), 101 - 4).coeffs == A.coeffs
    assert taylor_shift(A, 0) is A


def test_taylor_shift_t_2x2(mod101):
    # m=2: shift matrix [[1,a],[0,1]], transpose maps (b0,b1) to
    # (b0, a*b0 + b1)
    a = 7
    B = Poly(mod101, [5, 9], 2)
    assert taylor_shift_t(B, a).coeffs == [5, (7 * 5 + 9) % 101]


def test_taylor_shift_transpose_matrix(mod101):
    for m in (2, 5, 12):
        _transpose_check(
            lambda P: taylor_shift(P, 17),
            lambda P: taylor_shift_t(P, 17),
            m, m, mod101,
        )


def test_find_degrees():
    assert find_degrees(7, 3) == (3, 2, 2)
    assert find_degrees(6, 3) == (2, 2, 2)
    assert find_degrees(1, 4) == (1, 0, 0, 0)
    assert sum(find_degrees(23, 5)) == 23
    with pytest.raises(DimensionMismatch):
        find_degrees(0, 3)


def test_split_and_split_t_round_trip(mod101):
    rng = random.Random(13)
    for m, k in [(7, 3), (6, 2), (1, 4), (10, 10), (9, 4)]:
        A = Poly(mod101, [rng.randrange(101) for _ in range(m)], m)
        parts = split(A, k)
        assert len(parts) == k
        back = split_t(parts, m)
        assert back.coeffs == A.coeffs


def test_split_reconstruction_identity(mod101):
    # A(x) = sum_i parts[i](x^k) * x^i
    A = Poly(mod101, [4, 8, 15, 16, 23, 42, 9], 7)
    k = 3
    parts = split(A, k)
    acc = [0] * 7
    for i, part in enumerate(parts):
        for j, c in enumerate(part.coeffs):
            if i + j * k < 7:
                acc[i + j * k] = (acc[i + j * k] + c) % 101
    assert acc == A.coeffs


def test_lincomb_and_transpose(mod101):
    rng = random.Random(14)
    n = 8
    G = [Poly(mod101, [rng.randrange(101) for _ in range(n)], n) for _ in range(3)]
    parts = [Poly(mod101, [rng.randrange(101) for _ in range(n)], n) for _ in range(3)]
    out = lincomb(parts, G, n)
    want = [0] * n
    for part, g in zip(parts, G):
        for i in range(n):
            for j in range(n - i):
                want[i + j] = (want[i + j] + part.coeffs[i] * g.coeffs[j]) % 101
    assert out.coeffs == want
    # bilinear pairing against lincomb_t
    A = Poly(mod101, [rng.randrange(101) for _ in range(n)], n)
    Ts = lincomb_t(A, G)
    lhs = sum(out.coeffs[i] * A.coeffs[i] for i in range(n)) % 101
    rhs = sum(
        T.coeffs[i] * part.coeffs[i]
        for T, part in zip(Ts, parts)
        for i in range(n)
    ) % 101
    assert lhs == rhs
