import random
from fractions import Fraction

import pytest

from chordal.linalg import (
    LinComb,
    build_quotient,
    kernel_basis,
    matmul,
    rank,
    residue,
    rref,
    subspace_equal,
)

F = Fraction


def dense(rows, ncols):
    return [[r.get(c, F(0)) for c in range(ncols)] for r in rows]


def naive_rref(mat):
    """Independent dense Gauss-Jordan oracle."""
    m = [[F(x) for x in row] for row in mat]
    if not m:
        return [], 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return [row for row in m[:r]], r


def test_rref_identity():
    rows, rk = rref([[0, 1], [1, 0]], 2)
    assert rk == 2
    assert dense(rows, 2) == [[1, 0], [0, 1]]


def test_rref_proportional_rows():
    rows, rk = rref([[1, 2], [2, 4]], 2)
    assert rk == 1
    assert dense(rows, 2) == [[1, 2]]


def test_rref_fractional_rows():
    rows, rk = rref([[F(1, 2), 1], [1, 2]], 2)
    assert rk == 1
    assert dense(rows, 2) == [[1, 2]]


def test_rref_idempotent_and_matches_dense_oracle():
    rng = random.Random(42)
    for _ in range(40):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        mat = [[F(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(nc)]
               for _ in range(nr)]
        rows, rk = rref(mat, nc)
        expect, erk = naive_rref(mat)
        assert rk == erk
        assert dense(rows, nc) == expect
        again, rk2 = rref(dense(rows, nc), nc)
        assert rk2 == rk and dense(again, nc) == dense(rows, nc)


def test_rank_nullity():
    rng = random.Random(1)
    for _ in range(30):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        mat = [[F(rng.randint(-2, 2)) for _ in range(nc)] for _ in range(nr)]
        rk = rank(mat, nc)
        assert rk + len(kernel_basis(mat, nc)) == nc


def test_kernel_examples():
    assert kernel_basis([[1, 0], [0, 1]], 2) == []
    assert len(kernel_basis([[0, 0, 0]], 3)) == 3
    vecs = kernel_basis([[1, 1, 0], [0, 0, 1]], 3)
    assert len(vecs) == 1
    for v in vecs:
        assert v.get(0, F(0)) + v.get(1, F(0)) == 0 and v.get(2, F(0)) == 0


def test_kernel_vectors_annihilated():
    rng = random.Random(5)
    for _ in range(20):
        nr, nc = rng.randint(1, 5), rng.randint(1, 6)
        mat = [[F(rng.randint(-2, 2)) for _ in range(nc)] for _ in range(nr)]
        for vec in kernel_basis(mat, nc):
            for row in mat:
                assert sum(row[c] * v for c, v in vec.items()) == 0


def test_subspace_equal():
    assert subspace_equal([{0: F(1)}], [{0: F(2)}], 2)
    assert not subspace_equal([{0: F(1)}], [{1: F(1)}], 2)
    rng = random.Random(9)
    base = [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(3)]
    mixed = [
        [a + b for a, b in zip(base[0], base[1])],
        [2 * x for x in base[1]],
        base[2],
        [a - b for a, b in zip(base[2], base[0])],
    ]
    assert subspace_equal(base, mixed, 4)


def test_build_quotient_and_reduce():
    q = build_quotient(("x", "y"), [LinComb({"x": F(1), "y": F(-1)})])
    assert q.dimension == 1
    assert q.rank == 1
    # a relation row reduces to zero
    assert not q.reduce(LinComb({"x": F(1), "y": F(-1)}))
    # a representative reduces to itself
    rep = q.representative_basis[0]
    red = q.reduce(LinComb({rep: F(1)}))
    assert red.terms == {rep: F(1)}
    # full-rank relations give dimension zero
    q3 = build_quotient(
        ("a", "b", "c"),
        [LinComb({"a": F(1)}), LinComb({"b": F(1)}), LinComb({"c": F(1)})],
    )
    assert q3.dimension == 0


def test_reduce_is_linear_and_matches_dense_elimination():
    rng = random.Random(11)
    ambient = tuple("abcdef")
    rels = []
    for _ in range(3):
        rels.append(LinComb({k: F(rng.randint(-2, 2)) for k in ambient}))
    q = build_quotient(ambient, rels)
    for _ in range(10):
        u = LinComb({k: F(rng.randint(-3, 3)) for k in ambient})
        v = LinComb({k: F(rng.randint(-3, 3)) for k in ambient})
        a, b = F(rng.randint(-2, 2)), F(rng.randint(-2, 2))
        combo = u.scaled(a) + v.scaled(b)
        left = q.reduce(combo)
        right = q.reduce(u).scaled(a) + q.reduce(v).scaled(b)
        assert left == right
        # independent check: residue against the dense oracle's echelon form
        row = {q.index[k]: c for k, c in combo.terms.items()}
        oracle_rows, _ = naive_rref([[r.terms.get(k, F(0)) for k in ambient] for r in rels])
        sparse_oracle = [{c: x for c, x in enumerate(r) if x} for r in oracle_rows]
        res = residue(row, sparse_oracle)
        assert res == {q.index[k]: v for k, v in left.terms.items()}


def test_build_quotient_rejects_foreign_support():
    with pytest.raises(KeyError):
        build_quotient(("x",), [LinComb({"zzz": F(1)})])


def test_matmul():
    a = [{0: F(1), 1: F(2)}]
    b = [{0: F(3)}, {0: F(1), 1: F(1)}]
    assert matmul(a, b, 2) == [{0: F(5), 1: F(2)}]
