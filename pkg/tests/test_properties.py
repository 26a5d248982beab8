"""Property tests for the core invariants."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from chordal.diagrams import canonical_chord, parse_word, word_str
from chordal.linalg import rref, kernel_basis

F = Fraction


@st.composite
def double_occurrence_words(draw):
    n = draw(st.integers(min_value=0, max_value=5))
    syms = list(range(1, n + 1)) * 2
    perm = draw(st.permutations(syms))
    return tuple(perm)


@given(double_occurrence_words(), st.integers(min_value=0, max_value=11))
@settings(max_examples=150, deadline=None)
def test_canonical_chord_rotation_invariance(word, r):
    if word:
        r = r % len(word)
        rotated = word[r:] + word[:r]
    else:
        rotated = word
    assert canonical_chord(rotated) == canonical_chord(word)


@given(double_occurrence_words())
@settings(max_examples=150, deadline=None)
def test_canonical_chord_renaming_invariance(word):
    n = max(word, default=0)
    names = list(range(1, n + 1))
    random.Random(sum(word)).shuffle(names)
    renamed = tuple(names[x - 1] for x in word)
    assert canonical_chord(renamed) == canonical_chord(word)


@st.composite
def small_matrices(draw):
    nr = draw(st.integers(min_value=1, max_value=5))
    nc = draw(st.integers(min_value=1, max_value=5))
    num = st.integers(min_value=-3, max_value=3)
    den = st.integers(min_value=1, max_value=3)
    rows = [[F(draw(num), draw(den)) for _ in range(nc)] for _ in range(nr)]
    return rows, nc


@given(small_matrices())
@settings(max_examples=120, deadline=None)
def test_rref_idempotent_property(mat_nc):
    mat, nc = mat_nc
    rows, rk = rref(mat, nc)
    dense = [[r.get(c, F(0)) for c in range(nc)] for r in rows]
    rows2, rk2 = rref(dense, nc)
    assert rk2 == rk
    assert [[r.get(c, F(0)) for c in range(nc)] for r in rows2] == dense


@given(small_matrices())
@settings(max_examples=120, deadline=None)
def test_rank_nullity_property(mat_nc):
    mat, nc = mat_nc
    _, rk = rref(mat, nc)
    assert rk + len(kernel_basis(mat, nc)) == nc
