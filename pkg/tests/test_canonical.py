"""Cross-checks of the canonical-labeling kernels: the compiled and pure
implementations must agree bit-exactly, and canonical forms must be
constant on isomorphism classes with multiplicative signs."""

import itertools
import random

import pytest

from chordal import _canon_py
from chordal.canonical import backend
from chordal.diagrams import (
    CLOSED,
    OPEN,
    JacobiDiagram,
    canonical_jacobi,
    with_labels,
)

try:
    from chordal import _canon_cy
except ImportError:  # pragma: no cover
    _canon_cy = None


def random_pairing(m, t, rng):
    H = m + 3 * t
    hs = list(range(H))
    rng.shuffle(hs)
    pairing = [0] * H
    for i in range(0, H, 2):
        a, b = hs[i], hs[i + 1]
        pairing[a] = b
        pairing[b] = a
    return tuple(pairing)


@pytest.mark.skipif(_canon_cy is None, reason="compiled kernel not built")
def test_kernels_bit_identical():
    rng = random.Random(20240)
    for trial in range(400):
        m = rng.choice([0, 1, 2, 3, 4, 5, 6])
        t = rng.choice([0, 1, 2, 3, 4])
        if (m + 3 * t) % 2 or (m == 0 and t == 0):
            continue
        pairing = random_pairing(m, t, rng)
        for mode in (0, 1, 2):
            if mode == 2 and t == 0:
                continue
            assert _canon_py.canonical_search(m, t, pairing, mode) == \
                _canon_cy.canonical_search(m, t, pairing, mode)


def apply_presentation_change(d, rng):
    """Random reorder of vertices, triples (tracking parity), and legs
    (rotation for closed, any permutation for free)."""
    m, t = d.legs, d.internal
    vperm = list(range(t))
    rng.shuffle(vperm)
    orients = [rng.randint(0, 5) for _ in range(t)]
    slot_orders = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    parities = [1, 1, 1, -1, -1, -1]
    if d.kind == CLOSED:
        r = rng.randrange(m) if m else 0
        legmap = {i: (i - r) % m for i in range(m)}
    else:
        perm = list(range(m))
        rng.shuffle(perm)
        legmap = {old: new for new, old in enumerate(perm)}

    def remap(h):
        if h < m:
            return legmap[h]
        v = (h - m) // 3
        s = (h - m) % 3
        return m + 3 * vperm[v] + slot_orders[orients[v]].index(s)

    pairing = [None] * len(d.pairing)
    for h, p in enumerate(d.pairing):
        pairing[remap(h)] = remap(p)
    sign = 1
    for o in orients:
        sign *= parities[o]
    return JacobiDiagram(d.kind, m, t, tuple(pairing)), sign


def test_canonical_constant_on_isomorphism_classes():
    rng = random.Random(7)
    for trial in range(250):
        m = rng.choice([0, 1, 2, 3, 4])
        t = rng.choice([1, 2, 3])
        if (m + 3 * t) % 2:
            continue
        kind = CLOSED if rng.random() < 0.5 else OPEN
        if kind == OPEN and m == 0:
            continue
        d = JacobiDiagram(kind, m, t, random_pairing(m, t, rng))
        sc = canonical_jacobi(d)
        d2, sgn = apply_presentation_change(d, rng)
        sc2 = canonical_jacobi(d2)
        if sc.is_zero:
            assert sc2.is_zero
        else:
            assert sc2.diagram == sc.diagram
            assert sc2.sign == sc.sign * sgn


def test_sign_multiplicativity_single_vertex():
    # one internal vertex with three legs: an odd triple reordering flips
    # the canonical sign
    d = JacobiDiagram(OPEN, 3, 1, (3, 4, 5, 0, 1, 2))
    swapped = JacobiDiagram(OPEN, 3, 1, (4, 3, 5, 1, 0, 2))  # transpose two slots
    a, b = canonical_jacobi(d), canonical_jacobi(swapped)
    assert a.is_zero and b.is_zero  # unlabeled legs are interchangeable here
    la = canonical_jacobi(with_labels(d, ("x", "y", "z")))
    lb = canonical_jacobi(with_labels(swapped, ("x", "y", "z")))
    assert not la.is_zero
    assert la.diagram == lb.diagram
    assert la.sign == -lb.sign


def test_canonical_idempotent():
    rng = random.Random(99)
    for trial in range(100):
        m = rng.choice([1, 2, 3, 4])
        t = rng.choice([1, 2, 3])
        if (m + 3 * t) % 2:
            continue
        d = JacobiDiagram(OPEN, m, t, random_pairing(m, t, rng))
        sc = canonical_jacobi(d)
        if sc.is_zero:
            continue
        again = canonical_jacobi(sc.diagram)
        assert again.diagram == sc.diagram
        assert again.sign == 1


def test_cli_reports_identical_across_backends(tmp_path):
    """The pure-Python kernel must reproduce the compiled kernel's reports
    byte-exactly (forced via CHORDAL_PURE_CANON)."""
    import os
    import subprocess
    import sys

    if backend != "cython":
        pytest.skip("compiled kernel not built")
    argv = [sys.executable, "-m", "chordal.cli", "dims", "--space", "G",
            "--degree", "2"]
    a = subprocess.run(argv, capture_output=True, text=True)
    env = dict(os.environ, CHORDAL_PURE_CANON="1")
    b = subprocess.run(argv, capture_output=True, text=True, env=env)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
