"""Hopf structure on the chord-diagram quotient: connected-sum product,
component-splitting coproduct, primitive elements, and the PBW
symmetrization from the unordered-leg spaces.

Elements live in coordinates on the representative bases of the chord
quotients; closed Jacobi diagrams enter through the STU resolution.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .diagrams import (
    CLOSED,
    OPEN,
    canonical_chord,
    JacobiDiagram,
    canonical_jacobi,
    chord_to_jacobi,
    components,
    connected_sum,
    enumerate_jacobi,
    is_connected,
    parse_word,
    word_str,
    word_sort_key,
    _subdiagram,
)
from .linalg import LinComb, kernel_basis, subspace_equal, rank as matrix_rank
from .relations import closed_class_in_A, space_A, space_B

ONE = Fraction(1)


class HopfElement:
    """Graded element: degree -> fully reduced coordinates on the
    representative basis of the chord quotient at that degree."""

    __slots__ = ("graded",)

    def __init__(self, graded=None):
        self.graded = {}
        if graded:
            for p, lc in graded.items():
                if lc:
                    self.graded[p] = lc

    @classmethod
    def unit(cls):
        return cls({0: LinComb({"": ONE})})

    @classmethod
    def from_word(cls, word, coeff=ONE):
        n = len(parse_word(word)) // 2
        lc = space_A(n).reduce(LinComb({word: Fraction(coeff)}))
        return cls({n: lc})

    def add_term(self, p, key, coeff):
        lc = self.graded.setdefault(p, LinComb())
        lc.add(key, coeff)
        if not lc:
            del self.graded[p]
        return self

    def __add__(self, other):
        out = HopfElement({p: LinComb(lc.terms) for p, lc in self.graded.items()})
        for p, lc in other.graded.items():
            for k, v in lc.terms.items():
                out.add_term(p, k, v)
        return out

    def scaled(self, a):
        return HopfElement({p: lc.scaled(a) for p, lc in self.graded.items()})

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __eq__(self, other):
        return isinstance(other, HopfElement) and self.graded == other.graded

    def __bool__(self):
        return bool(self.graded)

    def coordinates(self, p):
        return self.graded.get(p, LinComb())


@lru_cache(maxsize=None)
def product_words(w1, w2):
    """Reduced class of the base-point connected sum of two chord words."""
    s1, s2 = parse_word(w1), parse_word(w2)
    shift = max(s1, default=0)
    word = canonical_chord(s1 + tuple(x + shift for x in s2))
    n = (len(s1) + len(s2)) // 2
    return space_A(n).reduce(LinComb({word: ONE}))


def product(x, y):
    """Bilinear extension of the connected sum at the base point; the class
    is commutative and associative (a tested property, not an assumption)."""
    out = HopfElement()
    for p, lc in x.graded.items():
        for q, mc in y.graded.items():
            for w1, c1 in lc.terms.items():
                for w2, c2 in mc.terms.items():
                    for k, v in product_words(w1, w2).terms.items():
                        out.add_term(p + q, k, c1 * c2 * v)
    return out


# ---------------------------------------------------------------------------
# coproduct


def coproduct(d):
    """All ordered splittings of the component set of a closed diagram into
    two parts (empty parts included); both sides reduced.  Returns a list
    of (left coordinates, right coordinates, scalar) triples."""
    sc = canonical_jacobi(d)
    if sc.is_zero:
        return []
    d = sc.diagram
    sign = Fraction(sc.sign)
    comps = components(d)
    out = []
    for mask in range(1 << len(comps)):
        left_idx = [i for i in range(len(comps)) if mask >> i & 1]
        right_idx = [i for i in range(len(comps)) if not mask >> i & 1]

        def part(idxs):
            legs = set().union(*(comps[i][0] for i in idxs)) if idxs else set()
            verts = set().union(*(comps[i][1] for i in idxs)) if idxs else set()
            return closed_class_in_A(_subdiagram(d, legs, verts))

        out.append((part(left_idx), part(right_idx), sign))
    return out


def _degree_of(lc):
    for w in lc.terms:
        return len(parse_word(w)) // 2
    return 0


def _acc(d, k, v):
    x = d.get(k, 0) + v
    if x:
        d[k] = x
    else:
        d.pop(k, None)


@lru_cache(maxsize=None)
def _delta_coords(w):
    """Coproduct of a representative word in tensor coordinates:
    dict {(i, left word, right word): Fraction} with i the left degree;
    the empty-part end terms are included."""
    acc = {}
    for left, right, sign in coproduct(chord_to_jacobi(w)):
        ldeg = _degree_of(left)
        for wl, cl in left.terms.items():
            for wr, cr in right.terms.items():
                _acc(acc, (ldeg, wl, wr), sign * cl * cr)
    return acc


def _delta_of_lincomb(lc):
    acc = {}
    for w, c in lc.terms.items():
        for key, v in _delta_coords(w).items():
            _acc(acc, key, c * v)
    return acc


# ---------------------------------------------------------------------------
# primitives


@lru_cache(maxsize=None)
def primitive_basis(p):
    """Basis of ker(Delta - x ox 1 - 1 ox x) inside the degree-p quotient,
    as coordinate vectors over the representative basis."""
    if p == 0:
        return ()
    A = space_A(p)
    basis = A.representative_basis
    pair_index = {}
    rows_by_pair = {}
    for col, w in enumerate(basis):
        for (i, wl, wr), v in _delta_coords(w).items():
            if i == 0 or i == p:
                continue  # the end terms are exactly x ox 1 + 1 ox x
            key = (i, wl, wr)
            r = pair_index.setdefault(key, len(pair_index))
            rows_by_pair.setdefault(r, {})[col] = v
    rows = [rows_by_pair.get(r, {}) for r in range(len(pair_index))]
    return tuple(tuple(vec.get(c, Fraction(0)) for c in range(len(basis)))
                 for vec in kernel_basis(rows, len(basis)))


@lru_cache(maxsize=None)
def connected_span(p):
    """Coordinate vectors of the classes of connected closed diagrams."""
    A = space_A(p)
    idx = {w: i for i, w in enumerate(A.representative_basis)}
    vecs = []
    for d in enumerate_jacobi(CLOSED, p):
        if not is_connected(d):
            continue
        red = closed_class_in_A(d)
        vecs.append(tuple(red.terms.get(w, Fraction(0)) for w in A.representative_basis))
    return tuple(vecs)


def verify_primitives(p):
    prim = primitive_basis(p)
    conn = connected_span(p)
    dim = space_A(p).dimension
    ok = subspace_equal([dict(enumerate(v)) for v in prim],
                        [dict(enumerate(v)) for v in conn], dim)
    prim_rank = matrix_rank([dict(enumerate(v)) for v in prim], dim)
    return {
        "suite": "primitives",
        "degree": p,
        "pass": ok,
        "checks": [{
            "name": "primitives-equal-connected-span",
            "pass": ok,
            "primitive_dim": prim_rank,
        }],
    }


# ---------------------------------------------------------------------------
# symmetrization


def _place_on_circle(d, perm):
    """Closed diagram with the legs of an open diagram laid on the circle
    in the order given by perm."""
    m, t = d.legs, d.internal
    pos = {leg: i for i, leg in enumerate(perm)}

    def remap(h):
        return pos[h] if h < m else h

    pairing = [None] * len(d.pairing)
    for h, p in enumerate(d.pairing):
        pairing[remap(h)] = remap(p)
    return JacobiDiagram(CLOSED, m, t, tuple(pairing))


@lru_cache(maxsize=None)
def symmetrize(d):
    """Average of the m! circle placements of an open diagram, reduced.
    The average normalization sends the strut to the one-chord class with
    coefficient one."""
    if d.kind != OPEN:
        raise ValueError("symmetrize acts on open diagrams")
    m = d.legs
    total = HopfElement()
    count = 0
    for perm in itertools.permutations(range(m)):
        count += 1
        lc = closed_class_in_A(_place_on_circle(d, perm))
        for w, c in lc.terms.items():
            total.add_term(d.order, w, c)
    return total.scaled(Fraction(1, count)) if count else HopfElement.unit()


def verify_symmetrization_iso(p):
    A = space_A(p)
    B = space_B(p)
    checks = [{
        "name": "dimensions-equal",
        "pass": A.dimension == B.dimension,
        "dim_A": A.dimension,
        "dim_B": B.dimension,
    }]
    idx = {w: i for i, w in enumerate(A.representative_basis)}
    rows = []
    for d in B.representative_basis:
        he = symmetrize(d)
        lc = he.coordinates(p)
        rows.append({idx[w]: c for w, c in lc.terms.items()})
    rk = matrix_rank(rows, A.dimension)
    checks.append({"name": "symmetrize-full-rank", "pass": rk == B.dimension,
                   "rank": rk})
    return {
        "suite": "sigma",
        "degree": p,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }


# ---------------------------------------------------------------------------
# axiom suite


def _tensor3_of(delta_pairs, side):
    """Apply Delta to one tensor factor of 2-tensor coordinates."""
    acc = {}
    for (i, wl, wr), v in delta_pairs.items():
        inner = _delta_coords(wl) if side == 0 else _delta_coords(wr)
        for (j, a, b), u in inner.items():
            if side == 0:
                key = (j, i - j, a, b, wr)
            else:
                key = (i, j, wl, a, b)
            x = acc.get(key, 0) + v * u
            if x:
                acc[key] = x
            else:
                acc.pop(key, None)
    return acc


def _norm3(acc):
    # common key shape: (deg1, deg2, w1, w2, w3)
    return {k: v for k, v in acc.items() if v}


def verify_bialgebra(pcap):
    """Exact checks: coassociativity, Delta multiplicativity, counit laws,
    grading additivity, and cut-independence of the connected sum, on all
    basis classes up to the degree cap."""
    checks = []
    witness = None

    def fail(name, info):
        nonlocal witness
        if witness is None:
            witness = {"check": name, **info}

    ok = True
    for k in range(pcap + 1):
        for w in space_A(k).representative_basis:
            delta = _delta_coords(w)
            lhs = _norm3(_tensor3_of(delta, 0))
            rhs = _norm3(_tensor3_of(delta, 1))
            if lhs != rhs:
                ok = False
                fail("coassociativity", {"degree": k, "word": w})
    checks.append({"name": "coassociativity", "pass": ok})

    ok = True
    for k1 in range(pcap + 1):
        for k2 in range(pcap + 1 - k1):
            for w1 in space_A(k1).representative_basis:
                for w2 in space_A(k2).representative_basis:
                    prod = product_words(w1, w2)
                    lhs = _delta_of_lincomb(prod)
                    rhs = _delta_product(_delta_coords(w1), _delta_coords(w2))
                    if lhs != rhs:
                        ok = False
                        fail("delta-multiplicative", {"w1": w1, "w2": w2})
    checks.append({"name": "delta-multiplicative", "pass": ok})

    ok = True
    for k in range(pcap + 1):
        for w in space_A(k).representative_basis:
            delta = _delta_coords(w)
            left = {}
            right = {}
            for (i, wl, wr), v in delta.items():
                if i == 0 and wl == "":
                    _acc(right, wr, v)
                if i == k and wr == "":
                    _acc(left, wl, v)
            expect = {w: ONE}
            if left != expect or right != expect:
                ok = False
                fail("counit", {"degree": k, "word": w})
    checks.append({"name": "counit", "pass": ok})

    ok = True
    for k1 in range(pcap + 1):
        for k2 in range(pcap + 1 - k1):
            for w1 in space_A(k1).representative_basis:
                for w2 in space_A(k2).representative_basis:
                    lc = product_words(w1, w2)
                    for w in lc.terms:
                        if len(parse_word(w)) // 2 != k1 + k2:
                            ok = False
                            fail("grading", {"w1": w1, "w2": w2})
    checks.append({"name": "grading-additive", "pass": ok})

    ok = True
    for k1 in range(pcap + 1):
        for k2 in range(pcap + 1 - k1):
            for w1 in space_A(k1).representative_basis:
                for w2 in space_A(k2).representative_basis:
                    if not _cut_independent(w1, w2):
                        ok = False
                        fail("cut-independence", {"w1": w1, "w2": w2})
    checks.append({"name": "connected-sum-cut-independence", "pass": ok})

    ok = True
    for k1 in range(pcap + 1):
        for k2 in range(pcap + 1 - k1):
            for w1 in space_A(k1).representative_basis:
                for w2 in space_A(k2).representative_basis:
                    if product_words(w1, w2) != product_words(w2, w1):
                        ok = False
                        fail("commutativity", {"w1": w1, "w2": w2})
    checks.append({"name": "product-commutative", "pass": ok})

    ok = True
    for degs in itertools.product(range(pcap + 1), repeat=3):
        if sum(degs) > pcap:
            continue
        for ws in itertools.product(*(space_A(k).representative_basis for k in degs)):
            x, y, z = (HopfElement.from_word(w) for w in ws)
            if product(product(x, y), z) != product(x, product(y, z)):
                ok = False
                fail("associativity", {"words": list(ws)})
    checks.append({"name": "product-associative", "pass": ok})

    report = {
        "suite": "hopf",
        "degree": pcap,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }
    if witness is not None:
        report["witness"] = witness
    return report


def _delta_product(d1, d2):
    acc = {}
    for (i1, a1, b1), v1 in d1.items():
        for (i2, a2, b2), v2 in d2.items():
            left = product_words(a1, a2)
            right = product_words(b1, b2)
            for wl, cl in left.terms.items():
                for wr, cr in right.terms.items():
                    _acc(acc, (i1 + i2, wl, wr), v1 * v2 * cl * cr)
    return acc


def _cut_independent(w1, w2):
    d1, d2 = chord_to_jacobi(w1), chord_to_jacobi(w2)
    base = None
    cuts1 = range(max(d1.legs, 1))
    cuts2 = range(max(d2.legs, 1))
    for c1 in cuts1:
        for c2 in cuts2:
            red = closed_class_in_A(connected_sum(d1, d2, c1, c2))
            if base is None:
                base = red
            elif red != base:
                return False
    return True
