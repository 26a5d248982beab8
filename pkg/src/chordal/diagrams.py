"""Diagram data model: chord diagrams, Jacobi diagrams, canonical forms with
orientation signs, and exhaustive enumeration by order.

Chord diagrams are double-occurrence words read counterclockwise from an
implicit base point.  Jacobi diagrams are multigraphs with univalent legs
and trivalent internal vertices carrying cyclic edge orderings; equality up
to isomorphism is decided by a canonical form that folds the antisymmetry
sign (an odd reordering of a vertex triple flips the sign, a diagram with a
sign-reversing automorphism is zero).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .canonical import MODE_CLOSED, MODE_FIXED, MODE_FREE, canonical_search


class DiagramError(ValueError):
    pass


# ---------------------------------------------------------------------------
# chord diagrams as double-occurrence words


def parse_word(s):
    """Word string to symbol tuple: '1212' or '1,2,1,2'."""
    s = s.strip()
    if not s:
        return ()
    parts = s.split(",") if "," in s else list(s)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise DiagramError("malformed chord word: %r" % (s,))


def word_str(syms):
    if any(x > 9 for x in syms):
        return ",".join(str(x) for x in syms)
    return "".join(str(x) for x in syms)


def _check_word(syms):
    counts = {}
    for x in syms:
        counts[x] = counts.get(x, 0) + 1
    if len(syms) % 2 or any(c != 2 for c in counts.values()):
        raise DiagramError("not a double-occurrence word: %r" % (word_str(syms),))


def _rename_first_occurrence(syms):
    names = {}
    out = []
    for x in syms:
        if x not in names:
            names[x] = len(names) + 1
        out.append(names[x])
    return tuple(out)


def canonical_chord(word):
    """Canonical double-occurrence word: rename symbols by first occurrence
    and take the lexicographically least rotation (each rotation renamed
    before comparison).  Idempotent, constant on rotation classes."""
    syms = parse_word(word) if isinstance(word, str) else tuple(word)
    _check_word(syms)
    n2 = len(syms)
    if n2 == 0:
        return ""
    best = min(
        _rename_first_occurrence(syms[r:] + syms[:r]) for r in range(n2)
    )
    return word_str(best)


def _matchings(points):
    """All perfect matchings of an ordered point list, as pair tuples."""
    if not points:
        yield ()
        return
    a = points[0]
    rest = points[1:]
    for i in range(len(rest)):
        b = rest[i]
        for sub in _matchings(rest[:i] + rest[i + 1:]):
            yield ((a, b),) + sub


def _word_of_matching(n2, pairs):
    sym = [0] * n2
    for lab, (a, b) in enumerate(pairs, start=1):
        sym[a] = sym[b] = lab
    return tuple(sym)


@lru_cache(maxsize=None)
def enumerate_chords(n):
    """Sorted canonical words: one representative per rotation class of the
    perfect matchings of 2n circle points."""
    if n < 0:
        raise DiagramError("order must be nonnegative")
    n2 = 2 * n
    seen = set()
    for pairs in _matchings(tuple(range(n2))):
        seen.add(canonical_chord(_word_of_matching(n2, pairs)))
    return tuple(sorted(seen, key=word_sort_key))


def word_sort_key(w):
    return (len(parse_word(w)), parse_word(w))


# ---------------------------------------------------------------------------
# Jacobi diagrams

CLOSED = "closed"
OPEN = "open"
VACUUM = "vacuum"


@dataclass(frozen=True)
class JacobiDiagram:
    """Half-edge presentation of a Jacobi diagram.

    Half-edges: legs are 0..legs-1 (circle order for the closed kind);
    internal vertex v owns slots legs+3v .. legs+3v+2, the stored slot
    order being the cyclic orientation at v.  pairing is an involution
    without fixed points on all half-edges.  labels, when nonempty, name
    the legs (one label per leg, modular-operad style).
    """

    kind: str
    legs: int
    internal: int
    pairing: tuple
    labels: tuple = ()

    def __post_init__(self):
        H = self.legs + 3 * self.internal
        if len(self.pairing) != H:
            raise DiagramError("pairing length mismatch")
        for h, p in enumerate(self.pairing):
            if p == h or not (0 <= p < H) or self.pairing[p] != h:
                raise DiagramError("pairing is not a fixed-point-free involution")
        if self.labels and len(self.labels) != self.legs:
            raise DiagramError("one label per leg required")
        if self.kind not in (CLOSED, OPEN, VACUUM):
            raise DiagramError("unknown kind %r" % (self.kind,))
        if self.kind == VACUUM and self.legs:
            raise DiagramError("vacuum diagrams have no legs")

    @property
    def order(self):
        return (self.legs + self.internal) // 2

    @property
    def edges(self):
        return (self.legs + 3 * self.internal) // 2

    @property
    def loop_order(self):
        return self.edges - (self.legs + self.internal) + len(components(self))

    def vertex_slots(self, v):
        b = self.legs + 3 * v
        return (b, b + 1, b + 2)

    def sort_key(self):
        return (self.order, self.legs, self.internal, self.pairing, self.labels, self.kind)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True)
class SignedCanonical:
    """Canonical representative with the accumulated antisymmetry sign;
    diagram None encodes the distinguished value ZERO."""

    diagram: JacobiDiagram | None
    sign: int

    @property
    def is_zero(self):
        return self.diagram is None


ZERO_CANONICAL = SignedCanonical(None, 0)


def _owner(d, h):
    return ("leg", h) if h < d.legs else ("vertex", (h - d.legs) // 3)


def components(d):
    """Partition of the vertex set (legs and internal vertices) into
    connected components; each part is (frozenset of leg indices,
    frozenset of internal vertex indices), sorted."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in range(d.legs):
        parent[("leg", i)] = ("leg", i)
    for v in range(d.internal):
        parent[("vertex", v)] = ("vertex", v)
    for h, p in enumerate(d.pairing):
        if h < p:
            union(_owner(d, h), _owner(d, p))
    groups = {}
    for node in parent:
        groups.setdefault(find(node), []).append(node)
    out = []
    for members in groups.values():
        legs = frozenset(i for k, i in members if k == "leg")
        verts = frozenset(i for k, i in members if k == "vertex")
        out.append((legs, verts))
    out.sort(key=lambda c: (sorted(c[0]), sorted(c[1])))
    return out


def is_connected(d):
    return len(components(d)) == 1


def every_component_has_leg(d):
    return all(legs for legs, _ in components(d))


def _subdiagram(d, leg_set, vert_set):
    """Induced subdiagram on a union of components (closed kind keeps the
    circular leg order)."""
    legs = sorted(leg_set)
    verts = sorted(vert_set)
    leg_pos = {l: i for i, l in enumerate(legs)}
    vert_pos = {v: i for i, v in enumerate(verts)}
    m, t = len(legs), len(verts)

    def remap(h):
        if h < d.legs:
            return leg_pos[h]
        v = (h - d.legs) // 3
        s = (h - d.legs) % 3
        return m + 3 * vert_pos[v] + s

    H = m + 3 * t
    pairing = [None] * H
    for h, p in enumerate(d.pairing):
        ho = _owner(d, h)
        if (ho[0] == "leg" and ho[1] in leg_set) or (ho[0] == "vertex" and ho[1] in vert_set):
            pairing[remap(h)] = remap(p)
    labels = tuple(d.labels[l] for l in legs) if d.labels else ()
    return JacobiDiagram(d.kind, m, t, tuple(pairing), labels)


def _search_mode(d):
    if d.kind == CLOSED:
        return MODE_CLOSED
    if d.labels:
        return MODE_FIXED
    return MODE_FREE


def _sorted_by_labels(d):
    """Reorder legs so labels are ascending (fixed-mode precondition)."""
    if not d.labels or list(d.labels) == sorted(d.labels):
        return d
    order = sorted(range(d.legs), key=lambda i: d.labels[i])
    pos = {old: new for new, old in enumerate(order)}

    def remap(h):
        return pos[h] if h < d.legs else h

    pairing = [None] * len(d.pairing)
    for h, p in enumerate(d.pairing):
        pairing[remap(h)] = remap(p)
    return JacobiDiagram(d.kind, d.legs, d.internal, tuple(pairing),
                         tuple(sorted(d.labels)))


def _reconstruct(kind, m, t, stream, labels=()):
    """Rebuild the canonical diagram from a canonical stream."""
    # stream positions <-> half-edges
    if kind == CLOSED or labels or t == 0:
        pos_to_half = list(range(m + 3 * t))
    else:
        pos_to_half = list(range(m, m + 3 * t)) + list(range(m))
    first = {}
    pairing = [None] * (m + 3 * t)
    for pos, tok in enumerate(stream):
        if tok in first:
            a = pos_to_half[first.pop(tok)]
            b = pos_to_half[pos]
            pairing[a] = b
            pairing[b] = a
        else:
            first[tok] = pos
    if first:
        raise DiagramError("unbalanced canonical stream")
    return JacobiDiagram(kind, m, t, tuple(pairing), labels)


def _canonical_connected(d):
    """Canonical form of a single closed diagram or a connected piece."""
    mode = _search_mode(d)
    if mode == MODE_FREE and d.internal == 0:
        # a connected leg-only piece is a single strut
        if d.legs == 2:
            return SignedCanonical(JacobiDiagram(d.kind, 2, 0, (1, 0)), 1)
        if d.legs == 0:
            return SignedCanonical(JacobiDiagram(d.kind, 0, 0, ()), 1)
        raise DiagramError("disconnected piece in free-mode canonicalization")
    if mode == MODE_FIXED:
        d = _sorted_by_labels(d)
    stream, sign = canonical_search(d.legs, d.internal, d.pairing, mode)
    if sign == 0:
        return ZERO_CANONICAL
    return SignedCanonical(
        _reconstruct(d.kind, d.legs, d.internal, stream, d.labels), sign
    )


def canonical_jacobi(d):
    """Canonical representative with antisymmetry sign, or ZERO when the
    diagram admits a sign-reversing automorphism.  Constant on isomorphism
    classes; the sign composes multiplicatively under triple reorderings."""
    if d.kind == CLOSED:
        return _canonical_connected(d)
    # open and vacuum kinds: canonicalize per component, then assemble
    comps = components(d)
    pieces = []
    sign = 1
    for legs, verts in comps:
        piece = _subdiagram(d, legs, verts)
        sc = _canonical_connected(piece)
        if sc.is_zero:
            return ZERO_CANONICAL
        sign *= sc.sign
        pieces.append(sc.diagram)
    if d.labels:
        pieces.sort(key=lambda p: p.labels)
    else:
        pieces.sort(key=lambda p: p.sort_key())
    out = _assemble(d.kind, pieces)
    if out.labels:
        out = _sorted_by_labels(out)
    return SignedCanonical(out, sign)


def _assemble(kind, pieces):
    m = sum(p.legs for p in pieces)
    t = sum(p.internal for p in pieces)
    pairing = [None] * (m + 3 * t)
    labels = []
    leg_off = 0
    vert_off = 0
    for p in pieces:
        def remap(h, p=p, leg_off=leg_off, vert_off=vert_off):
            if h < p.legs:
                return leg_off + h
            return m + 3 * vert_off + (h - p.legs)

        for h, q in enumerate(p.pairing):
            pairing[remap(h)] = remap(q)
        labels.extend(p.labels)
        leg_off += p.legs
        vert_off += p.internal
    return JacobiDiagram(kind, m, t, tuple(pairing), tuple(labels))


# ---------------------------------------------------------------------------
# constructions


def chord_to_jacobi(word):
    """Closed Jacobi diagram of a chord word: 2n circle legs, n edges,
    no internal vertices."""
    syms = parse_word(word) if isinstance(word, str) else tuple(word)
    _check_word(syms)
    slots = {}
    pairing = [None] * len(syms)
    for i, x in enumerate(syms):
        if x in slots:
            j = slots.pop(x)
            pairing[i] = j
            pairing[j] = i
        else:
            slots[x] = i
    return JacobiDiagram(CLOSED, len(syms), 0, tuple(pairing))


def jacobi_to_word(d):
    """Inverse of chord_to_jacobi on internal-vertex-free closed diagrams."""
    if d.kind != CLOSED or d.internal:
        raise DiagramError("not a chord diagram")
    return word_str(_rename_first_occurrence(
        tuple(min(h, d.pairing[h]) + 1 for h in range(d.legs))
    ))


def relabel(d, mapping):
    """Rename leg labels by a mapping (missing labels kept)."""
    if not d.labels:
        raise DiagramError("diagram has no labels")
    return JacobiDiagram(d.kind, d.legs, d.internal, d.pairing,
                         tuple(mapping.get(l, l) for l in d.labels))


def with_labels(d, labels):
    return JacobiDiagram(d.kind, d.legs, d.internal, d.pairing, tuple(labels))


def merge_closed(d, pos):
    """Fuse the circle-adjacent legs at positions pos, pos+1 into a new leg
    feeding a new internal vertex; the vertex triple reads (new leg edge,
    edge from pos, edge from pos+1) counterclockwise."""
    if d.kind != CLOSED or d.legs < 2:
        raise DiagramError("need a closed diagram with at least two legs")
    m, t = d.legs, d.internal
    a, b = pos % m, (pos + 1) % m
    nm, nt = m - 1, t + 1
    # the fused pair collapses to one circle position
    new_index = {}
    k = 0
    for i in range(m):
        if i == b:
            continue
        new_index[i] = k
        k += 1
    # leg a's position becomes the new leg u (if a == m-1 and b == 0, the
    # new leg sits at the end, which is the same circle)
    u = new_index[a]

    def remap(h):
        if h < m:
            return new_index[h]
        v = (h - m) // 3
        s = (h - m) % 3
        return nm + 3 * v + s

    vslot = nm + 3 * t  # slots of the created vertex
    pairing = [None] * (nm + 3 * nt)
    for h, p in enumerate(d.pairing):
        if h in (a, b) or p in (a, b):
            continue
        pairing[remap(h)] = remap(p)

    def connect(x, y):
        pairing[x] = y
        pairing[y] = x

    connect(u, vslot)  # new leg edge
    pa, pb = d.pairing[a], d.pairing[b]
    if pa == b:
        connect(vslot + 1, vslot + 2)  # adjacent chord becomes a self-loop
    else:
        connect(vslot + 1, remap(pa))
        connect(vslot + 2, remap(pb))
    return JacobiDiagram(CLOSED, nm, nt, tuple(pairing))


def swap_closed(d, pos):
    """Exchange the attachments at circle positions pos, pos+1."""
    m = d.legs
    a, b = pos % m, (pos + 1) % m
    pa, pb = d.pairing[a], d.pairing[b]
    pairing = list(d.pairing)
    if pa == b:
        return d
    pairing[a], pairing[pb] = pb, a
    pairing[b], pairing[pa] = pa, b
    return JacobiDiagram(CLOSED, m, d.internal, tuple(pairing))


def merge_open(d, i, j):
    """Fuse legs i and j of an open diagram into a new leg feeding a new
    internal vertex with triple (new leg edge, edge from i, edge from j)."""
    if d.kind != OPEN:
        raise DiagramError("need an open diagram")
    m, t = d.legs, d.internal
    if i == j or not (0 <= i < m and 0 <= j < m):
        raise DiagramError("bad leg pair")
    keep = [l for l in range(m) if l not in (i, j)]
    new_index = {l: k for k, l in enumerate(keep)}
    nm, nt = m - 1, t + 1
    u = nm - 1  # the new leg goes last

    def remap(h):
        if h < m:
            return new_index[h]
        v = (h - m) // 3
        s = (h - m) % 3
        return nm + 3 * v + s

    vslot = nm + 3 * t
    pairing = [None] * (nm + 3 * nt)
    for h, p in enumerate(d.pairing):
        if h in (i, j) or p in (i, j):
            continue
        pairing[remap(h)] = remap(p)

    def connect(x, y):
        pairing[x] = y
        pairing[y] = x

    connect(u, vslot)
    pi, pj = d.pairing[i], d.pairing[j]
    if pi == j:
        connect(vslot + 1, vslot + 2)
    else:
        connect(vslot + 1, remap(pi))
        connect(vslot + 2, remap(pj))
    return JacobiDiagram(OPEN, nm, nt, tuple(pairing))


def glue_legs(d, i, j, out_kind=None):
    """Join the edges at legs i and j into one edge (the legs disappear);
    the modular-operad contraction when i, j sit on one diagram."""
    m, t = d.legs, d.internal
    pi, pj = d.pairing[i], d.pairing[j]
    if pi == j:
        raise DiagramError("gluing a bare strut leaves a circle with no vertex")
    keep = [l for l in range(m) if l not in (i, j)]
    new_index = {l: k for k, l in enumerate(keep)}
    nm = m - 2

    def remap(h):
        if h < m:
            return new_index[h]
        v = (h - m) // 3
        s = (h - m) % 3
        return nm + 3 * v + s

    pairing = [None] * (nm + 3 * t)
    for h, p in enumerate(d.pairing):
        if h in (i, j) or p in (i, j):
            continue
        pairing[remap(h)] = remap(p)
    a, b = remap(pi), remap(pj)
    pairing[a] = b
    pairing[b] = a
    kind = out_kind or (VACUUM if nm == 0 else d.kind)
    labels = tuple(d.labels[l] for l in keep) if d.labels else ()
    return JacobiDiagram(kind, nm, t, tuple(pairing), labels)


def disjoint_union(d1, d2, kind=None):
    kind = kind or d1.kind
    if bool(d1.labels) != bool(d2.labels) and (d1.legs and d2.legs):
        raise DiagramError("cannot mix labelled and unlabelled legs")
    return _assemble(kind, [d1, d2])


def compose_legs(d1, i, d2, j):
    """Join leg i of d1 to leg j of d2 by splicing their edges (the
    modular-operad composition; the strut acts as the unit)."""
    u = disjoint_union(d1, d2, kind=d1.kind)
    return glue_legs(u, i, d1.legs + j, out_kind=d1.kind)


def connected_sum(d1, d2, cut1=0, cut2=0):
    """Closed diagrams spliced along cuts: circle of d1 opened at gap cut1
    (before leg cut1) followed by d2 opened at gap cut2.  Orders add."""
    for d, cut in ((d1, cut1), (d2, cut2)):
        if d.kind != CLOSED:
            raise DiagramError("connected sum needs closed diagrams")
        if not (0 <= cut <= d.legs):
            raise DiagramError("invalid cut position %r" % (cut,))
    m1, m2 = d1.legs, d2.legs
    t1, t2 = d1.internal, d2.internal
    m, t = m1 + m2, t1 + t2
    order1 = [(1, (cut1 + k) % m1) for k in range(m1)] if m1 else []
    order2 = [(2, (cut2 + k) % m2) for k in range(m2)] if m2 else []
    pos = {leg: p for p, leg in enumerate(order1 + order2)}

    def remap(which, h, d, voff):
        if h < d.legs:
            return pos[(which, h)]
        v = (h - d.legs) // 3
        s = (h - d.legs) % 3
        return m + 3 * (voff + v) + s

    pairing = [None] * (m + 3 * t)
    for h, p in enumerate(d1.pairing):
        pairing[remap(1, h, d1, 0)] = remap(1, p, d1, 0)
    for h, p in enumerate(d2.pairing):
        pairing[remap(2, h, d2, t1)] = remap(2, p, d2, t1)
    return JacobiDiagram(CLOSED, m, t, tuple(pairing))


# ---------------------------------------------------------------------------
# enumeration

def _canonical_key(d):
    """Structural dedup key: the canonical stream, ignoring the sign (zero
    classes keep their representative)."""
    sc = canonical_jacobi(d)
    if not sc.is_zero:
        return sc.diagram
    # reconstruct the representative of a zero class for structural dedup
    if d.kind == CLOSED:
        stream, _ = canonical_search(d.legs, d.internal, d.pairing, MODE_CLOSED)
        return _reconstruct(CLOSED, d.legs, d.internal, stream)
    comps = components(d)
    pieces = []
    for legs, verts in comps:
        piece = _subdiagram(d, legs, verts)
        if piece.internal == 0:
            pieces.append(JacobiDiagram(piece.kind, piece.legs, 0,
                                        tuple(reversed(range(piece.legs)))))
            continue
        if piece.labels:
            piece = _sorted_by_labels(piece)
        stream, _ = canonical_search(piece.legs, piece.internal, piece.pairing,
                                     MODE_FIXED if piece.labels else MODE_FREE)
        pieces.append(_reconstruct(piece.kind, piece.legs, piece.internal,
                                   stream, piece.labels))
    pieces.sort(key=lambda p: (p.labels, p.sort_key()) if d.labels else p.sort_key())
    out = _assemble(d.kind, pieces)
    return _sorted_by_labels(out) if out.labels else out


@lru_cache(maxsize=None)
def _closed_levels(p):
    """Structural classes of closed diagrams of order p, one frozenset per
    internal-vertex count t = 0 .. 2p-1.  Every class with t >= 1 arises by
    fusing an adjacent leg pair of a class with t - 1 vertices."""
    levels = []
    level = {_canonical_key(chord_to_jacobi(w)): None for w in enumerate_chords(p)}
    levels.append(frozenset(level))
    t = 0
    while t < 2 * p - 1:
        nxt = set()
        for d in levels[-1]:
            for pos in range(d.legs):
                nxt.add(_canonical_key(merge_closed(d, pos)))
        levels.append(frozenset(nxt))
        t += 1
    return levels


@lru_cache(maxsize=None)
def _open_level(p, t):
    """Structural classes of open diagrams of order p with t internal
    vertices, zero classes included; level t arises from level t-1 by
    fusing arbitrary leg pairs."""
    if t == 0:
        if p == 0:
            return frozenset({JacobiDiagram(OPEN, 0, 0, ())})
        return frozenset({_assemble(OPEN, [JacobiDiagram(OPEN, 2, 0, (1, 0))] * p)})
    nxt = set()
    for d in _open_level(p, t - 1):
        for i in range(d.legs):
            for j in range(i + 1, d.legs):
                nxt.add(_canonical_key(merge_open(d, i, j)))
    return frozenset(nxt)


def _open_levels(p):
    return [_open_level(p, t) for t in range(max(2 * p, 1))]


def _nonzero(ds):
    out = []
    for d in ds:
        sc = canonical_jacobi(d)
        if not sc.is_zero:
            out.append(sc.diagram)
    return sorted(set(out), key=JacobiDiagram.sort_key)


@lru_cache(maxsize=None)
def enumerate_jacobi(kind, p, m=None):
    """Canonical nonzero representatives, one per isomorphism class.

    closed: all closed diagrams of order p (optionally restricted to m legs).
    open:   all open diagrams of order p (each component has a leg).
    vacuum: connected leg-free diagrams of order p (2p vertices), obtained
            by gluing the two legs of connected 2-leg diagrams of order p+1.
    """
    if p < 0:
        raise DiagramError("order must be nonnegative")
    if kind == CLOSED:
        out = []
        for level in _closed_levels(p):
            for d in level:
                if m is not None and d.legs != m:
                    continue
                out.extend(_nonzero([d]))
        return tuple(sorted(set(out), key=JacobiDiagram.sort_key))
    if kind == OPEN:
        out = []
        for level in _open_levels(p):
            for d in level:
                if m is not None and d.legs != m:
                    continue
                out.extend(_nonzero([d]))
        return tuple(sorted(set(out), key=JacobiDiagram.sort_key))
    if kind == VACUUM:
        if m not in (None, 0):
            raise DiagramError("vacuum diagrams have no legs")
        if p == 0:
            return ()
        out = set()
        for d in open_connected(p + 1, 2):
            g = glue_legs(d, 0, 1)
            sc = canonical_jacobi(g)
            if not sc.is_zero:
                out.add(sc.diagram)
        return tuple(sorted(out, key=JacobiDiagram.sort_key))
    raise DiagramError("unknown kind %r" % (kind,))


@lru_cache(maxsize=None)
def open_connected(p, m):
    """Canonical nonzero connected open diagrams with m legs, order p."""
    return tuple(d for d in enumerate_jacobi(OPEN, p, m) if is_connected(d))


@lru_cache(maxsize=None)
def open_structural(p, m, connected_only=True):
    """Structural classes (zero classes included) of open diagrams with m
    legs and order p; the raw material for leg labelling."""
    t = 2 * p - m
    if t < 0 or (p == 0 and m != 0) or (p > 0 and m < 1):
        return ()
    out = [d for d in _open_level(p, t) if d.legs == m]
    if connected_only:
        out = [d for d in out if is_connected(d)]
    return tuple(sorted(out, key=JacobiDiagram.sort_key))


# ---------------------------------------------------------------------------
# textual format: one line per diagram

def _half_edge_name(d, h):
    if h < d.legs:
        return d.labels[h] if d.labels else "l%d" % h
    v = (h - d.legs) // 3
    s = (h - d.legs) % 3
    return "v%d%s" % (v, "abc"[s])


def format_jacobi(d):
    """`kind; legs: ...; vertex v: (h,h,h); edge: hA-hB` with half-edge
    identifiers; exact round-trip with parse_jacobi."""
    parts = [d.kind, "legs: " + ",".join(_half_edge_name(d, i) for i in range(d.legs))]
    for v in range(d.internal):
        slots = d.vertex_slots(v)
        parts.append("vertex v%d: (%s)" % (v, ",".join(_half_edge_name(d, s) for s in slots)))
    seen = set()
    for h in range(len(d.pairing)):
        p = d.pairing[h]
        if (p, h) in seen:
            continue
        seen.add((h, p))
        parts.append("edge: %s-%s" % (_half_edge_name(d, h), _half_edge_name(d, p)))
    return "; ".join(parts)


def parse_jacobi(line):
    parts = [p.strip() for p in line.strip().split(";")]
    if not parts or parts[0] not in (CLOSED, OPEN, VACUUM):
        raise DiagramError("bad kind in %r" % (line,))
    kind = parts[0]
    if len(parts) < 2 or not parts[1].startswith("legs:"):
        raise DiagramError("missing legs field")
    legs_field = parts[1][len("legs:"):].strip()
    leg_names = [s.strip() for s in legs_field.split(",") if s.strip()] if legs_field else []
    m = len(leg_names)
    labelled = any(not (n.startswith("l") and n[1:].isdigit()) for n in leg_names)
    name_to_half = {}
    for i, n in enumerate(leg_names):
        if n in name_to_half:
            raise DiagramError("duplicate leg name %r" % (n,))
        name_to_half[n] = i
    vertex_count = 0
    edges = []
    for part in parts[2:]:
        if part.startswith("vertex"):
            head, triple = part.split(":", 1)
            v = int(head.split()[1][1:])
            if v != vertex_count:
                raise DiagramError("vertices must appear in order")
            names = [s.strip() for s in triple.strip().strip("()").split(",")]
            if len(names) != 3:
                raise DiagramError("vertex needs three half-edges")
            for s, n in enumerate(names):
                if n in name_to_half:
                    raise DiagramError("duplicate half-edge %r" % (n,))
                name_to_half[n] = m + 3 * v + s
            vertex_count += 1
        elif part.startswith("edge:"):
            a, b = part[len("edge:"):].strip().split("-")
            edges.append((a.strip(), b.strip()))
        elif part:
            raise DiagramError("unrecognized field %r" % (part,))
    H = m + 3 * vertex_count
    pairing = [None] * H
    for a, b in edges:
        try:
            ha, hb = name_to_half[a], name_to_half[b]
        except KeyError as exc:
            raise DiagramError("unknown half-edge %s" % (exc,))
        if pairing[ha] is not None or pairing[hb] is not None:
            raise DiagramError("half-edge used twice")
        pairing[ha] = hb
        pairing[hb] = ha
    if any(p is None for p in pairing):
        raise DiagramError("unpaired half-edge")
    labels = tuple(leg_names) if labelled else ()
    return JacobiDiagram(kind, m, vertex_count, tuple(pairing), labels)


def diagram_str(d):
    """Compact display: the word for chord diagrams, the record otherwise."""
    if d.kind == CLOSED and d.internal == 0:
        return jacobi_to_word(d)
    return format_jacobi(d)
