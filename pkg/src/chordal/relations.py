"""Relation families (4T on chord diagrams, STU on closed diagrams, IHX at
internal edges) and the quotient spaces they present.

Antisymmetry is never written as relation rows: it is folded structurally
into canonical forms, and sign-degenerate diagrams vanish at
canonicalization.  Relation rows are anchored at every structural
isomorphism class, including sign-degenerate ones, so no instance of a
local relation between surviving classes is lost.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .diagrams import (
    CLOSED,
    OPEN,
    VACUUM,
    DiagramError,
    JacobiDiagram,
    _canonical_key,
    _closed_levels,
    _matchings,
    canonical_chord,
    canonical_jacobi,
    chord_to_jacobi,
    diagram_str,
    enumerate_chords,
    enumerate_jacobi,
    glue_legs,
    jacobi_to_word,
    merge_closed,
    open_structural,
    swap_closed,
    word_sort_key,
)
from .linalg import LinComb, build_quotient, rank as matrix_rank

ONE = Fraction(1)


class RelationFamily:
    """A named family of relation rows of one degree."""

    def __init__(self, kind, degree, generators):
        self.kind = kind
        self.degree = degree
        self.generators = tuple(generators)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def _diagram_key(k):
    return k.sort_key() if isinstance(k, JacobiDiagram) else word_sort_key(k)


def _normalize_rows(rows):
    """Scale each row so its least term has coefficient 1, drop empties,
    deduplicate, and sort; the resulting family is order-canonical."""
    seen = {}
    for row in rows:
        if not row:
            continue
        lead = min(row.terms, key=_diagram_key)
        scaled = row.scaled(ONE / row.terms[lead])
        key = tuple(sorted(((_diagram_key(k), v) for k, v in scaled.terms.items())))
        seen.setdefault(key, scaled)
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------------------------
# four-term relations on chord diagrams


def _insert(seq, idx, token):
    return seq[:idx] + (token,) + seq[idx:]


def _word_of_tokens(tokens):
    # tokens are chord ids; rename by first occurrence happens in canonical_chord
    return canonical_chord(tokens)


@lru_cache(maxsize=None)
def four_term_generators(n):
    """Alternating 4-diagram relations: a moving endpoint visits the four
    slots adjacent to the two endpoints of a fixed chord, with signs
    (+,-,+,-); all backgrounds and placements are enumerated."""
    rows = []
    if n >= 2:
        pts = 2 * n - 2
        w_id, x_id = n, n  # the moving chord: one symbol, two endpoints
        for pairs in _matchings(tuple(range(pts))):
            base = [0] * pts
            for cid, (a, b) in enumerate(pairs, start=1):
                base[a] = base[b] = cid
            base = tuple(base)
            for wgap in range(pts + 1):
                seq_w = _insert(base, wgap, w_id)
                for (a, b) in pairs:
                    row = LinComb()
                    for target in (a, b):
                        idx = target if target < wgap else target + 1
                        after = _word_of_tokens(_insert(seq_w, idx + 1, x_id))
                        before = _word_of_tokens(_insert(seq_w, idx, x_id))
                        row.add(after, ONE)
                        row.add(before, -ONE)
                    rows.append(row)
    return RelationFamily("4T", n, _normalize_rows(rows))


# ---------------------------------------------------------------------------
# STU relations on closed diagrams


def closed_structural(p):
    out = []
    for level in _closed_levels(p):
        out.extend(level)
    return sorted(out, key=JacobiDiagram.sort_key)


def _add_canonical(row, raw, coeff):
    sc = canonical_jacobi(raw)
    if not sc.is_zero:
        row.add(sc.diagram, coeff * sc.sign)


@lru_cache(maxsize=None)
def stu_generators(p):
    """One generator per (closed diagram, counterclockwise-adjacent leg
    pair): fuse the pair into an internal vertex Y and subtract the two
    resolutions, D_Y - D_parallel + D_crossed."""
    rows = []
    for d in closed_structural(p):
        if d.legs < 2:
            continue
        for pos in range(d.legs):
            row = LinComb()
            _add_canonical(row, merge_closed(d, pos), ONE)
            _add_canonical(row, d, -ONE)
            _add_canonical(row, swap_closed(d, pos), ONE)
            rows.append(row)
    return RelationFamily("STU", p, _normalize_rows(rows))


# ---------------------------------------------------------------------------
# IHX relations at internal edges


def _rewire(d, umap):
    """Rebuild a diagram after permuting half-edge positions by umap."""
    sigma = list(range(len(d.pairing)))
    for old, new in umap.items():
        sigma[old] = new
    pairing = [None] * len(d.pairing)
    for h, p in enumerate(d.pairing):
        pairing[sigma[h]] = sigma[p]
    return JacobiDiagram(d.kind, d.legs, d.internal, tuple(pairing), d.labels)


def ihx_rows_for(d):
    """Jacobi rewirings at every internal edge between two distinct internal
    vertices: the given diagram plus its two cyclic rewirings sum to zero."""
    rows = []
    m = d.legs
    for u in range(d.internal):
        us = d.vertex_slots(u)
        for su in us:
            h = d.pairing[su]
            if h < m:
                continue
            w = (h - m) // 3
            if w == u:
                continue
            ws = d.vertex_slots(w)
            ku = us.index(su)
            a, b = us[(ku + 1) % 3], us[(ku + 2) % 3]
            kw = ws.index(h)
            c, dd = ws[(kw + 1) % 3], ws[(kw + 2) % 3]
            # presentations: u = (a, b, su), w = (h, c, dd)
            row = LinComb()
            _add_canonical(row, d, ONE)
            g2 = _rewire(d, {b: us[0], c: us[1], su: us[2], h: ws[0], a: ws[1], dd: ws[2]})
            g3 = _rewire(d, {c: us[0], a: us[1], su: us[2], h: ws[0], b: ws[1], dd: ws[2]})
            _add_canonical(row, g2, ONE)
            _add_canonical(row, g3, ONE)
            rows.append(row)
    return rows


@lru_cache(maxsize=None)
def vacuum_structural(p):
    """Structural classes of connected vacuum diagrams of order p (2p
    trivalent vertices), zero classes included."""
    if p == 0:
        return ()
    seen = {}
    for d in open_structural(p + 1, 2, True):
        g = _canonical_key(glue_legs(d, 0, 1))
        seen[g] = None
    return tuple(sorted(seen, key=JacobiDiagram.sort_key))


@lru_cache(maxsize=None)
def ihx_generators(kind, p, m=None):
    """IHX rows anchored at every structural class of the requested kind."""
    if kind == CLOSED:
        ambient = [d for d in closed_structural(p) if m is None or d.legs == m]
    elif kind == OPEN:
        levels = []
        for t in range(2 * p + 1):
            mm = 2 * p - t
            if m is not None and mm != m:
                continue
            levels.extend(open_structural(p, mm, False))
        ambient = levels
    elif kind == VACUUM:
        ambient = list(vacuum_structural(p))
    else:
        raise DiagramError("unknown kind %r" % (kind,))
    rows = []
    for d in ambient:
        rows.extend(ihx_rows_for(d))
    return RelationFamily("IHX", p, _normalize_rows(rows))


# ---------------------------------------------------------------------------
# quotient spaces


@lru_cache(maxsize=None)
def space_A(n):
    ambient = enumerate_chords(n)
    return build_quotient(ambient, four_term_generators(n).generators)


@lru_cache(maxsize=None)
def space_G(p):
    ambient = enumerate_jacobi(CLOSED, p)
    return build_quotient(ambient, stu_generators(p).generators)


@lru_cache(maxsize=None)
def space_B(p):
    ambient = enumerate_jacobi(OPEN, p)
    return build_quotient(ambient, ihx_generators(OPEN, p).generators)


@lru_cache(maxsize=None)
def space_vacuum(p):
    ambient = enumerate_jacobi(VACUUM, p)
    return build_quotient(ambient, ihx_generators(VACUUM, p).generators)


def build_space(kind, degree, legs=None):
    """Quotient space selector: A (chords mod 4T), G (closed mod STU),
    B (open mod AS+IHX), vacuum (connected leg-free mod AS+IHX), or M
    (labelled connected graphs, see chordal.modular)."""
    if kind == "A":
        return space_A(degree)
    if kind == "G":
        return space_G(degree)
    if kind == "B":
        return space_B(degree)
    if kind == "vacuum":
        return space_vacuum(degree)
    if kind == "M":
        from .modular import space_M

        if legs is None:
            raise DiagramError("M spaces need a leg label set")
        return space_M(tuple(legs), degree)
    raise DiagramError("unsupported space kind %r" % (kind,))


# ---------------------------------------------------------------------------
# STU resolution: closed diagrams as chord-word combinations


def _unmerge_closed(d, q):
    """Resolve the internal vertex attached to leg q into the two leg
    orderings; returns (parallel, crossed) raw diagrams."""
    m, t = d.legs, d.internal
    h_v = d.pairing[q]
    v = (h_v - m) // 3
    vs = d.vertex_slots(v)
    k = vs.index(h_v)
    sa, sb = vs[(k + 1) % 3], vs[(k + 2) % 3]
    nm, nt = m + 1, t - 1

    def leg_pos(i):
        return i if i < q else i + 1

    vkeep = [x for x in range(t) if x != v]
    vpos = {x: i for i, x in enumerate(vkeep)}

    def remap(h):
        if h < m:
            return leg_pos(h)
        x = (h - m) // 3
        s = (h - m) % 3
        return nm + 3 * vpos[x] + s

    def build(first, second):
        pairing = [None] * (nm + 3 * nt)
        for h, p in enumerate(d.pairing):
            if h in (q, h_v, sa, sb) or p in (q, h_v, sa, sb):
                continue
            pairing[remap(h)] = remap(p)

        def connect(x, y):
            pairing[x] = y
            pairing[y] = x

        s_pos, t_pos = q, q + 1
        if d.pairing[first] == second:
            connect(s_pos, t_pos)
        else:
            connect(s_pos, remap(d.pairing[first]))
            connect(t_pos, remap(d.pairing[second]))
        return JacobiDiagram(CLOSED, nm, nt, tuple(pairing))

    return build(sa, sb), build(sb, sa)


@lru_cache(maxsize=None)
def resolve_to_chords(d):
    """Express a canonical closed diagram as a chord-word combination by
    repeatedly resolving a circle-adjacent internal vertex via STU."""
    if d.kind != CLOSED:
        raise DiagramError("resolution applies to closed diagrams")
    if d.internal == 0:
        return ((jacobi_to_word(d), ONE),)
    q = min(i for i in range(d.legs) if d.pairing[i] >= d.legs)
    par, cross = _unmerge_closed(d, q)
    acc = {}
    for raw, outer in ((par, ONE), (cross, -ONE)):
        sc = canonical_jacobi(raw)
        if sc.is_zero:
            continue
        for w, c in resolve_to_chords(sc.diagram):
            x = acc.get(w, 0) + outer * sc.sign * c
            if x:
                acc[w] = x
            else:
                acc.pop(w, None)
    return tuple(sorted(acc.items(), key=lambda t: word_sort_key(t[0])))


def _to_A_coords(d, sign=1):
    """Coordinates of sign * [d] on the representative basis of the chord
    quotient at the order of d."""
    space = space_A(d.order)
    lc = LinComb()
    for w, c in resolve_to_chords(d):
        lc.add(w, sign * c)
    return space.reduce(lc)


def closed_class_in_A(raw):
    """Reduced chord-quotient class of an arbitrary closed diagram."""
    sc = canonical_jacobi(raw)
    if sc.is_zero:
        return LinComb()
    return _to_A_coords(sc.diagram, sc.sign)


# ---------------------------------------------------------------------------
# presentation isomorphism


def verify_presentation_iso(p):
    """Check that chord diagrams modulo 4T and closed diagrams modulo STU
    present the same space: equal dimensions, chord classes of full rank,
    and all closed IHX rows inside the STU row space."""
    A = space_A(p)
    G = space_G(p)
    checks = []
    ok_dims = A.dimension == G.dimension
    checks.append({
        "name": "dimensions-equal",
        "pass": ok_dims,
        "dim_A": A.dimension,
        "dim_G": G.dimension,
    })
    gidx = {k: i for i, k in enumerate(G.representative_basis)}
    rows = []
    for w in A.representative_basis:
        sc = canonical_jacobi(chord_to_jacobi(w))
        lc = LinComb().add(sc.diagram, Fraction(sc.sign))
        red = G.reduce(lc)
        rows.append({gidx[k]: v for k, v in red.terms.items()})
    rk = matrix_rank(rows, G.dimension)
    checks.append({
        "name": "chord-classes-full-rank",
        "pass": rk == G.dimension and rk == A.dimension,
        "rank": rk,
    })
    witness = None
    ok_ihx = True
    for row in ihx_generators(CLOSED, p).generators:
        red = G.reduce(row)
        if red:
            ok_ihx = False
            witness = {diagram_str(k): str(v) for k, v in red.terms.items()}
            break
    checks.append({"name": "closed-ihx-in-stu-span", "pass": ok_ihx,
                   **({"witness": witness} if witness else {})})
    return {
        "suite": "presentations",
        "degree": p,
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }
