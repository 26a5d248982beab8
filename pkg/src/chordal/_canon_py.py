"""Pure-Python canonical labeling kernel for half-edge diagrams.

A diagram is given by m univalent legs (half-edges 0..m-1), t trivalent
vertices (vertex v owns half-edges m+3v, m+3v+1, m+3v+2, the stored slot
order being its cyclic orientation), and an involutive pairing without
fixed points on all half-edges.

The canonical form is a lexicographically least integer stream found by a
deterministic backtracking search:

  mode 0 (closed)  legs are circularly ordered; every rotation is tried as
                   an anchor.  Stream: one edge token per leg in rotation
                   order, then vertex triples.
  mode 1 (fixed)   legs are pinned (labelled diagrams).  Stream as above
                   with the identity leg order.
  mode 2 (free)    legs are freely interchangeable and the diagram must be
                   connected with t >= 1.  Stream: vertex triples, then the
                   sorted multiset of leg edge tokens.

Edge tokens are ids assigned in first-encounter order, so the stream
determines the pairing up to the equivalences of the mode.  Vertices are
emitted in any order and any of the 6 slot orderings; odd orderings flip
the sign.  The search explores exactly the assignments achieving the
minimal stream; if both signs occur the diagram is antisymmetry-degenerate
and the sign is reported as 0.

The compiled twin in _canon_cy.pyx implements the identical algorithm and
must produce bit-identical output.
"""

from __future__ import annotations

# slot orderings: rotations carry +1, reversals -1
_ORIENTS = (
    (0, 1, 2, 1),
    (1, 2, 0, 1),
    (2, 0, 1, 1),
    (0, 2, 1, -1),
    (2, 1, 0, -1),
    (1, 0, 2, -1),
)


def canonical_search(m, t, pairing, mode):
    """Return (stream tuple, sign); sign 0 means antisymmetry-degenerate."""
    H = m + 3 * t
    P = pairing
    # edge index per half-edge, edges numbered by their smaller half-edge
    ekey = [0] * H
    edge_no = {}
    for h in range(H):
        k = h if h < P[h] else P[h]
        if k not in edge_no:
            edge_no[k] = len(edge_no)
        ekey[h] = edge_no[k]
    nE = len(edge_no)

    best = None
    best_signs = set()
    used = [False] * t

    def vertex_tokens(v, orient, eid, nxt):
        base = m + 3 * v
        o = _ORIENTS[orient]
        toks = []
        prov = {}
        for i in range(3):
            e = ekey[base + o[i]]
            x = eid[e]
            if x >= 0:
                toks.append(x)
            elif e in prov:
                toks.append(prov[e])
            else:
                prov[e] = nxt
                toks.append(nxt)
                nxt += 1
        return toks

    def finalize(cur, eid, sign):
        nonlocal best, best_signs
        if mode == 2:
            stream = tuple(cur) + tuple(sorted(eid[ekey[i]] for i in range(m)))
        else:
            stream = tuple(cur)
        if best is None or stream < best:
            best = stream
            best_signs = {sign}
        elif stream == best:
            best_signs.add(sign)

    def rec(depth, cur, eid, nxt, sign, tight):
        if depth == t:
            finalize(cur, eid, sign)
            return
        mn = None
        args = []
        for v in range(t):
            if used[v]:
                continue
            for o in range(6):
                toks = vertex_tokens(v, o, eid, nxt)
                if mn is None or toks < mn:
                    mn = toks
                    args = [(v, o)]
                elif toks == mn:
                    args.append((v, o))
        if tight and best is not None:
            pos = len(cur)
            block = list(best[pos:pos + 3])
            if mn > block:
                return
            tight = mn == block
        for v, o in args:
            used[v] = True
            committed = []
            # commit new edge ids in slot-encounter order (matches the
            # provisional numbering used by vertex_tokens)
            base = m + 3 * v
            oo = _ORIENTS[o]
            nxt2 = nxt
            for i in range(3):
                e = ekey[base + oo[i]]
                if eid[e] < 0:
                    eid[e] = nxt2
                    committed.append(e)
                    nxt2 += 1
            cur.extend(mn)
            rec(depth + 1, cur, eid, nxt2, sign * _ORIENTS[o][3], tight)
            del cur[len(cur) - 3:]
            for e in committed:
                eid[e] = -1
            used[v] = False

    if mode == 0:
        anchors = range(m) if m else (0,)
        for r in anchors:
            eid = [-1] * nE
            nxt = 0
            prefix = []
            for i in range(m):
                e = ekey[(r + i) % m]
                if eid[e] < 0:
                    eid[e] = nxt
                    nxt += 1
                prefix.append(eid[e])
            if best is not None:
                head = list(best[:m])
                if prefix > head:
                    continue
                rec(0, prefix, eid, nxt, 1, prefix == head)
            else:
                rec(0, prefix, eid, nxt, 1, False)
    elif mode == 1:
        eid = [-1] * nE
        nxt = 0
        prefix = []
        for i in range(m):
            e = ekey[i]
            if eid[e] < 0:
                eid[e] = nxt
                nxt += 1
            prefix.append(eid[e])
        rec(0, prefix, eid, nxt, 1, False)
    elif mode == 2:
        if t == 0:
            raise ValueError("free mode requires at least one vertex")
        eid = [-1] * nE
        rec(0, [], eid, 0, 1, False)
    else:
        raise ValueError("unknown mode %r" % (mode,))

    sign = 0 if len(best_signs) == 2 else next(iter(best_signs))
    return best, sign
