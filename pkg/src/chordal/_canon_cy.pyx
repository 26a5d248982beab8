# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled canonical-labeling kernel.

Same algorithm and bit-identical output as chordal._canon_py; see that
module for the specification of modes, streams, and signs.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy


cdef int ORIENT_SLOT[6][3]
cdef int ORIENT_PAR[6]

ORIENT_SLOT[0][0], ORIENT_SLOT[0][1], ORIENT_SLOT[0][2] = 0, 1, 2
ORIENT_SLOT[1][0], ORIENT_SLOT[1][1], ORIENT_SLOT[1][2] = 1, 2, 0
ORIENT_SLOT[2][0], ORIENT_SLOT[2][1], ORIENT_SLOT[2][2] = 2, 0, 1
ORIENT_SLOT[3][0], ORIENT_SLOT[3][1], ORIENT_SLOT[3][2] = 0, 2, 1
ORIENT_SLOT[4][0], ORIENT_SLOT[4][1], ORIENT_SLOT[4][2] = 2, 1, 0
ORIENT_SLOT[5][0], ORIENT_SLOT[5][1], ORIENT_SLOT[5][2] = 1, 0, 2
ORIENT_PAR[0] = ORIENT_PAR[1] = ORIENT_PAR[2] = 1
ORIENT_PAR[3] = ORIENT_PAR[4] = ORIENT_PAR[5] = -1


cdef class _Searcher:
    cdef int m, t, H, nE, mode, stream_len
    cdef int* P
    cdef int* ekey
    cdef int* eid
    cdef char* used
    cdef int* cur
    cdef int cur_len
    cdef int* best
    cdef bint has_best
    cdef int signs  # bit 0: sign +1 achieved the best, bit 1: sign -1

    def __cinit__(self, int m, int t, pairing, int mode):
        cdef int h, k, e
        if mode == 2 and m > 64:
            raise ValueError("too many legs for the compiled kernel")
        self.m = m
        self.t = t
        self.H = m + 3 * t
        self.mode = mode
        self.stream_len = self.H  # leg tokens + vertex tokens in every mode
        self.P = <int*> malloc(self.H * sizeof(int))
        self.ekey = <int*> malloc(self.H * sizeof(int))
        self.eid = NULL
        self.used = <char*> malloc((t if t else 1) * sizeof(char))
        self.cur = <int*> malloc((self.stream_len if self.stream_len else 1) * sizeof(int))
        self.best = <int*> malloc((self.stream_len if self.stream_len else 1) * sizeof(int))
        if not (self.P and self.ekey and self.used and self.cur and self.best):
            raise MemoryError()
        for h in range(self.H):
            self.P[h] = pairing[h]
        # edge numbering by smaller half-edge, in half-edge order
        self.nE = 0
        for h in range(self.H):
            self.ekey[h] = -1
        for h in range(self.H):
            if self.ekey[h] < 0:
                k = self.P[h]
                self.ekey[h] = self.nE
                self.ekey[k] = self.nE
                self.nE += 1
        self.eid = <int*> malloc((self.nE if self.nE else 1) * sizeof(int))
        if not self.eid:
            raise MemoryError()
        self.has_best = False
        self.signs = 0

    def __dealloc__(self):
        free(self.P)
        free(self.ekey)
        if self.eid != NULL:
            free(self.eid)
        free(self.used)
        free(self.cur)
        free(self.best)

    cdef void _tokens(self, int v, int o, int nxt, int* toks):
        cdef int base = self.m + 3 * v
        cdef int i, e, x
        cdef int prov0 = -1, prov1 = -1
        cdef int fresh = 0
        for i in range(3):
            e = self.ekey[base + ORIENT_SLOT[o][i]]
            x = self.eid[e]
            if x >= 0:
                toks[i] = x
            elif e == prov0:
                toks[i] = nxt
            elif e == prov1:
                toks[i] = nxt + 1
            else:
                if fresh == 0:
                    prov0 = e
                elif fresh == 1:
                    prov1 = e
                toks[i] = nxt + fresh
                fresh += 1

    cdef void _finalize(self, int sign):
        cdef int i, j, n, tmp
        cdef int m = self.m
        cdef int legtok[64]
        n = self.cur_len
        if self.mode == 2:
            for i in range(m):
                legtok[i] = self.eid[self.ekey[i]]
            # insertion sort, m is small
            for i in range(1, m):
                tmp = legtok[i]
                j = i - 1
                while j >= 0 and legtok[j] > tmp:
                    legtok[j + 1] = legtok[j]
                    j -= 1
                legtok[j + 1] = tmp
            for i in range(m):
                self.cur[n + i] = legtok[i]
            n += m
        cdef int cmp = 0
        if not self.has_best:
            cmp = -1
        else:
            for i in range(n):
                if self.cur[i] != self.best[i]:
                    cmp = -1 if self.cur[i] < self.best[i] else 1
                    break
        if cmp < 0:
            memcpy(self.best, self.cur, n * sizeof(int))
            self.has_best = True
            self.signs = 1 if sign > 0 else 2
        elif cmp == 0:
            self.signs |= 1 if sign > 0 else 2

    cdef void _rec(self, int depth, int nxt, int sign, bint tight):
        cdef int v, o, i, e, cmpres
        cdef int mn[3]
        cdef int toks[3]
        cdef int args_v[512]
        cdef int args_o[512]
        cdef int nargs = 0
        cdef bint have = False
        if depth == self.t:
            self._finalize(sign)
            return
        for v in range(self.t):
            if self.used[v]:
                continue
            for o in range(6):
                self._tokens(v, o, nxt, toks)
                if not have:
                    mn[0], mn[1], mn[2] = toks[0], toks[1], toks[2]
                    args_v[0] = v
                    args_o[0] = o
                    nargs = 1
                    have = True
                else:
                    cmpres = 0
                    for i in range(3):
                        if toks[i] != mn[i]:
                            cmpres = -1 if toks[i] < mn[i] else 1
                            break
                    if cmpres < 0:
                        mn[0], mn[1], mn[2] = toks[0], toks[1], toks[2]
                        args_v[0] = v
                        args_o[0] = o
                        nargs = 1
                    elif cmpres == 0 and nargs < 512:
                        args_v[nargs] = v
                        args_o[nargs] = o
                        nargs += 1
        if tight and self.has_best:
            cmpres = 0
            for i in range(3):
                if mn[i] != self.best[self.cur_len + i]:
                    cmpres = -1 if mn[i] < self.best[self.cur_len + i] else 1
                    break
            if cmpres > 0:
                return
            tight = cmpres == 0
        cdef int a, base, nxt2
        cdef int committed[3]
        cdef int ncommit
        for a in range(nargs):
            v = args_v[a]
            o = args_o[a]
            self.used[v] = 1
            base = self.m + 3 * v
            nxt2 = nxt
            ncommit = 0
            for i in range(3):
                e = self.ekey[base + ORIENT_SLOT[o][i]]
                if self.eid[e] < 0:
                    self.eid[e] = nxt2
                    committed[ncommit] = e
                    ncommit += 1
                    nxt2 += 1
            for i in range(3):
                self.cur[self.cur_len + i] = mn[i]
            self.cur_len += 3
            self._rec(depth + 1, nxt2, sign * ORIENT_PAR[o], tight)
            self.cur_len -= 3
            for i in range(ncommit):
                self.eid[committed[i]] = -1
            self.used[v] = 0

    cdef void _run_anchor(self, int rot):
        cdef int i, e, nxt = 0
        cdef int m = self.m
        cdef int cmpres
        for e in range(self.nE):
            self.eid[e] = -1
        for i in range(self.t):
            self.used[i] = 0
        self.cur_len = 0
        if self.mode != 2:
            for i in range(m):
                e = self.ekey[(rot + i) % m if m else 0]
                if self.eid[e] < 0:
                    self.eid[e] = nxt
                    nxt += 1
                self.cur[i] = self.eid[e]
            self.cur_len = m
        if self.has_best and self.cur_len:
            cmpres = 0
            for i in range(self.cur_len):
                if self.cur[i] != self.best[i]:
                    cmpres = -1 if self.cur[i] < self.best[i] else 1
                    break
            if cmpres > 0:
                return
            self._rec(0, nxt, 1, cmpres == 0)
        else:
            self._rec(0, nxt, 1, False)

    def run(self):
        cdef int r
        if self.mode == 0:
            if self.m == 0:
                self._run_anchor(0)
            else:
                for r in range(self.m):
                    self._run_anchor(r)
        elif self.mode == 1:
            self._run_anchor(0)
        elif self.mode == 2:
            if self.t == 0:
                raise ValueError("free mode requires at least one vertex")
            self._run_anchor(0)
        else:
            raise ValueError("unknown mode %r" % (self.mode,))
        cdef int n = self.stream_len
        stream = tuple(self.best[i] for i in range(n))
        cdef int sign
        if self.signs == 3:
            sign = 0
        elif self.signs == 1:
            sign = 1
        else:
            sign = -1
        return stream, sign


def canonical_search(m, t, pairing, mode):
    """Return (stream tuple, sign); sign 0 means antisymmetry-degenerate."""
    s = _Searcher(m, t, pairing, mode)
    return s.run()
