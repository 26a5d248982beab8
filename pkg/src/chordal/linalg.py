"""Exact rational sparse linear algebra: echelon forms, ranks, kernels, quotients.

Scalars are fractions.Fraction throughout; no floating point anywhere.
Rows are sparse dicts {column index: nonzero Fraction}.  The reduced row
echelon form of a row space is unique, so every result here is independent
of any internal work scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def _axpy(row, a, other):
    # row += a * other, in place, dropping zeros
    for c, v in other.items():
        x = row.get(c, ZERO) + a * v
        if x:
            row[c] = x
        else:
            row.pop(c, None)


def _to_sparse_rows(rows):
    out = []
    for r in rows:
        if isinstance(r, dict):
            out.append({c: Fraction(v) for c, v in r.items() if v})
        else:
            out.append({c: Fraction(v) for c, v in enumerate(r) if v})
    return out


def rref(rows, ncols):
    """Reduced row echelon form of a list of sparse rows.

    Returns (pivot_rows, rank) where pivot_rows are sorted by pivot column
    and each pivot entry is 1.  A dense elimination path is used when the
    input is mostly full; both paths produce the identical (unique) RREF.
    """
    work = _to_sparse_rows(rows)
    nnz = sum(len(r) for r in work)
    if work and ncols and nnz > 0.5 * len(work) * ncols and ncols <= 512:
        return _rref_dense(work, ncols)
    pivots = []  # (pivot column, row dict), kept sorted by column
    for r in work:
        row = dict(r)
        for c, prow in pivots:
            x = row.get(c)
            if x:
                _axpy(row, -x, prow)
        if not row:
            continue
        c = min(row)
        inv = ONE / row[c]
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
        for _, prow in pivots:
            x = prow.get(c)
            if x:
                _axpy(prow, -x, row)
        pivots.append((c, row))
        pivots.sort(key=lambda t: t[0])
    return [p[1] for p in pivots], len(pivots)


def _rref_dense(work, ncols):
    m = [[r.get(c, ZERO) for c in range(ncols)] for r in work]
    nrows = len(m)
    piv_r = 0
    piv_cols = []
    for c in range(ncols):
        sel = None
        for i in range(piv_r, nrows):
            if m[i][c]:
                sel = i
                break
        if sel is None:
            continue
        m[piv_r], m[sel] = m[sel], m[piv_r]
        inv = ONE / m[piv_r][c]
        m[piv_r] = [v * inv for v in m[piv_r]]
        for i in range(nrows):
            if i != piv_r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[piv_r])]
        piv_cols.append(c)
        piv_r += 1
        if piv_r == nrows:
            break
    out = []
    for r in range(piv_r):
        out.append({c: v for c, v in enumerate(m[r]) if v})
    return out, piv_r


def rank(rows, ncols):
    return rref(rows, ncols)[1]


def residue(row, pivot_rows):
    """Reduce a sparse row against RREF pivot rows; the residue is supported
    on non-pivot columns only."""
    out = {c: Fraction(v) for c, v in row.items() if v}
    for prow in pivot_rows:
        c = min(prow)
        x = out.get(c)
        if x:
            _axpy(out, -x, prow)
    return out


def kernel_basis(rows, ncols):
    """Basis of the right null space {x : M x = 0} of the matrix whose rows
    are given.  Returned vectors are sparse dicts over range(ncols)."""
    pivot_rows, _ = rref(rows, ncols)
    pivot_cols = [min(r) for r in pivot_rows]
    pivot_set = set(pivot_cols)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = {f: ONE}
        for c, prow in zip(pivot_cols, pivot_rows):
            x = prow.get(f)
            if x:
                vec[c] = -x
        basis.append(vec)
    return basis


def _normal_form(rows, ncols):
    pivot_rows, _ = rref(rows, ncols)
    return tuple(tuple(sorted(r.items())) for r in pivot_rows)


def subspace_equal(a, b, ncols):
    """True iff the row spaces of a and b coincide (identical RREF).
    Raises on an ambient-dimension mismatch."""
    for rows in (a, b):
        for r in rows:
            cols = r.keys() if isinstance(r, dict) else range(len(r))
            for c in cols:
                if not (0 <= c < ncols):
                    raise ValueError("vector exceeds the ambient dimension")
    return _normal_form(a, ncols) == _normal_form(b, ncols)


def matmul(rows_a, rows_b, ncols_b):
    """Sparse row-matrix product: (A B) given as rows, where row i of the
    result is sum_j A[i][j] * B[j]."""
    out = []
    for ra in rows_a:
        acc = {}
        for j, v in ra.items():
            _axpy(acc, v, rows_b[j])
        out.append(acc)
    return out


class LinComb:
    """Sparse formal linear combination: mapping from basis keys to nonzero
    Fractions.  Keys must be hashable and mutually orderable."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in (terms.items() if isinstance(terms, dict) else terms):
                self.add(k, v)

    def add(self, key, coeff):
        x = self.terms.get(key, ZERO) + coeff
        if x:
            self.terms[key] = x
        else:
            self.terms.pop(key, None)
        return self

    def scaled(self, a):
        a = Fraction(a)
        out = LinComb()
        if a:
            out.terms = {k: a * v for k, v in self.terms.items()}
        return out

    def __add__(self, other):
        out = LinComb(self.terms)
        for k, v in other.terms.items():
            out.add(k, v)
        return out

    def __sub__(self, other):
        out = LinComb(self.terms)
        for k, v in other.terms.items():
            out.add(k, -v)
        return out

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items_sorted(self, key=None):
        return sorted(self.terms.items(), key=(lambda t: key(t[0])) if key else None)

    def __repr__(self):
        return "LinComb(%r)" % (self.terms,)


@dataclass(frozen=True)
class QuotientSpace:
    """Ambient basis plus a relation row space in RREF.

    dimension == len(ambient) - rank, and reduce() kills exactly the
    relation row space.
    """

    ambient: tuple
    relation_rows: tuple  # RREF pivot rows as sparse dicts over ambient columns
    representative_basis: tuple
    index: dict = field(compare=False, repr=False, default=None)

    @property
    def rank(self):
        return len(self.relation_rows)

    @property
    def dimension(self):
        return len(self.representative_basis)

    def column(self, key):
        try:
            return self.index[key]
        except KeyError:
            raise KeyError("element not in ambient basis: %r" % (key,))

    def to_row(self, lc):
        return {self.column(k): v for k, v in lc.terms.items()}

    def reduce(self, lc):
        """Coordinates of a linear combination on the representative basis."""
        res = residue(self.to_row(lc), self.relation_rows)
        out = LinComb()
        for c, v in res.items():
            out.add(self.ambient[c], v)
        return out

    def reduce_vector(self, lc):
        """reduce(), as a dense coordinate tuple over representative_basis."""
        red = self.reduce(lc).terms
        return tuple(red.get(k, ZERO) for k in self.representative_basis)


def build_quotient(ambient, relations):
    """Quotient of the span of `ambient` by the span of `relations`.

    ambient: ordered basis keys; relations: iterable of LinComb supported on
    ambient.  Raises KeyError on out-of-ambient support.
    """
    ambient = tuple(ambient)
    index = {k: i for i, k in enumerate(ambient)}
    rows = []
    for rel in relations:
        rows.append({index[k]: v for k, v in rel.terms.items()})
    pivot_rows, rk = rref(rows, len(ambient))
    pivot_cols = {min(r) for r in pivot_rows}
    reps = tuple(k for i, k in enumerate(ambient) if i not in pivot_cols)
    return QuotientSpace(
        ambient=ambient,
        relation_rows=tuple(pivot_rows),
        representative_basis=reps,
        index=index,
    )


def format_fraction(x):
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 else "%d" % x.numerator


def parse_fraction(s):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))
