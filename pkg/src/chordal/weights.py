"""Metric Lie algebra data and diagram weight systems: the tensor assigned
to a diagram (one structure-constant tensor per internal vertex, one
inverse-metric tensor per edge, contracted along incidences), its central
evaluation in a representation, and relation-vanishing verification.

All data is exact rational; evaluations assert centrality instead of
assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diagrams import CLOSED, OPEN, DiagramError, chord_to_jacobi
from .linalg import LinComb, parse_fraction, rref
from .relations import four_term_generators, space_A, stu_generators

ZERO = Fraction(0)
ONE = Fraction(1)


class LieDataError(ValueError):
    pass


class NotCentralError(RuntimeError):
    """The evaluated operator is not a scalar matrix; this signals corrupt
    algebra data or an implementation bug, never a valid run."""


@dataclass(frozen=True)
class MetricLieAlgebra:
    """Structure constants f[k][i][j] (bracket [e_i,e_j] = sum_k f^k_ij e_k),
    a symmetric invertible metric b, its inverse, and the fully lowered,
    totally antisymmetric constants."""

    name: str
    dim: int
    f: tuple          # f[i][j][k] = f^k_{ij}
    b: tuple          # b[i][j]
    binv: tuple
    flow: tuple       # flow[i][j][k] = sum_l f^l_{ij} b[l][k]

    def bracket(self, i, j):
        return self.f[i][j]


def _matrix_inverse(b, d):
    rows = [{j: Fraction(b[i][j]) for j in range(d) if b[i][j]} for i in range(d)]
    for i in range(d):
        rows[i][d + i] = ONE
    reduced, rk = rref(rows, 2 * d)
    if rk != d or any(min(row) >= d for row in reduced):
        raise LieDataError("metric is singular")
    inv = [[ZERO] * d for _ in range(d)]
    for row in reduced:
        i = min(row)
        for j in range(d):
            inv[i][j] = row.get(d + j, ZERO)
    return tuple(tuple(r) for r in inv)


def make_metric_lie(name, dim, f_entries, b_entries):
    """Assemble algebra data from sparse entries f[(i,j,k)] = f^k_{ij} and
    b[(i,j)]; validation is separate (validate_metric_lie).  A singular
    metric leaves the inverse unset and is reported by validation."""
    f = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for (i, j, k), v in f_entries.items():
        f[i][j][k] = Fraction(v)
    b = [[ZERO] * dim for _ in range(dim)]
    for (i, j), v in b_entries.items():
        b[i][j] = Fraction(v)
    try:
        binv = _matrix_inverse(b, dim)
    except LieDataError:
        binv = None
    flow = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                flow[i][j][k] = sum((f[i][j][l] * b[l][k] for l in range(dim)), ZERO)
    tup3 = lambda m: tuple(tuple(tuple(r) for r in pl) for pl in m)
    return MetricLieAlgebra(name, dim, tup3(f), tuple(tuple(r) for r in b),
                            binv, tup3(flow))


def validate_metric_lie(g):
    """Exact checks: bracket antisymmetry, the Jacobi identity, symmetry and
    invertibility of the metric, and total antisymmetry of the lowered
    constants (metric invariance).  Returns a report with first witnesses."""
    checks = []
    d = g.dim
    witness = None
    ok = True
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if g.f[i][j][k] != -g.f[j][i][k]:
                    ok = False
                    witness = witness or {"check": "antisymmetry", "i": i, "j": j, "k": k}
    checks.append({"name": "bracket-antisymmetry", "pass": ok})

    ok = True
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    s = sum((g.f[i][j][m] * g.f[m][k][l]
                             + g.f[j][k][m] * g.f[m][i][l]
                             + g.f[k][i][m] * g.f[m][j][l] for m in range(d)), ZERO)
                    if s:
                        ok = False
                        witness = witness or {"check": "jacobi", "i": i, "j": j, "k": k, "l": l}
    checks.append({"name": "jacobi-identity", "pass": ok})

    ok = all(g.b[i][j] == g.b[j][i] for i in range(d) for j in range(d))
    if not ok:
        witness = witness or {"check": "metric-symmetric"}
    checks.append({"name": "metric-symmetric", "pass": ok})

    try:
        _matrix_inverse(g.b, d)
        checks.append({"name": "metric-invertible", "pass": True})
    except LieDataError:
        checks.append({"name": "metric-invertible", "pass": False})
        witness = witness or {"check": "metric-invertible"}

    ok = True
    for i in range(d):
        for j in range(d):
            for k in range(d):
                v = g.flow[i][j][k]
                if (v != -g.flow[j][i][k] or v != -g.flow[i][k][j]
                        or v != g.flow[j][k][i]):
                    ok = False
                    witness = witness or {"check": "lowered-antisymmetry", "i": i, "j": j, "k": k}
    checks.append({"name": "lowered-constants-totally-antisymmetric", "pass": ok})

    report = {"suite": "lie-data", "algebra": g.name,
              "pass": all(c["pass"] for c in checks), "checks": checks}
    if witness:
        report["witness"] = witness
    return report


@dataclass(frozen=True)
class Representation:
    """Matrices of the basis elements, exact rational entries."""

    name: str
    dim: int
    matrices: tuple  # one dim x dim tuple-matrix per algebra basis element

    def rho(self, i):
        return self.matrices[i]


def representation_ok(g, rep):
    """rho([e_i,e_j]) == rho(e_i) rho(e_j) - rho(e_j) rho(e_i), exactly."""
    d, n = g.dim, rep.dim
    for i in range(d):
        for j in range(d):
            lhs = [[sum((g.f[i][j][k] * rep.matrices[k][r][c] for k in range(d)), ZERO)
                    for c in range(n)] for r in range(n)]
            rhs = _mat_sub(_mat_mul(rep.matrices[i], rep.matrices[j]),
                           _mat_mul(rep.matrices[j], rep.matrices[i]))
            if lhs != [list(r) for r in rhs]:
                return False
    return True


def _mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    k_ = len(b)
    return tuple(tuple(sum((a[r][k] * b[k][c] for k in range(k_)), ZERO)
                       for c in range(m)) for r in range(n))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(a, s):
    return tuple(tuple(s * x for x in r) for r in a)


def _identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# sl2 with the defining-representation trace form


@lru_cache(maxsize=None)
def sl2_algebra():
    """Basis (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h; metric b(x,y) =
    trace over the defining representation, so b(h,h)=2, b(e,f)=1."""
    H, E, F = 0, 1, 2
    f_entries = {
        (H, E, E): Fraction(2), (E, H, E): Fraction(-2),
        (H, F, F): Fraction(-2), (F, H, F): Fraction(2),
        (E, F, H): Fraction(1), (F, E, H): Fraction(-1),
    }
    b_entries = {(H, H): Fraction(2), (E, F): Fraction(1), (F, E): Fraction(1)}
    return make_metric_lie("sl2", 3, f_entries, b_entries)


def builtin_sl2():
    """The sl2 data and its irreducible family: (algebra, k -> V_k)."""
    return sl2_algebra(), sl2_rep


@lru_cache(maxsize=None)
def sl2_rep(k):
    """The (k+1)-dimensional irreducible: on the weight basis v_0..v_k,
    h v_j = (k-2j) v_j, e v_j = (k-j+1) v_{j-1}, f v_j = (j+1) v_{j+1}."""
    if k < 0:
        raise LieDataError("highest weight must be nonnegative")
    n = k + 1
    h = [[ZERO] * n for _ in range(n)]
    e = [[ZERO] * n for _ in range(n)]
    f = [[ZERO] * n for _ in range(n)]
    for j in range(n):
        h[j][j] = Fraction(k - 2 * j)
        if j > 0:
            e[j - 1][j] = Fraction(k - j + 1)
        if j < k:
            f[j + 1][j] = Fraction(j + 1)
    freeze = lambda m: tuple(tuple(r) for r in m)
    return Representation("V%d" % k, n, (freeze(h), freeze(e), freeze(f)))


# ---------------------------------------------------------------------------
# the diagram tensor


@dataclass(frozen=True)
class Tensor:
    arity: int
    data: tuple  # sorted ((index tuple), Fraction) pairs

    def as_dict(self):
        return dict(self.data)


def _edge_list(d):
    seen = set()
    out = []
    for h, p in enumerate(d.pairing):
        if (p, h) in seen:
            continue
        seen.add((h, p))
        out.append((h, p))
    return out


def tensor_T(F, g):
    """Contract one copy of the lowered structure tensor per internal vertex
    with one copy of the inverse metric per edge, along all incidences.
    Free slots are the legs, read in circle order for closed diagrams."""
    if g.binv is None:
        raise LieDataError("the metric of %s is singular" % (g.name,))
    legs = list(range(F.legs))
    m = len(legs)
    dim = g.dim
    edges = _edge_list(F)
    # sparse supports
    c_support = [(i, j, g.binv[i][j]) for i in range(dim) for j in range(dim)
                 if g.binv[i][j]]
    assign = {}
    out = {}

    def vertex_ok(v):
        b = F.legs + 3 * v
        idx = (assign.get(b), assign.get(b + 1), assign.get(b + 2))
        if None in idx:
            return None
        return g.flow[idx[0]][idx[1]][idx[2]]

    def rec(ei, coeff):
        if ei == len(edges):
            key = tuple(assign[l] for l in legs)
            x = out.get(key, ZERO) + coeff
            if x:
                out[key] = x
            else:
                out.pop(key, None)
            return
        h1, h2 = edges[ei]
        verts = []
        for h in (h1, h2):
            if h >= F.legs:
                v = (h - F.legs) // 3
                if v not in verts:
                    verts.append(v)
        for i, j, cv in c_support:
            assign[h1] = i
            assign[h2] = j
            factor = coeff * cv
            ok = True
            for v in verts:
                fv = vertex_ok(v)
                if fv is not None:  # vertex completed by this edge
                    if fv == 0:
                        ok = False
                        break
                    factor = factor * fv
            if ok:
                rec(ei + 1, factor)
        del assign[h1], assign[h2]

    rec(0, ONE)
    return Tensor(m, tuple(sorted(out.items())))


def central_scalar(D, g, V):
    """Evaluate the diagram operator sum_T coeff * rho(e_i1) ... rho(e_im);
    assert it is an exact scalar matrix and return the scalar."""
    F = chord_to_jacobi(D) if isinstance(D, str) else D
    return _central_scalar_cached(F, g, V)


@lru_cache(maxsize=None)
def _central_scalar_cached(F, g, V):
    t = tensor_T(F, g)
    n = V.dim
    M = [[ZERO] * n for _ in range(n)]
    for idx, coeff in t.data:
        prod = _identity(n)
        for i in idx:
            prod = _mat_mul(prod, V.matrices[i])
        for r in range(n):
            for c in range(n):
                M[r][c] += coeff * prod[r][c]
    lam = M[0][0]
    for r in range(n):
        for c in range(n):
            if M[r][c] != (lam if r == c else ZERO):
                raise NotCentralError(
                    "operator is not scalar at (%d,%d) for %s in %s" % (r, c, V.name, g.name))
    return lam


def weight_trace(D, g, V):
    """Trace of the diagram operator in the representation: the central
    scalar times the representation dimension."""
    return central_scalar(D, g, V) * V.dim


def central_scalar_lc(lc, g, V):
    """Linear extension of central_scalar to diagram combinations."""
    total = ZERO
    for key, coeff in lc.terms.items():
        total += coeff * central_scalar(key, g, V)
    return total


def ad_invariance_defect(F, g):
    """The infinitesimal action of each basis element on the diagram tensor;
    all-zero exactly when the tensor is invariant."""
    t = tensor_T(F, g).as_dict()
    d = g.dim
    defects = []
    for a in range(d):
        acc = {}
        for idx, coeff in t.items():
            for slot in range(len(idx)):
                i = idx[slot]
                for k in range(d):
                    fv = g.f[a][i][k]
                    if fv:
                        key = idx[:slot] + (k,) + idx[slot + 1:]
                        x = acc.get(key, ZERO) + coeff * fv
                        if x:
                            acc[key] = x
                        else:
                            acc.pop(key, None)
        defects.append(acc)
    return defects


def _vanish_task(args):
    row, g, reps = args
    return [str(central_scalar_lc(row, g, V)) for V in reps]


def verify_relations_vanish(g, n_max, p_max, k_max, reps=None, parallel=1):
    """The central evaluation, extended linearly, must kill every four-term
    generator (orders up to n_max) and every STU generator (orders up to
    p_max) in every supplied representation."""
    from .parallel import pmap

    if reps is None:
        reps = [sl2_rep(k) for k in range(1, k_max + 1)]
    checks = []
    witness = None
    for fam_name, fam_iter in (
        ("4T", [(n, four_term_generators(n)) for n in range(n_max + 1)]),
        ("STU", [(p, stu_generators(p)) for p in range(p_max + 1)]),
    ):
        ok = True
        count = 0
        tasks = []
        meta = []
        for deg, fam in fam_iter:
            for row in fam.generators:
                tasks.append((row, g, tuple(reps)))
                meta.append(deg)
        for deg, values in zip(meta, pmap(_vanish_task, tasks, parallel)):
            count += 1
            for V, val in zip(reps, values):
                if val != "0":
                    ok = False
                    if witness is None:
                        witness = {"family": fam_name, "degree": deg,
                                   "rep": V.name, "value": val}
        checks.append({"name": "%s-generators-vanish" % fam_name, "pass": ok,
                       "generators": count})
    report = {"suite": "ws-vanish", "algebra": g.name,
              "n_max": n_max, "p_max": p_max, "k_max": k_max,
              "pass": all(c["pass"] for c in checks), "checks": checks}
    if witness:
        report["witness"] = witness
    return report


def verify_centrality(g, p_max, k_max, reps=None):
    """Scalar-matrix assertion for every chord-quotient basis class, plus
    multiplicativity of central characters on basis pairs."""
    if reps is None:
        reps = [sl2_rep(k) for k in range(1, k_max + 1)]
    checks = []
    witness = None
    ok = True
    for p in range(p_max + 1):
        for w in space_A(p).representative_basis:
            for V in reps:
                try:
                    central_scalar(w, g, V)
                except NotCentralError as exc:
                    ok = False
                    witness = witness or {"word": w, "rep": V.name, "error": str(exc)}
    checks.append({"name": "evaluations-scalar", "pass": ok})

    ok = True
    from .hopf import product_words  # local import to avoid a cycle at load

    for V in reps:
        for p1 in range(p_max + 1):
            for p2 in range(p_max + 1 - p1):
                for w1 in space_A(p1).representative_basis:
                    for w2 in space_A(p2).representative_basis:
                        lam = central_scalar(w1, g, V) * central_scalar(w2, g, V)
                        prod = product_words(w1, w2)
                        if central_scalar_lc(prod, g, V) != lam:
                            ok = False
                            witness = witness or {"w1": w1, "w2": w2, "rep": V.name}
    checks.append({"name": "central-characters-multiplicative", "pass": ok})
    report = {"suite": "centrality", "algebra": g.name, "p_max": p_max,
              "k_max": k_max, "pass": all(c["pass"] for c in checks),
              "checks": checks}
    if witness:
        report["witness"] = witness
    return report


# ---------------------------------------------------------------------------
# external Lie data files


def parse_lie_file(text, name="file"):
    """Text format: `dim d`, then `f i j k p/q`, `b i j p/q`, and optional
    `rho k i r c p/q` lines (1-based indices).  The algebra must pass
    validate_metric_lie before use."""
    dim = None
    f_entries = {}
    b_entries = {}
    rho_entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "dim":
                dim = int(parts[1])
            elif parts[0] == "f":
                i, j, k = (int(x) - 1 for x in parts[1:4])
                f_entries[(i, j, k)] = parse_fraction(parts[4])
            elif parts[0] == "b":
                i, j = (int(x) - 1 for x in parts[1:3])
                b_entries[(i, j)] = parse_fraction(parts[3])
                b_entries[(j, i)] = parse_fraction(parts[3])
            elif parts[0] == "rho":
                k, i, r, c = (int(x) for x in parts[1:5])
                rho_entries.setdefault(k, {})[(i - 1, r - 1, c - 1)] = parse_fraction(parts[5])
            else:
                raise ValueError("unknown record %r" % (parts[0],))
        except (IndexError, ValueError) as exc:
            raise LieDataError("line %d: %s" % (lineno, exc))
    if dim is None:
        raise LieDataError("missing `dim` record")
    g = make_metric_lie(name, dim, f_entries, b_entries)
    reps = {}
    for k, entries in sorted(rho_entries.items()):
        n = 1 + max(max(r, c) for (_, r, c) in entries)
        mats = [[[ZERO] * n for _ in range(n)] for _ in range(dim)]
        for (i, r, c), v in entries.items():
            mats[i][r][c] = v
        reps[k] = Representation("rho%d" % k, n,
                                 tuple(tuple(tuple(r) for r in m) for m in mats))
    return g, reps
