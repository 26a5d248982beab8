import itertools
from fractions import Fraction

import pytest

from chordal.diagrams import (
    CLOSED,
    JacobiDiagram,
    chord_to_jacobi,
    enumerate_jacobi,
)
from chordal.linalg import LinComb
from chordal.relations import four_term_generators, stu_generators
from chordal.weights import (
    LieDataError,
    NotCentralError,
    Representation,
    ad_invariance_defect,
    builtin_sl2,
    central_scalar,
    central_scalar_lc,
    make_metric_lie,
    parse_lie_file,
    representation_ok,
    sl2_rep,
    tensor_T,
    validate_metric_lie,
    verify_centrality,
    verify_relations_vanish,
    weight_trace,
)

F = Fraction


def test_abelian_one_dim_passes():
    g = make_metric_lie("u1", 1, {}, {(0, 0): F(1)})
    assert validate_metric_lie(g)["pass"]


def test_sl2_passes_validation():
    assert validate_metric_lie(builtin_sl2()[0])["pass"]


def test_sl2_metric_inverse():
    g, _ = builtin_sl2()
    assert g.binv == (
        (F(1, 2), F(0), F(0)),
        (F(0), F(0), F(1)),
        (F(0), F(1), F(0)),
    )


def test_perturbed_sl2_fails_jacobi_with_witness():
    g, _ = builtin_sl2()
    f_entries = {}
    for i in range(3):
        for j in range(3):
            for k in range(3):
                if g.f[i][j][k]:
                    f_entries[(i, j, k)] = g.f[i][j][k]
    f_entries[(0, 1, 1)] = F(3)  # perturb [h,e]
    f_entries[(1, 0, 1)] = F(-3)
    bad = make_metric_lie("bad", 3, f_entries,
                          {(0, 0): F(2), (1, 2): F(1), (2, 1): F(1)})
    report = validate_metric_lie(bad)
    assert not report["pass"]
    failed = {c["name"] for c in report["checks"] if not c["pass"]}
    assert "jacobi-identity" in failed or "lowered-constants-totally-antisymmetric" in failed
    assert "witness" in report


def test_singular_metric_reported_distinctly_from_jacobi_failure():
    g = make_metric_lie("sing", 2, {}, {(0, 0): F(1)})
    report = validate_metric_lie(g)
    assert not report["pass"]
    failed = {c["name"] for c in report["checks"] if not c["pass"]}
    assert failed == {"metric-invertible"}
    with pytest.raises(LieDataError):
        tensor_T(chord_to_jacobi("11"), g)


def test_builtin_returns_validated_algebra_and_family():
    g, family = builtin_sl2()
    assert validate_metric_lie(g)["pass"]
    for k in (1, 2, 3, 4):
        assert family(k) == sl2_rep(k)


def test_representations_satisfy_bracket_identity():
    g, _ = builtin_sl2()
    for k in (1, 2, 3, 4):
        assert representation_ok(g, sl2_rep(k))
    assert sl2_rep(2).dim == 3


def test_tensor_of_one_chord_is_the_casimir():
    g, _ = builtin_sl2()
    t = tensor_T(chord_to_jacobi("11"), g)
    expect = {}
    for i in range(3):
        for j in range(3):
            if g.binv[i][j]:
                expect[(i, j)] = g.binv[i][j]
    assert t.as_dict() == expect


def test_tensor_of_empty_diagram():
    g, _ = builtin_sl2()
    t = tensor_T(JacobiDiagram(CLOSED, 0, 0, ()), g)
    assert t.arity == 0 and t.as_dict() == {(): F(1)}


def bubble_closed():
    """Two legs joined through a doubled edge between two vertices, legs in
    circle order; vertex triples read (leg edge, inner edge 1, inner edge 2)."""
    return JacobiDiagram(CLOSED, 2, 2, (2, 5, 0, 6, 7, 1, 3, 4))


def kappa_closed():
    """Four legs, two vertices joined by a bridge; vertex triples read
    (leg i, leg j, bridge) and (leg k, leg l, bridge)."""
    pairing = [None] * 10
    edges = [(0, 4), (1, 5), (2, 7), (3, 8), (6, 9)]
    for a, b in edges:
        pairing[a] = b
        pairing[b] = a
    return JacobiDiagram(CLOSED, 4, 2, tuple(pairing))


def test_tensor_of_bubble_matches_paper_formula():
    g, _ = builtin_sl2()
    d = g.dim
    t = tensor_T(bubble_closed(), g).as_dict()
    expect = {}
    rng = range(d)
    for i, j in itertools.product(rng, rng):
        total = F(0)
        for s, tt, k, p, l, q in itertools.product(rng, repeat=6):
            total += (g.binv[i][s] * g.binv[tt][j] * g.binv[k][p]
                      * g.binv[l][q] * g.flow[s][k][l] * g.flow[p][q][tt])
        if total:
            expect[(i, j)] = total
    assert t == expect


def test_tensor_of_kappa_matches_paper_formula():
    g, _ = builtin_sl2()
    d = g.dim
    t = tensor_T(kappa_closed(), g).as_dict()
    expect = {}
    rng = range(d)
    for i, j, k, l in itertools.product(rng, repeat=4):
        total = F(0)
        for n, p, q, r, tt, s in itertools.product(rng, repeat=6):
            total += (g.binv[i][n] * g.binv[j][p] * g.binv[q][r]
                      * g.binv[k][tt] * g.binv[l][s]
                      * g.flow[n][p][q] * g.flow[tt][s][r])
        if total:
            expect[(i, j, k, l)] = total
    assert t == expect


def test_one_chord_central_scalar_against_direct_matrix_oracle():
    """Independent 2x2 computation: c = h.h/2 + e.f + f.e acting on V_1."""
    g, _ = builtin_sl2()
    V = sl2_rep(1)
    h, e, f = V.matrices

    def mul(a, b):
        return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(2)) for c in range(2))
                     for r in range(2))

    def add(a, b):
        return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

    def scale(s, a):
        return tuple(tuple(s * x for x in r) for r in a)

    casimir_op = add(add(scale(F(1, 2), mul(h, h)), mul(e, f)), mul(f, e))
    assert casimir_op == ((F(3, 2), F(0)), (F(0), F(3, 2)))
    assert central_scalar("11", g, V) == F(3, 2)
    assert weight_trace("11", g, V) == F(3)


def test_empty_diagram_scalar_and_trace():
    g, _ = builtin_sl2()
    assert central_scalar("", g, sl2_rep(1)) == F(1)
    assert weight_trace("", g, sl2_rep(1)) == F(2)


def test_casimir_eigenvalue_general_k():
    g, _ = builtin_sl2()
    for k in (1, 2, 3, 4):
        assert central_scalar("11", g, sl2_rep(k)) == F(k * (k + 2), 2)


def test_trace_additivity():
    g, _ = builtin_sl2()
    V = sl2_rep(2)
    lc = LinComb({"11": F(2), "": F(-3)})
    total = sum(c * weight_trace(w, g, V) for w, c in lc.terms.items())
    assert total == 2 * weight_trace("11", g, V) - 3 * weight_trace("", g, V)


def test_trace_invariant_under_rotation_of_base_point():
    g, _ = builtin_sl2()
    V = sl2_rep(2)
    word = (1, 2, 1, 3, 2, 3)
    n2 = len(word)
    values = set()
    for r in range(n2):
        rotated = word[r:] + word[:r]
        values.add(weight_trace(chord_to_jacobi(rotated), g, V))
    assert len(values) == 1


def test_ad_invariance_of_diagram_tensors_up_to_order2():
    g, _ = builtin_sl2()
    pool = [JacobiDiagram(CLOSED, 0, 0, ())]
    pool += [chord_to_jacobi(w) for w in ("11",)]
    pool += list(enumerate_jacobi(CLOSED, 2))
    for d in pool:
        for defect in ad_invariance_defect(d, g):
            assert defect == {}


def test_abelian_algebra_kills_stu_automatically():
    g = make_metric_lie("ab2", 2, {}, {(0, 0): F(1), (1, 1): F(1)})
    V = Representation("triv2", 1, (((F(0),),), ((F(0),),)))
    for row in stu_generators(2).generators:
        assert central_scalar_lc(row, g, V) == 0


def test_relations_vanish_small():
    g, _ = builtin_sl2()
    assert verify_relations_vanish(g, 2, 2, 2)["pass"]


def test_centrality_and_multiplicativity_small():
    g, _ = builtin_sl2()
    assert verify_centrality(g, 2, 2)["pass"]


def test_not_central_error_on_corrupt_representation():
    g, _ = builtin_sl2()
    h, e, f = sl2_rep(1).matrices
    bad_h = ((F(1), F(0)), (F(0), F(0)))  # not a representation of h
    bad = Representation("bad", 2, (bad_h, e, f))
    with pytest.raises(NotCentralError):
        central_scalar("11", g, bad)


def test_parse_lie_file_round_trip():
    text = """
dim 3
# sl2 structure constants, 1-based indices
f 1 2 2 2
f 2 1 2 -2
f 1 3 3 -2
f 3 1 3 2
f 2 3 1 1
f 3 2 1 -1
b 1 1 2
b 2 3 1
rho 1 1 1 1 1
rho 1 1 2 2 -1
rho 1 2 1 2 1
rho 1 3 2 1 1
"""
    g, reps = parse_lie_file(text, name="sl2-file")
    assert validate_metric_lie(g)["pass"]
    assert g.f == builtin_sl2()[0].f
    assert g.b == builtin_sl2()[0].b
    assert 1 in reps and reps[1].dim == 2
    assert representation_ok(g, reps[1])
    assert central_scalar("11", g, reps[1]) == F(3, 2)


def test_parse_lie_file_errors():
    with pytest.raises(LieDataError):
        parse_lie_file("f 1 2 3 1")  # missing dim
    with pytest.raises(LieDataError):
        parse_lie_file("dim 2\nq 1 2 3")
