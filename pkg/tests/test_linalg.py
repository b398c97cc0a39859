from fractions import Fraction

from hypothesis import given, strategies as st

from oracles import gauss_rank
from precsymp.linalg import Echelon, left_kernel, rank, rref

entries = st.integers(-3, 3) | st.fractions(min_value=-2, max_value=2, max_denominator=3)


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    return [draw(st.lists(entries, min_size=c, max_size=c)) for _ in range(r)], c


def sparse(rows):
    return [{j: Fraction(x) for j, x in enumerate(r) if x} for r in rows]


@given(matrices())
def test_rank_matches_dense(mc):
    rows, _ = mc
    assert rank(sparse(rows)) == gauss_rank(rows)


@given(matrices())
def test_left_kernel_annihilates(mc):
    rows, c = mc
    sp = sparse(rows)
    ker = left_kernel(sp)
    assert len(ker) == len(rows) - gauss_rank(rows)
    for vec in ker:
        combo = [sum(Fraction(vec.get(i, 0)) * Fraction(rows[i][j]) for i in range(len(rows))) for j in range(c)]
        assert all(x == 0 for x in combo)


@given(matrices())
def test_rref_spans_same_space(mc):
    rows, _ = mc
    sp = sparse(rows)
    basis = rref(sp)
    assert len(basis) == rank(sp)
    ech = Echelon()
    for v in basis:
        ech.add(v)
    assert all(ech.contains(v) for v in sp)


@given(matrices(), st.data())
def test_solve_recovers_combination(mc, data):
    rows, c = mc
    sp = sparse(rows)
    ech = Echelon(track=True)
    for i, v in enumerate(sp):
        ech.add(v, {i: Fraction(1)})
    lam = data.draw(st.lists(st.integers(-2, 2), min_size=len(rows), max_size=len(rows)))
    target = {}
    for l, v in zip(lam, sp):
        for j, x in v.items():
            target[j] = target.get(j, 0) + l * x
    target = {j: x for j, x in target.items() if x}
    sol = ech.solve(target)
    assert sol is not None
    back = {}
    for i, l in sol.items():
        for j, x in sp[i].items():
            back[j] = back.get(j, 0) + l * x
    assert {j: x for j, x in back.items() if x} == target
