import pytest

from precsymp.csym import Finiteness, finiteness
from precsymp.differential import Model, formal_dimension, split_extension
from precsymp.errors import ParseError, PreconditionError
from precsymp.toral import (complete_to_full_torus, euler_homotopy_bound, hasse_check_thm17,
                            ideal_covers_degree, parse_hasse, second_row_empty, verify_order,
                            verify_r0_witness)

FIBER = Model.from_lists([("v1", 3), ("v2", 3), ("v3", 7)])
ONE = Model.from_lists([("t1", 2), ("v1", 3), ("v2", 3), ("v3", 7)], {"v1": "t1^2"})
TWO = Model.from_lists([("t1", 2), ("t2", 2), ("v1", 3), ("v2", 3), ("v3", 7)], {"v1": "t1^2", "v2": "t2^2"})

DIAGRAM = """
# a toy lattice
r0 2
point 0 0 P0
point 0 1 P1
point 1 1 P2
point 0 2 P3
edge P0 P1
edge 0 1 0 2
path P0 P1 P3
"""


def test_euler_bound_and_witness():
    assert euler_homotopy_bound(FIBER) == 3
    ext = split_extension(TWO, ["t1", "t2"], fiber=FIBER)
    assert ext.rank == 2
    assert verify_r0_witness(ext)
    lame = Model.from_lists([("t1", 2), ("t2", 2), ("v1", 3), ("v2", 3), ("v3", 7)], {"v1": "t1^2"})
    assert not verify_r0_witness(split_extension(lame, ["t1", "t2"], fiber=FIBER))
    full = Model.from_lists([("t1", 2), ("t2", 2), ("t3", 2), ("v1", 3), ("v2", 3), ("v3", 7)],
                           {"v1": "t1^2", "v2": "t2^2", "v3": "t3^4"})
    assert verify_r0_witness(split_extension(full, ["t1", "t2", "t3"], fiber=FIBER))


def test_completion_adds_last_generator():
    partial = split_extension(TWO, ["t1", "t2"], fiber=FIBER)
    res = complete_to_full_torus(FIBER, partial)
    assert res.status == "Finite"
    total = res.extension.total
    assert [g.name for g in res.extension.base] == ["t1", "t2", "t3"]
    assert finiteness(total).status is Finiteness.Finite
    assert formal_dimension(total) == 10
    lame = Model.from_lists([("t1", 2), ("t2", 2), ("v1", 3), ("v2", 3), ("v3", 7)], {"v1": "t1^2"})
    with pytest.raises(PreconditionError):
        complete_to_full_torus(FIBER, split_extension(lame, ["t1", "t2"], fiber=FIBER))


def test_completion_from_nothing_needs_rank():
    with pytest.raises(PreconditionError):
        complete_to_full_torus(FIBER)
    single = Model.from_lists([("v", 5)])
    res = complete_to_full_torus(single)
    assert res and res.status == "Finite"
    assert formal_dimension(res.extension.total) == 4


def test_completion_rejects_bad_fiber():
    with pytest.raises(PreconditionError):
        complete_to_full_torus(Model.from_lists([("a", 3), ("b", 4)]))


def test_order():
    assert verify_order(ONE, TWO, expect_finite=(True, True)).ok
    assert not verify_order(ONE, TWO, expect_finite=(False, True)).ok
    assert not verify_order(TWO, ONE).ok
    wrong = Model.from_lists([("t1", 2), ("t2", 2), ("v1", 3), ("v2", 3), ("v3", 7)], {"v1": "t2^2", "v2": "t1^2"})
    assert not verify_order(ONE, wrong, expect_finite=(None, None)).ok
    # renaming the lower model's generators lines it up again
    assert verify_order(ONE, wrong, rename={"t1": "t2", "v1": "v1"}, base_names=["t1"],
                        expect_finite=(None, None)).ok


def test_ideal_cover():
    alg = TWO.algebra
    assert ideal_covers_degree(alg, 6, ["t1", "t2", "v1", "v2"]) == []
    assert ideal_covers_degree(alg, 6, ["t1", "v1", "v2"]) == [alg.monomial({"t2": 3}).terms.popitem()[0]]


def test_hasse_parse_validate_roundtrip():
    h = parse_hasse(DIAGRAM)
    assert h.validate() == []
    assert hasse_check_thm17(h)
    assert not second_row_empty(h)
    assert ("P1", "P3") in h.edges
    again = parse_hasse(h.format())
    assert again.points == h.points and again.edges == h.edges and again.paths == h.paths
    dot = h.to_dot()
    assert dot.startswith("digraph") and '"P0" -> "P1"' in dot


def test_hasse_problems():
    h = parse_hasse("r0 1\npoint 0 0 A\npoint 1 1 B\nedge B A\n")
    problems = h.validate()
    assert any("outside" in p for p in problems)
    assert any("violates" in p for p in problems)
    assert not parse_hasse("r0 2\npoint 0 1 X\n").validate() == []
    with pytest.raises(ParseError):
        parse_hasse("point 0 0\n")
    with pytest.raises(ParseError):
        parse_hasse("r0 1\npoint 0 0 A\npoint 0 1 A\n")
    with pytest.raises(ParseError):
        parse_hasse("r0 1\nbogus\n")
