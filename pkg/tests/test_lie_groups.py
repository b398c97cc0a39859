import pytest

from precsymp.csym import thm12_criterion
from precsymp.errors import ParseError, PreconditionError
from precsymp.lie_groups import LieType, all_types, classify, expected_classification, rational_type

# degrees of primitive generators, written out by hand
KNOWN = {
    "A3": (3, 5, 7),
    "B3": (3, 7, 11),
    "C4": (3, 7, 11, 15),
    "D4": (3, 7, 7, 11),
    "D5": (3, 7, 9, 11, 15),
    "G2": (3, 11),
    "F4": (3, 11, 15, 23),
    "E6": (3, 9, 11, 15, 17, 23),
    "E7": (3, 11, 15, 19, 23, 27, 35),
    "E8": (3, 15, 23, 27, 35, 39, 47, 59),
}


@pytest.mark.parametrize("name,degs", KNOWN.items())
def test_rational_types(name, degs):
    assert rational_type(LieType.parse(name)) == degs


def test_dimension_identity():
    # sum of degrees equals the dimension of the group
    dims = {"A": lambda n: n * (n + 2), "B": lambda n: n * (2 * n + 1), "C": lambda n: n * (2 * n + 1),
            "D": lambda n: n * (2 * n - 1)}
    for g in all_types(15):
        if g.family in dims:
            assert sum(rational_type(g)) == dims[g.family](g.rank)
    assert sum(rational_type(LieType("E", 8))) == 248


def test_classification_matches_closed_form():
    for g in all_types(15):
        assert bool(classify(g)) == expected_classification(g) == bool(thm12_criterion(rational_type(g)))


def test_parse():
    assert LieType.parse("c_5") == LieType("C", 5)
    assert str(LieType.parse(" E7 ")) == "E7"
    for bad in ("X3", "E5", "D2", "C"):
        with pytest.raises(ParseError):
            LieType.parse(bad)
    with pytest.raises(PreconditionError):
        classify(LieType("A", 1))
