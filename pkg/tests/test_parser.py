import pytest

from sejoin.errors import ParseError, UnknownAtom
from sejoin.join import Join, Leaf, evaluate, flatten
from sejoin.parser import parse_atom, parse_expr


def names(text, catalog=None):
    return [s.name for s in flatten(parse_expr(text, catalog))]


def test_atoms():
    assert parse_atom("S3").name == "S3"
    assert parse_atom("S1").is_identity
    assert parse_atom("Sk(5)").betti[2] == 5
    assert parse_atom("F(4,3)").betti[3] == 60
    assert parse_atom("T( 1 , 2 , 3 )").order == 60
    assert parse_atom("Omega(2)").order is None
    assert parse_atom("Omega(2, order=12)").order == 12


def test_left_associative():
    node = parse_expr("S3 * S5 * S7")
    assert isinstance(node, Join) and isinstance(node.left, Join) and isinstance(node.right, Leaf)


def test_parentheses():
    node = parse_expr("S3 * (S5 * S7)")
    assert isinstance(node.right, Join)
    assert evaluate(node).betti == evaluate(parse_expr("S3*S5*S7")).betti


def test_catalog_reference(catalog):
    assert sorted(names("@T(1,2,3) * @S3", catalog)) == ["S3", "T(1,2,3)"]
    assert parse_atom("@Omega(1,order=1)", catalog).order == 1


@pytest.mark.parametrize(
    "text,pos",
    [("S3 *", 4), ("S3 S5", 3), ("S4", 0), ("T(1,2)", 5), ("(S3", 3), ("S3 # S5", 3), ("", 0)],
)
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_expr(text)
    assert err.value.position == pos


def test_unknown_atoms(catalog):
    with pytest.raises(UnknownAtom):
        parse_expr("Q(3)")
    with pytest.raises(UnknownAtom) as err:
        parse_expr("S3 * @nope", catalog)
    assert err.value.position == 5


def test_constructor_errors_become_parse_errors():
    with pytest.raises(ParseError, match="T\\(2,2,3\\)"):
        parse_expr("T(2,2,3)")
    with pytest.raises(ParseError):
        parse_expr("Sk(9)")


def test_parse_atom_rejects_join():
    with pytest.raises(ParseError):
        parse_atom("S3 * S3")
