import pytest
from hypothesis import given

from strategies import laurents, ore_elems, ratfuncs, ratore_elems, scalars
from virtwist.errors import LoweringError, ParseError
from virtwist.expr import (
    format_laurent,
    format_ore,
    format_ratfunc,
    format_scalar,
    parse,
    parse_scalar,
    parse_scalar_list,
)
from virtwist.laurent import Gen, LaurentPoly
from virtwist.ore import OreElem
from virtwist.scalar import S


def test_parse_examples():
    assert parse("t^2 - 4*t + 1/4") == LaurentPoly({2: 1, 1: -4, 0: S(1) / 4})
    assert not parse("Th*t - t*Th - t", "ore")
    assert parse("t^-1*Th", "ore", Gen.DDT) == OreElem.generator(Gen.DDT)


def test_generator_default():
    assert parse("Dt^2 - t", "ore").gen is Gen.DDT
    assert parse("Th - t", "ore").gen is Gen.THETA
    assert parse("Th + Dt", "ore").gen is Gen.THETA


def test_noncommutative_order_kept():
    assert parse("Th*t", "ore") != parse("t*Th", "ore")


def test_syntax_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse("t + $")
    assert exc.value.pos == 4
    with pytest.raises(ParseError):
        parse("")
    with pytest.raises(ParseError):
        parse("(t + 1")
    with pytest.raises(ParseError):
        parse("t^x")


def test_lowering_errors():
    with pytest.raises(LoweringError):
        parse("Th + 1", "ratfunc")
    with pytest.raises(LoweringError):
        parse("1/(t-1)", "laurent")
    with pytest.raises(LoweringError):
        parse("1/Th", "ore")


def test_scalars():
    assert parse_scalar("1+i") == S(1, 1)
    assert parse_scalar("-3/4") == S(-3) / 4
    assert parse_scalar_list("1, 2/3, (1+i)/2") == [S(1), S(2) / 3, S(1, 1) / 2]
    assert parse_scalar_list("") == []
    with pytest.raises(LoweringError):
        parse_scalar("t")


def test_printer_shapes():
    assert format_laurent(parse("t^-2 - 3*t + 1/2")) == "-3*t + 1/2 + t^-2"
    assert format_ore(parse("Dt^2", "ore", Gen.THETA)) == "t^-2*Th^2 - t^-2*Th"
    assert format_ore(parse("(t^2-1)*Th^2", "ore")) == "(t^2 - 1)*Th^2"
    assert format_scalar(S(1, 3) / 2) == "1/2 + 3/2*i"


@given(scalars)
def test_scalar_round_trip(c):
    assert parse_scalar(format_scalar(c)) == c


@given(laurents)
def test_laurent_round_trip(p):
    assert parse(format_laurent(p)) == p


@given(ratfuncs)
def test_ratfunc_round_trip(r):
    assert parse(format_ratfunc(r), "ratfunc") == r


@given(ore_elems())
def test_ore_round_trip_theta(x):
    assert parse(format_ore(x), "ore", Gen.THETA) == x


@given(ore_elems(Gen.DDT))
def test_ore_round_trip_ddt(x):
    assert parse(format_ore(x), "ore", Gen.DDT) == x


@given(ratore_elems())
def test_ratore_round_trip(x):
    assert parse(format_ore(x), "ratore", Gen.THETA) == x
