from fractions import Fraction

import pytest

from curvesym.algebra import (
    DEFAULT_FIELD,
    AlgebraError,
    CyclotomicField,
    ResultantError,
    ShapeError,
    UnsupportedDegreeError,
    UnsupportedRootError,
    cyclotomic_polynomial,
    discriminant,
    distinct_root_count,
    euler_phi,
    field_arith,
    gcd_binary,
    make_root,
    nth_root,
    parse_poly,
    resultant,
    resultant_binary_pair,
    substitute_linear,
)

K = DEFAULT_FIELD


def P(text, vars=("x", "y")):
    return parse_poly(text, vars, K)


def same(f, text):
    """f equals text read in f's own variables and field."""
    return f == parse_poly(text, f.vars, f.field)


def test_i_squared():
    i = make_root(4, 1)
    assert i * i == K(-1)


def test_primitive_cube_roots_sum():
    assert make_root(3, 1) + make_root(3, 2) == K(-1)


def test_root_index_reduction():
    assert make_root(120, 40) == make_root(3, 1)


def test_unsupported_root():
    with pytest.raises(UnsupportedRootError):
        make_root(7, 1)


def test_field_arith_examples():
    i = make_root(4)
    assert field_arith(K(1) + i, K(1) - i, "mul") == K(2)
    eps = make_root(5)
    assert field_arith(K(1), eps, "div") == eps ** 4
    z8 = make_root(8)
    assert field_arith(z8, z8, "mul") == make_root(4)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        field_arith(K(1), K(0), "div")


def test_cyclotomic_polynomials():
    assert same(cyclotomic_polynomial(1), "t - 1")
    assert same(cyclotomic_polynomial(4), "t^2 + 1")
    assert cyclotomic_polynomial(120).degree() == 32 == euler_phi(120)


def test_field_degree_and_coords():
    assert K.degree == 32
    assert len(make_root(5).coords()) == 32
    assert K(Fraction(3, 7)).to_fraction() == Fraction(3, 7)


def test_small_field_rejects_large_root():
    F = CyclotomicField(12)
    assert F.root(4) ** 2 == F(-1)
    with pytest.raises(UnsupportedRootError):
        F.root(5)


def test_substitute_scaling():
    i = make_root(4)
    f = P("x^4")
    assert substitute_linear(f, {("x",): [[i]]}) == f


def test_substitute_case_fourteen():
    eps = make_root(5)
    f = parse_poly("z^3*y^2 + z*y^4 + x^5", ("x", "y", "z"), K)
    g = substitute_linear(f, {("x",): [[eps]], ("y",): [[K(-1)]]})
    assert g == f


def test_substitute_shape_error():
    with pytest.raises(ShapeError):
        substitute_linear(P("x*y"), {("x", "y"): [[K(1)]]})


def test_ruling_swap_preserves_symmetric_biform():
    vars = ("x1", "x2", "y1", "y2")
    f = parse_poly("x1^3*y1^2*y2 + y1^3*x1^2*x2 + x1*x2^2*y2^3 + y1*y2^2*x2^3", vars, K)
    swapped = f.compose({"x1": P("y1", vars), "x2": P("y2", vars),
                         "y1": P("x1", vars), "y2": P("x2", vars)}, vars)
    assert swapped == f


def test_gcd_examples():
    assert gcd_binary(P("x^2 - y^2"), P("x - y")) == P("x - y")
    assert gcd_binary(P("x^2 + y^2"), P("x - y")) == P("1")
    f = P("x^3*y^3")
    assert gcd_binary(f.derivative("x"), f.derivative("y")) == P("x^2*y^2")


def test_gcd_of_zero_forms():
    with pytest.raises(AlgebraError):
        gcd_binary(P("0"), P("0"))


def test_distinct_roots():
    assert distinct_root_count(P("x^3")) == 1
    assert distinct_root_count(P("x^6 + y^6")) == 6
    branch = parse_poly("x*z*(x^10 + 11*x^5*z^5 - z^10)", ("x", "z"), K)
    assert distinct_root_count(branch) == 12


def test_distinct_roots_zero_form():
    with pytest.raises(AlgebraError):
        distinct_root_count(P("0"))


def test_resultant_examples():
    assert same(resultant(P("x - y"), P("x + y"), "x"), "2*y")
    assert same(resultant(P("x^2 + y^2"), P("x - y"), "x"), "2*y^2")


def test_resultant_zero_input():
    with pytest.raises(ResultantError):
        resultant(P("0"), P("x"), "x")


def test_resultant_of_partials_is_degree_twelve():
    # y-partials of a (3,3) form eliminate to a (x1, x2) form of degree 12
    vars = ("x1", "x2", "y1", "y2")
    f = parse_poly("x1^3*y1^3 + x2^3*y2^3 + 2*x1*x2^2*y1^2*y2 - 3*x1^2*x2*y1*y2^2", vars, K)
    r = resultant_binary_pair(f.derivative("y1"), f.derivative("y2"), ("y1", "y2"))
    assert not r.is_zero()
    assert r.is_homogeneous(("x1", "x2"), weighted=False)
    assert r.degree() == 12


def test_discriminants():
    vars = ("w", "b", "c")
    assert same(discriminant(parse_poly("w^2 + b*w + c", vars, K), "w"), "b^2 - 4*c")
    vars = ("w", "x", "y")
    d = discriminant(parse_poly("w^3 + y^4*w + x^5", vars, K), "w")
    assert same(d, "4*y^12 + 27*x^10")


def test_discriminant_degree_range():
    with pytest.raises(UnsupportedDegreeError):
        discriminant(parse_poly("w^4 + 1", ("w",), K), "w")


def test_nth_root():
    c = make_root(8) * 8
    r = nth_root(c, 3)
    assert r is not None and r ** 3 == c
    sqrt5 = nth_root(K(5), 2)
    assert sqrt5 ** 2 == K(5)
