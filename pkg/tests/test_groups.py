"""Group construction, validation and element-order basics."""

import numpy as np
import pytest

from nacent import (
    FiniteGroup,
    InvalidPermutation,
    NotAGroup,
    OrderLimitExceeded,
    build,
    element_order,
    exponent,
    from_cayley_table,
    from_permutations,
    is_abelian,
    is_cyclic,
)
from oracles import naive_orders, table_of


def test_trivial_group():
    G = from_cayley_table([[0]])
    assert G.order == 1
    assert G.orders.tolist() == [1]
    assert exponent(G) == 1


def test_z2_table():
    G = from_cayley_table([[0, 1], [1, 0]])
    assert G.order == 2
    assert G.inverses.tolist() == [0, 1]


def test_identity_relocation():
    # Z3 written with the identity at position 2
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = from_cayley_table(table)
    assert G.table[0].tolist() == [0, 1, 2]
    assert sorted(G.orders.tolist()) == [1, 3, 3]


def test_s3_table_orders(s3):
    G = from_cayley_table(table_of(s3))
    assert sorted(G.orders.tolist()) == [1, 2, 2, 2, 3, 3]


def test_rejects_non_square():
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table([[0, 1]])
    assert exc.value.law == "shape"


def test_rejects_out_of_range_entry():
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table([[0, 1], [1, 9]])
    assert exc.value.law == "entry-range"


def test_rejects_broken_latin_square():
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    assert exc.value.law in ("latin-square", "identity", "associativity")


# a loop of order 5: latin square with two-sided identity, not associative
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def test_rejects_broken_associativity():
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table(NONASSOC_LOOP)
    assert exc.value.law in ("associativity", "inverse", "lagrange", "element-order")
    assert "fails" in str(exc.value)


def test_rejects_no_identity():
    # a latin square none of whose elements is a two-sided identity
    with pytest.raises(NotAGroup) as exc:
        from_cayley_table([[1, 0, 2], [0, 2, 1], [2, 1, 0]])
    assert exc.value.law == "identity"


def test_from_permutations_empty():
    G = from_permutations([])
    assert G.order == 1


def test_from_permutations_swap():
    G = from_permutations([(1, 0)])
    assert G.order == 2


def test_from_permutations_s3():
    G = from_permutations([(1, 0, 2), (1, 2, 0)])
    assert G.order == 6
    from nacent import center
    assert center(G).size == 1


def test_from_permutations_rejects_non_bijection():
    with pytest.raises(InvalidPermutation):
        from_permutations([(0, 0, 1)])


def test_from_permutations_order_limit():
    with pytest.raises(OrderLimitExceeded):
        from_permutations([(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], max_order=10)


def test_redundant_generator_same_table():
    a, b = (1, 0, 2), (1, 2, 0)
    G1 = from_permutations([a, b])
    ab = tuple(a[b[i]] for i in range(3))
    G2 = from_permutations([a, b, ab])
    assert np.array_equal(G1.table, G2.table)


def test_element_order_matches_naive(s4):
    assert s4.orders.tolist() == naive_orders(table_of(s4))


def test_element_order_identity(s3):
    assert element_order(s3, 0) == 1


def test_element_order_of_inverse(s4):
    for x in range(s4.order):
        assert element_order(s4, x) == element_order(s4, int(s4.inverses[x]))


def test_element_order_z4():
    G = build("cyclic(4)")
    assert element_order(G, 1) == 4


def test_exponent_divides_order():
    for spec in ["cyclic(12)", "symmetric(4)", "dicyclic(3)", "heisenberg(3)"]:
        G = build(spec)
        assert G.order % exponent(G) == 0


def test_exponent_vs_cyclic():
    # cyclic groups realize their order as the exponent; for abelian groups
    # the converse holds too. (Not in general: symmetric(3) has exponent 6.)
    for spec in ["cyclic(6)", "cyclic(8)", "dicyclic(2)",
                 "direct_product(cyclic(2),cyclic(2))",
                 "direct_product(cyclic(2),cyclic(3))",
                 "direct_product(cyclic(4),cyclic(2))"]:
        G = build(spec)
        if is_cyclic(G):
            assert exponent(G) == G.order
        if is_abelian(G):
            assert (exponent(G) == G.order) == is_cyclic(G)
    s3 = build("symmetric(3)")
    assert exponent(s3) == 6 and not is_cyclic(s3)


def test_exponent_q8(q8):
    assert exponent(q8) == 4


def test_table_immutable(s3):
    with pytest.raises(ValueError):
        s3.table[0, 0] = 1
