"""Group plumbing: construction, subgroup class tables, double cosets.

The subgroup enumeration is cross-checked against a brute-force oracle that
walks every subset of the group (fine for the small corpus orders).
"""

from itertools import combinations

import pytest

from factoreq import (
    FiniteGroup,
    GroupError,
    Subgroup,
    all_subgroups,
    conjugacy_class_of_subgroup,
    corpus_group,
    corpus_names,
    double_cosets,
    group_from_generators,
    group_from_table,
    left_cosets,
)

CORPUS_ORDERS = {"C2": 2, "C4": 4, "C6": 6, "V4": 4, "S3": 6, "D4": 8, "Q8": 8}
# class counts verified by the brute-force oracle below
SUBGROUP_CLASS_COUNTS = {"C2": 2, "C4": 3, "C6": 4, "V4": 5, "S3": 4, "D4": 8, "Q8": 6}
SUBGROUP_TOTAL_COUNTS = {"C2": 2, "C4": 3, "C6": 4, "V4": 5, "S3": 6, "D4": 10, "Q8": 6}
ELEMENT_CLASS_COUNTS = {"C2": 2, "C4": 4, "C6": 6, "V4": 4, "S3": 3, "D4": 5, "Q8": 5}


def _brute_subgroups(group):
    """Every subgroup as a frozenset, by subset closure testing."""
    n = group.order
    t = group.table
    rest = [x for x in range(1, n)]
    found = set()
    for k in range(n):
        if n % (k + 1):
            continue
        for extra in combinations(rest, k):
            cand = frozenset((0,) + extra)
            if all(t[a][b] in cand for a in cand for b in cand):
                found.add(cand)
    return found


# --- construction ------------------------------------------------------------


def test_group_from_generators_orders():
    assert group_from_generators([(1, 0)]).order == 2
    assert group_from_generators([(1, 2, 3, 0)]).order == 4
    assert group_from_generators([(1, 2, 0), (1, 0, 2)]).order == 6


def test_group_from_generators_rejects_non_permutation():
    with pytest.raises(GroupError, match="not a permutation"):
        group_from_generators([(0, 0)])
    with pytest.raises(GroupError, match="not a permutation"):
        group_from_generators([(0, 1), (1, 2)])


def test_group_from_generators_respects_bound():
    with pytest.raises(GroupError, match="too large"):
        group_from_generators([tuple(range(1, 7)) + (0,)], bound=5)


def test_group_from_table_renumbers_identity():
    # C2 written with the identity in slot 1
    g = group_from_table([[1, 0], [0, 1]], labels=["x", "e"])
    assert g.order == 2
    assert g.table[0] == (0, 1)
    assert g.labels == ("e", "x")


def test_group_from_table_rejects_junk():
    with pytest.raises(GroupError, match="no identity"):
        group_from_table([[1, 0], [1, 0]])
    with pytest.raises(GroupError):
        group_from_table([[0, 1]])


def test_table_validation_catches_non_associative():
    # A quasigroup table (Latin square) that is not a group.
    with pytest.raises(GroupError):
        FiniteGroup(
            [
                [0, 1, 2, 3, 4],
                [1, 0, 3, 4, 2],
                [2, 4, 0, 1, 3],
                [3, 2, 4, 0, 1],
                [4, 3, 1, 2, 0],
            ]
        )


# --- element-level API ---------------------------------------------------------


def test_element_orders_c6():
    g = corpus_group("C6")
    assert sorted(g.element_order(x) for x in range(6)) == [1, 2, 3, 3, 6, 6]


def test_inverse_and_power():
    g = corpus_group("S3")
    for x in range(g.order):
        assert g.mul(x, g.inv(x)) == 0
        assert g.power(x, g.element_order(x)) == 0


def test_abelian_flags():
    assert corpus_group("V4").is_abelian()
    assert not corpus_group("S3").is_abelian()
    assert not corpus_group("Q8").is_abelian()


@pytest.mark.parametrize("name", corpus_names())
def test_element_class_counts(name):
    assert len(corpus_group(name).element_classes) == ELEMENT_CLASS_COUNTS[name]


def test_closure():
    g = corpus_group("S3")
    assert g.closure([]).order == 1
    assert g.closure(range(g.order)).order == 6
    three_cycle = next(x for x in range(6) if g.element_order(x) == 3)
    assert g.closure([three_cycle]).order == 3


# --- subgroup enumeration -------------------------------------------------------


@pytest.mark.parametrize("name", corpus_names())
def test_subgroup_table_against_brute_force(name):
    group = corpus_group(name)
    table = all_subgroups(group)
    brute = _brute_subgroups(group)
    listed = {frozenset(h.elements) for h in table.all_subgroups()}
    assert listed == brute
    assert len(table.all_subgroups()) == SUBGROUP_TOTAL_COUNTS[name]
    assert len(table) == SUBGROUP_CLASS_COUNTS[name]


@pytest.mark.parametrize("name", corpus_names())
def test_class_order_is_canonical(name):
    table = all_subgroups(corpus_group(name))
    keys = [(cls.order, cls.members[0]) for cls in table]
    assert keys == sorted(keys)
    assert table[0].representative.order == 1
    assert table[len(table) - 1].representative.order == corpus_group(name).order


@pytest.mark.parametrize("name", corpus_names())
def test_class_size_equals_normalizer_index(name):
    group = corpus_group(name)
    for cls in all_subgroups(group):
        h = cls.representative
        assert len(cls.members) == group.order // h.normalizer().order


@pytest.mark.parametrize("name", corpus_names())
def test_conjugates_land_in_the_same_class(name):
    group = corpus_group(name)
    table = all_subgroups(group)
    for ci, cls in enumerate(table):
        h = cls.representative
        for x in range(group.order):
            assert conjugacy_class_of_subgroup(group, h.conjugate_by(x)) == ci


def test_cyclic_class_counts():
    # non-cyclic classes in the corpus: V4 itself, S3, the two V4s in D4, D4, Q8
    assert all_subgroups(corpus_group("C6")).cyclic_class_count() == 4
    assert all_subgroups(corpus_group("V4")).cyclic_class_count() == 4
    assert all_subgroups(corpus_group("S3")).cyclic_class_count() == 3
    assert all_subgroups(corpus_group("D4")).cyclic_class_count() == 5
    assert all_subgroups(corpus_group("Q8")).cyclic_class_count() == 5


def test_index_of_unknown_subgroup_raises():
    g4 = corpus_group("V4")
    table = all_subgroups(g4)
    with pytest.raises(GroupError):
        table.index_of((0, 2, 3))  # not closed, not a subgroup


def test_subgroup_invariants():
    g = corpus_group("D4")
    for cls in all_subgroups(g):
        h = cls.representative
        norm = h.normalizer()
        assert all(x in norm for x in h.elements)
        if h.index == 2:
            assert h.is_normal()


# --- cosets and double cosets -----------------------------------------------------


def test_left_cosets_partition():
    g = corpus_group("S3")
    h = next(c.representative for c in all_subgroups(g) if c.order == 2)
    cos = left_cosets(g, h)
    assert len(cos) == 3
    assert sorted(x for c in cos for x in c) == list(range(6))


def test_double_cosets_v4():
    # abelian: H = K of order 2 fixes both cosets of K pointwise
    g = corpus_group("V4")
    h = next(c.representative for c in all_subgroups(g) if c.order == 2)
    dcs = double_cosets(g, h, h)
    assert len(dcs) == 2
    assert all(dc.size == 1 and dc.stabilizer_order == 2 for dc in dcs)


@pytest.mark.parametrize("name", corpus_names())
def test_double_coset_sizes_partition_cosets(name):
    group = corpus_group(name)
    table = all_subgroups(group)
    for hc in table:
        for kc in table:
            h, k = hc.representative, kc.representative
            dcs = double_cosets(group, h, k)
            assert sum(dc.size for dc in dcs) == group.order // k.order
            for dc in dcs:
                assert dc.size * dc.stabilizer_order == h.order


def test_subgroup_requires_actual_subgroup():
    g = corpus_group("S3")
    with pytest.raises(GroupError):
        Subgroup(g, (0, 1, 2))  # arbitrary subset, not closed
