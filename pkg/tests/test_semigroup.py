from itertools import product

import pytest

from semidense import catalog
from semidense import semigroup as sg
from semidense.errors import (
    BoundExceeded,
    EntryOutOfRange,
    NotAssociative,
    Overflow,
    ParseError,
    PreconditionViolated,
    SizeMismatch,
    TableError,
    TheoremViolation,
)
from semidense.semigroup import FiniteSemigroup, SubsetMask


def test_right_and_left_zero_tables_validate():
    assert sg.validate_table(2, [[0, 1], [0, 1]]).table == ((0, 1), (0, 1))
    assert sg.validate_table(2, [[0, 0], [1, 1]]).table == ((0, 0), (1, 1))


def test_group_table_validates():
    assert sg.validate_table(2, [[0, 1], [1, 0]]) == catalog.cyclic_group(2)


def test_exactly_eight_order_two_tables_are_associative():
    good = []
    for flat in product(range(2), repeat=4):
        try:
            sg.from_flat(flat, 2)
            good.append(flat)
        except NotAssociative:
            pass
    assert len(good) == 8
    assert (1, 0, 0, 0) not in good


def test_non_associative_reports_first_failing_triple():
    with pytest.raises(NotAssociative) as info:
        sg.validate_table(2, [[1, 0], [0, 0]])
    i, j, k = info.value.triple
    t = ((1, 0), (0, 0))
    assert t[t[i][j]][k] != t[i][t[j][k]]


def test_entry_out_of_range():
    with pytest.raises(EntryOutOfRange) as info:
        sg.validate_table(2, [[0, 2], [0, 1]])
    assert (info.value.i, info.value.j, info.value.value) == (0, 1, 2)


def test_ragged_table_is_rejected():
    with pytest.raises(TableError):
        sg.validate_table(2, [[0, 1], [0]])


def test_subset_mask_basics():
    A = SubsetMask.of(4, [0, 2])
    assert list(A) == [0, 2] and len(A) == 2 and 2 in A and 1 not in A
    assert A.hex == "@5" and str(A) == "{0,2}"
    assert A.complement() == SubsetMask.of(4, [1, 3])
    assert (A | SubsetMask.of(4, [1])).bits == 0b111
    assert A.issubset(SubsetMask.full(4))
    with pytest.raises(ValueError):
        SubsetMask(0b10000, 4)


def test_parse_subset_forms():
    assert sg.parse_subset("0,2", 4) == sg.parse_subset("@5", 4)
    assert not sg.parse_subset("", 3)
    with pytest.raises(ParseError):
        sg.parse_subset("x", 3)


def test_sgt_round_trip_with_labels(tmp_path):
    S, _ = catalog.union_semilattice(2)
    path = tmp_path / "u2.sgt"
    sg.write_sgt(S, path)
    T = sg.read_sgt(path)
    assert T == S and T.labels == S.labels


def test_sgt_comments_and_errors(tmp_path):
    assert sg.parse_sgt("# right zero\n2\n0 1\n0 1\n") == catalog.right_zero(2)
    for bad in ["", "x\n", "2\n0 1\n", "2\n0 1\n0 a\n", "2\n0 1\n0 1\nfoo\n"]:
        with pytest.raises(ParseError):
            sg.parse_sgt(bad)
    with pytest.raises(ParseError):
        sg.read_sgt(tmp_path / "missing.sgt")
    with pytest.raises(NotAssociative):
        sg.parse_sgt("2\n1 0\n0 0\n")


def test_direct_product_of_two_groups_is_klein(C2):
    K = sg.direct_product(C2, C2)
    assert K.table == ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


def test_direct_product_with_right_zero(C2, RZ2, C2xRZ2):
    for g, z, h, w in product(range(2), repeat=4):
        assert C2xRZ2.mul(2 * g + z, 2 * h + w) == 2 * ((g + h) % 2) + w


def test_direct_product_orders_three_and_five():
    P = sg.direct_product(catalog.cyclic_group(3), catalog.monogenic(2, 4))
    assert P.order == 15
    sg.validate_table(15, P.table)


def test_direct_product_overflow():
    with pytest.raises(Overflow):
        sg.direct_product(catalog.right_zero(6), catalog.right_zero(6))


def test_collapse_quotient_examples(RZ2, C2, C2xRZ2):
    assert sg.collapse_quotient(RZ2).target.order == 1
    h = sg.collapse_quotient(C2)
    assert h.class_of == (0, 1) and h.target == C2
    h = sg.collapse_quotient(C2xRZ2)
    assert h.class_of == (0, 0, 1, 1) and h.target == C2


def test_collapse_relation_matches_definition(C2xRZ2):
    rel = sg.collapse_relation(C2xRZ2)
    for a in range(4):
        for b in range(4):
            assert rel[a][b] == (a // 2 == b // 2)


def test_collapse_quotient_of_left_zero_is_itself(LZ2):
    h = sg.collapse_quotient(LZ2)
    assert h.target == LZ2
    flags = sg.classify(h.target)
    assert not flags.left_cancellative


def test_quotient_map_checks_homomorphism(C2):
    with pytest.raises(TableError):
        sg.QuotientMap(C2, C2, (0, 0))


def test_ideals(RZ2, C2, SL2):
    assert sg.minimal_left_ideals(RZ2) == [SubsetMask.of(2, [0]), SubsetMask.of(2, [1])]
    assert sg.kernel(RZ2) == RZ2.full()
    assert sg.minimal_left_ideals(C2) == [C2.full()]
    assert sg.minimal_left_ideals(SL2) == [SubsetMask.of(2, [0])]
    assert sg.kernel(SL2) == SubsetMask.of(2, [0])
    assert sg.principal_left_ideal(SL2, 1) == SL2.full()


def test_right_zeros(RZ2, C2, SL2):
    assert sg.right_zeros(RZ2) == RZ2.full()
    assert not sg.right_zeros(C2)
    assert sg.right_zeros(SL2) == SubsetMask.of(2, [0])


def test_collapse_property(RZ2, C2, SL2):
    assert sg.has_collapse_property(RZ2) == (True, None)
    assert sg.has_collapse_property(C2) == (False, (0, 1))
    assert sg.has_collapse_property(SL2)[0]
    assert sg.has_collapse_property(catalog.union_semilattice(3)[0])[0]


def test_cofinality(SL2, RZ2, C2):
    assert sg.is_cofinal(SL2, SubsetMask.of(2, [0]))
    assert not sg.is_cofinal(SL2, SubsetMask.of(2, [1]))
    assert sg.is_cofinal(RZ2, SubsetMask.of(2, [1]))
    with pytest.raises(PreconditionViolated):
        sg.is_cofinal(C2, C2.full())


def test_thickness(RZ2, C2, SL2):
    assert sg.is_thick(RZ2, SubsetMask.of(2, [0]))
    assert not sg.is_thick(C2, SubsetMask.of(2, [0]))
    assert sg.is_thick(SL2, SubsetMask.of(2, [0]))


def test_classify(C2, LZ2, RZ2):
    assert sg.classify(C2).group
    f = sg.classify(LZ2)
    assert f.right_cancellative and not f.left_cancellative
    f = sg.classify(RZ2)
    assert f.left_cancellative and not f.right_cancellative and f.band and f.has_right_zero


def test_brute_isomorphic(RZ2, LZ2, C2):
    assert not sg.brute_isomorphic(RZ2, LZ2)
    assert sg.brute_isomorphic(RZ2, LZ2, allow_anti=True)
    assert sg.brute_isomorphic(C2, C2)
    with pytest.raises(SizeMismatch):
        sg.brute_isomorphic(C2, catalog.cyclic_group(3))
    with pytest.raises(BoundExceeded):
        sg.brute_isomorphic(catalog.right_zero(9), catalog.right_zero(9))


def test_translation_maps_compose():
    for S in [catalog.monogenic(2, 2), catalog.rectangular_band(2, 2), catalog.union_semilattice(2)[0]]:
        t = S.table
        for a, b, x in product(S.elements, repeat=3):
            assert t[a][t[b][x]] == t[t[a][b]][x]
            assert t[t[x][b]][a] == t[x][t[b][a]]


def test_kernel_is_two_sided_ideal_and_minimal_ideals_are_minimal():
    from semidense.search import census

    for S in census(3):
        K = sg.kernel(S)
        assert K and sg.is_two_sided_ideal(S, K)
        for L in sg.minimal_left_ideals(S):
            assert sg.is_left_ideal(S, L)
            assert all(sg.principal_left_ideal(S, a) == L for a in L)


def test_product_commutative_iff_factors_commutative():
    for S, T in [(catalog.cyclic_group(2), catalog.right_zero(2)), (catalog.cyclic_group(2), catalog.chain_semilattice(2))]:
        P = sg.direct_product(S, T)
        assert sg.classify(P).commutative == (sg.classify(S).commutative and sg.classify(T).commutative)


def test_restrict_and_opposite(RZ2, LZ2):
    assert RZ2.opposite() == LZ2
    sub, elems = catalog.chain_semilattice(3).restrict(SubsetMask.of(3, [0, 2]))
    assert elems == [0, 2] and sub.order == 2


def test_quotient_cancellativity_failure_is_a_theorem_violation(monkeypatch):
    from semidense import densities

    monkeypatch.setattr(densities, "satisfies_sfc", lambda S: True)
    with pytest.raises(TheoremViolation):
        sg.collapse_quotient(catalog.left_zero(2))


def test_catalog_constructors_are_valid():
    for S in [
        catalog.right_zero(3),
        catalog.left_zero(3),
        catalog.cyclic_group(4),
        catalog.chain_semilattice(4),
        catalog.null_semigroup(3),
        catalog.monogenic(3, 2),
        catalog.rectangular_band(2, 3),
        catalog.adjoin_zero(catalog.cyclic_group(2)),
        catalog.adjoin_identity(catalog.right_zero(2)),
    ]:
        sg.validate_table(S.order, S.table)
    assert isinstance(catalog.union_semilattice(3)[0], FiniteSemigroup)
    assert catalog.union_semilattice(5)[0].order == 31
