import itertools

import pytest

from quartic_cones.theta import (
    AronholdSystem,
    ThetaChar,
    ThetaError,
    aronhold_enumerate,
    build_model,
    even_fiber_histogram,
    even_from_heptad,
    odd_characteristics,
    triple_sum,
)


class TestModel:
    def test_counts(self):
        model = build_model()
        assert len(model) == 64
        assert sum(1 for c in model if c.is_odd()) == 28
        assert sum(1 for c in model if not c.is_odd()) == 36

    def test_base_even(self):
        assert ThetaChar.base().parity == "even"

    def test_pair_odd_quadruple_even(self):
        assert ThetaChar.from_pair(1, 2).parity == "odd"
        assert ThetaChar.from_quadruple(1, 2, 3, 4).parity == "even"

    def test_pairs_biject_with_odd(self):
        odds = set(odd_characteristics())
        assert len(odds) == 28
        model_odds = {c for c in build_model() if c.is_odd()}
        assert odds == model_odds

    def test_complementary_quadruples_equal(self):
        assert ThetaChar.from_quadruple(1, 2, 3, 4) == ThetaChar.from_quadruple(5, 6, 7, 8)
        # 35 = C(8,4)/2 distinct even classes besides the base
        quads = {ThetaChar.from_quadruple(*q)
                 for q in itertools.combinations(range(1, 9), 4)}
        assert len(quads) == 35

    def test_labels(self):
        assert ThetaChar.base().label() == "theta0"
        assert ThetaChar.from_pair(2, 7).label() == (2, 7)
        assert ThetaChar.from_quadruple(5, 6, 7, 8).label() == (1, 2, 3, 4)

    def test_bad_labels(self):
        with pytest.raises(ThetaError):
            ThetaChar.from_pair(1, 1)
        with pytest.raises(ThetaError):
            ThetaChar.from_quadruple(1, 2, 3, 3)

    def test_odd_weight_mask_rejected(self):
        with pytest.raises(ThetaError):
            ThetaChar(0b111)


class TestRelations:
    def test_triangle_relation(self):
        # theta_ij + theta_ik + theta_jk - K = theta0
        for i, j, k in itertools.combinations(range(1, 9), 3):
            total = triple_sum(ThetaChar.from_pair(i, j), ThetaChar.from_pair(i, k),
                               ThetaChar.from_pair(j, k))
            assert total == ThetaChar.base()

    def test_star_relation(self):
        # theta_12 + theta_13 + theta_14 - K = the quadruple class {1,2,3,4}
        total = triple_sum(ThetaChar.from_pair(1, 2), ThetaChar.from_pair(1, 3),
                           ThetaChar.from_pair(1, 4))
        assert total == ThetaChar.from_quadruple(1, 2, 3, 4)

    def test_complementary_quadruple_via_sums(self):
        a = triple_sum(ThetaChar.from_pair(1, 2), ThetaChar.from_pair(1, 3),
                       ThetaChar.from_pair(1, 4))
        b = triple_sum(ThetaChar.from_pair(5, 6), ThetaChar.from_pair(5, 7),
                       ThetaChar.from_pair(5, 8))
        assert a == b

    def test_even_input_rejected(self):
        with pytest.raises(ThetaError):
            triple_sum(ThetaChar.base(), ThetaChar.from_pair(1, 2),
                       ThetaChar.from_pair(1, 3))


class TestEvenFromHeptad:
    def test_every_label_gives_base(self):
        for r in range(1, 9):
            assert even_from_heptad(r) == ThetaChar.base()

    def test_35_distinct_exhaust(self):
        values = set()
        for ijk in itertools.combinations(range(1, 8), 3):
            values.add(triple_sum(*[ThetaChar.from_pair(8, i) for i in ijk]))
        assert len(values) == 35
        assert ThetaChar.base() not in values
        evens = {c for c in build_model() if not c.is_odd() and c != ThetaChar.base()}
        assert values == evens

    def test_label_range(self):
        with pytest.raises(ThetaError):
            even_from_heptad(0)


class TestAronhold:
    def test_count_288(self):
        assert aronhold_enumerate("count") == 288

    def test_star_systems_present(self):
        systems = aronhold_enumerate("list")
        labels = {s.pair_labels() for s in systems}
        for r in range(1, 9):
            star = tuple(sorted(ThetaChar.from_pair(r, i).support()
                                for i in range(1, 9) if i != r))
            assert star in labels

    def test_fiber_sizes_all_8(self):
        systems = aronhold_enumerate("list")
        hist = even_fiber_histogram(systems)
        assert len(hist) == 36
        assert set(hist.values()) == {8}

    def test_parallel_enumeration_matches(self):
        assert aronhold_enumerate("count", jobs=2) == 288

    def test_invalid_system_rejected(self):
        # a disjoint 3-matching inside is forbidden
        members = [ThetaChar.from_pair(1, 2), ThetaChar.from_pair(3, 4),
                   ThetaChar.from_pair(5, 6), ThetaChar.from_pair(1, 3),
                   ThetaChar.from_pair(1, 4), ThetaChar.from_pair(1, 5),
                   ThetaChar.from_pair(1, 6)]
        with pytest.raises(ThetaError):
            AronholdSystem(tuple(members))

    def test_system_even_characteristic(self):
        members = tuple(ThetaChar.from_pair(8, i) for i in range(1, 8))
        system = AronholdSystem(members)
        assert system.even_characteristic() == ThetaChar.base()
