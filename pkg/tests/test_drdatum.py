import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodstrata import oracles as orc
from periodstrata.drdatum import (
    ZERO_DATUM,
    DatumError,
    DeRhamDatum,
    Violation,
    associated,
    classify,
    compare,
    dimensions,
    min_covers,
    parse_datum,
    truncate,
    twist,
    validate,
)


def D(omega, delta):
    return DeRhamDatum.from_maps(omega, delta)


RUNNING = D({0: 1, 1: 1}, {(0, 1): 1, (1, 2): 1, (0, 2): 1})
FULL01 = D({0: 1, 1: 1}, {(0, 1): 1, (1, 2): 1, (0, 2): 2})

# every valid datum with support in [0, 2] and omega <= 2, as a DeRhamDatum
_FRAME = [(k, l) for k in range(0, 3) for l in range(k + 1, 4)]


def _from_vectors(om_vec, de_vec):
    omega = {w: m for w, m in zip(range(3), om_vec) if m}
    if not omega:
        return ZERO_DATUM
    return DeRhamDatum.from_functions(omega, lambda k, l: de_vec[_FRAME.index((k, l))])


ALL_DATA = [_from_vectors(*u) for u in orc.all_data_on_frame(0, 2, 2)]
data = st.sampled_from(ALL_DATA)


class TestValidate:
    def test_zero_datum(self):
        assert validate({}, {}) == ZERO_DATUM
        assert ZERO_DATUM.is_zero and ZERO_DATUM.L is None and ZERO_DATUM.support == ()

    def test_condition_iii(self):
        v = validate({0: 1}, {(0, 1): 0})
        assert isinstance(v, list) and [x.condition for x in v] == ["iii"]
        assert v[0].witness == (0,)

    def test_condition_iv(self):
        v = validate({0: 1, 1: 1}, {(0, 1): 1, (1, 2): 1, (0, 2): 3})
        assert any(x.condition == "iv" for x in v)
        w = next(x for x in v if x.condition == "iv")
        assert w.witness == (0, 1, 2)

    def test_condition_ii(self):
        v = validate({0: 1}, {(0, 1): 1, (1, 0): 1})
        assert any(x.condition == "ii" for x in v)

    def test_type_errors(self):
        assert validate({0: -1}, {})[0].condition == "type"
        assert validate({0: 1}, {(0,): 1})[0].condition == "type"

    def test_from_maps_raises(self):
        with pytest.raises(DatumError) as exc:
            D({0: 1}, {(0, 1): 2})
        assert all(isinstance(v, Violation) for v in exc.value.violations)

    def test_clamp_rule(self):
        assert RUNNING.delta_at(-5, 7) == RUNNING.delta_at(0, 2) == 1
        assert RUNNING.delta_at(1, 9) == 1 and RUNNING.delta_at(3, 9) == 0

    def test_inconsistent_outside_window(self):
        # stored pair outside [L, U+1] that disagrees with the clamp rule
        v = validate({0: 1}, {(0, 1): 1, (0, 3): 0})
        assert isinstance(v, list)

    @given(st.dictionaries(st.integers(0, 2), st.integers(0, 2), max_size=3),
           st.dictionaries(st.sampled_from(_FRAME), st.integers(0, 3), max_size=6))
    def test_agrees_with_naive_axioms(self, omega, delta):
        om = {w: m for w, m in omega.items() if m}
        if om:
            lo, hi = min(om), max(om) + 1
            delta = {k: v for k, v in delta.items() if lo <= k[0] and k[1] <= hi}
        else:
            delta = {}
        got = validate(om, delta)
        if om:
            lo, hi = min(om), max(om) + 1

            def dfun(k, l):
                if k >= l:
                    return 0
                ck, cl = min(max(k, lo), hi), min(max(l, lo), hi)
                return delta.get((ck, cl), 0)

            ok = orc.naive_is_datum(om, dfun, lo - 2, hi + 2)
        else:
            ok = True
        assert isinstance(got, DeRhamDatum) == ok


class TestClassify:
    def test_examples(self):
        assert classify(ZERO_DATUM) == (True, True, True)
        assert classify(D({0: 2}, {(0, 1): 2})) == (True, True, False)
        f = classify(RUNNING)
        assert f.hodge_tate and not f.full

    def test_associated(self):
        assert associated(FULL01, "HT").delta_at(0, 2) == 1
        assert associated(RUNNING, "HT") == RUNNING
        assert associated(D({0: 3}, {(0, 1): 2}), "Sen").delta_at(0, 1) == 1
        with pytest.raises(ValueError):
            associated(RUNNING, "dR")

    def test_dimensions(self):
        assert dimensions(ZERO_DATUM) == (0, 0, 0)
        full = D({0: 1, 2: 2}, {(0, 1): 1, (0, 2): 1, (0, 3): 3, (1, 2): 0, (1, 3): 2, (2, 3): 2})
        assert classify(full).full and dimensions(full) == (3, 3, 3)
        assert dimensions(RUNNING) == (2, 2, 1)

    @given(data)
    def test_dimension_chain(self, d):
        dims = dimensions(d)
        assert dims.drd <= dims.htd <= dims.sd

    @given(data)
    def test_associated_idempotent_and_ordered(self, d):
        ht, sen = associated(d, "HT"), associated(d, "Sen")
        assert associated(ht, "HT") == ht and associated(sen, "Sen") == sen
        assert compare(sen, ht).relation in ("lt", "eq")
        assert classify(ht).hodge_tate and classify(sen).sen
        # HT(D) <= D: the HT datum takes the smallest delta allowed by the steps
        assert compare(ht, d).relation in ("lt", "eq")


class TestTwistTruncate:
    def test_examples(self):
        assert twist(twist(RUNNING, 3), -3) == RUNNING
        assert twist(RUNNING, 2).support == (-2, -1)
        full = D({0: 1, 5: 1}, {(k, l): (1 if k <= 0 < l else 0) + (1 if k <= 5 < l else 0)
                                 for k in range(0, 6) for l in range(k + 1, 7)})
        t = truncate(full, 0, 1)
        assert t.omega == ((0, 1),) and dimensions(t).drd == 1
        assert truncate(RUNNING, RUNNING.L, RUNNING.U) == RUNNING
        assert truncate(RUNNING, 3, 4) == ZERO_DATUM

    @given(data, st.integers(-4, 4))
    def test_twist_preserves_invariants(self, d, n):
        t = twist(d, n)
        assert isinstance(validate(t._omega, t._delta), DeRhamDatum)
        assert classify(t) == classify(d) and dimensions(t) == dimensions(d)

    @given(data, st.integers(-1, 2), st.integers(0, 3))
    def test_truncate_is_below(self, d, i, span):
        t = truncate(d, i, i + span)
        assert isinstance(validate(t._omega, t._delta), DeRhamDatum)
        assert compare(t, d).relation in ("lt", "eq")
        assert all(i <= w <= i + span for w in t.support)


class TestCompare:
    def test_examples(self):
        assert compare(RUNNING, RUNNING).relation == "eq"
        assert compare(ZERO_DATUM, RUNNING).relation == "lt"
        assert compare(D({0: 2}, {(0, 1): 1}), D({0: 1}, {(0, 1): 1})).relation == "gt"
        assert compare(D({0: 2}, {(0, 1): 1}), D({1: 1}, {(1, 2): 1})).relation == "incomparable"

    def test_interval_flag(self):
        assert compare(RUNNING, FULL01, (0, 1)).strict_in_interval
        assert not compare(RUNNING, FULL01, (0, 0)).strict_in_interval
        assert not compare(RUNNING, RUNNING, (0, 1)).strict_in_interval

    @given(data, data)
    def test_antisymmetry(self, a, b):
        r, s = compare(a, b).relation, compare(b, a).relation
        assert {"lt": "gt", "gt": "lt", "eq": "eq", "incomparable": "incomparable"}[r] == s
        assert (r == "eq") == (a == b)


class TestMinCovers:
    def test_zero_datum(self):
        assert min_covers(ZERO_DATUM, 0, 0) == [D({0: 1}, {(0, 1): 1})]

    def test_full_single_weight(self):
        covers = min_covers(D({0: 1}, {(0, 1): 1}), 0, 1)
        assert set(covers) == {D({0: 2}, {(0, 1): 1}), RUNNING}

    def test_same_omega_increment(self):
        covers = min_covers(D({0: 2}, {(0, 1): 1}), 0, 0)
        assert D({0: 2}, {(0, 1): 2}) in covers

    def test_support_violation(self):
        with pytest.raises(ValueError):
            min_covers(RUNNING, 0, 0)

    def test_sorted_and_antichain(self):
        covers = min_covers(RUNNING, 0, 2)
        assert covers == sorted(covers)
        for a in covers:
            assert compare(RUNNING, a).relation == "lt"
            for b in covers:
                assert a == b or compare(a, b).relation == "incomparable"


class TestLiteral:
    def test_roundtrip(self):
        for d in ALL_DATA[::17] + [ZERO_DATUM, RUNNING]:
            assert parse_datum(d.to_literal()) == d

    def test_format(self):
        assert RUNNING.to_literal() == "omega: {0: 1, 1: 1}; delta: {(0, 1): 1, (0, 2): 1, (1, 2): 1}"

    @pytest.mark.parametrize("bad", ["omega: {0: 1", "weights: {0: 1}", "omega: [1]"])
    def test_syntax_errors(self, bad):
        with pytest.raises(ValueError):
            parse_datum(bad)
