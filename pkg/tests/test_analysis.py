import json
from fractions import Fraction

import pytest

from oracles import (
    E_CF_PREFIX_15,
    E_SERIES_40,
    GOLDEN_SERIES_20,
    PI_SERIES_40,
    Q_GOLDEN_SERIES_21,
)

from cfdeform.analysis import (
    CATALAN,
    FIBONACCI,
    GENERALIZED_CATALAN,
    bfs_oracle,
    check_anti_unimodality,
    check_sign_alternation,
    check_unimodality,
    convergent_determinant,
    convergent_polys,
    e_series_parity_report,
    enumerate_rationals,
    irrational_series,
    match_reference,
    observation_report,
    run_property_sweep,
    stabilization_depth,
)
from cfdeform.contfrac import StreamingCF, cf_expand
from cfdeform.errors import DomainError, StabilizationError, TermsExhaustedError
from cfdeform.exactnum import RingPoly, TruncatedSeries, series_of_ratfun
from cfdeform.udeform import (
    U_NUM,
    U_RZERO_POLY,
    U_SZERO_POLY,
    UParams,
    f_pair,
    quantize,
)


def test_enumeration_counts_and_uniqueness():
    for bound in (1, 4, 8):
        items = enumerate_rationals(bound)
        assert len(items) == 2**bound - 1
        assert len({x for x, _ in items}) == len(items)
        for x, depth in items:
            assert sum(cf_expand(x).terms) == depth


def test_bfs_oracle_level_two():
    u = UParams(2, 3, 5, 7)
    table = bfs_oracle(u, 2)
    assert table[Fraction(1)] == (1, 1)
    assert table[Fraction(2)] == (5, 12)
    assert table[Fraction(1, 2)] == (12, 5)


def test_bfs_oracle_numerator_family():
    table = bfs_oracle(U_NUM, 8)
    assert len(table) == 2**8 - 1
    for x, pair in table.items():
        assert pair.fx == x.numerator
        assert pair.finv == x.denominator


def test_bfs_oracle_matches_recursion_symbolic():
    table = bfs_oracle(U_SZERO_POLY, 9)
    for x, pair in table.items():
        assert f_pair(U_SZERO_POLY, x) == pair


def test_convergent_polys_basics():
    pairs = convergent_polys([1, 1])
    assert pairs[1].numerator == RingPoly([1, 1])
    assert pairs[1].denominator == RingPoly([1])

    pairs = convergent_polys([2, 2])
    value = quantize(U_SZERO_POLY, Fraction(5, 2))
    assert pairs[-1].numerator * value.den == pairs[-1].denominator * value.num

    pairs = convergent_polys([1, 2, 2])
    det = convergent_determinant(pairs, 2)
    assert det == -(RingPoly.monomial(3))


def test_determinant_identity_on_streams():
    for source in (StreamingCF.golden(), StreamingCF.e_pattern(), StreamingCF.pi_embedded()):
        terms = []
        it = source.terms()
        while sum(terms) < 15:
            terms.append(next(it))
        pairs = convergent_polys(terms)
        for k in range(1, len(pairs)):
            expected = RingPoly.monomial(sum(terms[:k]), 1 if k % 2 == 1 else -1)
            assert convergent_determinant(pairs, k) == expected


def test_determinant_identity_over_rationals(rationals_ell_10):
    for x, d in rationals_ell_10:
        terms = cf_expand(x).terms
        if len(terms) < 2 or d > 8:
            continue
        pairs = convergent_polys(terms)
        for k in range(1, len(pairs)):
            expected = RingPoly.monomial(sum(terms[:k]), 1 if k % 2 == 1 else -1)
            assert convergent_determinant(pairs, k) == expected


def test_convergent_recursion_matches_solution_pairs():
    # Two structurally different computations of the same pair: the two-term
    # convergent recursion and the move-by-move ascent.
    e_prefix = [2, 1, 2, 1, 1, 4]
    pairs = convergent_polys(e_prefix)
    for k in range(len(e_prefix)):
        direct = f_pair(U_SZERO_POLY, e_prefix[: k + 1])
        assert pairs[k].numerator == direct.fx
        assert pairs[k].denominator == direct.finv


def test_golden_series_to_order_ten():
    series = irrational_series(StreamingCF.golden(), U_SZERO_POLY, 10)
    assert list(series) == GOLDEN_SERIES_20[:11]


def test_e_series_low_orders():
    series = irrational_series(StreamingCF.e_pattern(), U_SZERO_POLY, 12)
    assert list(series) == E_SERIES_40[:13]


def test_pi_series_low_orders():
    series = irrational_series(StreamingCF.pi_embedded(), U_SZERO_POLY, 13)
    assert list(series) == PI_SERIES_40[:14]


def test_reciprocal_golden_series_inverts():
    series = irrational_series(StreamingCF.periodic([0], [1]), U_SZERO_POLY, 12)
    golden = irrational_series(StreamingCF.golden(), U_SZERO_POLY, 12)
    product = series * golden
    assert list(product) == [1] + [0] * 12


def test_unstabilized_convergent_tail_differs_from_limit():
    # Expanding one convergent past its guaranteed prefix yields coefficients
    # that later convergents overturn: only the first 10 survive here.
    pair = convergent_polys([1] * 10)[-1]
    s = series_of_ratfun((pair.numerator, pair.denominator), 19)
    assert list(s)[:10] == GOLDEN_SERIES_20[:10]
    assert list(s)[10] != GOLDEN_SERIES_20[10]


def test_rzero_golden_does_not_stabilize():
    with pytest.raises(StabilizationError) as err:
        irrational_series(StreamingCF.golden(), U_RZERO_POLY, 5)
    assert err.value.series_a is not None
    assert err.value.series_b is not None
    assert err.value.series_a != err.value.series_b


def test_series_source_exhaustion():
    with pytest.raises(TermsExhaustedError):
        irrational_series(StreamingCF.literal([3, 7]), U_SZERO_POLY, 39)


def test_series_rejects_other_matrices():
    with pytest.raises(DomainError):
        irrational_series(StreamingCF.golden(), U_NUM, 5)


def test_stabilization_depth_examples():
    assert stabilization_depth([1, 1], [1, 1, 1], 10) >= 2
    assert stabilization_depth([2], [2, 1], 10) >= 2
    assert stabilization_depth([2, 2], [2, 2], 7) == 8
    # The shorter prefix [1] has term sum 1 and the expansions differ at
    # index 1 already, which pins the guaranteed prefix at the shorter sum.
    assert stabilization_depth([1], [1, 2], 6) == 1
    with pytest.raises(DomainError):
        stabilization_depth([1, 2], [2, 2, 1], 5)


def test_stabilization_bound_sweep(rationals_ell_10):
    for x, d in rationals_ell_10:
        if d > 7:
            continue
        terms = cf_expand(x).terms
        if terms[0] == 0 or len(terms) < 2:
            continue
        expand_to = d + 2
        for k in range(1, len(terms)):
            depth = stabilization_depth(terms[:k], terms[: k + 1], expand_to)
            assert depth >= sum(terms[:k])


def test_unimodality_checker():
    assert check_unimodality(RingPoly([1, 4, 5, 3, 3, 1])).holds
    assert check_unimodality(RingPoly([1])).holds
    report = check_unimodality(RingPoly([2, 1, 2]))
    assert not report.holds
    assert report.counterexample == {"index": 1}
    with pytest.raises(DomainError):
        check_unimodality(RingPoly([1, -2, 1]))
    with pytest.raises(DomainError):
        check_unimodality(RingPoly())


def test_anti_unimodality_checker():
    assert check_anti_unimodality(RingPoly([1])).holds
    report = check_anti_unimodality(RingPoly([1, 2]))
    assert not report.holds and report.counterexample == {"index": 0}
    assert check_anti_unimodality(RingPoly([3, 1, 2])).holds
    # The 17/2 row of the rational-index table breaks the stated zigzag at
    # the constant term; recorded as a finding about the observation.
    report = check_anti_unimodality(RingPoly([1, 4, 14, 10, 25, 6, 13, 1, 2]))
    assert not report.holds and report.counterexample == {"index": 0}


def test_sign_alternation_checker():
    s_19_31 = series_of_ratfun(quantize(U_SZERO_POLY, Fraction(19, 31)), 14)
    report = check_sign_alternation(s_19_31)
    assert report.holds and "zero_indices" not in report.details

    s_7_5 = series_of_ratfun(quantize(U_SZERO_POLY, Fraction(7, 5)), 14)
    report = check_sign_alternation(s_7_5)
    assert not report.holds
    assert report.counterexample == {"index": 1}
    assert report.details["zero_indices"] == [3, 7, 11]

    geometric = TruncatedSeries([1, 1, 1, 1])
    report = check_sign_alternation(geometric)
    assert not report.holds and report.counterexample == {"index": 1}


def test_match_reference_patterns():
    golden = irrational_series(StreamingCF.golden(), U_SZERO_POLY, 19)
    assert match_reference(golden, CATALAN, signed=True, head=(1,), offset=1).holds

    qgolden = TruncatedSeries(Q_GOLDEN_SERIES_21)
    assert match_reference(
        qgolden, GENERALIZED_CATALAN, signed=True, head=(1, 0), offset=1
    ).holds

    e_series = TruncatedSeries(E_SERIES_40[:20])
    report = match_reference(e_series, CATALAN, signed=True, head=(1,), offset=1)
    assert not report.holds


def test_reference_sequences_are_the_published_segments():
    from math import comb

    assert len(CATALAN.terms) == 25
    for n, value in enumerate(CATALAN.terms):
        assert value == comb(2 * n, n) // (n + 1)

    assert len(FIBONACCI.terms) == 25
    for i in range(2, 25):
        assert FIBONACCI.terms[i] == FIBONACCI.terms[i - 1] + FIBONACCI.terms[i - 2]

    # Independent derivation from the generating function
    # (1 - x + x^2 - sqrt(1 - 2x - x^2 - 2x^3 + x^4)) / (2 x^2).
    order = 30
    inner = [Fraction(c) for c in (1, -2, -1, -2, 1)]
    root = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        acc = inner[n] if n < len(inner) else Fraction(0)
        for j in range(1, n):
            acc -= root[j] * root[n - j]
        root[n] = acc / 2
    numerator = [1 - root[0], -1 - root[1], 1 - root[2]] + [-root[i] for i in range(3, order + 1)]
    derived = [numerator[i + 2] / 2 for i in range(25)]
    assert list(GENERALIZED_CATALAN.terms) == [int(v) for v in derived]


def test_e_parity_report_records_finding():
    report = e_series_parity_report()
    assert report.tested == 11
    assert not report.holds
    assert report.counterexample == {"index": 17}
    # Re-verify in isolation against the frozen series.
    c = E_SERIES_40
    assert not abs(c[17]) < max(abs(c[16]), abs(c[18]))


def test_property_report_serializes():
    report = run_property_sweep("integrality", U_SZERO_POLY, 5, order=10)
    data = report.as_dict()
    assert set(data) >= {"property", "holds", "counterexample", "tested"}
    json.dumps(data)
    assert report.holds and report.tested == 2**5 - 1


def test_parallel_sweep_matches_serial():
    serial = run_property_sweep("integrality", U_SZERO_POLY, 6, order=10, jobs=1)
    parallel = run_property_sweep("integrality", U_SZERO_POLY, 6, order=10, jobs=2)
    assert serial.as_dict() == parallel.as_dict()
    s2 = run_property_sweep("anti-unimodality", U_RZERO_POLY, 6, jobs=1)
    p2 = run_property_sweep("anti-unimodality", U_RZERO_POLY, 6, jobs=2)
    assert s2.as_dict() == p2.as_dict()


def test_observation_report_structure():
    report = observation_report(max_ell=6, order=10)
    assert set(report) == {
        "unimodality",
        "anti_unimodality",
        "sign_alternation",
        "e_series_parity",
    }
    json.dumps(report)
    anti = report["anti_unimodality"]
    assert not anti["holds"]
    x = Fraction(anti["counterexample"]["x"])
    recheck = check_anti_unimodality(f_pair(U_RZERO_POLY, x).fx)
    assert not recheck.holds
    assert recheck.counterexample["index"] == anti["counterexample"]["index"]


def test_e_prefix_constant_matches_pattern():
    assert StreamingCF.e_pattern().take(15) == E_CF_PREFIX_15


def test_integrality_sweep_order_20(rationals_ell_12):
    for u in (U_SZERO_POLY, U_RZERO_POLY):
        for x, _ in rationals_ell_12:
            fp = f_pair(u, x)
            ok, index = series_of_ratfun((fp.fx, fp.finv), 20).is_integral()
            assert ok, (str(u), x, index)
