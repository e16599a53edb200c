"""Order, colour, and cut behaviour of coloured chains."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oagkit.chain import (ChainSpec, ColourAll, ColourDenseCodense,
                          ColourFinite, ColourNone, ColourRule, Cut, CutKind,
                          CutStatus, Position, SegKind, Segment,
                          chain_stably_embedded, classify_cut, cut_classes,
                          dense_complete, dense_q, fin, integers, omega,
                          omega_star, ordered_sum)
from oagkit.errors import PositionOutOfDomain


MIXED = ChainSpec((Segment(SegKind.FIN, 3), Segment(SegKind.OMEGA),
                   Segment(SegKind.INT), Segment(SegKind.DENSE_Q)))


def mixed_positions():
    out = [Position(0, c) for c in range(3)]
    out += [Position(1, c) for c in range(5)]
    out += [Position(2, c) for c in range(-3, 4)]
    out += [Position(3, Fraction(n, d)) for n in range(-4, 5)
            for d in (1, 2, 3)]
    return out


@given(st.sampled_from(mixed_positions()), st.sampled_from(mixed_positions()),
       st.sampled_from(mixed_positions()))
def test_order_is_total_and_transitive(a, b, c):
    assert MIXED.lt(a, b) or MIXED.lt(b, a) or a == b
    if MIXED.lt(a, b) and MIXED.lt(b, c):
        assert MIXED.lt(a, c)
    assert MIXED.le(a, a)


@given(st.sampled_from(mixed_positions()))
def test_successor_bracket(p):
    s = MIXED.succ_of(p)
    if s is not None:
        assert MIXED.lt(p, s)
        assert MIXED.pred_of(s) == p


def test_segments_are_ordered_blocks():
    assert MIXED.lt(Position(0, 2), Position(1, 0))
    assert MIXED.lt(Position(1, 999), Position(2, -5))
    assert MIXED.lt(Position(2, 100), Position(3, Fraction(-7, 2)))


def test_position_validation():
    with pytest.raises(PositionOutOfDomain):
        MIXED.check_position(Position(0, 3))
    with pytest.raises(PositionOutOfDomain):
        MIXED.check_position(Position(1, -1))
    with pytest.raises(PositionOutOfDomain):
        MIXED.check_position(Position(4, 0))
    MIXED.check_position(Position(2, -10))


def test_dense_coordinates_are_fractions():
    MIXED.check_position(Position(3, Fraction(1, 2)))
    with pytest.raises(PositionOutOfDomain):
        MIXED.check_position(Position(3, 0.5))


def test_colour_membership():
    ch = ChainSpec((Segment(SegKind.OMEGA),),
                   (ColourRule("start", (ColourFinite(frozenset({0, 2})),)),))
    assert ch.has_colour("start", Position(0, 0))
    assert not ch.has_colour("start", Position(0, 1))
    assert ch.has_colour("start", Position(0, 2))


def test_ordered_sum_reindexes_segments():
    ch = ordered_sum(omega(), integers())
    assert [s.kind for s in ch.segments] == [SegKind.OMEGA, SegKind.INT]
    assert ch.lt(Position(0, 50), Position(1, -50))


# -- cuts ---------------------------------------------------------------------


def test_principal_cuts_definable_everywhere():
    for ch in (omega(), omega_star(), integers(), fin(4), dense_q()):
        p = next(iter(ch.sample_positions(1)))
        for kind in (CutKind.PRINCIPAL_PLUS, CutKind.PRINCIPAL_MINUS):
            cc = classify_cut(ch, Cut(kind, position=p))
            assert cc.status is CutStatus.DEFINABLE, (ch, kind, cc)


def test_end_cuts_definable():
    for ch in (omega(), omega_star(), integers(), dense_complete()):
        for kind in (CutKind.MINUS_INF, CutKind.PLUS_INF):
            cc = classify_cut(ch, Cut(kind))
            assert cc.status is CutStatus.DEFINABLE


def test_double_ladder_boundary_not_definable():
    ch = ordered_sum(omega(), omega_star())
    cc = classify_cut(ch, Cut(CutKind.SEGMENT_BOUNDARY, index=0))
    assert cc.status is CutStatus.NOT_DEFINABLE


def test_marked_boundary_becomes_definable():
    ch = ChainSpec((Segment(SegKind.OMEGA), Segment(SegKind.OMEGA_STAR)),
                   (ColourRule("head", (ColourAll(), ColourNone())),))
    cc = classify_cut(ch, Cut(CutKind.SEGMENT_BOUNDARY, index=0))
    assert cc.status is CutStatus.DEFINABLE


def test_cut_classes_cover_the_report():
    ch = ordered_sum(omega(), omega_star())
    cuts = list(cut_classes(ch))
    kinds = {c.kind for c in cuts}
    assert CutKind.SEGMENT_BOUNDARY in kinds
    assert CutKind.MINUS_INF in kinds and CutKind.PLUS_INF in kinds


def test_chain_suite():
    coloured = ChainSpec(
        (Segment(SegKind.DENSE_COMPLETE),),
        (ColourRule("rational", (ColourDenseCodense(True),)),))
    marked = ChainSpec(
        (Segment(SegKind.OMEGA), Segment(SegKind.OMEGA_STAR)),
        (ColourRule("head", (ColourAll(), ColourNone())),))
    expectations = [
        (omega(), CutStatus.DEFINABLE),
        (omega_star(), CutStatus.DEFINABLE),
        (integers(), CutStatus.DEFINABLE),
        (coloured, CutStatus.DEFINABLE),
        (ordered_sum(omega(), omega_star()), CutStatus.NOT_DEFINABLE),
        (marked, CutStatus.DEFINABLE),
    ]
    for ch, want in expectations:
        rep = chain_stably_embedded(ch)
        assert rep.status is want, (ch, rep)


def test_not_definable_report_names_the_boundary():
    rep = chain_stably_embedded(ordered_sum(omega(), omega_star()))
    assert rep.status is CutStatus.NOT_DEFINABLE
    assert rep.witness is not None
    assert rep.witness.kind is CutKind.SEGMENT_BOUNDARY
