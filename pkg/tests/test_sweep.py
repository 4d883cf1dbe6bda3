import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from minlink.sweep import NaiveSweepStatus, StatusInterval, SweepStatus


def ivs(status):
    return [(iv.lo, iv.hi, iv.source) for iv in status.intervals()]


def test_insert_overlap_resolution():
    s = SweepStatus()
    s.insert(0, 2, "A")
    s.insert(1, 3, "B")
    assert ivs(s) == [(0, 1, "A"), (1, 3, "B")]


def test_insert_empty_then_disjoint():
    s = SweepStatus()
    s.insert(4, 6, "A")
    assert ivs(s) == [(4, 6, "A")]
    s2 = SweepStatus()
    s2.insert(0, 1, "A")
    s2.insert(2, 3, "B")
    assert ivs(s2) == [(0, 1, "A"), (2, 3, "B")]


def test_clip_reports_pieces():
    s = SweepStatus()
    s.insert(0, 4, "A")
    removed = s.clip(1, 2)
    assert ivs(s) == [(0, 1, "A"), (2, 4, "A")]
    assert [(iv.lo, iv.hi, iv.source) for iv in removed] == [(1, 2, "A")]

    s = SweepStatus()
    s.insert(0, 1, "A")
    assert s.clip(2, 3) == []
    assert ivs(s) == [(0, 1, "A")]

    s = SweepStatus()
    s.insert(0, 1, "A")
    s.insert(1, 2, "B")
    removed = s.clip(0, 2)
    assert ivs(s) == []
    assert len(removed) == 2


def test_overlap_queries():
    s = SweepStatus()
    s.insert(0, 2, "A")
    s.insert(3, 5, "B")
    assert [iv.source for iv in s.overlap(1, 4)] == ["A", "B"]
    assert s.overlap(2, 3) == []            # open intervals
    assert SweepStatus().overlap(0, 100) == []


def test_shear_frame():
    # slope 1: raising the height by 2 shifts the physical frame by 2
    s = SweepStatus(Fraction(1))
    s.shift_frame(Fraction(0))
    s.insert(0, 1, "A")
    s.shift_frame(Fraction(2))
    assert ivs(s) == [(2, 3, "A")]
    assert [iv.source for iv in s.overlap(2, 3)] == ["A"]
    s.shift_frame(Fraction(0))
    assert ivs(s) == [(0, 1, "A")]


def test_zero_shear_identity():
    s = SweepStatus(Fraction(0))
    s.insert(0, 1, "A")
    s.shift_frame(Fraction(50))
    assert ivs(s) == [(0, 1, "A")]


def run_random_ops(status, rng, n_ops):
    log = []
    for _ in range(n_ops):
        op = rng.randrange(5)
        a = Fraction(rng.randrange(-20, 20), rng.randrange(1, 4))
        b = a + Fraction(rng.randrange(1, 12), rng.randrange(1, 3))
        if op == 0:
            status.insert(a, b, rng.randrange(100))
        elif op == 1:
            log.append([(iv.lo, iv.hi, iv.source) for iv in status.clip(a, b)])
        elif op == 2:
            log.append([(iv.lo, iv.hi, iv.source) for iv in status.overlap(a, b)])
        elif op == 3:
            status.shift_frame(Fraction(rng.randrange(-10, 10)))
        else:
            log.append([(iv.lo, iv.hi, iv.source) for iv in status.intervals()])
    log.append([(iv.lo, iv.hi, iv.source) for iv in status.intervals()])
    return log


def test_naive_equivalence_random():
    for seed in range(200):
        rng1 = random.Random(seed)
        rng2 = random.Random(seed)
        slope = Fraction(seed % 5 - 2, 1 + seed % 3)
        fast = SweepStatus(slope)
        naive = NaiveSweepStatus(slope)
        assert run_random_ops(fast, rng1, 30) == run_random_ops(naive, rng2, 30)


def test_disjointness_invariant():
    rng = random.Random(7)
    s = SweepStatus(Fraction(1, 2))
    for _ in range(300):
        a = Fraction(rng.randrange(-30, 30))
        b = a + Fraction(rng.randrange(1, 10))
        if rng.random() < 0.7:
            s.insert(a, b, rng.randrange(10))
        else:
            s.clip(a, b)
        got = s.intervals()
        for i1, i2 in zip(got, got[1:]):
            assert i1.hi <= i2.lo
        if rng.random() < 0.3:
            s.shift_frame(Fraction(rng.randrange(-5, 5)))


@given(st.integers(0, 10**6))
@settings(max_examples=50)
def test_insert_then_overlap(seed):
    rng = random.Random(seed)
    s = SweepStatus(Fraction(rng.randrange(-3, 4)))
    s.shift_frame(Fraction(rng.randrange(-5, 5)))
    a = Fraction(rng.randrange(-10, 10))
    b = a + Fraction(rng.randrange(1, 6))
    s.insert(a, b, "X")
    assert any(iv.source == "X" for iv in s.overlap(a, b))
