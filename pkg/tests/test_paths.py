import pytest

from qtpaths.errors import InvalidEncoding, InvalidParams, InvalidPath
from qtpaths.paths import (
    LD,
    LSQ,
    LSQPRIME,
    RISE,
    VALLEY,
    DecoratedPath,
    GenPoly,
    InfinityPath,
    area,
    area_words,
    content_partition,
    contractible_valleys,
    dinv,
    enumerate_paths,
    family_genpoly,
    generating_polynomial,
    infinity_dinv,
    is_area_word,
    path_from_line,
    path_to_line,
    push_zeros,
    rises,
    shift,
    steps_to_word,
    to_infinity_form,
    touching_count,
    validate_path,
    word_to_steps,
    zeros_count,
)
from qtpaths.qt import ONE, Q, T, QTPoly

# the running example: a size-8 square path of shift 3
WORD8 = (0, -3, -3, -2, -2, -1, 0, 0)
LABELS8 = (2, 0, 2, 4, 0, 1, 3, 4)


def test_shift_examples():
    assert shift(WORD8) == 3
    assert shift((0, 1, 2)) == 0
    assert shift((-1, 0, 0)) == 1
    assert shift(()) == 0


def test_area_word_validity():
    assert is_area_word(WORD8)
    assert not is_area_word((1, 0))      # starts above the diagonal
    assert not is_area_word((0, -1))     # ends below the diagonal
    assert not is_area_word((0, 2))      # jumps two diagonals
    assert is_area_word((0, 1, 2), dyck=True)
    assert not is_area_word((-1, 0, 0), dyck=True)


def test_steps_round_trip():
    for size in range(8):
        for word in area_words(size):
            assert steps_to_word(word_to_steps(word)) == word


def test_contractible_valleys_examples():
    assert contractible_valleys(WORD8, LABELS8) == frozenset({2, 8})
    # fully-on-diagonal with strictly decreasing labels: nothing fires
    assert contractible_valleys((0, 0, 0), (3, 2, 1)) == frozenset()
    assert contractible_valleys((0, 0), (1, 2)) == frozenset({2})
    # first-row valley with a zero label needs two preceding east steps
    assert 1 in contractible_valleys((-2, -1, 0), (0, 1, 2))
    assert 1 not in contractible_valleys((-1, 0, 0), (0, 1, 2))
    assert 1 in contractible_valleys((-1, 0, 0), (1, 2, 3))


def test_rises_examples():
    assert rises(WORD8) == frozenset({4, 6, 7})
    assert rises((0, 0, 0)) == frozenset()
    assert rises((0, 1, 2)) == frozenset({2, 3})


def test_area_examples():
    p = DecoratedPath(WORD8, (2, 1, 1, 4, 1, 3, 4, 1), VALLEY, frozenset({2, 5}))
    assert area(p) == 13
    assert area(DecoratedPath((), (), VALLEY)) == 0
    assert area(DecoratedPath((0, 1), (1, 2))) == 1
    # decorated rises remove their rows from the sum
    r = DecoratedPath(WORD8, (2, 1, 0, 4, 0, 1, 3, 4), RISE, frozenset({4, 6}))
    assert area(r) == 13 - 1 - 2


def test_dinv_trivial_and_underived():
    assert dinv(DecoratedPath((0,), (1,))) == 0
    p = DecoratedPath(WORD8, (2, 1, 2, 4, 1, 3, 4, 1), VALLEY, frozenset())
    assert dinv(p) == 7  # 2 primary, 0 secondary, 5 bonus


def test_dinv_decorated_reference_path():
    # certified against the schedule-product oracle in test_schedule.py:
    # inversions (1,7), (1,8), (7,8), (1,6) count (left end undecorated),
    # (2,3) does not; bonus rows 3, 4, 6; minus two decorated valleys.
    p = DecoratedPath(WORD8, LABELS8, VALLEY, frozenset({2, 8}))
    validate_path(p)
    assert dinv(p) == 5


def test_dinv_skips_left_decorated_ends():
    p = DecoratedPath((0, 0, 0), (1, 2, 3), VALLEY, frozenset({2}))
    assert dinv(p) == 1
    q = DecoratedPath((0, 0, 0), (3, 1, 2), VALLEY, frozenset({3}))
    assert dinv(q) == 0


def test_validate_rejects_bad_labellings():
    with pytest.raises(InvalidPath):
        validate_path(DecoratedPath((0, 1), (1, 1)))  # rise must increase
    with pytest.raises(InvalidPath):
        validate_path(DecoratedPath((0, 0), (0, 1)))  # row 1 on diagonal
    with pytest.raises(InvalidPath):
        validate_path(DecoratedPath((-1, 0), (0, 1)))  # no positive base label
    with pytest.raises(InvalidPath):
        validate_path(DecoratedPath((0, 0), (1, 2), VALLEY, frozenset({1})))


def test_enumerate_counts():
    assert len(list(enumerate_paths(LD, 0, 1, 0))) == 1
    assert len(list(enumerate_paths(LD, 0, 1, 0, alphabet_max=3))) == 3
    words = {p.area_word for p in enumerate_paths(LSQ, 0, 2, 0)}
    assert words == {(0, 0), (0, 1), (-1, 0)}
    assert len(list(area_words(2))) == 3


def test_touching_classes_partition_family():
    for (m, n, k) in [(0, 3, 0), (0, 3, 1), (1, 2, 1)]:
        whole = sorted(map(path_to_line, enumerate_paths(LD, m, n, k)))
        pieces = []
        for r in range(n + 2):
            pieces += [path_to_line(p) for p in enumerate_paths(LD, m, n, k, touching=r)]
        assert sorted(pieces) == whole


def test_family_nesting():
    for (m, n, k) in [(0, 3, 1), (1, 2, 0)]:
        lsq = set(map(path_to_line, enumerate_paths(LSQ, m, n, k)))
        ld = set(map(path_to_line, enumerate_paths(LD, m, n, k)))
        prime = set(map(path_to_line, enumerate_paths(LSQPRIME, m, n, k)))
        assert ld <= lsq
        assert prime <= lsq


def test_lsqprime_requires_undecorated_base_positive():
    for p in enumerate_paths(LSQPRIME, 0, 3, 1):
        assert touching_count(p) >= 1


def test_invalid_params():
    with pytest.raises(InvalidParams):
        list(enumerate_paths(LSQPRIME, 0, 2, 1, kind=RISE))
    with pytest.raises(InvalidParams):
        list(enumerate_paths(LD, 0, 2, 0, kind=RISE, touching=1))
    with pytest.raises(InvalidParams):
        list(enumerate_paths("weird", 0, 1, 0))


def test_generating_polynomial_ld2():
    gp = family_genpoly(LD, 0, 2)
    assert gp.terms == {(1, 1): ONE + Q + T, (2,): ONE}


def test_lsq1_equals_ld1():
    assert family_genpoly(LSQ, 0, 1) == family_genpoly(LD, 0, 1)


def test_genpoly_symmetry_check():
    family_genpoly(LD, 0, 3, check_symmetry=True)
    family_genpoly(LSQ, 1, 2, k=1, kind=VALLEY, check_symmetry=True)


def test_genpoly_alphabet_stability():
    for n in range(1, 5):
        base = family_genpoly(LD, 0, n)
        wider = family_genpoly(LD, 0, n, alphabet_max=n + 1)
        assert base == wider
    assert family_genpoly(LSQ, 1, 2, alphabet_max=2) == family_genpoly(LSQ, 1, 2, alphabet_max=3)


def test_genpoly_json_round_trip():
    gp = family_genpoly(LSQ, 0, 3, k=1, kind=VALLEY)
    assert GenPoly.from_json(gp.to_json()) == gp


def test_path_line_round_trip():
    p = DecoratedPath(WORD8, LABELS8, VALLEY, frozenset({2, 8}))
    line = path_to_line(p)
    assert line == "areaword=[0,-3,-3,-2,-2,-1,0,0]; labels=[2,0,2,4,0,1,3,4]; kind=valley; dec=[2,8]"
    assert path_from_line(line) == p


def test_content_and_zeros():
    assert content_partition(LABELS8) == (2, 2, 1, 1)
    assert zeros_count(DecoratedPath(WORD8, LABELS8)) == 2


def test_push_zeros_reference_example():
    ip = InfinityPath(
        (0, -2, -3, -2, -1, -1, 0, 0),
        (2, None, 2, 4, None, 1, 3, 4),
        frozenset({2, 8}),
    )
    p = push_zeros(ip)
    assert p.area_word == WORD8
    assert p.labels == LABELS8
    assert p.decorations == frozenset({2, 8})
    assert infinity_dinv(ip) == dinv(p)


def test_push_zeros_identity_without_zeros():
    p = DecoratedPath((0, 0), (1, 2), VALLEY, frozenset({2}))
    ip = to_infinity_form(p)
    assert push_zeros(ip) == p


@pytest.mark.parametrize("m,n,k", [(1, 2, 0), (1, 2, 1), (2, 1, 0), (1, 3, 1)])
def test_push_zeros_round_trip_preserves_dinv(m, n, k):
    count = 0
    for p in enumerate_paths(LSQ, m, n, k, kind=VALLEY):
        ip = to_infinity_form(p)
        back = push_zeros(ip)
        assert back == p
        assert infinity_dinv(ip) == dinv(p)
        s_std = shift(p.area_word)
        s_inf = shift(ip.area_word)
        area_std = sum(a + s_std for a in p.area_word)
        area_inf = sum(a + s_inf for a in ip.area_word)
        assert area_inf - area_std == m
        count += 1
    assert count > 0


def test_push_zeros_rejects_infinity_on_base():
    with pytest.raises(InvalidEncoding):
        push_zeros(InfinityPath((0, -1), (1, None), frozenset()))


def test_empty_family():
    empty = list(enumerate_paths(LD, 0, 0, 0))
    assert empty == [DecoratedPath((), (), VALLEY, frozenset())]
    assert generating_polynomial(empty).terms == {(): QTPoly.one()}
