import itertools
import random
from fractions import Fraction as F

import pytest

from metadist.geodesic import (
    BallLimitExceeded,
    bfs_ball,
    geodesic_word,
    read_ball_cache,
    word_length,
    write_ball_cache,
)
from metadist.group import GroupSpec, Word, b_element, evaluate_element, hnn_embed, rank1_spec

BS12 = rank1_spec(2)
L32 = rank1_spec(F(3, 2))
DIAG = GroupSpec(([[2, 0], [0, 3]], [[3, 0], [0, 2]]))


def test_small_balls():
    b0 = bfs_ball(BS12, 0)
    assert len(b0) == 1 and b0.sphere_sizes == [1]
    assert len(bfs_ball(BS12, 1)) == 5
    b3 = bfs_ball(BS12, 3)
    assert word_length(b3, b_element(BS12, [2])) == 2


def test_sphere_sizes_bs12():
    ball = bfs_ball(BS12, 8)
    assert ball.sphere_sizes == [1, 4, 12, 26, 50, 98, 184, 336, 606]
    assert sum(ball.sphere_sizes) == len(ball)


def test_word_length_examples():
    ball = bfs_ball(BS12, 6)
    assert word_length(ball, b_element(BS12, [0])) == 0
    assert word_length(ball, b_element(BS12, [1])) == 1
    a4 = b_element(BS12, [4])
    assert 3 <= word_length(ball, a4) <= 4
    assert word_length(ball, a4) == 4  # t^-1 a^2 t
    assert word_length(ball, b_element(BS12, [10**6])) is None


@pytest.mark.parametrize("spec", [BS12, L32, DIAG])
def test_geodesic_words_round_trip(spec):
    ball = bfs_ball(spec, 5)
    rng = random.Random(0)
    elements = list(ball.table)
    for g in rng.sample(elements, 50):
        w = geodesic_word(ball, g)
        assert evaluate_element(w, spec) == g
        assert len(w) == word_length(ball, g)
    with pytest.raises(KeyError):
        geodesic_word(ball, b_element(spec, [10**9] * spec.n))


@pytest.mark.parametrize("spec", [BS12, L32])
def test_lengths_match_exhaustive_enumeration(spec):
    """Shortest word over all words of length <= 6, element by element."""
    best = {}
    letters = spec.letters()
    for n in range(7):
        for w in itertools.product(letters, repeat=n):
            g = evaluate_element(Word(w), spec)
            if g not in best:
                best[g] = n
    ball = bfs_ball(spec, 6)
    assert {g: v[0] for g, v in ball.items()} == best


def test_thread_count_does_not_change_the_ball():
    a = bfs_ball(L32, 7, threads=1)
    b = bfs_ball(L32, 7, threads=3)
    assert list(a.table.items()) == list(b.table.items())


def test_node_limit():
    with pytest.raises(BallLimitExceeded) as exc:
        bfs_ball(BS12, 10, node_limit=100)
    assert exc.value.completed_radius == 4
    assert len(exc.value.partial) == 1 + 4 + 12 + 26 + 50
    with pytest.raises(ValueError):
        bfs_ball(BS12, -1)


def test_hnn_monotonicity():
    big = hnn_embed(L32)
    small, large = bfs_ball(L32, 6), bfs_ball(big, 6)
    for g, (length, _, _) in small.items():
        g1 = type(g)(g.exponents + (0,), g.translation)
        assert large.table[g1][0] <= length


def test_cache_round_trip(tmp_path):
    ball = bfs_ball(L32, 5)
    path = tmp_path / "ball.bin"
    write_ball_cache(ball, path)
    again = read_ball_cache(path, L32)
    assert {g: v[0] for g, v in again.items()} == {g: v[0] for g, v in ball.items()}
    assert again.sphere_sizes == ball.sphere_sizes
    for g in list(ball.table)[:40]:
        assert evaluate_element(geodesic_word(again, g), L32) == g
    raw = path.read_bytes()
    path.write_bytes(raw)
    with pytest.raises(ValueError):
        read_ball_cache(path, BS12)
    path.write_bytes(b"nope" + raw[4:])
    with pytest.raises(ValueError):
        read_ball_cache(path, L32)
    write_ball_cache(ball, tmp_path / "again.bin")
    assert (tmp_path / "again.bin").read_bytes() == raw
