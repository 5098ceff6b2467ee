""" Tests for the seedable random source and the trial runner."""
import pytest

from qautomata.random_source import RandomSource
from qautomata.trials import TrialRunner


def test_splitmix64_reference_output():
    assert RandomSource(0).next_u64() == 0xE220A8397B1DCDAF


def test_same_seed_same_draws():
    left, right = RandomSource(42), RandomSource(42)
    assert [left.randint(1, 30) for _ in range(50)] == [right.randint(1, 30) for _ in range(50)]


def test_randint_bounds():
    rng = RandomSource(1)
    draws = [rng.randint(-2, 2) for _ in range(500)]
    assert set(draws) == {-2, -1, 0, 1, 2}
    assert rng.randint(5, 5) == 5
    with pytest.raises(ValueError):
        rng.randint(3, 2)
    with pytest.raises(ValueError):
        rng.choice([])


def test_copy_replays():
    rng = RandomSource(7)
    rng.next_u64()
    clone = rng.copy()
    assert [rng.next_u64() for _ in range(5)] == [clone.next_u64() for _ in range(5)]


def test_spawn_gives_distinct_reproducible_streams():
    children = RandomSource(3).spawn(4)
    again = RandomSource(3).spawn(4)
    assert [c.seed for c in children] == [c.seed for c in again]
    assert len({c.next_u64() for c in children}) == 4


def draw_pair(index, stream):
    return index, stream.randint(0, 1000)


def test_runner_modes_agree():
    sequential = TrialRunner().map(draw_pair, RandomSource(5), 6)
    with_progress = TrialRunner(progress=True, name='draws').map(draw_pair, RandomSource(5), 6)
    parallel = TrialRunner(parallel=True, n_jobs=2).map(draw_pair, RandomSource(5), 6)
    assert sequential == with_progress == parallel
    assert [index for index, _ in sequential] == list(range(6))


def test_runner_first_decisive_trial():
    def odd(index, stream):
        return index if index % 2 else None

    assert TrialRunner().first(odd, RandomSource(1), 5, decisive=lambda r: r is not None) == (1, 1)
    assert TrialRunner().first(odd, RandomSource(1), 1, decisive=lambda r: r is not None) == (None, None)
