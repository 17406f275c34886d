import numpy as np
import pytest

from utilities.bench import run_bench, scaling_exponent


DIMS = [4, 8, 16, 32, 64]


def test_constant_overhead_is_removed_from_the_exponent():
    times = [5000.0 + 3.0 * d ** 3 for d in DIMS]
    assert scaling_exponent(DIMS, times) == pytest.approx(3.0, abs=0.1)
    plain = np.polyfit(np.log(DIMS), np.log(times), 1)[0]
    assert plain < 2.5


def test_pure_power_law_keeps_its_exponent():
    assert scaling_exponent(DIMS, [2.0 * d ** 4 for d in DIMS]) == pytest.approx(4.0, abs=0.1)


def test_two_dimensions_give_the_plain_slope():
    assert scaling_exponent([2, 4], [10.0, 80.0]) == pytest.approx(3.0)


@pytest.mark.slow
def test_recipe3_scales_one_power_of_d_above_recipe1():
    _, table = run_bench(DIMS, trials=20).split("\n\n")
    exponents = dict(line.split(",") for line in table.splitlines()[1:])
    gap = float(exponents["3"]) - float(exponents["1"])
    assert gap == pytest.approx(1.0, abs=0.3)
