import pytest

from quateis.arith import kummer_valuation
from quateis.verify import SUITES, kummer_bound, kummer_level, run_suite, suite_kummer

from test_cli import run

# Minimum of kummer_valuation(k, k2, p) over 2 <= k < k2 <= 200, grouped by
# (level m, whether k = 0 mod (p - 1)).  Recorded from an exhaustive sweep.
FROZEN_MINIMA = {
    3: {(1, True): -5, (2, True): -5, (3, True): -5, (4, True): -5, (5, True): -1},
    5: {(1, False): 1, (1, True): -3, (2, False): 2, (2, True): -3, (3, False): 3, (3, True): -3},
}


@pytest.mark.parametrize("p", [3, 5])
def test_kummer_minima_frozen(p):
    mins = {}
    for k in range(2, 201, 2):
        for k2 in range(k + 2, 201, 2):
            m = kummer_level(k, k2, p)
            if m:
                key = (m, k % (p - 1) == 0)
                mins[key] = min(mins.get(key, 10**9), kummer_valuation(k, k2, p))
    assert mins == FROZEN_MINIMA[p]


def test_kummer_level():
    assert kummer_level(6, 10, 5) == 1
    assert kummer_level(4, 58, 3) == 4
    assert kummer_level(4, 6, 5) == 0


def test_sharp_bound_is_attained():
    for p in (3, 5):
        rep = suite_kummer(p, 200, "sharp")
        assert rep["failures"] == 0 and rep["min_slack"] == 0
    # off the pole branch the classical congruence holds with level m
    assert kummer_bound(6, 10, 5) == 1


def test_cli_examples():
    assert run("verify", "kummer", "-p", "5", "--kmax", "100")[0] == 0
    assert run("verify", "divisor", "--nmax", "50")[0] == 0
    assert run("verify", "lemma2", "-n", "1", "-p", "5")[0] == 0


def test_every_suite_is_registered():
    assert set(SUITES) == {"bernoulli", "divisor", "kummer", "lemma2", "coset", "gstar", "leopoldt", "padic"}
    assert run_suite("leopoldt", p=5)["failures"] == 0
    with pytest.raises(KeyError):
        run_suite("nope")
