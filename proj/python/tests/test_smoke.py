import math
from fractions import Fraction

import pytest

import memlab


def test_deck_and_matches():
    deck = memlab.generate_deck(5, 9, seed=3)
    assert len(deck) == 10
    assert all(deck.count(v) == 2 for v in deck)
    triples = memlab.matches_of(deck)
    assert len(triples) == 5
    for i, j, v in triples:
        assert deck[i - 1] == deck[j - 1] == v


def test_invalid_deck_raises():
    with pytest.raises(ValueError):
        memlab.matches_of([1, 1, 1, 2])


def test_count_valid_inputs():
    n, R = 3, 5
    expected = math.comb(R, n) * math.factorial(2 * n) // 2**n
    assert memlab.count_valid_inputs(n, R) == expected


def test_play_is_correct_and_deterministic():
    a = memlab.play("multipass", 8, 8, 8, seed=11)
    b = memlab.play("multipass", 8, 8, 8, seed=11)
    assert a == b
    assert a["correct"] == "true"
    assert a["transcript"].startswith("step,event")


def test_adversary_row():
    row = memlab.adversary("multipass", 6, seed=4)
    assert row["lower_bound_ok"] == row["involution_ok"] == row["correct"] == "true"
    assert int(row["queries"]) >= 15
    assert memlab.adversary("guess", 4, seed=4)["correct"] == "false"


def test_y_law_against_direct_count():
    n, r = 6, 5
    law = memlab.y_exact_distribution(n, r)
    for u, p in enumerate(law):
        direct = Fraction(math.comb(n, u) * math.comb(n - u, r - 2 * u) * 2 ** (r - 2 * u), math.comb(2 * n, r))
        assert p == direct
    assert sum(law) == 1
    assert memlab.y_exact_tail(n, r, 1) == 1 - law[0]


def test_y_tail_bound_at_critical_r():
    for t in range(2, 9):
        r = memlab.y_critical_r(1000, t)
        assert memlab.y_tail_bound(1000, r, t) <= math.exp(-t) * (1 + 1e-12)


def test_relent_and_chernoff():
    assert abs(memlab.relent(0.3, 0.3)) < 1e-12
    assert memlab.chernoff_tail(50, 0.6, 0.4) < 1


def test_xy_and_lemma43_rows():
    assert memlab.xy_check(3, 4, 3, "random", seed=2)["ok"] == "true"
    row = memlab.lemma43(8, 8, 4, 2, "multipass-s4")
    assert row["ok"] == "true"
    assert memlab.lemma43_fraction(8, 8, 4, 2, "multipass-s4") <= Fraction(1)


def test_unique_pairs():
    assert memlab.unique_pairs([1, 1, 2, 2], 2) == [(1, 2), (3, 4)]
    assert memlab.unique_pairs_exact(2) == Fraction(3, 4)
    binom_n, binom_2n, bound = memlab.unique_pairs_formulas(2)
    assert binom_2n == pytest.approx(0.75)
    assert binom_n == pytest.approx(0.125)


def test_truncation():
    rep = memlab.truncation_experiment(8, 2, trials=500, seed=5)
    assert rep["ok"]
    assert rep["budget"] == math.floor(10 * rep["expected_T"])


def test_tradeoff_and_replay(tmp_path):
    res = memlab.tradeoff_sweep([8], [1, 2, 4], seeds=3, seed=9)
    assert res["ok"]
    runs = res["runs"]
    assert len(runs) == 9
    path = tmp_path / "runs.csv"
    header = list(runs[0])
    path.write_text(",".join(header) + "\n" + "".join(",".join(r[h] for h in header) + "\n" for r in runs))
    original, regenerated, identical = memlab.replay(str(path), 4)
    assert identical and original == regenerated
