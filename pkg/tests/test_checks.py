from luecorr import checks


def test_keys_up_to():
    keys = checks.keys_up_to(2)
    assert (1,) in keys and (-1, -1) in keys and (-1, 1) in keys and (2,) in keys
    assert len(keys) == len(set(keys))
    assert all(sum(abs(k) for k in key) <= 2 for key in keys)
    assert len(checks.keys_up_to(2, 1)) == 4


def test_fixtures_load():
    data = checks.load_fixture("hurwitz_tables.json")
    assert len(data["entries"]) == 622


def test_fast_suites():
    for name in ("recursions", "virasoro", "factorization", "hodge"):
        assert checks.SUITES[name]().ok, name


def test_fixture_errata_are_flagged_and_confirmed():
    rep = checks.suite_fixtures(hurwitz=False)
    assert rep.ok
    assert {key for _, key, _ in rep.errata} == {(-2, 2), (-3, 3), (-4, 4), (-3, -2, 2, 2)}
