import json
import random

import pytest

from liekit import catalog
from liekit.exactlin import Matrix, det
from liekit.harness import (
    DecompositionConfig,
    TrialConfig,
    TrialReport,
    counterexample_suite,
    random_commuting_family,
    random_generators,
    random_subalgebra,
    random_unimodular,
    run_decomposition_campaign,
    run_lemma1_campaign,
    run_theorem_campaign,
    worker_count,
)
from liekit.liealg import is_closed, subalgebra_closure
from liekit.spectra import joint_decomposition


def test_config_invariants():
    for bad in [dict(trials=0), dict(max_generators=0), dict(coefficient_bound=0)]:
        with pytest.raises(ValueError):
            TrialConfig("sl(2)", 0, **bad)
    with pytest.raises(ValueError):
        DecompositionConfig(0, families=0)


def test_random_subalgebra_examples():
    sl2 = catalog.make("sl", 2).algebra
    e, f, h = [tuple(int(i == j) for j in range(3)) for i in range(3)]
    line = subalgebra_closure(sl2, [tuple(a + b for a, b in zip(e, f))])
    assert line.dim == 1
    assert subalgebra_closure(sl2, [e, f]).dim == 3
    assert subalgebra_closure(sl2, [(0, 0, 0)]).dim == 0


def test_random_subalgebra_deterministic_and_closed():
    g = catalog.make("sl", 3).algebra
    for s in range(30):
        a = random_subalgebra(g, random.Random(s))
        b = random_subalgebra(g, random.Random(s))
        assert a.carrier == b.carrier
        assert is_closed(g, a.carrier)


def test_random_generators_respect_bounds():
    rng = random.Random(5)
    for _ in range(100):
        gens = random_generators(6, rng, 3, 2)
        assert 1 <= len(gens) <= 3
        assert all(len(v) == 6 and all(-2 <= x <= 2 for x in v) for v in gens)


def test_sl2_campaign_example():
    report = run_theorem_campaign(TrialConfig("sl(2)", 11, trials=300))
    assert report.ok
    assert report.nondegenerate_hits > 0
    assert report.total == 300
    assert report.total == report.nondegenerate_hits + report.degenerate_skipped
    assert report.nondegenerate_hits == report.reductive_confirmed


def test_abelian_campaign_all_degenerate_but_trivial():
    report = run_theorem_campaign(TrialConfig("abelian(3)", 3, trials=200))
    assert report.ok
    assert set(report.hit_dims) <= {0}
    assert report.degenerate_skipped == report.total - report.hit_dims.get(0, 0)


def test_campaign_determinism_and_roundtrip():
    config = TrialConfig("gl(2)", 4, trials=60)
    a = run_theorem_campaign(config, workers=1)
    b = run_theorem_campaign(config, workers=1)
    assert a.to_json(include_wall_time=False) == b.to_json(include_wall_time=False)
    single = run_theorem_campaign(TrialConfig("gl(2)", 4, trials=1))
    assert single.to_json(False) == run_theorem_campaign(TrialConfig("gl(2)", 4, trials=1)).to_json(False)
    back = TrialReport.from_document(json.loads(a.to_json()))
    assert back == a


def test_campaign_independent_of_worker_count():
    config = TrialConfig("so(3)", 9, trials=80)
    serial = run_theorem_campaign(config, workers=1)
    parallel = run_theorem_campaign(config, workers=2)
    assert serial.to_json(False) == parallel.to_json(False)


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("LIE_KIT_THREADS", "1")
    assert worker_count() == 1
    monkeypatch.setenv("LIE_KIT_THREADS", "junk")
    assert worker_count() >= 1


def test_center_descent_campaign_examples():
    report = run_lemma1_campaign(["gl(2)", "heisenberg(3)", "sl(2)"], seed=0, attempts=50)
    assert report["ok"]
    gl2, heis, sl2 = report["records"]
    assert gl2["center_dim"] == 1 and gl2["quotient_dim"] == 3
    assert heis["center_dim"] == 1 and heis["descent_holds"]
    assert sl2["center_dim"] == 0


def test_decomposition_polynomials_in_diagonal():
    M = Matrix.diag(1, 2, 2, 5)
    family = [M, M @ M - M.scale(3), Matrix.identity(4).scale(2) + M.scale(-1)]
    jd = joint_decomposition(family)
    assert jd.block_dims() == [1, 2, 1]
    assert joint_decomposition([Matrix.identity(3)]).block_dims() == [3]


def test_random_families_commute():
    rng = random.Random(0)
    for _ in range(40):
        fam = random_commuting_family(rng.randint(1, 5), rng)
        for A in fam:
            for B in fam:
                assert A @ B == B @ A


def test_random_unimodular():
    rng = random.Random(1)
    for n in range(1, 6):
        assert abs(det(random_unimodular(n, rng))) == 1


def test_decomposition_campaign_deterministic():
    config = DecompositionConfig(seed=3, families=15, max_dim=4, independence_trials=5)
    a = run_decomposition_campaign(config)
    b = run_decomposition_campaign(config)
    assert a["ok"]
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b


def test_counterexample_suite():
    report = counterexample_suite()
    assert report["ok"]
    got = {r["case"]: (r["nondegenerate"], r["reductive"]) for r in report["records"]}
    assert got["borel span{h, e} in sl(2)"] == (False, False)
    assert got["line span{e} in sl(2)"] == (False, True)
    assert got["Cartan subalgebra of sl(3)"] == (True, True)
    assert got["sl(2) in the top-left block of gl(3)"] == (True, True)
    borel = report["records"][0]
    # canonical basis (e, h); the same form as [[8, 0], [0, 0]] in the order (h, e)
    assert borel["restricted_gram"] == [["0", "0"], ["0", "8"]]
