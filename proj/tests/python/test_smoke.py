"""Smoke tests for the Python bindings."""

import json
import math

import pytest

import contagionlab as cl


def test_graph_generation_is_deterministic():
    a = cl.gen_gnp_digraph(500, 2.0, seed=11)
    b = cl.gen_gnp_digraph(500, 2.0, seed=11)
    c = cl.gen_gnp_digraph(500, 2.0, seed=12)
    assert a == b
    assert a != c
    assert a.n == 500
    assert 0 < a.edge_count < 2500


def test_graph_roundtrip(tmp_path):
    g = cl.gen_gnp_digraph(200, 2.0, seed=3)
    path = str(tmp_path / "graph.csv")
    g.save_edge_csv(path)
    assert cl.DiGraph.load_edge_csv(path, vertex_count_hint=200) == g


def test_balance_sheet_exact_values():
    bs = cl.BalanceSheet(L="1", C="5/2")
    assert bs.equity == "2/3"
    assert bs.d_star == 1
    assert bs.edge_exposure(2) == "1/2"
    assert bs.is_active(1) and not bs.is_active(2)
    assert cl.equity("1", "3") == "1/2"
    assert cl.d_star("1", "4") == 3
    with pytest.raises(ValueError):
        cl.BalanceSheet(L="1", C="1")


def test_hand_cascade():
    g = cl.DiGraph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    bs = cl.BalanceSheet(L="1", C="5/2")
    tr = cl.run_cascade(g, bs, [0])
    assert tr.terminal_set == [0, 1]
    assert tr.rounds == [[1]]
    assert tr.multi_hit_defaults == []
    single, multi, doubles = cl.classify_hits(tr, g, bs)
    assert single == [1] and multi == [] and doubles == 0
    assert not cl.is_systemic(tr, 0.9, 4)
    parsed = json.loads(tr.to_json())
    assert parsed["terminal_size"] == 2


def test_cascade_matches_brute_force():
    g = cl.gen_gnp_digraph(10, 2.0, seed=5)
    bs = cl.BalanceSheet(L="1", C="4")
    tr = cl.run_cascade(g, bs, [0, 3])
    assert tr.terminal_set == cl.brute_force_terminal_set(g, bs, [0, 3])


def test_single_hit_and_reach():
    g = cl.DiGraph.from_edges(4, [(0, 1), (1, 2), (1, 3), (2, 3)])
    sh = cl.build_single_hit(g, 1)
    assert sh.out_degree(1) == 0  # degree 2 sender dropped entirely
    assert sh.out_degree(2) == 1
    assert sorted(cl.forward_reach(g, [0])) == [0, 1, 2, 3]


def test_analytics_closed_forms():
    assert cl.rho_out(2.0, 1) == pytest.approx(2 * math.exp(-2))
    assert cl.rho_out(2.0, 3) == pytest.approx(10 * math.exp(-2))
    assert cl.poisson_cdf(2.0, 2) == pytest.approx(5 * math.exp(-2))
    assert cl.shock_size(1000, 1.0) == 7
    assert cl.multi_hit_bound(1.0, [10], 10000) == pytest.approx(0.01)

    law = cl.TruncatedOutdegreeLaw(100000, 2.0, 3)
    assert sum(law.pmf(k) for k in range(4)) == pytest.approx(1.0)
    assert law.mean() == pytest.approx(10 * math.exp(-2), rel=1e-3)
    assert cl.gw_total_progeny_pmf([1.0], 5, 100, seed=1) == 5


def test_bowtie_structure():
    g = cl.DiGraph.from_edges(5, [(0, 1), (1, 2), (2, 0), (3, 0), (2, 4)])
    bt = cl.bowtie_extract(g)
    assert bt.largest_scc == [0, 1, 2]
    assert bt.in_set == [0, 1, 2, 3]
    assert bt.out_set == [0, 1, 2, 4]
    labels = cl.scc_decompose(g).component_of
    assert labels[0] == labels[1] == labels[2]
    assert labels[3] != labels[0]


def test_run_trials_determinism():
    cfg = cl.config_from_json(
        json.dumps(
            {
                "n_list": [100],
                "lambda": 2.0,
                "C": "5/2",
                "c_shock": 1.0,
                "epsilon": 0.5,
                "trials": 30,
                "master_seed": 9,
                "mode": "cascade",
            }
        )
    )
    a = cl.run_trials(cfg, workers=1)[0]
    b = cl.run_trials(cfg, workers=2)[0]
    assert (a.systemic_count, a.max_terminal, a.mean_reach) == (
        b.systemic_count,
        b.max_terminal,
        b.mean_reach,
    )
    assert a.ci_lower <= a.p_hat <= a.ci_upper


def test_config_rejects_unknown_keys():
    with pytest.raises(Exception) as exc:
        cl.config_from_json('{"n_list": [10], "lambda": 1.0, "bogus": 1}')
    assert "bogus" in str(exc.value)


def _config(**overrides):
    base = {
        "n_list": [200],
        "lambda": 2.0,
        "C": "5/2",
        "c_shock": 1.0,
        "epsilon": 0.5,
        "trials": 20,
        "master_seed": 13,
        "mode": "cascade",
    }
    base.update(overrides)
    return cl.config_from_json(json.dumps(base))


def test_reach_scaling_experiment():
    report = cl.reach_scaling_experiment(_config(n_list=[200, 400]), workers=2)
    assert [row.n for row in report.rows] == [200, 400]
    assert report.m_hat > 0
    for row in report.rows:
        assert row.max_reach >= row.k_n


def test_bowtie_experiment():
    stats = cl.bowtie_experiment(_config(C="4", n_list=[400], trials=5), workers=2)[0]
    assert stats.seeds == 5
    assert 0 < stats.mean_scc_frac <= stats.mean_in_frac <= 1


def test_identification_experiment_bindings():
    report = cl.identification_experiment(_config(C="4", n_list=[300], trials=40), workers=2)
    assert report.d_star_truncated == 3
    parsed = json.loads(report.to_json())
    assert parsed["graphs_per_arm"] == 40


def test_sweep_to_csv(tmp_path):
    out = str(tmp_path / "sweep.csv")
    cl.run_sweep_to_csv(_config(n_list=[100, 200]), out, workers=2)
    lines = open(out).read().splitlines()
    assert lines[0].startswith("n,lambda,C,")
    assert len(lines) == 3


def test_nonmono_demo():
    assert cl.nonmono_demo() == (2, 1)
    assert cl.nonmono_demo(C="3/2") == (1, 1)
