import json
import math
import pytest

from tfcalc import verify
from tfcalc.verify import ExperimentConfig, emit, report_csv, run


def cfg(kind, **kw):
    kw.setdefault("seeds", [0, 1])
    kw.setdefault("dilations", [1, 4])
    return ExperimentConfig(kind=kind, **kw)


class TestConfig:
    def test_defaults(self):
        c = ExperimentConfig(kind="identities")
        assert (c.N, c.n, c.L) == (16, 2, 4.0)
        s = ExperimentConfig(kind="weyl")
        assert (s.N, s.n) == (32, 1) and s.params["p"] == "inf"
        assert len(s.seeds) == 25

    def test_roundtrip(self):
        c = cfg("localization", params={"s": 0})
        d = json.loads(json.dumps(c.as_dict()))
        assert ExperimentConfig.from_dict(d) == c

    def test_rejects_unknown(self):
        with pytest.raises(ValueError):
            ExperimentConfig(kind="nope")
        with pytest.raises(ValueError):
            ExperimentConfig.from_dict({"kind": "weyl", "colour": 1})
        with pytest.raises(ValueError):
            ExperimentConfig(kind="weyl", symbol="smooth")

    def test_wrong_runner(self):
        with pytest.raises(ValueError):
            verify.certify_identities(cfg("weyl"))
        with pytest.raises(ValueError):
            verify.sweep_wigner_bound(cfg("weyl"))


class TestIdentities:
    def test_small_run(self):
        rep = run(cfg("identities", seeds=[0, 1, 2]))
        assert rep.passed, rep.failure
        assert len(rep.records) == 3
        for col in verify.IDENTITY_COLUMNS[3:]:
            assert rep.summary[f"max_{col}"] == max(r[col] for r in rep.records)

    def test_zero_symbol_gives_zero_pairings(self):
        rep = run(cfg("identities", symbol="zero", seeds=[3]))
        assert rep.passed
        r = rep.records[0]
        assert r["pairing"] == 0.0
        assert r["weyl_connection"] == 0.0 and r["lemma_weak"] == 0.0 and r["weak_chain"] == 0.0

    def test_linear_case(self):
        rep = run(cfg("identities", n=1, seeds=[0, 1]))
        assert rep.passed and rep.records[0]["pairing"] > 0

    def test_tolerance_violation_fails(self):
        rep = run(cfg("identities", seeds=[0], tolerances={"wigner_conjugation": 0.0,
                                                            "stft_wigner_relation": 0.0}))
        assert not rep.passed and "exceeds" in rep.failure

    def test_refinement_does_not_inflate_residuals(self):
        coarse = run(cfg("identities", N=8, L=2 * math.sqrt(2), n=1, seeds=[0, 1, 2]))
        fine = run(cfg("identities", N=16, L=4.0, n=1, seeds=[0, 1, 2]))
        for col in ("weyl_connection", "lemma_weak", "weak_chain", "wigner_conjugation",
                    "wigner_covariance"):
            a, b = coarse.summary[f"max_{col}"], fine.summary[f"max_{col}"]
            # both sit at round-off; allow the 2x guard plus a round-off floor
            assert b <= 2 * a + 1e-14, col

    def test_aborts_on_memory_error(self, monkeypatch):
        def boom(*a, **k):
            raise MemoryError("no room")
        monkeypatch.setattr(verify, "localization_kernel", boom)
        rep = run(cfg("identities", seeds=[0]))
        assert not rep.passed and rep.failure.startswith("aborted: MemoryError")


class TestSweeps:
    @pytest.mark.parametrize("kind", ["wigner", "weyl", "localization"])
    def test_admissible_runs(self, kind):
        rep = run(cfg(kind))
        assert rep.passed, rep.failure
        assert len(rep.records) == 4
        assert rep.summary["finite"] and rep.summary["dilation_spread"] < 10

    def test_wigner_refusal_names_condition(self):
        rep = run(cfg("wigner", params={"p": 2, "p1": 1, "q": 2}))
        assert not rep.passed and rep.records == []
        assert "uslov1" in rep.failure and rep.summary["refused"]
        assert report_csv(rep).count("\n") == 1

    @pytest.mark.parametrize("kind,params", [
        ("weyl", {"s": -1}),
        ("localization", {"strict_at_equality": True}),
        ("localization", {"r1": 3, "r2": 3}),
    ])
    def test_gate_refuses(self, kind, params):
        rep = run(cfg(kind, params=params))
        assert not rep.passed and not rep.records and rep.failure.startswith("inadmissible")

    def test_weyl_rows_each_gated(self):
        rep = run(cfg("weyl", params={"spaces": [[2, 2, 2, 2], [1, 1, 1, 1]]}))
        assert rep.passed
        assert len(rep.verdict["rows"]) == 2
        bad = run(cfg("weyl", params={"q": 2, "spaces": [[2, 2, 2, 2], [1, 1, 1, 1]]}))
        assert not bad.passed and not bad.records

    @pytest.mark.parametrize("kind", ["weyl", "localization"])
    def test_zero_symbol_zero_ratios(self, kind):
        rep = run(cfg(kind, symbol="zero"))
        assert all(r["ratio"] == 0.0 for r in rep.records)

    def test_unit_bound_applies_only_to_m_inf_1(self):
        assert run(cfg("weyl")).summary["bound"] == 1.05
        rep = run(cfg("weyl", params={"p": 2, "q": 2}))
        assert "bound" not in rep.summary

    def test_tensor_ratio_matches_factor_product(self):
        # for tensor sigma and f, the n=2 ratio is the product of two n=1 ratios
        two = run(cfg("weyl", n=2, N=16, L=4.0, symbol="tensor", seeds=[0], dilations=[1]))
        r2 = two.records[0]["ratio"]
        from tfcalc.grid import Grid
        from tfcalc.modspaces import modulation_norm, phase_modulation_norm
        from tfcalc.operators import weyl_apply
        grid = Grid(1, 16, 4.0)
        sig = verify._random_symbol(cfg("weyl", N=16, L=4.0, symbol="tensor"), 0, grid, 2)
        prod = 1.0
        for j, a in enumerate(sig.factors):
            f = verify._signal(grid, 0, 1, j, scale=verify._dilation_scale(1))
            prod *= modulation_norm(weyl_apply(a, f), 2, 2) / (
                phase_modulation_norm(a, math.inf, 1) * modulation_norm(f, 2, 2))
        assert r2 == pytest.approx(prod, rel=1e-6)

    def test_gaussian_wigner_ratio_hand_value(self):
        # f = g = phi, tuple (2,2,2,2,1,inf): ||W(phi,phi)||_{M^{1,inf}} / ||phi||^2 = 1 / 1
        from tfcalc.grid import Grid, gaussian
        from tfcalc.modspaces import modulation_norm, phase_modulation_norm
        from tfcalc.tf_transforms import wigner
        g = Grid(1, 64, 8.0)
        phi = gaussian(g)
        ratio = phase_modulation_norm(wigner(phi, phi), 1, math.inf) / (
            modulation_norm(phi, 2, 2, weight="bracket_2d") ** 2)
        assert ratio == pytest.approx(1.0, abs=1e-6)


class TestEmit:
    def test_byte_stable(self, tmp_path):
        c = cfg("localization")
        a, b = tmp_path / "a", tmp_path / "b"
        emit(run(c), a)
        emit(run(c), b)
        for ext in (".csv", ".json"):
            assert (a / f"localization{ext}").read_bytes() == \
                (b / f"localization{ext}").read_bytes()
        assert "wall_clock_seconds" in json.loads((a / "localization.timing.json").read_text())

    def test_empty_seed_list(self, tmp_path):
        for kind in verify.KINDS:
            rep = run(cfg(kind, seeds=[]))
            emit(rep, tmp_path)
            text = (tmp_path / f"{kind}.csv").read_text()
            assert text.count("\n") == 1 and text.startswith("seed,")
            assert json.loads((tmp_path / f"{kind}.json").read_text())["summary"]["vacuous"]

    def test_inf_encoded_as_string(self, tmp_path):
        emit(run(cfg("weyl", seeds=[0], dilations=[1])), tmp_path)
        data = json.loads((tmp_path / "weyl.json").read_text())
        assert data["config"]["params"]["p"] == "inf"
        assert "Infinity" not in (tmp_path / "weyl.json").read_text()

    def test_records_reproducible_from_seeds(self):
        a = run(cfg("wigner", seeds=[5]))
        b = run(cfg("wigner", seeds=[4, 5]))
        assert a.records == [r for r in b.records if r["seed"] == 5]
