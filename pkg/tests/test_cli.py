import json

import pytest

from plaid.cli import main


def run(argv):
    return main(argv)


def load_stripped(path):
    data = json.loads(path.read_text())
    data.pop("timestamp", None)
    data.pop("elapsed_s", None)  # timing varies run to run, like the timestamp
    return data


def test_usage_error_exit_codes(capsys):
    assert run(["tile", "5/3"]) == 2  # not in (0, 1)
    assert run(["tile", "3/5"]) == 2  # odd rational
    assert run(["chain", "4/6"]) == 2  # not reduced
    with pytest.raises(SystemExit) as exc:
        run(["bogus"])
    assert exc.value.code == 2


def test_verify_copy_core_pass(tmp_path, capsys):
    out = tmp_path / "copy.json"
    assert run(["verify", "copy", "7/18", "--json", str(out)]) == 0
    data = load_stripped(out)
    assert data["regime"] == "core" and data["ok"] is True


def test_chain_json_schema(tmp_path):
    out = tmp_path / "chain.json"
    assert run(["chain", "12/29", "--json", str(out)]) == 0
    data = load_stripped(out)
    terms = data["terms"]
    assert [t["kind"] for t in terms] == ["unit", "strong", "strong", "strong", None]
    assert terms[-1] == {"p": 12, "q": 29, "omega": 41, "tau": 12, "sign": 1,
                         "kappa": 0, "kind": None}
    assert all(data["omnibus"][f"s{i}"] for i in range(1, 8))
    assert set(data["omnibus_chain"]) == {"2/5", "5/12", "12/29"}
    assert all(all(v for k, v in st.items())
               for st in data["omnibus_chain"].values())


def test_chain_irrational(tmp_path):
    out = tmp_path / "gold.json"
    assert run(["chain", "--irrational", "quad:(-1,1,2,5)", "--qmax", "250",
                "--json", str(out)]) == 0
    data = load_stripped(out)
    assert data["approximating"][:2] == ["2/3", "8/13"]
    assert all(e["bound_ok"] for e in data["diophantine"]
               if e["bound_ok"] is not None)


def test_chain_cf_target(tmp_path, capsys):
    out = tmp_path / "cf.json"
    # a long golden prefix certifies the walk up to qmax 100
    cf = "cf:[0;" + ",".join("1" * 14) + "]"
    assert run(["chain", "--irrational", cf, "--qmax", "100",
                "--json", str(out)]) == 0
    data = load_stripped(out)
    assert data["approximating"][:2] == ["2/3", "8/13"]
    assert "diophantine" not in data  # exact distances need a quadratic target
    # an insufficient prefix is a usage error, not a wrong answer
    assert run(["chain", "--irrational", "cf:[0;1,1,1]", "--qmax", "100"]) == 2


def test_json_deterministic_modulo_timestamp(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["lines", "5/12", "--json", str(a)])
    run(["lines", "5/12", "--json", str(b)])
    assert load_stripped(a) == load_stripped(b)


def test_svg_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(["render", "tile", "5/18", "--svg", str(a)]) == 0
    assert run(["render", "tile", "5/18", "--svg", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("<svg")


def test_render_copy_overlay(tmp_path):
    out = tmp_path / "copy.svg"
    assert run(["render", "copy", "5/12", "12/29", "--svg", str(out)]) == 0
    assert "polyline" in out.read_text()


def test_tile_json(tmp_path):
    out = tmp_path / "tile.json"
    assert run(["tile", "1/2", "--json", str(out)]) == 0
    data = load_stripped(out)
    assert data["region"] == [0, 3, 0, 3]
    names = {t[2] for t in data["tiles"]}
    assert names <= {"NE", "NS", "NW", "ES", "EW", "SW"}
    assert all(p["closed"] for p in data["polygons"])


def test_polygon_bound_fields(tmp_path):
    out = tmp_path / "poly.json"
    assert run(["polygon", "5/12", "--json", str(out)]) == 0
    data = load_stripped(out)
    assert len(data["anchors"]) == 8


def test_sweep_small(tmp_path):
    out = tmp_path / "sweep.json"
    assert run(["sweep", "--max-omega", "15",
                "--checks", "coherence,box,omnibus", "--json", str(out)]) == 0
    data = load_stripped(out)
    assert data["failures"] == []
    assert data["n_parameters"] == len(data["results"])


def test_sweep_unknown_check():
    assert run(["sweep", "--max-omega", "9", "--checks", "nonsense"]) == 2


def test_sweep_regime_filter(tmp_path):
    out = tmp_path / "core.json"
    assert run(["sweep", "--max-omega", "25", "--checks", "main",
                "--filter", "core", "--json", str(out)]) == 0
    data = load_stripped(out)
    assert 0 < data["n_parameters"]
    from plaid.numtheory import EvenRational, kappa
    for row in data["results"]:
        assert kappa(EvenRational.parse(row["param"])).kappa >= 1


def test_sweep_worker_independence(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(["--workers", "1", "sweep", "--max-omega", "13",
         "--checks", "box", "--json", str(a)])
    run(["--workers", "3", "sweep", "--max-omega", "13",
         "--checks", "box", "--json", str(b)])
    assert load_stripped(a) == load_stripped(b)


def test_align_cli(tmp_path):
    out = tmp_path / "align.json"
    assert run(["align", "2/5", "5/12", "--json", str(out)]) == 0
    data = load_stripped(out)
    assert data["tiles_equal"] and data["matching"]
    assert run(["align", "3/8", "7/18", "--core", "--json", str(out)]) == 0
    assert run(["align", "2/5", "7/18", "--core"]) == 2  # wrong predecessor


def test_pet_cli(tmp_path):
    out = tmp_path / "orbit.json"
    assert run(["pet", "orbit", "5/12", "--square", "0,5",
                "--json", str(out)]) == 0
    data = load_stripped(out)
    assert data["closed"] and data["period"] == 88
    out = tmp_path / "fiber.json"
    assert run(["pet", "fiber", "2/5", "--t", "P+1", "--json", str(out),
                "--svg", str(tmp_path / "fiber.svg")]) == 0
    assert load_stripped(out)["grid_ok"]
