import json

import pytest

from pickylab.chartab import table_of
from pickylab.cli import cache_path, load_table, main, resolve, UsageError


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PICKYLAB_CACHE", str(tmp_path / "cache"))
    monkeypatch.chdir(tmp_path)
    return tmp_path / "cache"


def test_resolve_catalog():
    assert resolve("sym:4").group.order == 24
    r = resolve("psl2:7")
    assert r.group.order == 168 and r.group.degree == 8
    assert resolve("file:data/sz8.gens").group.order == 29120
    assert resolve("ctx:j4_hall_fixture.ctx").table_only


@pytest.mark.parametrize("spec", ["sym", "foo:3", "psl2:6", "file:nope.gens", "sym:x"])
def test_resolve_errors(spec):
    with pytest.raises(UsageError):
        resolve(spec)


def test_picky_strong_global_psl27(capsys):
    assert main(["check", "picky", "--group", "psl2:7", "--prime", "7", "--mode", "strong-global"]) == 0
    assert "picky-strong-global [PSL2(7) p=7]: holds" in capsys.readouterr().out


def test_family_check_sz8(capsys):
    assert main(["check", "family", "--family", "sz", "--q", "8"]) == 0
    assert "global: holds; strong(good): holds; strong(bad): fails" in capsys.readouterr().out


def test_lambda_s4(capsys):
    assert main(["lambda", "--group", "sym:4", "--prime", "2"]) == 0
    out = capsys.readouterr().out
    vals = sorted(int(line.split("=")[1]) for line in out.splitlines() if line.startswith("lambda("))
    assert vals == [1, 1, 3]
    assert "casolo [S4 p=2]: holds" in out


def test_cache_hit_and_no_cache(capsys, cache):
    assert main(["table", "--group", "file:data/sz8.gens"]) == 0
    assert "table cache: miss" in capsys.readouterr().out
    assert main(["table", "--group", "file:data/sz8.gens"]) == 0
    assert "table cache: hit" in capsys.readouterr().out
    n = len(list(cache.iterdir()))
    assert main(["table", "--group", "sym:5", "--no-cache"]) == 0
    assert "table cache: off" in capsys.readouterr().out
    assert len(list(cache.iterdir())) == n


def test_poisoned_cache_entry_recomputed(capsys):
    res = resolve("sym:4")
    good, _ = load_table(res)
    path = cache_path(res.canonical, 0)
    text = path.read_text().splitlines()
    i = next(k for k, line in enumerate(text) if line.startswith("chi 3 "))
    text[i] = text[i].replace("| 1", "| 2", 1)
    path.write_text("\n".join(text) + "\n")
    fresh = resolve("sym:4")
    T, status = load_table(fresh)
    assert status == "corrupt"
    assert T.irr == good.irr
    # the entry has been rewritten
    assert load_table(resolve("sym:4"))[1] == "hit"


def test_trust_skips_verification():
    res = resolve("sym:4")
    load_table(res)
    path = cache_path(res.canonical, 0)
    text = path.read_text().splitlines()
    i = next(k for k, line in enumerate(text) if line.startswith("chi 3 "))
    text[i] = text[i].replace("| 1", "| 2", 1)
    path.write_text("\n".join(text) + "\n")
    assert load_table(resolve("sym:4"), trust=True)[1] == "hit"


def test_loaded_table_is_memoized():
    res = resolve("alt:5")
    load_table(res)
    res2 = resolve("alt:5")
    T, status = load_table(res2)
    assert status == "hit" and table_of(res2.group) is T


def test_json_byte_identical(tmp_path):
    args = ["check", "picky", "--group", "alt:5", "--prime", "2"]
    assert main(args + ["--json", "a.json"]) == 0
    assert main(args + ["--json", "b.json", "--no-cache"]) == 0
    a, b = (tmp_path / "a.json").read_bytes(), (tmp_path / "b.json").read_bytes()
    assert a == b
    rep = json.loads(a)
    assert set(rep) == {"version", "spec", "prime", "checks", "determinism"}
    assert rep["determinism"]["seed"] == 0 and rep["determinism"]["dixon_prime"]
    assert all({"name", "target", "verdict", "notes"} <= set(c) for c in rep["checks"])


def test_seed_changes_nothing_observable(tmp_path):
    args = ["table", "--group", "psl2:7", "--no-cache"]
    assert main(args + ["--json", "a.json"]) == 0
    assert main(args + ["--json", "b.json", "--seed", "12345"]) == 0
    a, b = json.loads((tmp_path / "a.json").read_text()), json.loads((tmp_path / "b.json").read_text())
    assert a["checks"] == b["checks"]
    assert b["determinism"]["seed"] == 12345


def test_expected_failure_exits_zero(capsys):
    assert main(["check", "picky", "--group", "file:psu33.gens", "--prime", "3", "--mode", "strong-A"]) == 0
    assert "picky-strong-A [psu33 p=3]: fails" in capsys.readouterr().out


def test_unexpected_verdict_exits_one(monkeypatch):
    import pickylab.cli as cli

    monkeypatch.setitem(cli.EXPECTED, ("picky-A", "A5", 5), "fails")
    assert main(["check", "picky", "--group", "alt:5", "--prime", "5", "--mode", "A"]) == 1


@pytest.mark.parametrize("argv", [
    ["lambda", "--group", "sym:4"],
    ["lambda", "--group", "sym:4", "--prime", "4"],
    ["bogus"],
    ["check", "family", "--family", "sz", "--q", "16"],
    ["lambda", "--group", "ctx:j4_hall_fixture.ctx", "--prime", "5"],
    ["check", "sections", "--group", "sym:4", "--prime", "2", "--class", "2B", "--mode", "thm-4.7"],
])
def test_usage_errors_exit_two(argv):
    assert main(argv) == 2


def test_hall_fixture_table_only(capsys, tmp_path):
    argv = ["check", "extensions", "--mode", "hall-7.2", "--group", "ctx:j4_hall_fixture.ctx", "--class", "35A",
            "--prime", "5,7", "--json", "j4.json"]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert "|Irr_pi'(G)|=30 vs |Irr_pi'(N)|=25" in out
    rep = json.loads((tmp_path / "j4.json").read_text())
    assert rep["determinism"]["mode"] == "fixture"


def test_family_command(capsys, tmp_path):
    assert main(["family", "--family", "psl2", "--q", "7", "--json", "f.json"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("ctx-partial 1")
    assert "class x1 good" in out
    rep = json.loads((tmp_path / "f.json").read_text())
    assert rep["checks"][0]["witness"]["family"] == "psl2"


def test_table_ctx_and_subcommands(capsys):
    assert main(["table", "--group", "ctx:j4_hall_fixture.ctx"]) == 0
    assert "table [J4]: fixture" in capsys.readouterr().out
    assert main(["sub", "--group", "sym:4", "--prime", "2"]) == 0
    assert "sub-dual-route [S4 p=2]: holds" in capsys.readouterr().out
    assert main(["picky", "--group", "sym:4", "--prime", "2"]) == 0
    assert "picky 2-classes: 2B 4A" in capsys.readouterr().out


def test_check_all_small(capsys):
    assert main(["check", "all", "--group", "sym:4", "--prime", "2"]) == 0
    out = capsys.readouterr().out
    for name in ("casolo", "block-vanishing", "irc-syl", "eaton-moreto", "field-8.1"):
        assert f"{name} [S4 p=2]" in out


def test_uniform_sign_reports_both(capsys):
    assert main(["check", "picky", "--group", "psl2:7", "--prime", "7", "--mode", "strong-global",
                 "--uniform-sign"]) == 0
    out = capsys.readouterr().out
    assert "picky-strong-global [PSL2(7) p=7]" in out and "picky-strong-global[per-element-sign]" in out
