import csv
import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from edgereg import cli, config
from edgereg.even import EdgeProduct, colon_graph, colon_ideal_by_even_connections
from edgereg.fixtures import FIXTURE_NAMES, fixture
from edgereg.graph import format_graph, parse_graph
from edgereg.harness import CSV_COLUMNS
from edgereg.monomial import parse_ideal

SCHEMAS = os.path.join(os.path.dirname(__file__), "..", "schemas")


def schema(name):
    with open(os.path.join(SCHEMAS, f"{name}.schema.json")) as fh:
        return json.load(fh)


@pytest.fixture(autouse=True)
def cold_cache():
    # budgets are only checked on real work; each CLI process starts cold
    from edgereg.regularity import _regularity_sqfree_cached

    _regularity_sqfree_cached.cache_clear()


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.edges"
    path.write_text(format_graph(fixture("c4")))
    return str(path)


# -- worked invocations -------------------------------------------------------------------


def test_reg_of_c4_square(capsys, c4_file):
    code, out, _ = run(capsys, "reg", "--graph", c4_file, "--power", "2")
    assert code == 0 and json.loads(out)["reg"] == 4


def test_even_witness(capsys):
    code, out, _ = run(capsys, "even", "--graph", "fixture:g_ex", "--product", "x1-x2", "--pair", "x4,x4")
    assert code == 0 and out == "x4,x1,x2,x4\n"
    code, out, _ = run(capsys, "even", "--graph", "fixture:g_ex", "--product", "x1-x2", "--pair", "x3,y4")
    assert code == 0 and out == "none\n"


def test_nu_of_c5(capsys):
    assert run(capsys, "nu", "--graph", "fixture:c5") == (0, "1\n", "")


def test_check_vwc_exit_codes(capsys):
    assert run(capsys, "check-vwc", "--graph", "fixture:g_b")[:2] == (0, "true\n")
    assert run(capsys, "check-vwc", "--graph", "fixture:nine")[:2] == (1, "false\n")


def test_label_and_swap(capsys):
    code, out, _ = run(capsys, "label", "--graph", "fixture:c4")
    assert code == 0 and len(out.splitlines()) == 2
    code, swapped, _ = run(capsys, "label", "--graph", "fixture:c4", "--swap", "1")
    assert code == 0 and len(swapped.splitlines()) == 2


def test_verify_main_csv(capsys):
    code, out, _ = run(capsys, "verify-main", "--graph", "fixture:c4", "--s-max", "2")
    table = rows(out)
    assert code == 0 and tuple(table[0]) == CSV_COLUMNS
    assert [r[5] for r in table[1:]] == ["2", "4"]
    assert all(r[6] == "true" and r[7] == "" for r in table[1:])


def test_verify_main_rejects_non_vwc(capsys):
    code, _, err = run(capsys, "verify-main", "--graph", "fixture:nine")
    assert code == 2 and "very well-covered" in err


def test_verify_colon_bound(capsys):
    code, out, _ = run(capsys, "verify-colon-bound", "--graph", "fixture:g_ex", "--product", "x1-x2")
    assert code == 0 and "colon-bound" in out
    code, out, _ = run(capsys, "verify-colon-bound", "--graph", "fixture:c4", "--s-max", "1")
    assert code == 0 and len(out.splitlines()) > 4


def test_timing_fills_millis(capsys):
    _, out, _ = run(capsys, "verify-main", "--graph", "fixture:c4", "--s-max", "1", "--timing")
    assert rows(out)[1][7].isdigit()


def test_sweep_fixture_family(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "fixture", "--s-max", "1", "--threads", "1")
    assert code == 0 and "c5-power-observed" in out


# -- errors -------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["nu", "--bogus"],
        ["nu"],
        ["nu", "--graph", "fixture:nope"],
        ["nu", "--graph", "/no/such/file.edges"],
        ["reg", "--graph", "fixture:c4", "--ideal", "x"],
        ["reg", "--graph", "fixture:c4", "--power", "0"],
        ["even", "--graph", "fixture:c4", "--product", "x1-x3", "--pair", "x1,x2"],
        ["even", "--graph", "fixture:c4", "--product", "x1-x2", "--pair", "x1"],
        ["reg", "--graph", "fixture:c4", "--budget", "nonsense=3"],
        ["reg", "--graph", "fixture:c4", "--field", "gf(4)"],
        ["sweep", "--family", "random-graph"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_budget_exit_3(capsys):
    code, _, err = run(capsys, "reg", "--graph", "fixture:c4", "--power", "2", "--budget", "polarized_vars=4")
    assert code == 3 and "polarized_vars" in err
    assert config.budgets().polarized_vars != 4  # restored after the call


def test_verification_failure_exit_1(capsys, tmp_path, monkeypatch):
    from edgereg import harness

    real = harness.induced_matching_number
    monkeypatch.setattr(harness, "induced_matching_number", lambda g: real(g) + 1)
    code, out, err = run(
        capsys, "sweep", "--family", "fixture", "--statements", "main", "--s-max", "1",
        "--threads", "1", "--fixture-dir", str(tmp_path),
    )
    assert code == 1 and "false" in out and "regression fixture" in err
    assert (tmp_path / "regression-main-formula.json").exists()


# -- JSON schemas -----------------------------------------------------------------------------


@pytest.mark.parametrize(
    "name, argv",
    [
        ("nu", ["nu", "--graph", "fixture:g_ex"]),
        ("check_vwc", ["check-vwc", "--graph", "fixture:g_b"]),
        ("check_vwc", ["check-vwc", "--graph", "fixture:nine"]),
        ("label", ["label", "--graph", "fixture:g_ex"]),
        ("colon", ["colon", "--graph", "fixture:g_ex", "--product", "x1-x2"]),
        ("even", ["even", "--graph", "fixture:g_ex", "--product", "x1-x2", "--pair", "y1,y2"]),
        ("even", ["even", "--graph", "fixture:c4", "--product", "x1-x2", "--pair", "x1,x1"]),
        ("regularity_report", ["reg", "--graph", "fixture:c5", "--power", "2"]),
        ("regularity_report", ["reg", "--graph", "fixture:c4", "--method", "lcm-lattice"]),
        ("verification_records", ["verify-main", "--graph", "fixture:g_b", "--s-max", "2"]),
        ("verification_records", ["verify-colon-bound", "--graph", "fixture:c4", "--s-max", "2"]),
    ],
)
def test_json_output_matches_schema(capsys, name, argv):
    _, out, _ = run(capsys, *argv, "--json")
    jsonschema.validate(json.loads(out), schema(name))


# -- round trips ------------------------------------------------------------------------------


def test_emitted_colon_ideal_and_graph_round_trip(capsys):
    g = fixture("g_ex")
    prod = EdgeProduct.parse(g, "x1-x2")
    _, text, _ = run(capsys, "colon", "--graph", "fixture:g_ex", "--product", "x1-x2")
    colon = colon_ideal_by_even_connections(prod)
    assert parse_ideal(text, colon.ring_vars) == colon
    _, text, _ = run(capsys, "colon", "--graph", "fixture:g_ex", "--product", "x1-x2", "--gprime")
    assert parse_graph(text) == colon_graph(prod).gprime


def test_fixtures_command_round_trips(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures", "--out-dir", str(tmp_path))
    assert code == 0 and len(out.splitlines()) == len(FIXTURE_NAMES)
    for name in FIXTURE_NAMES:
        assert parse_graph((tmp_path / f"{name}.edges").read_text()) == fixture(name)


def test_reg_from_ideal_file(capsys, tmp_path):
    path = tmp_path / "i.ideal"
    path.write_text("a^2*b\nb*c\n")
    code, out, _ = run(capsys, "reg", "--ideal", str(path))
    assert code == 0 and json.loads(out)["reg"] == 3


# -- output files -------------------------------------------------------------------------------


def test_out_writes_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "reg", "--graph", "fixture:c4", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["reg"] == 2


def test_interrupt_leaves_no_partial_file(capsys, tmp_path, monkeypatch):
    target = tmp_path / "r.csv"

    def boom(*a, **k):
        raise KeyboardInterrupt

    monkeypatch.setattr(cli, "verify_main_theorem", boom)
    code, _, _ = run(capsys, "verify-main", "--graph", "fixture:c4", "--out", str(target))
    assert code == 130
    assert list(tmp_path.iterdir()) == []


def test_existing_output_survives_failed_run(capsys, tmp_path):
    target = tmp_path / "r.json"
    target.write_text("old\n")
    code, _, _ = run(capsys, "reg", "--graph", "fixture:c4", "--power", "2", "--budget", "polarized_vars=2",
                     "--out", str(target))
    assert code == 3 and target.read_text() == "old\n"


# -- environment and entry point ------------------------------------------------------------


def test_thread_count_does_not_change_bytes(capsys):
    _, one, _ = run(capsys, "sweep", "--family", "exhaustive-vwc", "--h", "2", "--threads", "1")
    _, two, _ = run(capsys, "sweep", "--family", "exhaustive-vwc", "--h", "2", "--threads", "2")
    assert one == two


def _subprocess(argv, **env):
    full = dict(os.environ, **env)
    return subprocess.run([sys.executable, "-m", "edgereg.cli", *argv], capture_output=True, text=True, env=full)


def test_environment_budget_and_flag_override():
    res = _subprocess(["reg", "--graph", "fixture:c4", "--power", "2"], EDGEREG_BUDGET_POLARIZED_VARS="4")
    assert res.returncode == 3 and "polarized_vars" in res.stderr
    res = _subprocess(
        ["reg", "--graph", "fixture:c4", "--power", "2", "--budget", "polarized_vars=24"],
        EDGEREG_BUDGET_POLARIZED_VARS="4",
    )
    assert res.returncode == 0 and json.loads(res.stdout)["reg"] == 4


def test_environment_threads():
    res = _subprocess(["sweep", "--family", "exhaustive-vwc", "--h", "2"], EDGEREG_THREADS="2")
    assert res.returncode == 0 and res.stdout.startswith(",".join(CSV_COLUMNS))
