import json
import os
import subprocess
import sys

from repcorr.chartable import character_table, load_table, tables_equal_up_to_row_order
from repcorr.groups import construct_group

SYM3_REP = "rho=perm:[(1 2), (1 2 3)]"


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "repcorr.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def test_egraph_and_ktheory_json():
    r = run_cli(
        "--group", "symmetric:3",
        "--rep", SYM3_REP,
        "--task", "egraph,ktheory",
        "--format", "json",
    )
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["group"] == "symmetric:3"
    egraph = next(p for p in doc["results"] if p["task"] == "egraph")
    assert egraph["B"] == [[1, 1, 1], [0, 0, 0], [1, 1, 2]]
    assert egraph["vertices"] == [
        {"index": 0, "algebra_dim": 1},
        {"index": 1, "algebra_dim": 1},
        {"index": 2, "algebra_dim": 2},
    ]
    assert len(egraph["edges"]) == sum(sum(row) for row in egraph["B"])
    kt = next(p for p in doc["results"] if p["task"] == "ktheory")
    assert kt["graph_path"]["k0"] == "Z"
    assert kt["graph_path"]["k1"] == "0"
    assert kt["bimodule_path"]["k0"] == "Z"
    assert kt["agree"] is True
    assert kt["sources"] == [1]
    assert kt["simplicity"]["simple"] is False


def test_output_is_deterministic():
    args = (
        "--group", "symmetric:4",
        "--rep", "a=regular",
        "--rep", "b=tensor(mult:[0,1,0,0,1], mult:[0,0,1,0,0])",
        "--task", "table,decompose,egraph,dgraph,ktheory",
        "--format", "json",
    )
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_table_text_roundtrips_through_loader():
    r = run_cli("--group", "dihedral:5", "--task", "table")
    assert r.returncode == 0
    loaded = load_table(r.stdout)
    direct = character_table(construct_group("dihedral:5"))
    assert tables_equal_up_to_row_order(loaded, direct)


def test_module_count_convention_flag():
    r = run_cli(
        "--group", "symmetric:3",
        "--rep", SYM3_REP,
        "--task", "egraph",
        "--convention", "module-count",
        "--format", "json",
    )
    doc = json.loads(r.stdout)
    assert doc["results"][0]["B"] == [[1, 1, 2], [0, 0, 0], [1, 1, 2]]


def test_default_rep_names():
    r = run_cli(
        "--group", "symmetric:3",
        "--rep", "regular",
        "--task", "decompose",
        "--format", "json",
    )
    doc = json.loads(r.stdout)
    assert doc["results"][0]["rep"] == "rep1"
    assert doc["results"][0]["mults"] == [1, 1, 2]


def test_skew_task_free_dual():
    r = run_cli(
        "--rep", "c=zcocycle:[1,1]",
        "--task", "skew",
        "--window", "2",
        "--format", "json",
    )
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)["results"][0]
    assert payload["dual_group"] == "Z^1 (window 2)"
    assert payload["edges_per_vertex"] == 2
    names = [v["name"] for v in payload["vertices"]]
    assert names == ["(-2)", "(-1)", "(0)", "(1)", "(2)"]
    # both edges out of each lattice point move one step up
    for t in range(4):
        assert payload["A"][t + 1][t] == 2
    assert payload["stubs"] == [{"src": 4, "target": "(3)", "count": 2}]
    assert payload["sources"] == [0]


def test_skew_task_finite_dual():
    r = run_cli(
        "--group", "cyclic:2",
        "--rep", "c=cocycle:[1,1]",
        "--task", "skew",
        "--format", "json",
    )
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)["results"][0]
    assert payload["dual_group"] == "Z/2"
    assert payload["A"] == [[0, 2], [2, 0]]
    assert payload["stubs"] == []


def test_skew_task_rejects_character_outside_dual():
    r = run_cli(
        "--group", "cyclic:2",
        "--rep", "c=cocycle:[1,2]",
        "--task", "skew",
    )
    assert r.returncode == 2
    assert "outside dual group" in r.stderr


def test_circle_task_angles_and_freqs():
    r = run_cli(
        "--rep", "a=angles:[1/2, 1/3]",
        "--rep", "f=freqs:[1/2, -theta]",
        "--task", "circle",
        "--format", "json",
    )
    assert r.returncode == 0, r.stderr
    results = json.loads(r.stdout)["results"]
    angles = next(p for p in results if p["kind"] == "angles")
    assert (angles["orbit_group_order"], angles["dense"]) == (6, False)
    freqs = next(p for p in results if p["kind"] == "freqs")
    assert freqs["fills_line"] is True


def test_circle_task_without_group():
    r = run_cli("--rep", "a=angles:[theta]", "--task", "circle", "--format", "json")
    assert r.returncode == 0, r.stderr
    payload = json.loads(r.stdout)["results"][0]
    assert payload["orbit_group_order"] == "infinite"
    assert payload["dense"] is True


def test_dot_format_for_egraph():
    r = run_cli(
        "--group", "symmetric:3",
        "--rep", SYM3_REP,
        "--task", "egraph",
        "--format", "dot",
    )
    assert r.returncode == 0
    assert r.stdout.startswith("digraph egraph {")
    assert 'label="M_2x2"' in r.stdout


def test_dot_format_rejected_for_tableonly():
    r = run_cli("--group", "symmetric:3", "--task", "table", "--format", "dot")
    assert r.returncode == 2
    assert "no dot rendering" in r.stderr


def test_out_directory(tmp_path):
    out = tmp_path / "artifacts"
    r = run_cli(
        "--group", "symmetric:3",
        "--rep", SYM3_REP,
        "--task", "ktheory",
        "--format", "json",
        "--out", str(out),
    )
    assert r.returncode == 0
    path = out / "ktheory_rho.json"
    assert path.exists()
    payload = json.loads(path.read_text())
    assert payload["bimodule_path"]["k0"] == "Z"


def test_export_bundle(tmp_path):
    out = tmp_path / "bundle"
    r = run_cli(
        "--group", "symmetric:3",
        "--rep", SYM3_REP,
        "--task", "export",
        "--out", str(out),
    )
    assert r.returncode == 0
    assert (out / "table.txt").exists()
    assert (out / "egraph_rho.json").exists()
    assert (out / "egraph_rho.dot").exists()
    loaded = load_table((out / "table.txt").read_text())
    assert loaded.group.spec == "symmetric:3"


def test_export_requires_out():
    r = run_cli("--group", "symmetric:3", "--rep", SYM3_REP, "--task", "export")
    assert r.returncode == 2


def test_job_file(tmp_path):
    job = tmp_path / "run.job"
    job.write_text(
        "# sample job\n"
        "group = symmetric:3\n"
        f"rep.rho = {SYM3_REP.split('=', 1)[1]}\n"
        "tasks = ktheory\n"
        "convention = module-count\n"
        "format = json\n"
    )
    r = run_cli("--job", str(job))
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["convention"] == "module-count"
    assert doc["results"][0]["rep"] == "rho"
    # explicit flags win over the job file
    r2 = run_cli("--job", str(job), "--convention", "paper-min")
    assert json.loads(r2.stdout)["convention"] == "paper-min"


def test_job_file_rejects_unknown_keys(tmp_path):
    job = tmp_path / "bad.job"
    job.write_text("group = symmetric:3\nbogus = 1\n")
    r = run_cli("--job", str(job))
    assert r.returncode == 2
    assert "unknown key" in r.stderr


def test_missing_job_file_is_io_error():
    r = run_cli("--job", "/nonexistent/path.job")
    assert r.returncode == 4


def test_bad_specs_exit_2():
    cases = [
        ("--group", "bogus:1", "--task", "table"),
        ("--group", "symmetric:3", "--task", "nonsense"),
        ("--group", "symmetric:3", "--rep", "x=blah", "--task", "decompose"),
        ("--group", "symmetric:3", "--task", "decompose"),  # no reps
        ("--group", "symmetric:3", "--rep", SYM3_REP, "--task", "skew"),  # no cocycle
        # finite duals need a cyclic-factor presentation of the group
        ("--group", "symmetric:3", "--rep", "c=cocycle:[1]", "--task", "skew"),
        ("--rep", "c=zcocycle:[1]", "--task", "skew", "--window", "0"),
        ("--group", "symmetric:3", "--task", "circle"),
    ]
    for case in cases:
        r = run_cli(*case)
        assert r.returncode == 2, (case, r.stderr)


def test_argparse_errors_exit_2():
    r = run_cli("--group", "symmetric:3", "--task", "table", "--format", "yaml")
    assert r.returncode == 2


def test_noncharacter_values_exit_3():
    r = run_cli(
        "--group", "symmetric:3",
        "--rep", "f=char:[0, 1, 0]",
        "--task", "decompose",
    )
    assert r.returncode == 3
    assert "verification failed" in r.stderr


def test_order_cap_env_is_respected():
    r = run_cli(
        "--group", "symmetric:4",
        "--task", "table",
        env_extra={"REPCORR_ORDER_CAP": "10"},
    )
    assert r.returncode == 2
    assert "cap" in r.stderr


def test_missing_task_flag_exits_2():
    r = run_cli("--group", "symmetric:3")
    assert r.returncode == 2
    assert "no tasks" in r.stderr
