import os
import subprocess
import sys

import pytest

from flowroute.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_to_file_and_stdout(tmp_path, capsys):
    path = tmp_path / "g.txt"
    code, _, _ = run(capsys, "generate", "--family", "er", "--n", "20", "--c", "0.3",
                     "--seed", "4", "-o", str(path))
    assert code == 0
    code, out, _ = run(capsys, "generate", "--family", "er", "--n", "20", "--c", "0.3", "--seed", "4")
    assert out == path.read_text()
    assert "# nodes: 20" in out


def test_tables_dump(capsys):
    code, out, _ = run(capsys, "tables", "--topology", "wide", "--owner", "0", "--jobs", "1")
    assert code == 0
    assert out.splitlines()[0].startswith("0 1 : ")
    code, out, _ = run(capsys, "tables", "--topology", "wide", "--algo", "dijkstra")
    assert code == 0 and ",-," in out


def test_simulate_delivered_and_no_route(tmp_path, capsys):
    code, out, _ = run(capsys, "simulate", "--topology", "wide", "--src", "0", "--dst", "9",
                       "--jobs", "1")
    assert code == 0 and "delivered:" in out
    path = tmp_path / "p.txt"
    path.write_text("0 1\n1 2\n")
    code, out, _ = run(capsys, "simulate", "--topology", str(path), "--src", "0", "--dst", "2",
                       "--fail-link", "1,2", "--jobs", "1")
    assert code == 1
    assert out.splitlines()[0] == "trace: 0 1 0"


def test_simulate_generated_family(capsys):
    code, out, _ = run(capsys, "simulate", "--family", "ws", "--n", "12", "--k", "4", "--p", "0.4",
                       "--seed", "2", "--fail-node", "3", "--src", "0", "--dst", "6", "--jobs", "1")
    assert code == 0


def test_experiment_csv(tmp_path, capsys):
    out_csv = tmp_path / "r.csv"
    pairs = tmp_path / "p.csv"
    argv = ["experiment", "--family", "ba", "--n", "15", "--m", "2", "--seeds", "1,2",
            "--weights", "2,-5", "--jobs", "1", "-o", str(out_csv), "--pairs", str(pairs)]
    assert run(capsys, *argv)[0] == 0
    text = out_csv.read_text()
    assert text.splitlines()[0] == "# flowroute 0.1.0 argv: flowroute " + " ".join(argv)
    assert len(text.splitlines()) == 2 + 3
    assert pairs.read_text().startswith("topology,params,w1,w2,src,dst")
    assert run(capsys, *argv)[0] == 0
    assert out_csv.read_text() == text


def test_experiment_file_and_repeat(capsys):
    code, out, _ = run(capsys, "experiment", "--family", "file", "--topology", "wide", "--jobs", "1")
    assert code == 0 and out.count("\nwide,14,") == 3
    code, out, _ = run(capsys, "experiment", "--family", "er", "--n", "8", "--c", "0.5",
                       "--repeat", "2", "--weights", "5,-1", "--jobs", "1")
    assert code == 0 and "seed=1" in out and "seed=2" in out and "seed=pooled" in out


@pytest.mark.parametrize("argv", [
    ["simulate", "--topology", "wide", "--src", "0", "--dst", "0"],
    ["simulate", "--topology", "wide", "--family", "er", "--src", "0", "--dst", "1"],
    ["tables", "--topology", "wide", "--weights", "banana"],
    ["experiment", "--family", "er", "--n", "10", "--c", "0.5", "--seeds", "1", "--repeat", "2"],
    ["experiment", "--family", "file"],
    ["experiment", "--family", "er", "--c", "0.5"],
    ["experiment", "--family", "er", "--n", "10", "--c", "5", "--seeds", "1"],
    ["generate", "--family", "ws", "--n", "10", "--k", "3", "--p", "0.1"],
    ["nonsense"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_data_errors_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n1 1\n")
    code, _, err = run(capsys, "tables", "--topology", str(bad))
    assert code == 3 and "line 2" in err
    assert run(capsys, "tables", "--topology", "atlantis")[0] == 3
    assert run(capsys, "simulate", "--topology", "wide", "--src", "0", "--dst", "99")[0] == 3
    assert run(capsys, "simulate", "--topology", "wide", "--src", "0", "--dst", "5",
               "--fail-link", "0,13")[0] == 3


def test_failure_leaves_no_partial_output(tmp_path, capsys):
    out_csv = tmp_path / "r.csv"
    code, _, _ = run(capsys, "experiment", "--family", "file", "--topology", "atlantis",
                     "-o", str(out_csv))
    assert code == 3
    assert os.listdir(tmp_path) == []


def test_every_subcommand_has_help(capsys):
    parser = build_parser()
    subs = parser._subparsers._group_actions[0].choices
    for name, sub in subs.items():
        assert run(capsys, name, "--help")[0] == 0
        text = sub.format_help()
        for action in sub._actions:
            for opt in action.option_strings:
                assert opt in text
            assert action.help != "==SUPPRESS=="


def test_version_and_console_script():
    out = subprocess.run([sys.executable, "-m", "flowroute.cli", "--version"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "flowroute 0.1.0"
