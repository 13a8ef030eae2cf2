import csv
import io
import json

import numpy as np
import pytest

from conftest import FIG6_BITS, ROW2_BITS
from rfqmst.cli import knee_index, main, read_front_csv
from rfqmst.core import is_spanning_tree
from rfqmst.instance import paper_instance, read_instance
from rfqmst.metrics import nondominated_mask


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eval_reference_tree(capsys):
    code, out, _ = run(capsys, "eval", "--instance", "paper", "--alpha", "0.9", "--beta", "0.4",
                       "--tree", FIG6_BITS)
    assert code == 0
    r = rows(out)[0]
    assert (r["f1"], r["f2"], r["feasible"]) == ("128.560000", "11.940000", "true")


def test_eval_by_edge_labels(capsys):
    code, out, _ = run(capsys, "eval", "--edges", "e12,e17,e26,e34,e45,e49,e58,e79")
    assert code == 0 and rows(out)[0]["genotype_bits"] == FIG6_BITS


def test_eval_single_pair_tree(capsys):
    code, out, _ = run(capsys, "eval", "--alpha", "0.9", "--beta", "0.8", "--tree", ROW2_BITS)
    assert code == 0 and rows(out)[0]["f2"] == "16.440000"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--tree", FIG6_BITS, "--format", "json")
    assert json.loads(out)["f1"] == pytest.approx(128.56)


def test_eval_non_tree(capsys):
    code, _, err = run(capsys, "eval", "--tree", "0" * 18)
    assert code == 2 and "selects 0 edges" in err


def test_eval_cycle_named(capsys):
    code, _, err = run(capsys, "eval", "--edges", "e12,e16,e26,e34,e45,e17,e39,e58")
    assert code == 2 and "closes a cycle" in err


def test_config_errors(capsys):
    assert run(capsys, "eval", "--tree", "0101")[0] == 1
    assert run(capsys, "eval", "--tree", FIG6_BITS, "--alpha", "1.5")[0] == 1
    assert run(capsys, "solve", "bogus")[0] == 1
    assert run(capsys, "experiment", "--algorithms", "nsga2,bogus", "--runs", "1")[0] == 1
    assert run(capsys, "eval", "--instance", "/no/such/file", "--tree", FIG6_BITS)[0] == 1


def test_gen(capsys, tmp_path):
    path = tmp_path / "g.qmst"
    assert run(capsys, "gen", "10", "30", "--seed", "1", "--out", str(path))[0] == 0
    inst = read_instance(path)
    assert inst.edge_count == 30 and len(inst.quads) == 435
    code, out, _ = run(capsys, "gen", "2", "1")
    assert code == 0 and "quads 0" in out
    assert run(capsys, "gen", "9", "100")[0] == 1


def test_exact_outputs(capsys, tmp_path):
    out = tmp_path / "ex"
    code, _, _ = run(capsys, "exact", "--alpha", "0.9", "--beta", "0.4", "--sweep",
                     "--out", str(out))
    assert code == 0
    front = read_front_csv(out / "front.csv")
    assert nondominated_mask(front.points).all()
    assert any(a <= 128.56 and b <= 11.94 for a, b in front.points)
    doc = json.loads((out / "front.json").read_text())
    assert doc["trees"] == 9072 and len(doc["points"]) == len(front)
    sweep = rows((out / "sweep.csv").read_text())
    assert {(r["f1"], r["f2"]) for r in sweep} == {(f"{a:.6f}", f"{b:.6f}") for a, b in front.points}
    paper = paper_instance()
    assert all(is_spanning_tree(paper, g) for g in front.genotypes)


def test_exact_guard(capsys):
    code, _, err = run(capsys, "exact", "--max-trees", "100")
    assert code == 2 and "9072" in err


def test_solve_outputs(capsys, tmp_path):
    out = tmp_path / "s"
    code, _, _ = run(capsys, "solve", "nsga2", "--evals", "400", "--pop", "20", "--runs", "3",
                     "--seed", "4", "--out", str(out))
    assert code == 0
    files = sorted(p.name for p in (out / "fronts").iterdir())
    assert files == ["run_001_seed_4.csv", "run_002_seed_5.csv", "run_003_seed_6.csv"]
    for p in (out / "fronts").iterdir():
        assert nondominated_mask(read_front_csv(p).points).all()
    ind = rows((out / "indicators.csv").read_text())
    assert [r["seed"] for r in ind] == ["4", "5", "6"]
    stats = rows((out / "stats.csv").read_text())
    assert [r["indicator"] for r in stats] == ["HV", "Sp", "GD", "IGD", "E"]


def test_solve_against_exact_reference(capsys):
    code, out, _ = run(capsys, "solve", "mochc", "--evals", "3000", "--runs", "2",
                       "--reference", "exact")
    assert code == 0
    stats = {r["indicator"]: r for r in rows(out)}
    assert float(stats["GD"]["mean"]) >= 0


def test_sensitivity_grid(capsys):
    code, out, _ = run(capsys, "sensitivity")
    assert code == 0
    table = rows(out)
    assert len(table) == 20
    assert [r["beta"] for r in table[:4]] == ["0.100000"] * 4
    assert [r["alpha"] for r in table[:4]] == ["0.200000", "0.400000", "0.600000", "0.800000"]


def test_sensitivity_single_cell(capsys):
    code, out, _ = run(capsys, "sensitivity", "--betas", "0.5", "--alphas", "0.5")
    assert code == 0 and len(rows(out)) == 1


def test_sensitivity_concordance(capsys, tmp_path):
    exp = tmp_path / "exp.csv"
    exp.write_text("alpha,beta,f1,f2\n0.9,0.4,128.56,11.94\n0.9,0.8,129.576,16.44\n")
    code, out, _ = run(capsys, "sensitivity", "--alphas", "0.9", "--betas", "0.4,0.8",
                       "--expected", str(exp))
    assert code == 0
    by_beta = {r["beta"]: r for r in rows(out)}
    assert by_beta["0.400000"]["achievable"] == "true"
    assert by_beta["0.400000"]["front_dominates"] == "true"
    assert by_beta["0.800000"]["achievable"] == "true"


def test_knee():
    pts = np.array([(0, 10), (1, 1), (10, 0)], float)
    assert knee_index(pts) == 1


def test_experiment_single_run(capsys, tmp_path):
    out = tmp_path / "e"
    code, _, _ = run(capsys, "experiment", "--instances", "QMST_6_9:2", "--runs", "1",
                     "--evals", "60", "--pop", "12", "--out", str(out))
    assert code == 0
    for tag in ("a0.9_b0.4", "a0.9_b0.8"):
        stats = rows((out / f"stats_{tag}.csv").read_text())
        assert len(stats) == 10
        assert all(r["sd"] == "0.000000" and r["iqr"] == "0.000000" for r in stats)
        wide = rows((out / f"table_mean_sd_{tag}.csv").read_text())
        assert [r["algorithm"] for r in wide] == ["nsga2", "mochc"]
