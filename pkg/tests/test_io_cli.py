import io
import json

import numpy as np
import pytest

from clusterfn import build_graph, clustering_profile
from clusterfn.cli import run_cli
from clusterfn.io import (
    DataError,
    bipartite_summary,
    format_profile_csv,
    parse_bipartite,
    parse_edge_list,
    read_edge_list,
    read_profile_json,
    read_sizes,
    write_edge_list,
    write_profile,
)


def parse(text, **kw):
    return parse_edge_list(io.StringIO(text), **kw)[0]


def test_parse_edge_list_examples():
    g = parse("a b\nb c\n# comment\n\nc,a  # trailing\n")
    assert g.n == 3 and g.num_edges == 3 and list(g.labels) == ["a", "b", "c"]
    g = parse("1 2\n2 1\n1 2\n")
    assert g.num_edges == 1
    g = parse("x\ny z\n")
    assert g.n == 3 and g.degree(0) == 0


def test_parse_edge_list_errors():
    with pytest.raises(DataError, match="line 2: self-loop"):
        parse("a b\nc c\n")
    with pytest.raises(DataError, match="line 1"):
        parse("a b c\n")
    with pytest.raises(DataError):
        parse("# nothing\n")
    assert parse("c c\n", allow_self_loops=True).n == 1


def test_edge_list_round_trip(tmp_path):
    g = parse("u v\nv w\niso\n")
    write_edge_list(g, tmp_path / "g.txt", {"kind": "graph"})
    h = read_edge_list(tmp_path / "g.txt")
    assert list(h.labels) == ["u", "v", "w", "iso"]
    assert np.array_equal(h.edges(), g.edges())


def test_bipartite_read_and_summary():
    inc, _ = parse_bipartite(io.StringIO("v1 x\nv1 y\nv2 x\nv3\n"))
    assert (inc.n, inc.m, inc.total_links) == (3, 2, 3)
    s = bipartite_summary(inc)
    assert s["a"] == {0: 1, 1: 1, 2: 1} and s["b"] == {1: 1, 2: 1}
    inc, _ = parse_bipartite(io.StringIO("v x\nv x\n"))
    assert inc.total_links == 1


def test_read_sizes(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("1 2,3\n# c\n4\n")
    assert read_sizes(p).tolist() == [1, 2, 3, 4]
    p.write_text("1 -2\n")
    with pytest.raises(DataError):
        read_sizes(p)


def test_profile_csv_diamond(diamond):
    text = format_profile_csv(clustering_profile(diamond))
    lines = text.splitlines()
    assert lines[0] == "r,total_pairs,adjacent_pairs,cl,Cl"
    assert lines[2] == "1,4,4,1,0.833333333333"
    assert lines[3].startswith("2,2,1,0.5,0.5")


def test_profile_csv_edgeless_pair():
    text = format_profile_csv(clustering_profile(build_graph(2, [])))
    assert text.splitlines()[1:] == ["0,1,0,0,0"]


def test_profile_json_round_trip_exact(tmp_path, diamond):
    prof = clustering_profile(diamond, metadata={"seed": 3})
    write_profile(prof, tmp_path / "p.json", "json")
    back = read_profile_json(tmp_path / "p.json")
    assert back.cl == prof.cl and back.Cl == prof.Cl and back.C == prof.C
    assert back.histogram == prof.histogram and back.metadata == {"seed": 3}


def run(argv, capsys):
    code = run_cli(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_exit_codes(tmp_path, capsys):
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["gen", "active", "-n", "5"], capsys)[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("a a\n")
    code, _, err = run(["clustfn", str(bad)], capsys)
    assert code == 1 and "self-loop" in err
    code, _, err = run(["gen", "active", "-n", "5", "-m", "3", "--pmf", "5:1"], capsys)
    assert code == 1


def test_cli_predict_t1(capsys):
    code, out, _ = run(["predict", "t1", "--z1", "10", "--z2", "100", "--beta", "1",
                        "-n", "10000", "--format", "json"], capsys)
    rows = {r["quantity"]: r["value"] for r in json.loads(out)["rows"]}
    assert code == 0
    assert rows["Lambda"] == pytest.approx(10) and rows["alpha"] == pytest.approx(0.1)


def test_cli_fit_adjust(tmp_path, capsys):
    p = tmp_path / "s.txt"
    p.write_text(" ".join(["1"] * 100))
    code, out, _ = run(["fit", "adjust-m", "--sizes", str(p), "--target-degree", "1.98"], capsys)
    assert code == 0 and out.strip() == "50"


def test_cli_gen_pipeline(tmp_path, capsys):
    path = tmp_path / "b.txt"
    assert run(["gen", "active", "-n", "50", "-m", "60", "--pmf", "2:0.5,3:0.5",
                "--seed", "9", "-o", str(path)], capsys)[0] == 0
    code, out, _ = run(["clustfn", str(path)], capsys)
    assert code == 0
    head = json.loads(out.splitlines()[0][len("# clusterfn "):])
    assert head["source"]["model"] == "active" and head["source"]["seed"] == 9
    assert out.splitlines()[1] == "r,total_pairs,adjacent_pairs,cl,Cl"
    total = sum(int(line.split(",")[1]) for line in out.splitlines()[2:])
    assert total == 50 * 49 // 2


def test_cli_gen_inhom_clamp_report(capsys):
    code, _, err = run(["gen", "inhom", "-n", "20", "-m", "20", "--pmf1", "1:1",
                        "--pmf2", "30:1", "--clamp-report", "-o", "/dev/null"], capsys)
    assert code == 0 and "clamped cells: 400" in err


def test_cli_sample_and_degree_dist(tmp_path, capsys):
    g = tmp_path / "g.txt"
    write_edge_list(build_graph(4, [(0, 1), (0, 2), (0, 3)]), g, {"kind": "graph"})
    code, out, _ = run(["sample", "cap", str(g), "--cap", "1"], capsys)
    assert code == 0
    assert sorted(line for line in out.splitlines() if not line.startswith("#")) == ["1", "2", "3"]
    code, out, _ = run(["degree-dist", str(g), "--k-max", "3", "--pmf", "1:1", "-n", "4", "-m", "4"], capsys)
    assert code == 0 and out.splitlines()[2].startswith("1,0.75")
    assert run(["degree-dist", str(g)], capsys)[0] == 1
