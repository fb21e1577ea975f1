"""Command line round trips, exit codes, and JSON determinism."""

import json

from ttlab.atlas import base_track, s1_moves
from ttlab.cli import main
from ttlab.fileio import dump_sequence, dump_track, parse_document


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_track_validate(capsys):
    code, out, _ = run(capsys, "track", "validate", "atlas:tau")
    assert code == 0
    assert "ok: tau is a valid track" in out
    assert "12 edges, 6 switches, chi = -6, genus = 3" in out


def test_track_info_json(capsys):
    code, out, _ = run(capsys, "track", "info", "atlas:tau", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["genus"] == 3
    assert data["cuspCounts"] == [6, 6]


def test_track_boundaries(capsys):
    code, out, _ = run(capsys, "track", "boundaries", "atlas:tau_prime")
    assert code == 0
    assert "curve 0: b f -i -k g j -h -d e a -c -l" in out
    assert "curve 1: -b -j i k -g -f h l -e -a c d" in out
    assert out.count("cusps at 0 2 4 6 8 10 (6 total)") == 2


def test_track_export_parses_back(capsys):
    code, out, _ = run(capsys, "track", "export", "atlas:tau")
    assert code == 0
    doc = parse_document(out)
    assert doc.tracks["tau"].canonical_key == base_track().canonical_key


def test_track_export_dot(capsys):
    code, out, _ = run(capsys, "track", "export-dot", "atlas:tau")
    assert code == 0
    assert out.startswith('digraph "tau"')


def test_map_check(capsys):
    code, out, _ = run(capsys, "map", "check", "atlas:phi1")
    assert code == 0
    assert "ok" in out and "smooth" in out


def test_map_certify_text(capsys):
    code, out, _ = run(capsys, "map", "certify", "atlas:phi2")
    assert code == 0
    assert "verdict: pA" in out
    assert "dilatation: 2.296630262877" in out


def test_map_certify_expectations(capsys):
    code, *_ = run(capsys, "map", "certify", "atlas:phi2", "--expect", "pA")
    assert code == 0
    code, _, err = run(capsys, "map", "certify", "atlas:phi1",
                       "--expect", "pA")
    assert code == 1
    assert "expected verdict 'pA', got 'reducible'" in err


def test_map_dilatation_json_deterministic(capsys):
    code, out1, _ = run(capsys, "map", "dilatation", "atlas:phi2", "--json")
    assert code == 0
    code, out2, _ = run(capsys, "map", "dilatation", "atlas:phi2", "--json")
    assert out1 == out2
    data = json.loads(out1)
    assert abs(data["value"] - 2.2966302628865) < 1e-9
    assert data["lower"] == "63234029278151/27533395471251"
    assert set(data["weights"]) == set("abcdefghijkl")


def test_map_compose(capsys):
    code, out, _ = run(capsys, "map", "compose",
                       "atlas:alpha", "atlas:phi1", "atlas:t_ig",
                       "--name", "composite")
    assert code == 0
    doc = parse_document(dump_track(base_track()) + "\n"
                         + dump_track(base_track().relabel(
                             {"i": "g", "g": "i"}, name="tau_prime")) + "\n"
                         + out)
    from ttlab.atlas import phi2
    assert doc.maps["composite"].mapping == phi2().mapping


def test_map_boundaries(capsys):
    code, out, _ = run(capsys, "map", "boundaries", "atlas:phi1")
    assert code == 0
    assert "curve 0 -> curve 0, rotation 4, cusp shift 2" in out


def test_seq_parse_and_apply(capsys, tmp_path):
    f = tmp_path / "s1.tt"
    f.write_text(dump_sequence(s1_moves(), name="s1"))
    code, out, _ = run(capsys, "seq", "parse", f"{f}#s1")
    assert code == 0
    assert out.startswith("12 moves: i(b)/t(l);")
    code, out, _ = run(capsys, "seq", "apply", "atlas:tau_initial", str(f),
                       "--json")
    assert code == 0
    data = json.loads(out)
    assert data["moves"] == 12
    # raw composite, before any seed/final identification is chosen
    assert data["composite"]["b"] == "l b d"
    assert data["composite"]["c"] == "a c a"
    assert data["final"]["edges"] == list("abcdefghijkl")


def test_atlas_list(capsys):
    code, out, _ = run(capsys, "atlas", "list")
    assert code == 0
    for name in ("tau", "phi2", "s1", "phi:N"):
        assert name in out
    code, out, _ = run(capsys, "atlas", "list", "--json")
    entries = json.loads(out)
    assert {"tau", "phi2", "t_gi"} <= set(entries)
    assert entries["beta"] == "label involution of tau"


def test_atlas_export(capsys):
    code, out, _ = run(capsys, "atlas", "export", "phi1")
    assert code == 0
    assert "[map phi1]" in out


def test_atlas_phi_psi(capsys):
    code, out, _ = run(capsys, "atlas", "phi", "--n", "7", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["name"] == "phi7"
    assert data["source"] == data["target"] == "tau"
    assert data["images"]["k"] == "e a e a e a d h l a e a e a e"
    code, out, _ = run(capsys, "atlas", "psi", "--n", "2")
    assert code == 0
    assert "[map psi2]" in out


def test_atlas_reconstruct(capsys):
    code, out, _ = run(capsys, "atlas", "reconstruct")
    assert code == 0
    assert "reconstruction matches the stored base track" in out


def test_search_loops_depth_one(capsys):
    code, out, _ = run(capsys, "search", "loops", "atlas:tau", "--depth", "1")
    assert code == 0
    assert "found 0 loop(s) from tau at depth <= 1" in out


def test_search_loops_out_dir(capsys, tmp_path):
    out_dir = tmp_path / "loops"
    code, out, _ = run(capsys, "search", "loops", "atlas:tau_prime",
                       "--depth", "4", "--no-certify",
                       "--out", str(out_dir))
    assert code == 0
    assert "found 80 loop(s)" in out
    assert f"wrote 80 file(s) under {out_dir}" in out
    files = sorted(out_dir.glob("loop-*.tt"))
    assert len(files) == 80
    doc = parse_document(files[0].read_text())
    assert len(doc.sequences) == 1 and len(doc.maps) == 2


def test_exit_code_two_for_bad_input(capsys):
    assert run(capsys, "track", "info", "/does/not/exist.tt")[0] == 2
    assert run(capsys, "atlas", "export", "zeta")[0] == 2
    assert run(capsys, "atlas", "phi", "--n", "4")[0] == 2
    assert run(capsys, "map", "check", "atlas:tau")[0] == 2


def test_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "atlas", "export", "zeta")
    assert code == 2
    assert out == ""
    assert "zeta" in err
