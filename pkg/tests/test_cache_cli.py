import json
from pathlib import Path

import pytest

from polycell.cache import Workspace, group_hash
from polycell.cli import main
from polycell.errors import CorruptCache
from polycell.kl import KLTable


@pytest.fixture()
def w237_config(tmp_path):
    cfg = {"name": "w237", "angles": [2, 3, 7], "generators": ["r", "s", "t"]}
    path = tmp_path / "w237.json"
    path.write_text(json.dumps(cfg))
    return path


def run(tmp_path, *argv):
    return main([*argv, "--workspace", str(tmp_path / "ws")])


def test_ball_roundtrip(tmp_path, w237, g237):
    ws = Workspace(tmp_path / "ws")
    ball = g237.ball(5)
    ws.write_ball(w237, g237, ball)
    rows = ws.read_ball_words(w237, 5)
    assert [(e.length, e.word) for e in ball.elements] == rows


def test_kl_roundtrip(tmp_path, w237, g237):
    ws = Workspace(tmp_path / "ws")
    table = KLTable(g237, g237.ball(4))
    ws.write_kl(w237, table)
    rows = ws.read_kl(w237, 4)
    assert rows
    for v_word, w_word, r, p, mu in rows:
        vi = table.ball.index[v_word]
        wi = table.ball.index[w_word]
        assert table.leq_idx(vi, wi)
        assert (table.r_idx(vi, wi) or (0,)) == r
        assert (table.p_idx(vi, wi) or (0,)) == p
        assert table.mu_idx(vi, wi) == mu


def test_fsa_roundtrip_bit_exact(tmp_path, w237, g237):
    from polycell.automata import canonical_fsa

    ws = Workspace(tmp_path / "ws")
    fsa = canonical_fsa(g237)
    path = ws.write_fsa(w237, "canonical", fsa)
    text = path.read_text()
    again = ws.write_fsa(w237, "canonical", ws.read_fsa(w237, "canonical"))
    assert again.read_text() == text


def test_stale_stamp_forces_recompute(tmp_path, w237, g237, monkeypatch):
    ws = Workspace(tmp_path / "ws")
    ball = g237.ball(3)
    ws.write_ball(w237, g237, ball)
    assert ws.is_fresh(w237, ws.ball_name(3), radius=3)
    # different tool version invalidates every stamp
    monkeypatch.setattr("polycell.cache.__version__", "0.0.0-test")
    assert not ws.is_fresh(w237, ws.ball_name(3), radius=3)


def test_corrupt_meta_raises(tmp_path, w237):
    ws = Workspace(tmp_path / "ws")
    path = ws.meta_path(w237)
    path.parent.mkdir(parents=True)
    path.write_text("{not json")
    with pytest.raises(CorruptCache):
        ws.read_meta(w237)


def test_corrupt_ball_raises(tmp_path, w237, g237):
    ws = Workspace(tmp_path / "ws")
    ws.write_ball(w237, g237, g237.ball(3))
    path = ws.group_dir(w237) / ws.ball_name(3)
    path.write_text("5\tzz\t-\t-\n")
    with pytest.raises(CorruptCache):
        ws.read_ball_words(w237, 3)


# --- CLI ------------------------------------------------------------------


def test_cli_group_info(tmp_path, w237_config, capsys):
    assert run(tmp_path, "group", "info", "--group", str(w237_config)) == 0
    info = json.loads(capsys.readouterr().out)
    assert info["dihedral_longest_words"] == ["rt", "rsr", "stststs"]
    assert info["levels"] == [2, 3, 7]


def test_cli_ball_idempotent(tmp_path, w237_config, capsys):
    assert run(tmp_path, "ball", "--group", str(w237_config), "--radius", "5") == 0
    first = capsys.readouterr().out
    assert first.startswith("computed")
    ball_path = Path(first.split()[1])
    original = ball_path.read_bytes()
    assert run(tmp_path, "ball", "--group", str(w237_config), "--radius", "5") == 0
    second = capsys.readouterr().out
    assert second.startswith("cached")
    assert ball_path.read_bytes() == original


def test_cli_fsa_build_stats_equiv(tmp_path, w237_config, capsys):
    assert run(tmp_path, "fsa", "build", "canonical",
               "--group", str(w237_config), "--k", "6") == 0
    out = capsys.readouterr().out
    path = out.split()[1]
    assert run(tmp_path, "fsa", "stats", path,
               "--group", str(w237_config), "--radius", "6", "--k", "6") == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["word_counts"][:3] == [1, 3, 6]
    assert run(tmp_path, "fsa", "equiv", path, "canonical",
               "--group", str(w237_config), "--k", "6") == 0
    assert "equivalent: True" in capsys.readouterr().out


def test_cli_usage_error_is_exit_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_cli_missing_k_validation_is_exit_2(tmp_path, w237_config, capsys):
    # k = 1 cannot pass fellow-traveler validation
    code = run(tmp_path, "fsa", "build", "pattern:rt",
               "--group", str(w237_config), "--k", "1")
    assert code == 2


def test_cli_corrupt_cache_is_exit_2(tmp_path, w237_config, capsys):
    assert run(tmp_path, "kl", "--group", str(w237_config), "--radius", "3") == 0
    capsys.readouterr()
    kl_path = tmp_path / "ws" / "w237" / "kl.r3.tsv"
    kl_path.write_text("garbage line without tabs\n")
    code = run(tmp_path, "verify", "kl", "--group", str(w237_config),
               "--radius", "3", "--oracle-length", "2")
    assert code == 2


def test_cli_planted_disagreement_is_exit_1(tmp_path, w237_config, capsys):
    assert run(tmp_path, "kl", "--group", str(w237_config), "--radius", "3") == 0
    capsys.readouterr()
    kl_path = tmp_path / "ws" / "w237" / "kl.r3.tsv"
    lines = kl_path.read_text().splitlines()
    # flip one polynomial value: well-formed record, wrong mathematics
    v, w, r, p, mu = lines[1].split("\t")
    lines[1] = "\t".join([v, w, r, "7", mu])
    kl_path.write_text("\n".join(lines) + "\n")
    code = run(tmp_path, "verify", "kl", "--group", str(w237_config),
               "--radius", "3", "--oracle-length", "2")
    assert code == 1
    err = capsys.readouterr().err
    assert "disagreement" in err


def test_cli_render_deterministic(tmp_path, w237_config, capsys):
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    for out in (out1, out2):
        assert run(tmp_path, "render", "--group", str(w237_config),
                   "--radius", "4", "--coloring", "twosided",
                   "--out", str(out), "--k", "6") == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_cells_conjectural_report(tmp_path, w237_config, capsys):
    assert run(tmp_path, "cells", "conjectural", "--group", str(w237_config),
               "--radius", "8", "--k", "6") == 0
    report_path = tmp_path / "ws" / "w237" / "reports" / "partition.r8.json"
    report = json.loads(report_path.read_text())
    assert report["exact_partition"] is True
    assert report["k"] == 6
    assert set(report["fsa_files"]) == {"cid", "c0", "c1", "c2", "c3"}
    counts = report["element_counts_by_length"]
    assert counts["cid"] == [1] + [0] * 8
    from polycell.automata import canonical_fsa
    from polycell.fsa import count_words
    from polycell import PolygonGroup, load_presentation

    g = PolygonGroup(load_presentation(str(w237_config)))
    total = [sum(counts[lab][n] for lab in counts) for n in range(9)]
    assert total == g.ball(8).counts
    word_counts = report["word_counts_by_length"]
    word_total = [sum(word_counts[lab][n] for lab in word_counts) for n in range(9)]
    assert word_total == count_words(canonical_fsa(g), 8)


def test_group_hash_differs(w237, w2224):
    assert group_hash(w237) != group_hash(w2224)
