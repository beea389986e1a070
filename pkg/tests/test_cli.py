import hashlib
import json
import subprocess
import sys

from syntaxsplice.cli import main

from conftest import write_toy_corpus
from corpusgen import make_corpus


def tree_hash(root):
    """One hash over every file (relative path + bytes) under root."""
    h = hashlib.sha256()
    for p in sorted(root.rglob("*")):
        if p.is_file():
            h.update(str(p.relative_to(root)).encode())
            h.update(p.read_bytes())
    return h.hexdigest()


def test_validate_toy(toy_corpus_dir, capsys):
    assert main(["validate", "--manifest", str(toy_corpus_dir)]) == 0
    err = capsys.readouterr().err
    assert "2 records" in err
    assert "10 substitution tuples" in err


def test_validate_empty(tmp_path, capsys):
    manifest = tmp_path / "empty.jsonl"
    manifest.write_text("")
    assert main(["validate", "--manifest", str(manifest)]) == 0
    assert "0 records" in capsys.readouterr().err


def test_validate_broken_corpus_exits_1(toy_corpus_dir, capsys):
    (toy_corpus_dir.parent / "u_host.melf").unlink()
    assert main(["validate", "--manifest", str(toy_corpus_dir)]) == 1
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_2(tmp_path, capsys):
    assert main(["augment"]) == 2
    assert main(["augment", "--manifest", "m", "--out", str(tmp_path),
                 "--mode", "random"]) == 2  # missing --count
    assert main(["bogus"]) == 2
    assert main([]) == 2
    capsys.readouterr()


def test_augment_exhaustive_toy(toy_corpus_dir, tmp_path, capsys):
    out = tmp_path / "exported"
    assert main(["augment", "--manifest", str(toy_corpus_dir),
                 "--out", str(out), "--mode", "exhaustive"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report == {"n_original": 2, "n_augmented": 10,
                      "total_frames": report["total_frames"]}
    rows = [json.loads(l) for l in
            (out / "manifest.jsonl").read_text().splitlines()]
    assert sum(r["origin"] == "augmented" for r in rows) == 10
    assert sum(r["origin"] == "original" for r in rows) == 2


def test_augment_runs_are_byte_identical(tmp_path, capsys):
    manifest = make_corpus(tmp_path / "corpus", 12, seed=17)
    hashes = []
    for name in ("run_a", "run_b"):
        out = tmp_path / name
        assert main(["augment", "--manifest", str(manifest),
                     "--out", str(out), "--mode", "random",
                     "--count", "50", "--seed", "7"]) == 0
        hashes.append(tree_hash(out))
    capsys.readouterr()
    assert hashes[0] == hashes[1]


def test_augment_policy_flags(toy_corpus_dir, tmp_path, capsys):
    out = tmp_path / "exported"
    assert main(["augment", "--manifest", str(toy_corpus_dir),
                 "--out", str(out), "--mode", "exhaustive",
                 "--min-words", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    # donor-side spans of 2+ words exist but the host side has none
    assert report["n_augmented"] == 0

    out2 = tmp_path / "exported2"
    assert main(["augment", "--manifest", str(toy_corpus_dir),
                 "--out", str(out2), "--mode", "exhaustive",
                 "--labels", "VP,NP"]) == 0
    report2 = json.loads(capsys.readouterr().out)
    assert report2["n_augmented"] == 6  # 2 NP + 1 VP pair per direction


def test_augment_workers_flag_reproduces(tmp_path, capsys):
    manifest = make_corpus(tmp_path / "corpus", 10, seed=23)
    outs = []
    for name, workers in (("w1", "1"), ("w4", "4")):
        out = tmp_path / name
        assert main(["augment", "--manifest", str(manifest),
                     "--out", str(out), "--mode", "random",
                     "--count", "40", "--seed", "3",
                     "--workers", workers]) == 0
        outs.append(tree_hash(out))
    capsys.readouterr()
    assert outs[0] == outs[1]


def test_stats_subcommand(toy_corpus_dir, tmp_path, capsys):
    out = tmp_path / "exported"
    main(["augment", "--manifest", str(toy_corpus_dir),
          "--out", str(out), "--mode", "exhaustive"])
    capsys.readouterr()
    assert main(["stats", "--manifest", str(out / "manifest.jsonl"),
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["inserted"] == {"1": 8, "2": 1, "3": 1}
    assert payload["removed"] == {"1": 8, "2": 1, "3": 1}

    assert main(["stats", "--manifest", str(out / "manifest.jsonl")]) == 0
    text = capsys.readouterr().out
    assert "# inserted (total 10)" in text
    assert "1\t8" in text


def test_score_subcommand(tmp_path, capsys):
    pairs = tmp_path / "pairs.tsv"
    pairs.write_text("u1\the never lied\the never shook\n")
    assert main(["score", "--pairs", str(pairs)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["substitutions"] == 1
    assert payload["reference_length"] == 3
    assert payload["utterances"] == 1


def test_module_invocation(toy_corpus_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "syntaxsplice", "validate",
         "--manifest", str(toy_corpus_dir)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "2 records" in proc.stderr
