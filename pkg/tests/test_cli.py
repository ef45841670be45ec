import json
import subprocess
import sys

import pytest

from wgss import __version__, load_vectors
from wgss.cli import main
from wgss.evaluation import DatasetRecord, write_dataset

from conftest import adversarial_dataset, adversarial_vectors, two_topic_text, two_topic_vectors, write_vec


@pytest.fixture
def vec(tmp_path):
    return str(write_vec(tmp_path / "topics.vec", two_topic_vectors()))


@pytest.fixture
def doc(tmp_path):
    text, _ = two_topic_text()
    path = tmp_path / "doc.txt"
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def dataset(tmp_path):
    records = []
    for i in range(3):
        text, _ = two_topic_text(seed=10 + i)
        records.append(DatasetRecord(f"d{i}", text, (text.split(". ")[0] + ".",)))
    path = tmp_path / "toy.jsonl"
    write_dataset(records, path)
    return str(path)


BASE = ["--lang", "generic", "--sigma", "auto"]


def test_summarize_ok(vec, doc, tmp_path, capsys):
    diag = tmp_path / "diag.json"
    assert main(["summarize", doc, "--embeddings", vec, *BASE, "--diag", str(diag)]) == 0
    out = capsys.readouterr().out
    assert out.strip()
    d = json.loads(diag.read_text(encoding="utf-8"))
    assert d["k"] == 2 and len(d["chosen_indexes"]) == 2 and d["sigma_mode"] == "auto"


def test_summarize_stdin_and_out(vec, doc, tmp_path):
    out = tmp_path / "summary.txt"
    with open(doc, encoding="utf-8") as fh:
        proc = subprocess.run([sys.executable, "-m", "wgss", "summarize", "--embeddings", vec, *BASE,
                               "--out", str(out)], stdin=fh, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == ""
    assert out.read_text(encoding="utf-8").strip()


def test_missing_embeddings_is_usage_error(doc, capsys):
    assert_exit(["summarize", doc], 1)
    assert "usage" in capsys.readouterr().err


def test_ratio_out_of_range(vec, doc, capsys):
    assert_exit(["summarize", doc, "--embeddings", vec, "--ratio", "1.5"], 1)
    assert "ratio" in capsys.readouterr().err


@pytest.mark.parametrize("flags", [["--sigma", "-1"], ["--kernel", "cosine"], ["--lang", "xx"], ["--bogus"]])
def test_bad_flags(vec, doc, flags):
    assert_exit(["summarize", doc, "--embeddings", vec, *flags], 1)


def assert_exit(argv, code):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == code


def test_missing_embedding_file_is_resource_error(doc, tmp_path, capsys):
    assert main(["summarize", doc, "--embeddings", str(tmp_path / "none.vec")]) == 2
    assert "resource" in capsys.readouterr().err


def test_bad_stopword_file_is_resource_error(vec, doc, tmp_path):
    empty = tmp_path / "stop.txt"
    empty.write_text("# nothing\n", encoding="utf-8")
    assert main(["summarize", doc, "--embeddings", vec, "--stopwords", str(empty)]) == 2


def test_empty_document_is_pipeline_error(vec, tmp_path):
    blank = tmp_path / "blank.txt"
    blank.write_text("   \n", encoding="utf-8")
    assert main(["summarize", str(blank), "--embeddings", vec, *BASE]) == 3


def test_evaluate_toy(vec, dataset, tmp_path, capsys):
    report_path, tsv = tmp_path / "report.json", tmp_path / "rows.tsv"
    assert main(["evaluate", "--dataset", dataset, "--embeddings", vec, *BASE,
                 "--out", str(report_path), "--tsv", str(tsv)]) == 0
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert len(report["documents"]) == 3
    assert report["aggregate"]["documents"] == 3
    assert len(tsv.read_text(encoding="utf-8").splitlines()) == 4
    err = capsys.readouterr().err
    assert "rouge1" in err and "[3/3]" in err


def test_evaluate_malformed_line(vec, dataset, tmp_path, capsys):
    path = tmp_path / "bad.jsonl"
    path.write_text(open(dataset, encoding="utf-8").read() + "{broken\n", encoding="utf-8")
    assert main(["evaluate", "--dataset", str(path), "--embeddings", vec, *BASE]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["aggregate"]["malformed_lines"] == 1
    assert len(report["documents"]) == 3


def test_evaluate_jobs_identical(vec, dataset, capsys):
    main(["evaluate", "--dataset", dataset, "--embeddings", vec, *BASE, "--jobs", "1"])
    one = capsys.readouterr().out
    main(["evaluate", "--dataset", dataset, "--embeddings", vec, *BASE, "--jobs", "8"])
    assert capsys.readouterr().out == one


def test_kernel_comparison_on_adversarial_set(tmp_path, capsys):
    vec = str(write_vec(tmp_path / "adv.vec", adversarial_vectors()))
    path = tmp_path / "adv.jsonl"
    write_dataset([DatasetRecord(i, t, tuple(r)) for i, t, r in adversarial_dataset()], path)
    aggs = {}
    for kernel in ("wgss", "average"):
        assert main(["evaluate", "--dataset", str(path), "--embeddings", vec, "--lang", "generic",
                     "--sigma", "1", "--kernel", kernel]) == 0
        aggs[kernel] = json.loads(capsys.readouterr().out)["aggregate"]
    assert aggs["wgss"]["rouge1"]["f1"] >= aggs["average"]["rouge1"]["f1"]


def test_sweep_three_sigmas(vec, dataset, capsys):
    assert main(["sweep-sigma", "--dataset", dataset, "--embeddings", vec, "--lang", "generic",
                 "--sigmas", "0.1", "1", "10"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert [l.split("\t")[0] for l in lines[1:]] == ["0.1", "1", "10"]


def test_sweep_default_grid(vec, dataset, capsys):
    assert main(["sweep-sigma", "--dataset", dataset, "--embeddings", vec, "--lang", "generic",
                 "--points", "5"]) == 0
    rows = capsys.readouterr().out.splitlines()[1:]
    assert len(rows) == 5
    assert rows[0].startswith("1e-12\t") and rows[-1].startswith("10\t")


def test_build_idf(tmp_path, dataset, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    a.write_text("apple banana. apple.", encoding="utf-8")
    b.write_text("banana cherry.", encoding="utf-8")
    out = tmp_path / "idf.tsv"
    assert main(["build-idf", str(a), str(b), "--out", str(out), "--lang", "generic"]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines == ["#docs 2", "apple\t1", "banana\t2", "cherry\t1"]
    out2 = tmp_path / "idf2.tsv"
    assert main(["build-idf", dataset, "--out", str(out2), "--lang", "generic"]) == 0
    assert out2.read_text(encoding="utf-8").startswith("#docs 3\n")


def test_summarize_with_idf(vec, doc, tmp_path, capsys):
    out = tmp_path / "idf.tsv"
    assert main(["build-idf", doc, "--out", str(out), "--lang", "generic"]) == 0
    assert main(["summarize", doc, "--embeddings", vec, *BASE, "--idf", str(out)]) == 0
    assert capsys.readouterr().out.strip()


def test_embed_cache(vec, doc, tmp_path, capsys):
    cache = tmp_path / "topics.cache"
    assert main(["embed-cache", "--embeddings", vec, "--out", str(cache), "--lang", "generic",
                 "--vocab-from", doc]) == 0
    table = load_vectors(cache)
    assert 0 < len(table) <= 24 and table.dimension == 8
    capsys.readouterr()
    assert main(["summarize", doc, "--embeddings", str(cache), *BASE]) == 0
    from_cache = capsys.readouterr().out
    main(["summarize", doc, "--embeddings", vec, *BASE])
    assert capsys.readouterr().out == from_cache


def test_version(capsys):
    assert_exit(["--version"], 0)
    assert capsys.readouterr().out.strip() == f"wgss {__version__}"


def test_all_oov_document_is_pipeline_error(vec, tmp_path):
    path = tmp_path / "oov.txt"
    path.write_text("zebra yak. quokka.", encoding="utf-8")
    assert main(["summarize", str(path), "--embeddings", vec, *BASE]) == 3
