import csv
import io
import json

import pytest

from conftest import FIXTURE_CSV
from scholarmap.cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_QUERY_ERROR, main

FIXTURE = str(FIXTURE_CSV)


def test_build_summary(capsys):
    assert main(["build", FIXTURE]) == EXIT_OK
    out = capsys.readouterr().out
    # vocabulary size frozen from an independent recount over the fixture
    assert "10 researchers, vocabulary 196 terms" in out


def test_build_missing_column(tmp_path, capsys):
    rows = list(csv.reader(io.StringIO(FIXTURE_CSV.read_text())))
    header = rows[0]
    idx = header.index("citation_count")
    trimmed = [[c for i, c in enumerate(row) if i != idx] for row in rows]
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(trimmed)
    bad = tmp_path / "bad.csv"
    bad.write_text(buf.getvalue())
    with pytest.raises(SystemExit) as exc:
        main(["build", str(bad)])
    assert exc.value.code == EXIT_INPUT_ERROR
    assert "citation_count" in capsys.readouterr().err


def test_build_empty_file(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(SystemExit) as exc:
        main(["build", str(empty)])
    assert exc.value.code == EXIT_INPUT_ERROR


def test_build_missing_file(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "/nonexistent/path.csv"])
    assert exc.value.code == EXIT_INPUT_ERROR


def test_build_row_error_names_row(tmp_path, capsys):
    bad = tmp_path / "rows.csv"
    bad.write_text(
        "name,scholar_url,most_cited_publications,most_recent_publications,keywords,citation_count,affiliation,photo_url\n"
        'A One,,[],[],k,5,Uni,\n'
        'B Two,,[],[],k,oops,Uni,\n'
    )
    with pytest.raises(SystemExit) as exc:
        main(["build", str(bad)])
    assert exc.value.code == EXIT_INPUT_ERROR
    err = capsys.readouterr().err
    assert "row 2" in err


def test_query_unique_term(capsys):
    assert main(["query", FIXTURE, "zymurgy"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    rank, rid, name, score = lines[0].split("\t")
    assert rank == "1"
    assert rid == "jonas-weber"
    assert name == "Jonas Weber"
    assert 0.0 < float(score) <= 1.0
    assert len(score.split(".")[1]) == 4


def test_query_top_limit(capsys):
    assert main(["query", FIXTURE, "learning", "--top", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3


def test_query_stopwords_exit_2(capsys):
    assert main(["query", FIXTURE, "the and of"]) == EXIT_QUERY_ERROR


def test_query_deterministic(capsys):
    main(["query", FIXTURE, "learning"])
    first = capsys.readouterr().out
    main(["query", FIXTURE, "learning"])
    assert capsys.readouterr().out == first


def test_export_writes_files(tmp_path, capsys):
    out = tmp_path / "static"
    assert main(["export", FIXTURE, "--out", str(out)]) == EXIT_OK
    assert (out / "map.json").is_file()
    assert (out / "researchers.json").is_file()
    assert (out / "queries" / "index.json").is_file()
    doc = json.loads((out / "map.json").read_bytes())
    assert len(doc["points"]) == 10


def test_export_flags_flow_into_params(tmp_path, capsys):
    out = tmp_path / "static"
    main(["export", FIXTURE, "--out", str(out), "--k", "3", "--pubset", "recent", "--seed", "7"])
    doc = json.loads((out / "map.json").read_bytes())
    assert doc["params"] == {"pubset": "recent", "emphasis": 1, "k": 3, "seed": 7}
    assert len(doc["ellipses"]) == 3


def test_bad_k_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", FIXTURE, "--k", "0"])
    assert exc.value.code == EXIT_INPUT_ERROR


def test_serve_bad_port(capsys):
    assert main(["serve", FIXTURE, "--port", "0"]) == EXIT_INPUT_ERROR
    assert "port" in capsys.readouterr().err


def test_dataset_env_var(monkeypatch, capsys):
    monkeypatch.setenv("SCHOLAR_MAP_DATASET", FIXTURE)
    assert main(["build"]) == EXIT_OK
    assert "10 researchers" in capsys.readouterr().out


def test_no_dataset_anywhere(monkeypatch, capsys):
    monkeypatch.delenv("SCHOLAR_MAP_DATASET", raising=False)
    with pytest.raises(SystemExit) as exc:
        main(["build"])
    assert exc.value.code == EXIT_INPUT_ERROR
