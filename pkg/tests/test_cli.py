import io
import json
from pathlib import Path

import pytest

from hhcalc.cli import EXIT_CAP, EXIT_ERROR, EXIT_OK, EXIT_VERIFY, run
from hhcalc.facet_reader import format_complex
from hhcalc.generators import gen_icosahedron, gen_octahedron
from hhcalc.complex import SimplicialComplex

RP2 = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("HHCALC_JOBS", raising=False)
    monkeypatch.delenv("HHCALC_CACHE", raising=False)


def write(path: Path, K: SimplicialComplex) -> Path:
    path.write_text(format_complex(K), encoding="utf-8")
    return path


def test_gen_cycle(capsys):
    assert run(["gen", "cycle", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert set(out.splitlines()) == {"1 2", "2 3", "3 4", "4 5", "1 5"}
    assert out.splitlines() == ["1 2", "2 3", "3 4", "1 5", "4 5"]


def test_gen_header_and_bad_arguments(capsys):
    assert run(["gen", "octahedron", "--header"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("m 6\n")
    assert run(["gen", "cycle"]) == EXIT_ERROR
    assert "takes 1 argument" in capsys.readouterr().err
    assert run(["gen", "cycle", "2"]) == EXIT_ERROR


def test_gen_connected_sum_from_files(tmp_path: Path, capsys):
    octa = write(tmp_path / "octa.facets", gen_octahedron())
    assert run(["gen", "connected-sum", str(octa), str(octa), "--header"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "m 9"
    assert len(lines) == 1 + 14


def test_hh_json_on_the_icosahedron(tmp_path: Path, capsys):
    path = write(tmp_path / "ico.facets", gen_icosahedron())
    assert run(["hh", str(path), "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["hh_total_rank"] == 24
    assert {"k": -4, "l": 5, "dim": 10} in data["hh"]


def test_stdin_gives_the_same_document(tmp_path: Path, capsys, monkeypatch):
    path = write(tmp_path / "octa.facets", gen_octahedron())
    assert run(["hh", str(path), "--format", "json"]) == EXIT_OK
    from_file = capsys.readouterr().out
    monkeypatch.setattr("sys.stdin", io.StringIO(path.read_text(encoding="utf-8")))
    assert run(["hh", "--format", "json"]) == EXIT_OK
    assert capsys.readouterr().out == from_file


def test_worker_count_does_not_change_output(tmp_path: Path, capsys):
    path = write(tmp_path / "ico.facets", gen_icosahedron())
    outputs = []
    for jobs in ("1", "4", "8"):
        assert run(["hh", str(path), "--format", "json", "--jobs", jobs]) == EXIT_OK
        outputs.append(capsys.readouterr().out.encode("utf-8"))
    assert outputs[0] == outputs[1] == outputs[2]
    assert json.loads(outputs[0])["hh_total_rank"] == 24


def test_text_table(tmp_path: Path, capsys):
    path = write(tmp_path / "octa.facets", gen_octahedron())
    assert run(["hh", str(path), "--coeff", "gfp:3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "field    gfp:3" in out
    assert "HH total rank: 8" in out


def test_cap_exit_code(tmp_path: Path, capsys):
    path = write(tmp_path / "ico.facets", gen_icosahedron())
    assert run(["hh", str(path), "--max-m", "10"]) == EXIT_CAP
    assert "enumeration cap" in capsys.readouterr().err


def test_errors_exit_with_one(tmp_path: Path, capsys):
    assert run(["hh", str(tmp_path / "missing.facets")]) == EXIT_ERROR
    bad = tmp_path / "bad.facets"
    bad.write_text("1 x\n", encoding="utf-8")
    assert run(["hh", str(bad)]) == EXIT_ERROR
    assert "positive integers" in capsys.readouterr().err
    path = write(tmp_path / "octa.facets", gen_octahedron())
    assert run(["hh", str(path), "--coeff", "gfp:4"]) == EXIT_ERROR
    assert run(["hh", str(path), "--jobs", "0"]) == EXIT_ERROR


def test_verify_duality(tmp_path: Path, capsys):
    path = write(tmp_path / "ico.facets", gen_icosahedron())
    assert run(["verify", str(path), "--check", "duality"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("duality         pass")


def test_verify_json_on_the_octahedron(tmp_path: Path, capsys):
    path = write(tmp_path / "octa.facets", gen_octahedron())
    assert run(["verify", str(path), "--format", "json"]) == EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    assert [r["check"] for r in reports] == ["duality", "theorem-a", "facet-removal", "neighborliness", "rank2"]


def test_verify_failure_exit_code(tmp_path: Path, capsys):
    path = write(tmp_path / "rp2.facets", SimplicialComplex.from_vertex_lists(RP2))
    assert run(["verify", str(path), "--check", "fields"]) == EXIT_VERIFY
    assert "fail" in capsys.readouterr().out


def test_xml_output_validates(tmp_path: Path, capsys):
    path = write(tmp_path / "octa.facets", gen_octahedron())
    assert run(["hh", str(path), "--format", "xml", "--validate"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("<?xml")


def test_cache_dir_reuse(tmp_path: Path, capsys):
    path = write(tmp_path / "octa.facets", gen_octahedron())
    cache = tmp_path / "cache"
    assert run(["hh", str(path), "--format", "json", "--cache", str(cache)]) == EXIT_OK
    first = capsys.readouterr().out
    assert run(["hh", str(path), "--format", "json", "--cache", str(cache)]) == EXIT_OK
    assert capsys.readouterr().out == first
    assert [p.name for p in cache.iterdir()] == [f"{gen_octahedron().hash}.gf2.cache"]


def test_search_antiprism(capsys):
    assert run(["search", "bicapped-antiprism", "--n", "4", "--h", "1"]) == EXIT_OK
    assert "rank=12" in capsys.readouterr().out


def test_search_emits_exotic_facet_files(tmp_path: Path, capsys):
    path = write(tmp_path / "octa.facets", gen_octahedron())
    out_dir = tmp_path / "exotic"
    assert run(["search", "facet-deletions", str(path), "--emit-exotic", str(out_dir), "--format", "json"]) == EXIT_OK
    lines = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len(lines) == 8 and all(line["rank"] == 6 for line in lines)
    assert len(list(out_dir.glob("*.facets"))) == 8


def test_verify_goes_through_the_cache(tmp_path: Path, capsys):
    path = write(tmp_path / "octa.facets", gen_octahedron())
    cache = tmp_path / "cache"
    assert run(["verify", str(path), "--check", "duality", "--cache", str(cache)]) == EXIT_OK
    first = capsys.readouterr().out
    assert (cache / f"{gen_octahedron().hash}.gf2.cache").exists()
    assert run(["verify", str(path), "--check", "duality", "--cache", str(cache)]) == EXIT_OK
    assert capsys.readouterr().out == first
