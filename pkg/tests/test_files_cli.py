from __future__ import annotations

import io
import json

import pytest

from mixedsurf import cli
from mixedsurf.errors import InputParseError, MismatchError
from mixedsurf.files import (load_group, load_group_record, load_surface_record,
                             resolve_word, save_group_file)


def run_cli(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


# ----------------------------------------------------------------------
# group files

def test_load_bundled_group_files(data_dir):
    for name, order in [("g64.json", 64), ("g256a.json", 256),
                        ("g256b.json", 256), ("h768.json", 768),
                        ("toy_z4_group.json", 4)]:
        group, record = load_group(data_dir / name)
        assert group.order == order
        assert record.fingerprint.order == order


def test_group_file_round_trip(tmp_path, d4):
    save_group_file(tmp_path / "d4.json", "d4", "G(8,3)", d4, "test")
    group, record = load_group(tmp_path / "d4.json")
    assert group.order == 8
    assert record.claimed_id == "G(8,3)"
    assert record.provenance == "test"


def test_non_bijective_generator_is_parse_error(tmp_path):
    raw = {
        "name": "bad", "claimed_id": "?", "degree": 3,
        "generators": [[1, 1, 2]],
        "fingerprint": {"order": 1, "element_orders": [[1, 1]], "abelianization": [],
                        "derived_series": [1], "center_order": 1, "class_count": 1},
        "provenance": "test",
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(raw))
    with pytest.raises(InputParseError):
        load_group_record(path)
    code, text = run_cli("group", str(path))
    assert code == cli.EXIT_PARSE


def test_missing_field_is_parse_error(tmp_path):
    path = tmp_path / "missing.json"
    path.write_text(json.dumps({"name": "x"}))
    with pytest.raises(InputParseError):
        load_group_record(path)


def test_tampered_fingerprint_is_mismatch(tmp_path, data_dir):
    raw = json.loads((data_dir / "g64.json").read_text())
    raw["fingerprint"]["order"] = 63
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(raw))
    with pytest.raises(MismatchError):
        load_group(path)
    code, text = run_cli("group", str(path))
    assert code == cli.EXIT_MISMATCH
    assert code != cli.EXIT_PARSE


def test_cmd_group_bundled_files_match(data_dir):
    for name in ("g64.json", "g256b.json", "toy_z4_group.json"):
        code, text = run_cli("group", str(data_dir / name))
        assert code == cli.EXIT_OK
        assert "fingerprint: match" in text


def test_resolve_word_round_trip(data_dir):
    group, _ = load_group(data_dir / "g64.json")
    assert resolve_word(group, "g1*g1") == 0
    assert resolve_word(group, "1") == 0
    assert resolve_word(group, "g5^2") == group.mul(
        resolve_word(group, "g5"), resolve_word(group, "g5"))


# ----------------------------------------------------------------------
# surface files

def test_load_surface_record(data_dir):
    record = load_surface_record(data_dir / "family1.json")
    assert record.cover_type.m == (2,) * 5
    assert record.extra is None
    record2 = load_surface_record(data_dir / "family2.json")
    assert record2.extra is not None and record2.extra.vector is not None
    search = load_surface_record(data_dir / "family2_search.json")
    assert search.extra.vector is None


def test_surface_cmd_family1(data_dir):
    code, text = run_cli("surface", str(data_dir / "family1.json"))
    assert code == cli.EXIT_OK
    assert "g(C) = 9" in text and "chi = 1" in text
    assert "no isolated fixed points = True" in text


def test_surface_cmd_nonfree_reports_witness(data_dir):
    code, text = run_cli("surface", str(data_dir / "family1_nonfree.json"))
    assert code == cli.EXIT_VALIDATION
    assert "witness" in text


def test_surface_cmd_toy(data_dir):
    code, text = run_cli("surface", str(data_dir / "toy_z4.json"))
    assert code == cli.EXIT_VALIDATION
    assert "no isolated fixed points = False" in text


# ----------------------------------------------------------------------
# divisors / cone commands

def test_divisors_cmd_family1_table(data_dir):
    code, text = run_cli("divisors", str(data_dir / "family1.json"))
    assert code == cli.EXIT_OK
    assert "4 orbit divisors" in text
    assert "K.D:" in text


def test_divisors_cmd_family1_record(data_dir):
    code, text = run_cli("divisors", str(data_dir / "family1.json"),
                         "--format", "record")
    assert code == cli.EXIT_OK
    payload = json.loads(text)
    assert len(payload["divisors"]) == 4
    assert all(d["kdot"] == 4 for d in payload["divisors"])


def test_divisors_record_byte_stable_across_parallel(data_dir):
    outs = []
    for width in ("1", "8"):
        code, text = run_cli("--parallel", width, "divisors",
                             str(data_dir / "family1.json"), "--format", "record")
        assert code == cli.EXIT_OK
        outs.append(text.encode())
    assert outs[0] == outs[1]


def test_cone_cmd_family1(data_dir):
    code, text = run_cli("cone", str(data_dir / "family1.json"), "--format", "record")
    assert code == cli.EXIT_OK
    payload = json.loads(text)
    assert payload["verdict"] == "MoriDream_EffEqNefEqSAmp"
    assert len(payload["classes"]) == 2


def test_genvec_search_cmd(data_dir):
    code, text = run_cli("genvec", "search", str(data_dir / "toy_z4_group.json"),
                         "--type", "[0;4,4]")
    assert code == cli.EXIT_OK
    assert "found 2 generating vector(s)" in text


def test_reproduce_family1(data_dir):
    code, text = run_cli("reproduce", "1")
    assert code == cli.EXIT_OK
    assert "[PASS]" in text and "[FAIL]" not in text
    assert "all checks passed" in text


def test_reproduce_harness_rejects_wrong_expectation():
    code, text = run_cli("reproduce", "1", "--expect-divisors", "5")
    assert code == cli.EXIT_MISMATCH
    assert "[FAIL]" in text


def test_exit_codes_are_distinct():
    codes = {cli.EXIT_OK, cli.EXIT_PARSE, cli.EXIT_VALIDATION,
             cli.EXIT_ASSERTION, cli.EXIT_MISMATCH}
    assert len(codes) == 5


def test_load_presentation_record(tmp_path):
    from mixedsurf.files import load_presentation_record
    from mixedsurf.coset import todd_coxeter
    path = tmp_path / "pres.json"
    path.write_text(json.dumps({"generators": ["x", "y"],
                                "relators": ["x^2", "y^8", "x*y*x^-1*y^-5"]}))
    pres = load_presentation_record(path)
    assert todd_coxeter(pres).order == 16
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"generators": ["x"], "relators": ["z^2"]}))
    with pytest.raises(InputParseError):
        load_presentation_record(bad)


def test_invalid_budget_flag_maps_to_validation_exit(data_dir):
    code, text = run_cli("--parallel", "0", "group", str(data_dir / "g64.json"))
    assert code == cli.EXIT_VALIDATION
