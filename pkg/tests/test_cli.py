"""Command-line frontend: outputs, exit codes, determinism, config."""
import json
import xml.etree.ElementTree as ET

import pytest

from detlab import cli, fredholm, kernels
from detlab.growth import sample_gue


def _run(argv, capsys):
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# Exit codes and error stream


def test_missing_seed_is_usage_error(capsys, monkeypatch):
    monkeypatch.delenv("DETLAB_SEED", raising=False)
    code, out, err = _run(["sample-aztec", "--n", "2", "--a", "1"], capsys)
    assert code == 2
    payload = json.loads(err)
    assert payload["exit"] == 2 and "seed" in payload["error"].lower()
    assert "\n" not in err.strip()


def test_bad_flag_value_is_usage_error(capsys):
    code, _, err = _run(["tw", "--t", "abc"], capsys)
    assert code == 2
    assert json.loads(err)["exit"] == 2


def test_domain_error_maps_to_usage(capsys):
    code, _, err = _run(["tw", "--t", "-20"], capsys)
    assert code == 2


def test_unknown_kernel_is_usage_error(capsys):
    code, _, err = _run(["kernel-eval", "--name", "nope", "--args", "[0]"],
                        capsys)
    assert code == 2
    code, _, err = _run(["kernel-eval", "--name", "airy", "--args", "[0]"],
                        capsys)
    assert code == 2


# ---------------------------------------------------------------------------
# Deterministic evaluators


def test_tw_value_and_determinism(capsys, tmp_path):
    f1, f2 = tmp_path / "a.txt", tmp_path / "b.txt"
    assert cli.run(["tw", "--t", "0", "--out", str(f1)]) == 0
    assert cli.run(["tw", "--t", "0", "--out", str(f2)]) == 0
    assert f1.read_bytes() == f2.read_bytes()
    assert float(f1.read_text()) == pytest.approx(
        fredholm.tracy_widom_cdf(0.0), abs=1e-15)


def test_g_cdf_and_lis_cdf_match_library(capsys):
    code, out, _ = _run(["g-cdf", "--M", "2", "--N", "3", "--q", "0.4",
                         "--t", "2"], capsys)
    assert code == 0
    assert float(out) == pytest.approx(fredholm.g_cdf_exact(2, 3, 0.4, 2))
    code, out, _ = _run(["lis-cdf", "--alpha", "2", "--n", "3"], capsys)
    assert code == 0
    assert float(out) == pytest.approx(fredholm.l_alpha_cdf(2.0, 3))


def test_kernel_eval_airy(capsys):
    code, out, _ = _run(["kernel-eval", "--name", "airy",
                         "--args", "[0, 0.5]"], capsys)
    assert code == 0
    assert float(out) == pytest.approx(kernels.airy_kernel(0.0, 0.5))


def test_rsk_output(capsys):
    code, out, _ = _run(["rsk", "--perm", "3,1,2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload == {"schema": "rsk/1", "perm": [3, 1, 2],
                       "shape": [2, 1], "lis": 2}
    code, _, _ = _run(["rsk", "--perm", "1,1"], capsys)
    assert code == 2


# ---------------------------------------------------------------------------
# Samplers


def test_sample_aztec_svg_rect_count(capsys, tmp_path):
    svg = tmp_path / "out.svg"
    code, out, _ = _run(["sample-aztec", "--n", "2", "--a", "1",
                         "--seed", "7", "--svg", str(svg)], capsys)
    assert code == 0
    tiling = json.loads(out)
    assert tiling["schema"] == "tiling/1"
    root = ET.fromstring(svg.read_text())  # well-formed XML
    rects = [e for e in root if e.tag.endswith("rect")]
    assert len(rects) == 6
    for r in rects:
        cls = r.get("class")
        assert cls in cli.SVG_COLORS
        assert r.get("fill") == cli.SVG_COLORS[cls]


def test_sample_aztec_byte_identical(capsys, tmp_path):
    outs = []
    for name in ("x.json", "y.json"):
        path = tmp_path / name
        svg = tmp_path / (name + ".svg")
        assert cli.run(["sample-aztec", "--n", "3", "--a", "1.5",
                        "--seed", "11", "--out", str(path),
                        "--svg", str(svg), "--paths"]) == 0
        outs.append((path.read_bytes(), svg.read_bytes()))
    assert outs[0] == outs[1]


def test_seed_env_fallback(capsys, monkeypatch):
    code, explicit, _ = _run(["sample-gue", "--N", "3", "--seed", "9"],
                             capsys)
    assert code == 0
    monkeypatch.setenv("DETLAB_SEED", "9")
    code, fallback, _ = _run(["sample-gue", "--N", "3"], capsys)
    assert code == 0
    assert explicit == fallback
    monkeypatch.setenv("DETLAB_SEED", "1.5")
    code, _, err = _run(["sample-gue", "--N", "3"], capsys)
    assert code == 2


def test_sample_gue_formats(capsys):
    code, out, _ = _run(["sample-gue", "--N", "3", "--seed", "4"], capsys)
    payload = json.loads(out)
    assert payload["schema"] == "spectrum/1"
    assert payload["eigenvalues"] == pytest.approx(
        list(sample_gue(3, 4)), abs=1e-15)
    code, out, _ = _run(["sample-gue", "--N", "3", "--seed", "4",
                         "--format", "csv"], capsys)
    lines = out.splitlines()
    assert lines[0] == "index,eigenvalue"
    assert len(lines) == 4
    assert "," in lines[1] and "." in lines[1]  # dot decimal


def test_corner_growth_csv(capsys):
    code, out, _ = _run(["corner-growth", "--M", "2", "--N", "2",
                         "--q", "0.5", "--samples", "5", "--seed", "3",
                         "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,G"
    assert len(lines) == 6


def test_png_height_usage(capsys):
    code, out, _ = _run(["png-height", "--q", "0.25", "--x", "0",
                         "--t", "3", "--seed", "5"], capsys)
    assert code == 0
    assert int(out) >= 0
    code, _, _ = _run(["png-height", "--q", "0.25", "--x", "5",
                       "--t", "3", "--seed", "5"], capsys)
    assert code == 2


# ---------------------------------------------------------------------------
# Config merge


def test_config_supplies_defaults(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 2, "a": 1.0, "seed": 7}))
    code, merged, _ = _run(["--config", str(cfg), "sample-aztec"], capsys)
    assert code == 0
    code, explicit, _ = _run(["sample-aztec", "--n", "2", "--a", "1",
                              "--seed", "7"], capsys)
    assert merged == explicit
    # explicit flags win over the config
    code, overridden, _ = _run(["--config", str(cfg), "sample-aztec",
                                "--seed", "8"], capsys)
    assert code == 0 and overridden != merged


def test_config_rejects_unknown_keys(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"banana": 1}))
    code, _, err = _run(["--config", str(cfg), "tw", "--t", "0"], capsys)
    assert code == 2
    assert "banana" in json.loads(err)["error"]


def test_config_must_be_object(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("[1,2]")
    code, _, _ = _run(["--config", str(cfg), "tw", "--t", "0"], capsys)
    assert code == 2


# ---------------------------------------------------------------------------
# Verify suites


def test_verify_kernel_identities(capsys):
    code, out, err = _run(["verify", "--suite", "kernel-identities"],
                          capsys)
    assert code == 0
    report = json.loads(out.splitlines()[0])
    assert report["verdict"] == "pass"
    assert report["schema"] == "report/1"


def test_verify_unknown_suite(capsys):
    code, _, err = _run(["verify", "--suite", "nope"], capsys)
    assert code == 2
