import json
import os
import subprocess

import pytest

import sbox_forge as sf


def test_map_params_and_step():
    p = sf.MapParams(0.25, 1.0, 1e6, sf.MapMode.EQ1)
    assert p.mode == sf.MapMode.EQ1
    assert sf.step(0.25, p) == pytest.approx(0.8312087190548136, abs=1e-15)
    with pytest.raises(ValueError):
        sf.MapParams(1.5, 1.0, 1e6)


def test_trajectory_stays_in_unit_interval():
    xs = sf.trajectory(sf.MapParams(0.33, 1.0, 1e6), 1000)
    assert len(xs) == 1000
    assert all(0.0 <= x < 1.0 for x in xs)


def test_generate_refined_is_a_permutation_without_fixed_points():
    key = sf.MapParams(0.3141, 1.5, 1e6)
    table = sf.generate(key)
    assert sorted(table) == list(range(256))
    assert sf.fixed_points(table) == []
    assert sf.generate(key) == table


def test_generation_stall_is_reported():
    with pytest.raises(sf.GenerationStalled):
        sf.generate_initial(sf.MapParams(0.3, 1.2, 100.0), max_iterations=5000)


def test_report_of_published_table():
    report = sf.full_report(sf.paper_final_sbox())
    assert report["bijective"]
    assert report["lap"]["exact"] == "36/256"
    assert report["bic_sac_avg"]["value"] == pytest.approx(0.5066, abs=5e-4)


def test_aes_reference_values():
    aes = sf.aes_sbox()
    assert sf.nonlinearity(aes) == ([112] * 8, 112)
    assert sf.differential_uniformity(aes) == 4


def test_hex_round_trip():
    table = sf.paper_final_sbox()
    assert sf.parse_hex(sf.to_hex(table)) == table
    with pytest.raises(sf.MalformedInput):
        sf.parse_hex("00 01")


@pytest.mark.skipif("SBOX_FORGE_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_matches_module(tmp_path):
    out = tmp_path / "final.json"
    cli = os.environ["SBOX_FORGE_CLI"]
    subprocess.run([cli, "fixtures", "--name", "final", "--format", "json", "--out", str(out)], check=True)
    analyzed = subprocess.run([cli, "analyze", "--in", str(out)], check=True, capture_output=True, text=True)
    assert json.loads(analyzed.stdout) == sf.full_report(sf.paper_final_sbox())
