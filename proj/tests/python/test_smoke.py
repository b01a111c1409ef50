"""Smoke tests for the python extension: every exposed operation runs and
its headline numbers match the closed forms."""

import json
import math
import os
import subprocess

import numpy as np
import pytest

import entsub


def test_bounds_match_closed_forms():
    assert entsub.s_max([2, 2]) == 1
    assert entsub.s_max([2, 2, 2]) == 4
    assert entsub.segre_degree([3, 3]) == 6
    assert entsub.schmidt_smax(3, 3, 2) == 1
    assert entsub.determinantal_degree(3, 3, 2) == 3
    assert entsub.locc_threshold([2, 2], copies=2) == 5
    assert entsub.min_copies([2, 2, 2], 8) == 3
    report = entsub.threshold_report([2, 2, 2], n=8)
    assert report["s_max"] == 4 and report["min_copies"] == 3
    with pytest.raises(ValueError):
        entsub.s_max([1, 2])


def test_sampling_is_deterministic_and_normalized():
    a = entsub.random_state([2, 3], seed=7)
    b = entsub.random_state([2, 3], seed=7)
    assert np.array_equal(a, b)
    assert a.shape == (6,)
    assert abs(np.linalg.norm(a) - 1.0) < 1e-12

    basis = entsub.random_subspace([2, 2], s=2, seed=3)
    gram = basis.conj().T @ basis
    assert np.max(np.abs(gram - np.eye(2))) < 1e-10

    prod = entsub.random_product_state([2, 2, 2], seed=5)
    amps = np.array([complex(re, im) for re, im in prod["global"]])
    coeffs = entsub.schmidt_coefficients([2, 2, 2], amps, [0])
    assert coeffs[0] == pytest.approx(1.0, abs=1e-12)


def test_product_search_and_counting():
    basis = entsub.random_subspace([2, 2], s=2, seed=11)
    found = entsub.find_product([2, 2], basis, seed=1)
    assert found["verdict"] == "found"

    counted = entsub.count_products([2, 2], basis, seed=1)
    assert counted["count"] == 2 == counted["formula_expected"]
    assert counted["saturated"]

    roots = entsub.pencil_roots([2, 2], basis)
    assert roots["count"] == 2

    empty = entsub.find_product([2, 2], entsub.random_subspace([2, 2], 1, seed=4), seed=2)
    assert empty["verdict"] == "not-found"


def test_low_rank_search():
    basis = entsub.random_subspace([3, 3], s=2, seed=9)
    res = entsub.find_low_rank([3, 3], basis, rank=2, seed=2)
    assert res["verdict"] == "found"
    assert len(res["fixed_points"]) == 3


def test_certify_simulate_roundtrip():
    cert = entsub.certify([2, 2], n=3, seed=11)
    assert cert["valid"]
    predicted = entsub.predicted_success(cert)
    assert math.log10(predicted) == pytest.approx(math.log10(1 / 12), abs=1.0)

    report = entsub.simulate_certificate(cert, trials=100000, seed=3)
    assert report["misidentified_total"] == 0
    assert report["within_3sigma"]

    fail = entsub.certify([2, 2], n=4, seed=11)
    assert fail["verdict"] == "search-failure"
    assert fail["complement_cut_ranks"] == [2, 2]


def test_multicopy_and_verdicts():
    assert entsub.generic_verdict([2, 2], 4) == "expected-indistinguishable"
    assert entsub.generic_verdict([2, 2], 5, copies=2) == "expected-distinguishable"
    cert = entsub.certify([2, 2], n=5, seed=7, copies=2)
    assert cert["valid"]
    assert cert["space"]["dims"] == [2, 2, 2, 2]


def test_in_process_cli():
    code, out, err = entsub.run_cli(["bounds", "--dims", "2,2,2"])
    assert code == 0 and err == ""
    assert json.loads(out)["payload"]["segre_degree"] == 6

    code, _, err = entsub.run_cli(["bounds", "--dims", "0"])
    assert code == 2
    assert json.loads(err)["error"]["type"] == "invalid-input"


def test_cli_binary_matches_in_process_output():
    cli = os.environ.get("ENTSUB_CLI")
    if not cli:
        pytest.skip("ENTSUB_CLI not set")
    proc = subprocess.run(
        [cli, "certify", "--dims", "2,2", "--n", "3", "--seed", "9"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    _, out, _ = entsub.run_cli(["certify", "--dims", "2,2", "--n", "3", "--seed", "9"])
    assert json.loads(proc.stdout)["payload"] == json.loads(out)["payload"]
