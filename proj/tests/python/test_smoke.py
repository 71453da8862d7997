import json
import math
import os
import subprocess

import pytest

import gasket


def test_harmonic_values():
    h = gasket.harmonic_extend([1.0, 0.0, 0.0], 2)
    assert h("2(1)") == pytest.approx(0.4, abs=1e-12)
    assert h("12(1)") == pytest.approx(0.64, abs=1e-12)


def test_addresses():
    assert gasket.canonical_address("21(1)") == "2(1)"
    assert gasket.compare_addresses("(1)", "2(1)") == -1
    assert gasket.tops_address("1", 2) == "2(1)"
    assert len(gasket.canonical_partition(2)) == gasket.vertex_count(2) == 15
    assert gasket.address_point("(3)") == pytest.approx((0.5, math.sqrt(3) / 2))


def test_function_algebra_and_variation():
    x = gasket.Function.coordinate()
    ind = gasket.Function.cell_indicator("1")
    f = 2.0 + ind
    assert f("2(1)") == 3.0
    assert (x * x)("(2)") == 1.0
    report = gasket.variation(x, "A", 6, 0)
    assert report["verdict"] == "diverging"
    assert report["partial_sums"][-1] == pytest.approx(1.5**6)
    assert gasket.variation(ind, "A", 6, 2)["variation"] == 2.0
    assert gasket.graph_energy(gasket.Function.harmonic([1.0, 0.0, 0.0]), 5) == pytest.approx(2.0)


def test_dimension():
    lower, upper, degenerate = gasket.box_dimension_estimate(gasket.Function.coordinate(), 4, 8, 0)
    assert not degenerate
    assert abs(lower - gasket.DIM) < 0.08 and abs(upper - gasket.DIM) < 0.08
    assert gasket.theoretical_ceiling("biharmonic") == pytest.approx(math.log(3.6) / math.log(2))


def test_errors_raise():
    with pytest.raises(gasket.GasketError):
        gasket.canonical_address("4(1)")
    with pytest.raises(ValueError):
        gasket.holder_dim_bound(2.0)


@pytest.mark.skipif("GASKET_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_roundtrip():
    cli = os.environ["GASKET_CLI"]
    out = subprocess.run([cli, "variation", "--preset", "coordinate", "--n-max", "4", "--refine", "0"],
                         capture_output=True, text=True, check=True)
    doc = json.loads(out.stdout)
    assert doc["verdict"] == "diverging"
    bad = subprocess.run([cli, "energy", "--preset", "wave"], capture_output=True, text=True)
    assert bad.returncode != 0
    assert json.loads(bad.stdout)["error"]["code"] == "unknown_preset"
