import numpy as np
import pytest

from qpairings.errors import InvalidConfig, KernelDomain, KernelNotPSD
from qpairings.kernels import KernelSpec, load_kernel_file


def test_geometric_validation():
    for bad in (0.0, 1.0, 1.2, -0.3):
        with pytest.raises(InvalidConfig):
            KernelSpec.geometric(bad)
    spec = KernelSpec.geometric(0.5)
    assert spec.value(0) == 1.0
    assert spec.value(3) == 0.125
    assert spec.value(-3) == 0.125


def test_table_validation_and_values():
    with pytest.raises(InvalidConfig):
        KernelSpec.table([])
    with pytest.raises(InvalidConfig):
        KernelSpec.table([0.0, 1.0])
    spec = KernelSpec.table([2.0, 0.5])
    assert spec.value(1) == 0.5
    assert spec.value(-1) == 0.5
    with pytest.raises(KernelDomain):
        spec.value(2)


def test_toeplitz_and_factor_agree():
    spec = KernelSpec.geometric(0.6)
    t = spec.toeplitz(6)
    assert np.allclose(t, t.T)
    factor = spec.factor(6)
    assert np.allclose(factor @ factor.T, t, atol=1e-12)


def test_factor_accepts_singular_psd():
    ones = KernelSpec.table([1.0, 1.0, 1.0])  # rank-one Toeplitz
    factor = ones.factor(3)
    assert np.allclose(factor @ factor.T, np.ones((3, 3)), atol=1e-10)


def test_factor_rejects_indefinite():
    bad = KernelSpec.table([1.0, 2.0])  # eigenvalues -1 and 3
    with pytest.raises(KernelNotPSD):
        bad.factor(2)


def test_table_toeplitz_needs_all_lags():
    spec = KernelSpec.table([1.0, 0.5])
    with pytest.raises(KernelDomain):
        spec.toeplitz(3)


def test_json_and_describe():
    assert KernelSpec.geometric(0.25).to_json_obj() == {"kind": "geometric", "p": 0.25}
    assert KernelSpec.table([1.0, 0.0]).to_json_obj() == {
        "kind": "table",
        "values": [1.0, 0.0],
    }
    assert "geometric" in KernelSpec.geometric(0.25).describe()
    assert "r_max=1" in KernelSpec.table([1.0, 0.0]).describe()


def test_load_kernel_file(tmp_path):
    path = tmp_path / "kernel.txt"
    path.write_text("# comment\n0 1.0\n1 0.5\n2 0.25\n")
    spec = load_kernel_file(path)
    assert spec.values == (1.0, 0.5, 0.25)


def test_load_kernel_file_rejects_bad_rows(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 0.5\n")
    with pytest.raises(InvalidConfig):
        load_kernel_file(path)
    path.write_text("0 1.0\n1\n")
    with pytest.raises(InvalidConfig):
        load_kernel_file(path)
    path.write_text("0 1.0\n1 nan\n")
    with pytest.raises(InvalidConfig):
        load_kernel_file(path)


def test_load_kernel_file_rejects_non_psd(tmp_path):
    path = tmp_path / "npsd.txt"
    path.write_text("0 1.0\n1 2.0\n")
    with pytest.raises(KernelNotPSD):
        load_kernel_file(path)
