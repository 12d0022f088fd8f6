import os
import subprocess
import sys

import numpy as np
import pytest

from qeuler import _kernels
from qeuler._kernels import _numpy

numba_impl = pytest.importorskip("qeuler._kernels._numba")

MOD = 5**4


def test_backend_selected():
    expected = "numpy" if os.environ.get("QEULER_DISABLE_NUMBA", "0") not in ("", "0") else "numba"
    assert _kernels.BACKEND == expected


def test_disable_env_var():
    env = dict(os.environ, QEULER_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from qeuler import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


@pytest.mark.parametrize("k, gq", [(1, 1.0), (3, 1.0), (2, 0.5)])
@pytest.mark.parametrize("subtract", [False, True])
def test_bracket_series(k, gq, subtract):
    A = np.array([0.0, 1.0, 3.0])
    c = np.array([1.0, -1.0, 0.0, -1.0, 1.0, 0.0])
    args = (A, 1, 0.6, 3, k, gq, 0.9, 1.0, c, 600, subtract)
    np.testing.assert_allclose(numba_impl.bracket_series(*args), _numpy.bracket_series(*args),
                               rtol=1e-12, atol=1e-12)


def test_integer_kernels_agree():
    rng = np.random.default_rng(1)
    a = rng.integers(0, MOD, 300, dtype=np.int64)
    b = rng.integers(0, MOD, 300, dtype=np.int64)
    tab = np.array([0, 1, -1], dtype=np.int64)
    for name, args in [
        ("alt_char_weights", (90, tab, 6, MOD)),
        ("conv_mod", (a, b, MOD)),
        ("dot_mod", (a, b, MOD)),
        ("pow_table", (a, 3, MOD)),
        ("poly_table", ([1, 2, 3], 4, 50, MOD)),
        ("qpow_table", (6, 7, 50, MOD)),
        ("qbracket_table", (6, 6, 60, 5, 1, MOD * 5, MOD)),
    ]:
        fast = getattr(numba_impl, name)(*args)
        slow = getattr(_numpy, name)(*args)
        assert np.array_equal(np.asarray(fast), np.asarray(slow)), name


def test_conv_mod_large_modulus_no_overflow():
    mod = 3**18
    a = np.full(2000, mod - 1, dtype=np.int64)
    expected = (len(a) * (mod - 1) ** 2) % mod
    assert int(numba_impl.conv_mod(a, a, mod)[len(a) - 1]) == expected
    assert int(_numpy.conv_mod(a, a, mod)[len(a) - 1]) == expected
