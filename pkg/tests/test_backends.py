import random
import subprocess
import sys

import pytest

from diracforge import _matops_py, matops
from diracforge.rationals import ONE, ZERO, rat

try:
    from diracforge import _matops_c
except ImportError:
    _matops_c = None

needs_ext = pytest.mark.skipif(_matops_c is None,
                               reason="compiled kernel not built")


def rand_flat(rng, n, m, density=0.7):
    out = []
    for _ in range(n * m):
        if rng.random() < density:
            out.append(rat(rng.randint(-9, 9), rng.randint(1, 7)))
        else:
            out.append(ZERO)
    return out


def as_rows(flat, n, m):
    return [flat[i * m:(i + 1) * m] for i in range(n)]


def test_backend_name_is_known():
    assert matops.BACKEND_NAME in ("python", "cython")


@needs_ext
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_mul_real_backends_agree(seed):
    rng = random.Random(seed)
    n, m, k = 7, 9, 5
    a = rand_flat(rng, n, m)
    b = rand_flat(rng, m, k)
    assert _matops_c.mul_real(a, b, n, m, k, ZERO) == \
        _matops_py.mul_real(a, b, n, m, k, ZERO)


@needs_ext
@pytest.mark.parametrize("seed", [4, 5])
def test_mul_cplx_backends_agree(seed):
    rng = random.Random(seed)
    n, m, k = 6, 8, 6
    args = [rand_flat(rng, n, m), rand_flat(rng, n, m),
            rand_flat(rng, m, k), rand_flat(rng, m, k)]
    assert _matops_c.mul_cplx(*args, n, m, k, ZERO) == \
        _matops_py.mul_cplx(*args, n, m, k, ZERO)


@needs_ext
@pytest.mark.parametrize("seed,shape", [(6, (5, 8)), (7, (8, 5)), (8, (6, 6))])
def test_rref_backends_agree(seed, shape):
    rng = random.Random(seed)
    n, m = shape
    flat_r = rand_flat(rng, n, m, density=0.5)
    flat_i = rand_flat(rng, n, m, density=0.5)
    rr_c, ri_c = as_rows(list(flat_r), n, m), as_rows(list(flat_i), n, m)
    rr_p, ri_p = as_rows(list(flat_r), n, m), as_rows(list(flat_i), n, m)
    piv_c = _matops_c.rref_cplx(rr_c, ri_c, n, m, ZERO, ONE)
    piv_p = _matops_py.rref_cplx(rr_p, ri_p, n, m, ZERO, ONE)
    assert piv_c == piv_p
    assert rr_c == rr_p and ri_c == ri_p


def test_env_forces_python_backend():
    code = "from diracforge import matops; print(matops.BACKEND_NAME)"
    out = subprocess.run([sys.executable, "-c", code],
                         env={"DIRACFORGE_BACKEND": "py", "PATH": "/usr/bin"},
                         capture_output=True, text=True)
    assert out.stdout.strip() == "python"
