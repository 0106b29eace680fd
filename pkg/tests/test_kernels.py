import itertools
import os
import subprocess
import sys

import numpy as np
import pytest

from heiscat import kernels


CASES = [(n, ups) for n in range(5) for ups in [(), (n + 1,), (n + 2, n + 1), (n + 3, n + 2, n + 1)]]


@pytest.mark.skipif(kernels.act_compiled is None, reason="compiled kernel not built")
@pytest.mark.parametrize("n, ups", CASES)
def test_backends_agree(n, ups):
    size = max([n] + list(ups))
    for sigma in itertools.islice(itertools.permutations(range(size)), 0, None, 5):
        assert np.array_equal(kernels.act_py(ups, n, sigma), kernels.act_compiled(ups, n, sigma))


@pytest.mark.parametrize("n, ups", CASES)
def test_action_is_a_permutation(n, ups):
    size = max([n] + list(ups))
    sigma = tuple(reversed(range(size)))
    image = kernels.act(ups, n, sigma)
    assert sorted(image.tolist()) == list(range(kernels.inner_dim(ups, n)))


def test_backend_flag():
    assert kernels.BACKEND in ("compiled", "python")


def test_pure_python_switch():
    env = dict(os.environ, HEISCAT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import heiscat; print(heiscat.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
