import numpy as np
import pytest

from permstab import _backend, _pykernels
from permstab.core_eval import eval_F_complex, eval_F_fast, eval_R, permanent_square

needs_compiled = pytest.mark.skipif(
    "compiled" not in _backend.available_backends(), reason="extension not built"
)


def test_fallback_is_always_available():
    assert "python" in _backend.available_backends()
    assert _backend.get_backend("python") is _pykernels
    with pytest.raises(ValueError):
        _backend.get_backend("fortran")


def test_set_backend_roundtrip():
    before = _backend.backend_name()
    previous = _backend.set_backend("python")
    assert previous == before
    assert _backend.backend_name() == "python"
    _backend.set_backend(before)
    assert _backend.backend_name() == before


@needs_compiled
@pytest.mark.parametrize("shape", [(1, 2), (2, 5), (3, 7), (5, 9), (7, 10)])
def test_backends_agree_bitwise(shape, rng):
    for _ in range(5):
        A = rng.random(shape)
        lam = rng.random(shape[1])
        z = lam + 1j * rng.normal(size=shape[1])
        pair = [
            (eval_F_fast(A, lam, backend=b).value, eval_F_complex(A, z, backend=b),
             eval_R(A, lam, backend=b).value)
            for b in ("compiled", "python")
        ]
        assert pair[0] == pair[1]


@needs_compiled
def test_backends_agree_beyond_one_block(rng):
    # 13 rows exceeds the fallback's 2**12 subset block, exercising the high-bit path
    A = rng.random((13, 14)) * 0.3
    lam = rng.random(14)
    a = eval_F_fast(A, lam, backend="compiled").value
    b = eval_F_fast(A, lam, backend="python").value
    assert a == b


@needs_compiled
def test_ryser_backends_agree(rng):
    B = rng.random((7, 7))
    assert permanent_square(B, backend="compiled") == permanent_square(B, backend="python")


@pytest.mark.parametrize("name", ["ie_poly_real", "ie_companion_real"])
def test_partial_ranges_sum_to_full(name, backend, rng):
    kernels = _backend.get_backend()
    A = np.ascontiguousarray(rng.random((4, 7)))
    lam = rng.random(7)
    f = getattr(kernels, name)
    full = f(A, lam, 0, 16)
    parts = f(A, lam, 0, 5) + f(A, lam, 5, 11) + f(A, lam, 11, 16)
    assert parts == pytest.approx(full, rel=1e-13)


def test_parallel_mode_matches_sequential(backend, rng):
    A = rng.random((6, 11))
    lam = rng.random(11)
    seq = eval_F_fast(A, lam).value
    par = eval_F_fast(A, lam, workers=4).value
    assert par == pytest.approx(seq, rel=1e-12)
    # fixed worker count: deterministic
    assert eval_F_fast(A, lam, workers=4).value == par
    z = lam + 0.3j
    assert eval_F_complex(A, z, workers=3) == pytest.approx(eval_F_complex(A, z), rel=1e-12)
    assert eval_R(A, lam, workers=2).value == pytest.approx(eval_R(A, lam).value, rel=1e-12)
