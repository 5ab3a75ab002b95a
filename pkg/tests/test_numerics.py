import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from mtcgauge import _kernels
from mtcgauge.errors import NonIntegralError, ShapeError, MalformedDataError
from mtcgauge.numerics import kron, lu_determinant, unitarity_defect, round_to_integer

PHI = (1 + 5 ** 0.5) / 2
S_FIB = np.array([[1, PHI], [PHI, -1]])

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def cmats(max_side=5, square=False):
    side = st.integers(1, max_side)
    if square:
        shapes = side.map(lambda n: (n, n))
    else:
        shapes = st.tuples(side, side)
    return shapes.flatmap(lambda sh: st.tuples(hnp.arrays(float, sh, elements=finite),
                                               hnp.arrays(float, sh, elements=finite))
                          .map(lambda p: p[0] + 1j * p[1]))


def test_kron_examples():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron([[0, 1], [1, 0]], [[2]]), [[0, 2], [2, 0]])
    k = kron(S_FIB, S_FIB)
    assert k[3, 3] == pytest.approx(S_FIB[1, 1] ** 2)
    assert k[3, 3] == pytest.approx(1.0)


def test_kron_rejects_bad_input():
    with pytest.raises(ShapeError):
        kron(np.ones(3), np.eye(2))
    with pytest.raises(MalformedDataError):
        kron([[np.nan]], [[1]])


@settings(max_examples=60, deadline=None)
@given(cmats(3), cmats(3), cmats(3), cmats(3))
def test_kron_mixed_product(a, b, c, d):
    # (A (x) B)(C (x) D) = AC (x) BD whenever the shapes compose
    if a.shape[1] != c.shape[0] or b.shape[1] != d.shape[0]:
        return
    lhs = kron(a, b) @ kron(c, d)
    rhs = kron(a @ c, b @ d)
    assert np.allclose(lhs, rhs, atol=1e-8 * (1 + np.abs(rhs).max()))


@settings(max_examples=60, deadline=None)
@given(cmats(4), cmats(4))
def test_kron_backends_agree(a, b):
    # numba may fuse multiply-adds, so agreement is to the last ulp or so, not bitwise
    tol = 1e-14 * np.abs(a).max() * np.abs(b).max()
    assert np.abs(_kernels.kron_numpy(a, b) - _kernels.kron_numba(a, b)).max() <= tol
    assert np.abs(kron(a, b) - np.kron(a, b)).max() <= tol


def test_lu_examples():
    z = lu_determinant([[0]])
    assert z.determinant == 0 and z.min_abs_pivot == 0
    eye = lu_determinant(np.eye(3))
    assert eye.determinant == 1 and eye.min_abs_pivot == eye.max_abs_pivot == 1
    r1 = lu_determinant([[1, 1], [1, 1]])
    assert abs(r1.determinant) < 1e-12
    assert r1.min_abs_pivot < 1e-12
    assert r1.is_singular()


def test_lu_rejects_non_square():
    with pytest.raises(ShapeError):
        lu_determinant(np.ones((2, 3)))


@settings(max_examples=80, deadline=None)
@given(cmats(5, square=True))
def test_lu_matches_numpy(m):
    rep = lu_determinant(m)
    ref = np.linalg.det(m)
    scale = max(1.0, np.abs(m).max()) ** m.shape[0]
    assert abs(rep.determinant - ref) <= 1e-9 * scale


@settings(max_examples=60, deadline=None)
@given(cmats(5, square=True))
def test_lu_backends_agree(m):
    d1, lo1, hi1 = _kernels.lu_pivots_numpy(m)
    d2, lo2, hi2 = _kernels.lu_pivots_numba(m)
    scale = max(1.0, np.abs(m).max()) ** m.shape[0]
    assert abs(d1 - d2) <= 1e-12 * scale
    assert lo1 == pytest.approx(lo2, abs=1e-12 * scale)
    assert hi1 == pytest.approx(hi2)


@settings(max_examples=40, deadline=None)
@given(cmats(4, square=True), st.floats(1e-3, 1e3))
def test_singularity_verdict_is_scale_robust(m, c):
    # duplicate a row: exactly singular, whatever the scale
    m = m.copy()
    m[-1] = m[0]
    if m.shape[0] == 1:
        m[0] = 0
    assert lu_determinant(c * m).is_singular(1e-6)


def test_unitarity_defect_examples():
    assert unitarity_defect(np.eye(2)) == 0
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert unitarity_defect(h) < 1e-15
    assert unitarity_defect(2 * np.eye(2)) == pytest.approx(3)


def test_round_to_integer_examples():
    assert round_to_integer(1.0000000001 + 0j, 1e-6) == 1
    assert round_to_integer(2 - 1e-9j, 1e-6) == 2
    with pytest.raises(NonIntegralError) as err:
        round_to_integer(0.5 + 0j, 1e-6)
    assert err.value.residual == pytest.approx(0.5)


@given(st.integers(-10 ** 6, 10 ** 6), st.floats(-1e-8, 1e-8), st.floats(-1e-8, 1e-8))
def test_round_to_integer_recovers_integers(n, dr, di):
    assert round_to_integer(complex(n + dr, di), 1e-6) == n


def test_admissible_backends_agree():
    from mtcgauge import catalog
    from mtcgauge.verlinde import fusion_tensor
    for key in ("semion", "fibonacci", "ising", "pointed_z3"):
        n = fusion_tensor(catalog.named_entry(key))
        dual = np.asarray(n.dual, dtype=np.int64)
        a = _kernels.admissible_numpy(n.lowered(), dual)
        b = _kernels.admissible_numba(n.lowered(), dual)
        assert np.array_equal(np.asarray(a).reshape(-1, 6), np.asarray(b).reshape(-1, 6))


def test_tensor6_backends_agree():
    rng = np.random.default_rng(7)
    s = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rows = rng.integers(0, 3, size=(20, 6))
    images = rng.integers(0, 3, size=(20, 6))
    a = _kernels.tensor6_block_numpy(s, rows, images)
    b = _kernels.tensor6_block_numba(s, rows, images)
    assert np.allclose(a, b, atol=1e-13)
    i, j = 4, 11
    assert a[i, j] == pytest.approx(np.prod([s[rows[i, k], images[j, k]] for k in range(6)]))


@pytest.mark.parametrize("flag", ["numba", "numpy"])
def test_backend_flag(flag):
    import os
    import subprocess
    import sys
    env = dict(os.environ, MTCGAUGE_BACKEND=flag)
    out = subprocess.run([sys.executable, "-c", "import mtcgauge; print(mtcgauge.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == flag
