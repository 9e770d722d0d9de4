import numpy as np
import pytest

from gspforge import kernels
from gspforge.finitefield import FpPoly
from gspforge.hypercurve import count_points
from gspforge.kernels import _numpy as knp
from gspforge.kernels import char_tables, lex_space_size
from gspforge.sympgroup import pack_matrix, standard_generators

try:
    from gspforge.kernels import _numba as knb
except ImportError:  # pragma: no cover - compiled backend is optional
    knb = None

needs_numba = pytest.mark.skipif(knb is None, reason="numba backend unavailable")


def test_char_tables_match_pow():
    for q in (3, 7, 29):
        chi, ns, chi2 = char_tables(q)
        for v in range(q):
            want = 0 if v == 0 else (1 if pow(v, (q - 1) // 2, q) == 1 else -1)
            assert chi[v] == want
        assert chi[ns] == -1 and all(chi[v] != -1 for v in range(2, ns))
        assert int((chi2 == 1).sum()) == (q * q - 1) // 2
        assert int((chi2 == 0).sum()) == 1


def test_char_sum_against_plain_python():
    q = 13
    chi, _, _ = char_tables(q)
    rng = np.random.default_rng(15)
    for _ in range(20):
        c = [int(v) for v in rng.integers(0, q, size=7)]
        c[0] = max(1, c[0])
        want = 0
        for x in range(q):
            v = 0
            for cc in c:
                v = (v * x + cc) % q
            want += int(chi[v])
        assert kernels.char_sum_fq(c, q) == want


def _filter_counts(cand_desc, q):
    """The (N1, N2) the scan filter attributes to a candidate."""
    chi, _, chi2 = char_tables(q)
    lead = cand_desc[0] % q
    n1 = q + 1 + kernels.char_sum_fq(cand_desc, q) + int(chi[lead])
    n2 = q * q + 1 + kernels.char_sum_fq2(cand_desc, q) + int(chi2[lead * q])
    return n1, n2


def test_scan_block_returns_smallest_matching_index():
    q = 5
    target = _filter_counts((1, 0, 0, 0, 3, 0, 1), q)  # x^6+3x^2+1, index 76
    fixed = [-1] * 7
    hit = kernels.scan_block(q, *target, "lex", 0, 0, 3000, fixed)
    assert 0 <= hit <= 76
    for k in range(hit + 1):
        cand = kernels.decode_candidate(q, "lex", 0, k, fixed)
        assert (_filter_counts(cand, q) == target) == (k == hit)


def test_filter_counts_match_exact_counts_on_smooth_curve():
    poly = FpPoly([5, 17, 0, 0, 0, 1, 1], 29)
    assert _filter_counts(tuple(reversed(poly.coeffs)), 29) == count_points(poly)


def test_decode_respects_pins_and_modes():
    fixed = [1, 1, -1, -1, -1, -1, -1]
    for mode in ("random", "lex"):
        got = kernels.decode_candidate(29, mode, 271828, 12345, fixed)
        assert got[0] == 1 and got[1] == 1
        assert all(0 <= v < 29 for v in got)
    # lex counts upward from the all-zero free word, f0 fastest
    assert kernels.decode_candidate(29, "lex", 0, 0, fixed) == (1, 1, 0, 0, 0, 0, 0)
    assert kernels.decode_candidate(29, "lex", 0, 1, fixed) == (1, 1, 0, 0, 0, 0, 1)


def test_lex_space_size():
    assert lex_space_size(7, [-1] * 7) == 6 * 7**6
    assert lex_space_size(29, [1, 1, -1, -1, -1, -1, -1]) == 29**5
    assert lex_space_size(29, [1, 1, 0, 0, 0, 17, 5]) == 1


@needs_numba
def test_backends_agree_on_char_sums():
    rng = np.random.default_rng(7)
    for q in (29, 43, 101):
        chi, ns, chi2 = char_tables(q)
        for _ in range(25):
            c = rng.integers(0, q, size=7)
            c[0] = max(1, int(c[0]))
            c = c.astype(np.int64)
            assert knp.char_sum_fq(c, q, chi) == knb.char_sum_fq(c, q, chi)
            assert knp.char_sum_fq2(c, q, ns, chi2) == knb.char_sum_fq2(c, q, ns, chi2)


@needs_numba
def test_backends_agree_on_scan_and_decode():
    fixed = np.array([1, 1, -1, -1, -1, -1, -1], dtype=np.int64)
    chi, ns, chi2 = char_tables(29)
    a = knp.scan_block(29, 31, 843, 1, np.uint64(0), 0, 20000, fixed, chi, ns, chi2)
    b = knb.scan_block(29, 31, 843, 1, np.uint64(0), 0, 20000, fixed, chi, ns, chi2)
    assert int(a) == int(b) >= 0
    for mode in (0, 1):
        for k in (0, 1, 17, 999, 123456):
            da = knp.decode_candidate(29, mode, np.uint64(271828), k, fixed)
            db = knb.decode_candidate(29, mode, np.uint64(271828), k, fixed)
            assert list(da) == list(db)


def _packed_gens(ell):
    return np.asarray(sorted({pack_matrix(g, ell) for g in standard_generators(ell)}),
                      dtype=np.int64)


def test_closure_sizes_numpy_backend():
    for ell, size in ((2, 720), (3, 51840)):
        n, complete = knp.closure_bfs(_packed_gens(ell), ell, 60000)
        assert (int(n), bool(complete)) == (size, True)


@needs_numba
def test_closure_sizes_numba_backend():
    for ell, size in ((2, 720), (3, 51840)):
        n, complete = knb.closure_bfs(_packed_gens(ell), ell, 60000)
        assert (int(n), bool(complete)) == (size, True)


def test_closure_cap_reports_incomplete():
    n, complete = knp.closure_bfs(_packed_gens(3), 3, 1000)
    assert not complete and int(n) > 1000


def test_closure_size_wrapper_dedups_generators():
    gens = list(_packed_gens(2)) + list(_packed_gens(2))
    assert kernels.closure_size(gens, 2, 60000) == (720, True)


def test_set_threads_clamps():
    n = kernels.set_threads(10**6)
    assert n >= 1
    if kernels.backend_name() == "numba":
        import numba
        assert n <= numba.config.NUMBA_NUM_THREADS
    assert kernels.set_threads(None) >= 1
    assert kernels.set_threads(1) == 1


def test_backend_name_is_valid():
    assert kernels.backend_name() in ("numba", "numpy")
