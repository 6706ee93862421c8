import numpy as np
import pytest

from epidemetric import _core_py, kernels
from epidemetric.generators import complete_graph, karate_graph, path_graph, random_corpus
from epidemetric.randomwalk import _cumulative

try:
    from epidemetric import _core
except ImportError:  # extension not built
    _core = None

needs_ext = pytest.mark.skipif(_core is None, reason="compiled core not built")


def test_splitmix_reference_outputs():
    # SplitMix64 from state 0: the first three outputs of the reference generator
    with np.errstate(over="ignore"):
        out = [int(_core_py._mix64(_core_py.GAMMA * np.uint64(k))) for k in (1, 2, 3)]
    assert out == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_uniforms_in_unit_interval():
    keys = _core_py.stream_keys(123, np.arange(1000))
    u = np.concatenate([_core_py.uniforms(keys, s) for s in range(20)])
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.01


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_ext
def test_streams_match():
    keys_py = _core_py.stream_keys(2**63 + 5, np.arange(50))
    keys_c = _core.stream_keys(2**63 + 5, np.arange(50))
    np.testing.assert_array_equal(keys_py, keys_c)
    np.testing.assert_array_equal(_core_py.uniforms(keys_py, 7), _core.uniforms(keys_c, 7))


@needs_ext
def test_bfs_and_profile_match():
    for g in random_corpus(10, seed=9) + [karate_graph()]:
        indptr, nbr, _ = g.csr
        d_py = _core_py.all_pairs_bfs(indptr, nbr, g.n)
        d_c = _core.all_pairs_bfs(indptr, nbr, g.n)
        np.testing.assert_array_equal(d_py, d_c)
        u, v = g.endpoints
        np.testing.assert_array_equal(
            _core_py.ball_volume_profile(d_py, u, v, int(d_py.max())),
            _core.ball_volume_profile(d_c, u, v, int(d_c.max())),
        )


@needs_ext
@pytest.mark.parametrize("g,start,stop,count", [
    (path_graph(6), 0, (5,), 0),
    (path_graph(6), 0, (0, 5), 0),
    (complete_graph(5), 1, (3,), 2),
    (karate_graph(), 0, (33,), 0),
])
def test_walk_backends_bit_identical(g, start, stop, count):
    indptr, nbr, _ = g.csr
    cum = _cumulative(g)
    mask = np.zeros(g.n, dtype=np.uint8)
    mask[list(stop)] = 1
    args = (indptr, nbr, cum, start, mask, count, np.uint64(11), 40, 3000, 400)
    e_py, v_py = _core_py.walk(*args)
    e_c, v_c = _core.walk(*args)
    np.testing.assert_array_equal(e_py, e_c)
    np.testing.assert_array_equal(v_py, v_c)


def test_walk_respects_max_steps():
    g = path_graph(30)
    indptr, nbr, _ = g.csr
    mask = np.zeros(g.n, dtype=np.uint8)
    mask[29] = 1
    ends, _ = kernels.walk(indptr, nbr, _cumulative(g), 0, mask, 0, np.uint64(1), 0, 200, 5)
    assert np.all(ends == -1)


def test_walk_trial_offsets_compose():
    g = complete_graph(4)
    indptr, nbr, _ = g.csr
    mask = np.array([0, 0, 0, 1], dtype=np.uint8)
    cum = _cumulative(g)
    whole = kernels.walk(indptr, nbr, cum, 0, mask, 0, np.uint64(3), 0, 100, 1000)
    first = kernels.walk(indptr, nbr, cum, 0, mask, 0, np.uint64(3), 0, 60, 1000)
    rest = kernels.walk(indptr, nbr, cum, 0, mask, 0, np.uint64(3), 60, 40, 1000)
    np.testing.assert_array_equal(whole[0], np.concatenate([first[0], rest[0]]))
    np.testing.assert_array_equal(whole[1], np.concatenate([first[1], rest[1]]))
