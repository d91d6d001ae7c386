import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from phrigid import _pykernels, kernels


def brute_partition_min(values, m):
    """Minimum over all set partitions of the m bits, by recursion on the lowest bit."""
    memo = {0: 0}

    def g(a):
        if a not in memo:
            low = a & -a
            rest = a ^ low
            best = None
            sub = rest
            while True:
                b = sub | low
                v = values[b] + g(a ^ b)
                best = v if best is None or v < best else best
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            memo[a] = best
        return memo[a]

    return [g(a) for a in range(1 << m)]


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_compiled_extension_is_built():
    assert kernels.compiled() is not None, "the Cython extension should be importable after install"


impls = [_pykernels] + ([kernels.compiled()] if kernels.compiled() is not None else [])


@pytest.mark.parametrize("impl", impls, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_union_popcount_matches_direct_union(impl):
    vmasks = [0b011, 0b110, 0b101, 0b1000]
    got = kernels.union_popcount(vmasks, 0b1111, impl=impl)
    for a in range(16):
        u = 0
        for k in range(4):
            if a >> k & 1:
                u |= vmasks[k]
        assert got[a] == bin(u).count("1")


@pytest.mark.parametrize("impl", impls, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_partition_min_single_blocks(impl):
    # merging everything costs 1, splitting costs 0 per singleton
    values = [0] + [1] * 7
    for k in range(3):
        values[1 << k] = 0
    best, choice = kernels.partition_min(values, 3, impl=impl)
    assert best[7] == 0
    assert choice[7] & 1


@given(st.integers(1, 6).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.integers(-5, 9), min_size=1 << m, max_size=1 << m))))
def test_partition_min_backends_agree_with_brute_force(args):
    m, values = args
    values[0] = 0
    want = brute_partition_min(values, m)
    for impl in impls:
        best, choice = kernels.partition_min(values, m, impl=impl)
        assert list(best) == want
        for a in range(1, 1 << m):
            b = int(choice[a])
            assert b & a == b and b & (a & -a)
            assert best[a] == values[b] + best[a ^ b]


@given(st.integers(0, 6).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(st.booleans(), min_size=1 << m, max_size=1 << m))))
def test_superset_closure_backends(args):
    m, flags = args
    want = [any(flags[b] for b in range(1 << m) if b & a == b) for a in range(1 << m)]
    for impl in impls:
        assert list(kernels.superset_closure(flags, m, impl=impl)) == want


edge_kinds = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2)), min_size=1, max_size=7)


@given(edge_kinds, st.lists(st.integers(0, 2), min_size=5, max_size=5))
def test_component_correction_backends_agree(edges, cls):
    edges = [(a, b, k) for a, b, k in edges if a != b]
    if not edges:
        return
    eu, ev, kind = zip(*edges)
    m = len(edges)
    want = None
    for impl in impls:
        got = list(kernels.component_correction(m, eu, ev, kind, cls, impl=impl))
        want = got if want is None else want
        assert got == want
    # direct evaluation on every subset
    for a in range(1 << m):
        members = [k for k in range(m) if a >> k & 1]
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        pts, seen = set(), {}
        for k in members:
            if kind[k] == 0:
                pts |= {eu[k], ev[k]}
                parent[find(eu[k])] = find(ev[k])
            elif kind[k] == 1:
                pts.add(eu[k])
        for k in members:
            if kind[k] == 1:
                seen.setdefault(find(eu[k]), set()).add(cls[ev[k]])
        roots = {find(p) for p in pts}
        total = sum(2 - min(2, len(seen.get(r, ()))) for r in roots)
        assert want[a] == total


def test_pure_module_handle():
    assert kernels.pure() is _pykernels


def test_wide_masks_rejected():
    with pytest.raises(ValueError):
        kernels.union_popcount([1 << 70], 1)


def test_partition_min_large_table_speed_parity():
    m = 10
    rng = np.random.default_rng(0)
    values = rng.integers(-3, 6, size=1 << m)
    values[0] = 0
    outs = [kernels.partition_min(values, m, impl=impl)[0] for impl in impls]
    for o in outs[1:]:
        assert np.array_equal(o, outs[0])
    assert list(itertools.islice(outs[0], 1)) == [0]
