from collections import Counter

import pytest

from cqgen import oracle
from cqgen.blocklists import (BlockList, enumerate_lists, is_acceptable,
                              is_multigraphic)
from cqgen.blocks import BlockDescriptor, catalogue
from cqgen.core import block_partition, is_connected
from cqgen.generator import PartialGraph

LIST_COUNTS = [1, 5, 2, 13, 7, 31, 25, 103, 86, 311, 260, 938,
               763, 2521, 1968, 6776]


def test_is_multigraphic():
    assert is_multigraphic([])
    assert is_multigraphic([2, 2])
    assert is_multigraphic([1, 1, 2])
    assert not is_multigraphic([1])          # odd sum
    assert not is_multigraphic([4, 1, 1])    # dominant degree
    assert is_multigraphic([0])


@pytest.mark.parametrize("n", range(1, 17))
def test_list_counts(n):
    assert sum(1 for _ in enumerate_lists(n)) == LIST_COUNTS[n - 1]


def test_lists_have_right_order_and_are_unique():
    for n in range(1, 9):
        lists = list(enumerate_lists(n))
        assert all(L.order() == n for L in lists)
        assert len({L.blocks for L in lists}) == len(lists)


def test_isolated_block_rejected():
    d = {c.code(): c for c in catalogue(5)}
    L = BlockList((d["Q2:k=1:e=cc"], d["Q3:k=1:e=cc"], d["Q4:k=1:e=s"]))
    assert not is_acceptable(L)


def test_connector_dominated_families_rejected():
    d = {c.code(): c for c in catalogue(4)}
    # two Q2 chains can only connect to each other, which maximality forbids
    L = BlockList((d["Q2:k=1:e=cc"], d["Q2:k=1:e=cc"]))
    assert not is_acceptable(L)
    L = BlockList((d["Q3:k=1:e=cc"], d["Q3:k=1:e=cc"]))
    assert not is_acceptable(L)


def _all_lists(n):
    """Every multiset of catalogue blocks of order n, acceptable or not."""
    cat = catalogue(n)
    orders = [d.order() for d in cat]
    chosen: list[BlockDescriptor] = []

    def rec(start, remaining):
        if remaining == 0:
            yield BlockList(tuple(chosen))
            return
        for i in range(start, len(cat)):
            if orders[i] <= remaining:
                chosen.append(cat[i])
                yield from rec(i, remaining - orders[i])
                chosen.pop()

    yield from rec(0, n)


def _has_completion(L: BlockList) -> bool:
    """Brute force: can the connectors be paired up across distinct blocks
    so that the result is connected and its block partition is exactly L?
    (Pairing connectors of one block realizes a different descriptor, so
    only inter-block pairings count as completions of this list.)"""
    st = PartialGraph(L)
    g = st.g
    want = sorted((d.family, d.units) for d in L.blocks)

    def rec() -> bool:
        opens = g.open_slots()
        if not opens:
            if not is_connected(g):
                return False
            got = sorted((b.family, len(b.components))
                         for b in block_partition(g))
            return got == want
        sx = opens[0]
        for sy in opens[1:]:
            if st.block_of[sx // 3] == st.block_of[sy // 3]:
                continue
            g.add_edge(sx, sy, 1)
            if rec():
                g.remove_edge(sx, sy)
                return True
            g.remove_edge(sx, sy)
        return False

    return rec()


def test_rejected_lists_admit_no_completion():
    for n in range(1, 6):
        for L in _all_lists(n):
            if not is_acceptable(L):
                assert not _has_completion(L), L


def test_every_generated_partition_is_an_acceptable_list():
    for n in range(1, 7):
        keys = [Counter((d.family, d.units) for d in L.blocks)
                for L in enumerate_lists(n)]
        for g in oracle.all_cubic_pregraphs(n):
            for gm in oracle.all_cq_factors_up_to_iso(g):
                parts = block_partition(gm)
                key = Counter((b.family, len(b.components)) for b in parts)
                # the partition's (family, units) multiset must be realised
                # by at least one acceptable list
                assert key in keys, gm
