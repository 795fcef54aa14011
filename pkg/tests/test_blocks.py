from collections import Counter

from helpers import group_closure

from cqgen import canon
from cqgen.blocks import catalogue, realize_cached
from cqgen.core import block_partition, relabelled


def test_catalogue_sizes():
    assert len(catalogue(2)) == 10
    assert len(catalogue(4)) == 32
    assert len(catalogue(8)) == 67
    assert len(catalogue(12)) == 102


def test_catalogue_census():
    census = Counter((d.family, d.units) for d in catalogue(12))
    assert census[("Q1", 1)] == 14
    assert census[("Q1", 2)] == 19
    assert census[("Q1", 3)] == 19   # stable for every longer ladder
    assert all(census[("Q2", k)] == 4 for k in range(1, 7))
    assert all(census[("Q3", k)] == 4 for k in range(1, 7))
    assert census[("Q4", 1)] == 2


def test_fragments_are_pairwise_nonisomorphic():
    forms = [canon.canonical_form(realize_cached(d).fragment)
             for d in catalogue(12)]
    assert len(set(forms)) == len(forms)


def test_fragment_matches_descriptor():
    for d in catalogue(10):
        rb = realize_cached(d)
        assert rb.fragment.n == d.order()
        assert len(rb.connectors) == d.connector_count()
        assert rb.connectors == tuple(rb.fragment.open_slots())
        parts = block_partition(rb.fragment)
        assert [(b.family, len(b.components)) for b in parts] == \
            [(d.family, d.units)]


def test_fragment_generators_are_automorphisms():
    for d in catalogue(8):
        rb = realize_cached(d)
        for p in rb.generators:
            assert relabelled(rb.fragment, p) == rb.fragment


def test_fragment_generators_span_group():
    for d in catalogue(6):
        rb = realize_cached(d)
        from helpers import brute_automorphisms
        assert len(group_closure(rb.fragment.n, rb.generators)) == \
            len(brute_automorphisms(rb.fragment))


def test_descriptor_codes_are_unique():
    codes = [d.code() for d in catalogue(12)]
    assert len(set(codes)) == len(codes)
    d = catalogue(2)[0]
    assert d.code().startswith(f"Q{d.family[1]}:k={d.units}:e=")
