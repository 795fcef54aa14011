import pytest

from cqgen import canon, oracle
from cqgen.blocks import _chain
from cqgen.core import InvalidMarkingError, relabelled, quotient_components
from cqgen.ddcolour import (MAX_UNDETERMINED, act, colouring_to_vector,
                            dd_class_representatives, enumerate_dd,
                            generate_dd, undetermined_set, vector_to_colouring,
                            verify_dd)
from cqgen.ddcolour import _generator_actions

DD = [1, 7, 3, 22, 13, 70, 67, 315, 393, 1577, 2515, 9480, 17205, 61594]


@pytest.mark.parametrize("n", range(1, 9))
def test_dd_counts(n):
    assert generate_dd(n).graphs == DD[n - 1]


def test_dd_outputs_are_valid_and_distinct():
    for n in range(1, 7):
        graphs = []
        generate_dd(n, graphs.append)
        assert all(verify_dd(g) for g in graphs)
        forms = {canon.canonical_form(g) for g in graphs}
        assert len(forms) == len(graphs) == DD[n - 1]


def test_dd_matches_oracle():
    for n in range(1, 6):
        got = []
        generate_dd(n, got.append)
        want = [d for g in oracle.all_cubic_pregraphs(n)
                for gm in oracle.all_cq_factors_up_to_iso(g)
                for d in oracle.brute_dd_classes(gm)]
        assert {canon.canonical_form(g) for g in got} == \
            {canon.canonical_form(g) for g in want}


def _oracle_marked(n):
    for g in oracle.all_cubic_pregraphs(n):
        yield from oracle.all_cq_factors_up_to_iso(g)


def test_vector_roundtrip_and_validity():
    for n in range(1, 6):
        for gm in _oracle_marked(n):
            comps = quotient_components(gm)
            U = undetermined_set(comps)
            for vec in range(1 << len(U)):
                dd = vector_to_colouring(gm, comps, vec)
                assert verify_dd(dd)
                assert colouring_to_vector(dd, comps) == vec


def test_action_is_a_group_action():
    for n in range(1, 6):
        for gm in _oracle_marked(n):
            comps = quotient_components(gm)
            U = undetermined_set(comps)
            aut = canon.automorphisms(gm)
            gens = list(aut.generators)
            composed = [tuple(p[q[v]] for v in range(gm.n))
                        for p in gens for q in gens]
            acts = _generator_actions(gm, comps, U, gens + composed)
            k = len(gens)
            for i, p in enumerate(gens):
                for j, q in enumerate(gens):
                    a_pq = acts[k + i * k + j]
                    for vec in range(1 << len(U)):
                        assert act(vec, a_pq) == act(act(vec, acts[j]),
                                                     acts[i])


def test_action_transports_the_colouring():
    for n in range(1, 6):
        for gm in _oracle_marked(n):
            comps = quotient_components(gm)
            U = undetermined_set(comps)
            aut = canon.automorphisms(gm)
            acts = _generator_actions(gm, comps, U, aut.generators)
            for vec in range(1 << len(U)):
                dd = vector_to_colouring(gm, comps, vec)
                for p, a in zip(aut.generators, acts):
                    dd2 = vector_to_colouring(gm, comps, act(vec, a))
                    assert relabelled(dd, p) == dd2


def test_q2_and_q4_splits_are_neutral():
    gm = _chain("Q2", 2, ("s", "s"))
    comps = quotient_components(gm)
    dd = vector_to_colouring(gm, comps, 0)
    for c in comps:
        flipped = dd.copy()
        for s, t in c.edges:
            for x in (s, t):
                flipped.col[x] = 2 - flipped.col[x]
        # swapping 0 and 2 on a digon swaps two parallel edges: same graph
        assert flipped == dd
        assert verify_dd(flipped)


def test_representatives_cover_all_vectors():
    for n in range(1, 5):
        for gm in _oracle_marked(n):
            comps = quotient_components(gm)
            U = undetermined_set(comps)
            aut = canon.automorphisms(gm)
            acts = _generator_actions(gm, comps, U, aut.generators)
            reps = [vec for vec, _ in dd_class_representatives(gm)]
            covered = set()
            for r in reps:
                orbit = {r}
                frontier = [r]
                while frontier:
                    v = frontier.pop()
                    for a in acts:
                        w = act(v, a)
                        if w not in orbit:
                            orbit.add(w)
                            frontier.append(w)
                assert not orbit & covered   # orbits are disjoint
                assert min(orbit) == r       # minimal representatives
                covered |= orbit
            assert covered == set(range(1 << len(U)))


def test_undetermined_limit_guard():
    gm = _chain("Q3", MAX_UNDETERMINED + 2, ("s", "s"))
    with pytest.raises(InvalidMarkingError):
        list(dd_class_representatives(gm))


def test_single_quotient_examples():
    assert enumerate_dd(_chain("Q2", 1, ("o",))) == 1
    # the 0/2 split of a q3 quotient is a real choice: two classes
    assert enumerate_dd(_chain("Q3", 1, ("s", "s"))) == 2
