import pytest

from cqgen.core import (FormatError, InvalidMarkingError, Pregraph,
                        PregraphError, block_partition, build, decode_text,
                        encode_text, is_connected, quotient_components,
                        relabelled, unmarked_partition)


def test_build_basic():
    g = build(3, [((0, 0), (1, 0)), ((1, 1), (2, 0)), ((2, 1), (0, 1))],
              [(0, 2), (1, 2), (2, 2)])
    assert g.n == 3
    assert sorted(g.neighbours(0)) == [1, 2]
    assert len(g.edges()) == 3
    assert g.is_complete()
    assert is_connected(g)
    g.validate(allow_open=False)


def test_build_errors():
    with pytest.raises(PregraphError):
        build(2, [((0, 0), (2, 0))], [])           # vertex out of range
    with pytest.raises(PregraphError):
        build(2, [((0, 0), (0, 3))], [])           # slot index out of range
    with pytest.raises(PregraphError):
        build(2, [((0, 0), (1, 0)), ((0, 0), (1, 1))], [])  # slot used twice
    with pytest.raises(PregraphError):
        build(2, [((0, 0), (1, 0))], [(1, 0)])     # slot used twice
    with pytest.raises(PregraphError):
        build(1, [((0, 0), (0, 0))], [])           # slot paired with itself


def test_add_remove_edge():
    g = Pregraph(2)
    g.add_edge(0, 3, 1)
    assert g.pair[0] == 3 and g.pair[3] == 0
    assert g.col[0] == g.col[3] == 1
    g.remove_edge(0, 3)
    assert g.open_slots() == list(range(6))


@pytest.mark.parametrize("line", [
    "2 | 0: 1/0 1/0 1/1 | 1: 0/0 0/0 0/1",
    "1 | 0: */0 */0 */1",
    "1 | 0: 0 0 *",
    "2 | 0: 0 0 1 | 1: 0 * *",
    "2 | 0: 1 ? * | 1: 0 ? *",
    "4 | 0: 1/0 3/0 2/1 | 1: 0/0 2/0 3/1 | 2: 1/0 3/0 0/1 | 3: 2/0 0/0 1/1",
])
def test_text_roundtrip(line):
    g = decode_text(line)
    assert encode_text(g) == line
    assert decode_text(encode_text(g)) == g


def test_text_roundtrip_normalizes_slot_order():
    # parallel entries are matched in slot order, so any valid line survives
    g = decode_text("2 | 0: 1/0 1/1 1/0 | 1: 0/0 0/1 0/0")
    assert sorted(g.col[s] for s in g.slots_of(0)) == [0, 0, 1]


@pytest.mark.parametrize("line", [
    "x | 0: * * *",                        # bad vertex count
    "0 |",                                 # nonpositive count
    "2 | 0: * * *",                        # missing vertex field
    "1 | 1: * * *",                        # wrong vertex label
    "1 | 0: * *",                          # wrong entry count
    "1 | 0: * * 5",                        # neighbour out of range
    "2 | 0: 1 * * | 1: 0 0 *",             # mismatched multiplicity
    "2 | 0: 1/0 * * | 1: 0/1 * *",         # colour mismatch
    "1 | 0: ?/0 * *",                      # coloured open slot
    "1 | 0: 0 * *",                        # odd number of loop ends
])
def test_decode_errors(line):
    with pytest.raises(FormatError):
        decode_text(line)


def test_relabelled():
    g = decode_text("3 | 0: 1 1 * | 1: 0 0 2 | 2: 1 * *")
    h = relabelled(g, [2, 0, 1])
    assert h != g
    assert sorted(h.neighbours(2)) == [0, 0]
    assert relabelled(h, [1, 2, 0]) == g


def test_quotient_kinds():
    gm = decode_text("4 | 0: 1/0 3/0 2/1 | 1: 0/0 2/0 3/1 "
                     "| 2: 1/0 3/0 0/1 | 3: 2/0 0/0 1/1")
    comps = quotient_components(gm)
    assert [c.kind for c in comps] == ["q1"]
    assert set(comps[0].vertices) == {0, 1, 2, 3}

    gm = decode_text("2 | 0: 1/0 1/0 1/1 | 1: 0/0 0/0 0/1")
    assert [c.kind for c in quotient_components(gm)] == ["q2"]

    gm = decode_text("2 | 0: 1/0 */0 1/1 | 1: 0/0 */0 0/1")
    assert [c.kind for c in quotient_components(gm)] == ["q3"]

    gm = decode_text("1 | 0: */0 */0 */1")
    assert [c.kind for c in quotient_components(gm)] == ["q4"]


def test_quotient_errors():
    # vertex with three marked ends
    with pytest.raises(InvalidMarkingError):
        quotient_components(decode_text("2 | 0: 1/0 1/0 1/0 | 1: 0/0 0/0 0/0"))
    # marked loop
    with pytest.raises(InvalidMarkingError):
        quotient_components(decode_text("1 | 0: 0/0 0/0 */1"))
    # marked path on 3 vertices is not a quotient of C4
    with pytest.raises(InvalidMarkingError):
        quotient_components(decode_text(
            "3 | 0: 1/0 */0 */1 | 1: 0/0 2/0 */1 | 2: 1/0 */0 */1"))


def test_block_partition_cube_is_one_ladder():
    cube = build(8, [((0, 0), (1, 0)), ((1, 1), (2, 0)), ((2, 1), (3, 0)),
                     ((3, 1), (0, 1)), ((4, 0), (5, 0)), ((5, 1), (6, 0)),
                     ((6, 1), (7, 0)), ((7, 1), (4, 1)), ((0, 2), (4, 2)),
                     ((1, 2), (5, 2)), ((2, 2), (6, 2)), ((3, 2), (7, 2))], [])
    for s, t in cube.edges():
        a, b = s // 3, t // 3
        col = 0 if (a < 4) == (b < 4) else 1
        cube.col[s] = cube.col[t] = col
    parts = block_partition(cube)
    assert [(b.family, len(b.components)) for b in parts] == [("Q1", 2)]
    assert parts[0].vertices == tuple(range(8))


def test_block_partition_chains():
    # two digons joined by a colour-1 edge, two dangling colour-1 semis
    gm = decode_text("4 | 0: 1/0 1/0 */1 | 1: 0/0 0/0 2/1 "
                     "| 2: 3/0 3/0 1/1 | 3: 2/0 2/0 */1")
    parts = block_partition(gm)
    assert [(b.family, len(b.components)) for b in parts] == [("Q2", 2)]
    # same two digons with the joining edge still open: still one list entry
    # per digon since nothing merges them
    gm = decode_text("4 | 0: 1/0 1/0 */1 | 1: 0/0 0/0 ? "
                     "| 2: 3/0 3/0 ? | 3: 2/0 2/0 */1")
    parts = block_partition(gm)
    assert [(b.family, len(b.components)) for b in parts] == \
        [("Q2", 1), ("Q2", 1)]


def test_unmarked_partition_ladder_absorbs_digons():
    from cqgen.generator import double_closed_ladder
    up = unmarked_partition(double_closed_ladder(8))
    assert up.ladders == ((0, 1, 2, 3, 4, 5, 6, 7),)
    assert up.digons == ()
    assert up.remainder == ()


def test_unmarked_partition_digon_and_remainder():
    g = build(4, [((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (2, 0)),
                  ((1, 2), (2, 1)), ((2, 2), (3, 0))], [(3, 1), (3, 2)])
    up = unmarked_partition(g)
    assert up.ladders == ()
    assert up.digons == ((0, 1),)
    assert up.remainder == ((2, 3),)


def test_unmarked_partition_requires_four_vertices():
    with pytest.raises(PregraphError):
        unmarked_partition(decode_text("2 | 0: 1 1 1 | 1: 0 0 0"))
