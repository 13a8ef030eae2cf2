import pytest
from hypothesis import given
from hypothesis import strategies as st

from rfqmst.instance import (
    EdgeSpec,
    Instance,
    InstanceFormatError,
    InvalidInstanceError,
    generate_random,
    paper_instance,
    parse_generator_spec,
    parse_instance,
    read_instance,
    serialize_instance,
    write_instance,
)
from rfqmst.uncertainty import RoughFuzzyWeight, TriangularFuzzy

MINIMAL = """qmst 1
vertices 2
edges 1
edge 1 2 1 2 3 0 1 -1 2
quads 0
"""

PAPER_ORDER = ["e12", "e15", "e16", "e23", "e26", "e34", "e36", "e45", "e46", "e56",
               "e17", "e18", "e27", "e39", "e58", "e79", "e48", "e49"]


def _w(u=1, v=2, w=3, offs=(0, 1, -1, 2)):
    return RoughFuzzyWeight(TriangularFuzzy(u, v, w), *offs)


def test_minimal_text():
    inst = parse_instance(MINIMAL)
    assert inst.vertex_count == 2 and inst.edge_count == 1 and not inst.quads
    assert serialize_instance(inst) == MINIMAL


def test_comments_and_blank_lines_ignored():
    text = "# header\n\n" + MINIMAL.replace("edges 1", "edges 1   # one edge")
    assert parse_instance(text) == parse_instance(MINIMAL)


def test_illustration_shape(paper):
    assert paper.vertex_count == 9
    assert [e.label for e in paper.edges] == PAPER_ORDER
    assert len(paper.quads) == 35


def test_illustration_weight_entries(paper):
    e12 = paper.edges[paper.edge_index("e12")].weight
    assert e12.base.as_tuple() == (9, 11.5, 12.7)
    assert e12.offsets == (0, 2, -1, 3)
    q = paper.quad_weight(paper.edge_index("e12"), paper.edge_index("e26"))
    assert q.base.as_tuple() == (8.6, 9.2, 9.8)
    assert q.offsets == (0, 1.2, -0.2, 1.5)
    assert paper.quad_weight(paper.edge_index("e15"), paper.edge_index("e34")) is None


def test_illustration_round_trip(paper):
    text = serialize_instance(paper)
    again = parse_instance(text)
    assert again == paper
    assert serialize_instance(again) == text


def test_duplicate_quad_pair_rejected(paper):
    text = serialize_instance(paper)
    i, j = paper.edge_index("e39"), paper.edge_index("e58")
    line = next(ln for ln in text.splitlines() if ln.startswith(f"quad {min(i, j)} {max(i, j)} "))
    lines = text.splitlines()
    lines[lines.index(f"quads {len(paper.quads)}")] = f"quads {len(paper.quads) + 1}"
    bad = "\n".join(lines + [line]) + "\n"
    with pytest.raises(InvalidInstanceError, match="duplicate quadratic pair"):
        parse_instance(bad)


def test_duplicate_edge_rejected():
    text = MINIMAL.replace("edges 1", "edges 2").replace(
        "quads 0", "edge 2 1 1 2 3 0 1 -1 2\nquads 0")
    with pytest.raises(InvalidInstanceError, match="duplicate edge"):
        parse_instance(text)


def test_disconnected_rejected():
    text = """qmst 1
vertices 4
edges 2
edge 1 2 1 2 3 0 1 -1 2
edge 3 4 1 2 3 0 1 -1 2
quads 0
"""
    with pytest.raises(InvalidInstanceError, match="not connected"):
        parse_instance(text)


@pytest.mark.parametrize("edit,what", [
    ("1 2 3 0 1 -1 2", "3 2 1 0 1 -1 2"),        # fuzzy base out of order
    ("1 2 3 0 1 -1 2", "1 2 3 0 1 0.5 2"),       # a3 above a1
    ("1 2 3 0 1 -1 2", "1 2 x 0 1 -1 2"),        # not a number
])
def test_bad_weight_reports_line(edit, what):
    with pytest.raises(InstanceFormatError) as err:
        parse_instance(MINIMAL.replace(edit, what))
    assert err.value.lineno == 4


def test_syntax_error_reports_line():
    with pytest.raises(InstanceFormatError) as err:
        parse_instance(MINIMAL.replace("vertices 2", "vertex 2"))
    assert err.value.lineno == 2


def test_zero_quads_section_kept():
    text = serialize_instance(Instance(3, [EdgeSpec(0, 1, 2, _w()), EdgeSpec(1, 2, 3, _w())]))
    assert text.rstrip().endswith("quads 0")


def test_file_round_trip(tmp_path, paper):
    path = tmp_path / "p.qmst"
    write_instance(paper, path)
    assert read_instance(path) == paper


def test_generator_counts():
    inst = generate_random(10, 30, seed=1)
    assert inst.edge_count == 30 and len(inst.quads) == 435
    tiny = generate_random(2, 1, seed=5)
    assert tiny.edge_count == 1 and not tiny.quads
    with pytest.raises(ValueError):
        generate_random(9, 100, seed=0)


def test_generator_deterministic():
    assert generate_random(8, 14, seed=3) == generate_random(8, 14, seed=3)
    assert generate_random(8, 14, seed=3) != generate_random(8, 14, seed=4)
    assert parse_generator_spec("QMST_8_14:3") == generate_random(8, 14, 3)


@given(st.integers(2, 12), st.data())
def test_generated_instances_round_trip(n, data):
    m = data.draw(st.integers(n - 1, min(n * (n - 1) // 2, 20)))
    inst = generate_random(n, m, seed=data.draw(st.integers(0, 10_000)))
    assert parse_instance(serialize_instance(inst)) == inst


def test_edge_labels_past_nine():
    e = EdgeSpec(0, 12, 3, _w())
    assert e.label == "e3-12"
