import pytest

import stograph as sg
from stograph.core import GraphWindow
from stograph.errors import GraphFormatError, ProfileFormatError
from stograph.fileio import (
    parse_graph_file,
    parse_profile_file,
    profiles_equal,
    windows_equal,
    write_graph_file,
    write_profile_file,
)
from stograph.growth import FactorialTail, PolyTail


def test_minimal_two_vertex_round_trip_bit_identical():
    g = GraphWindow.from_edges(2, [(0, 1, 1.0)])
    text = write_graph_file(g)
    again = write_graph_file(parse_graph_file(text))
    assert text == again
    assert text.endswith("\n") and "\r" not in text


def test_graph_round_trip_with_measures_root_frontier(pendant_window):
    g = GraphWindow.from_edges(
        4,
        [(0, 1, 0.5), (1, 2, 2.0), (2, 3, 1.0)],
        mu={1: 0.25, 3: 7.5},
        frontier={3},
        root=0,
    )
    parsed = parse_graph_file(write_graph_file(g))
    assert windows_equal(g, parsed)
    parsed2 = parse_graph_file(write_graph_file(pendant_window))
    assert windows_equal(pendant_window, parsed2)


def test_loop_edge_rejected():
    text = "# stograph graph v1\nvertices 2\nedge 0 0 1.0\n"
    with pytest.raises(GraphFormatError) as info:
        parse_graph_file(text)
    assert "loop" in str(info.value)


def test_conflicting_duplicate_edge_rejected():
    text = "# stograph graph v1\nvertices 2\nedge 0 1 1.0\nedge 1 0 2.0\n"
    with pytest.raises(GraphFormatError) as info:
        parse_graph_file(text)
    assert "conflicts" in str(info.value)
    assert info.value.line == 4


def test_consistent_duplicate_edge_tolerated():
    text = "# stograph graph v1\nvertices 2\nedge 0 1 1.5\nedge 1 0 1.5\n"
    g = parse_graph_file(text)
    assert g.n_edges == 1


def test_graph_syntax_errors_carry_line_numbers():
    with pytest.raises(GraphFormatError) as info:
        parse_graph_file("# stograph graph v1\nvertices 2\nedge 0 zebra 1.0\n")
    assert info.value.line == 3
    with pytest.raises(GraphFormatError):
        parse_graph_file("vertices 2\n")
    with pytest.raises(GraphFormatError):
        parse_graph_file("# stograph graph v1\nvertices 1\nfrobnicate 3\n")
    with pytest.raises(GraphFormatError):
        parse_graph_file("# stograph graph v1\nvertices 1\nroot 4\n")


def test_comments_and_blank_lines_ignored():
    text = "# stograph graph v1\n\nvertices 2  # two of them\n# a comment\nedge 0 1 1.0\n"
    assert parse_graph_file(text).n == 2


def test_profile_round_trip(cubic_profile, exp2_profile):
    for p in (cubic_profile, exp2_profile):
        text = write_profile_file(p)
        parsed = parse_profile_file(text)
        assert profiles_equal(p, parsed)
        assert write_profile_file(parsed) == text


def test_profile_consistency_violation_names_radius():
    text = (
        "# stograph profile v1\nhorizon 2\n"
        "sphere 0 1 2 0\nsphere 1 2 4 1\nsphere 2 4 6 1\n"
    )
    with pytest.raises(ProfileFormatError) as info:
        parse_profile_file(text)
    assert "radius 2" in str(info.value)


def test_profile_missing_tail_means_none():
    text = "# stograph profile v1\nhorizon 1\nsphere 0 1 1 0\nsphere 1 1 1 1\n"
    p = parse_profile_file(text)
    assert p.tail is None and not p.join_complete


def test_profile_syntax_errors():
    with pytest.raises(ProfileFormatError):
        parse_profile_file("# stograph profile v1\nhorizon 1\nsphere 0 1 1 0\n")  # missing sphere 1
    with pytest.raises(ProfileFormatError):
        parse_profile_file("# stograph profile v1\nsphere 0 1 1 0\n")  # missing horizon
    with pytest.raises(ProfileFormatError):
        parse_profile_file("# wrong magic\nhorizon 0\nsphere 0 1 1 0\n")
    with pytest.raises(ProfileFormatError):
        parse_profile_file("# stograph profile v1\nhorizon 0\nsphere 0 1 1 0\ntail exp 0.5\n")


def test_unserializable_profiles_rejected(factorial_profile, kary2_profile):
    with pytest.raises(ProfileFormatError):
        write_profile_file(factorial_profile)
    with pytest.raises(ProfileFormatError):
        write_profile_file(kary2_profile)


def test_writer_determinism(cubic_profile, path_window):
    assert write_profile_file(cubic_profile) == write_profile_file(cubic_profile)
    assert write_graph_file(path_window) == write_graph_file(path_window)
