import pytest

from packcover import Digraph, DgrFormatError, directed_cycle, format_dgr, parse_dgr, load_digraph, save_digraph


def test_round_trip_preserves_arc_sequence(tmp_path):
    g = Digraph(4, ((2, 0), (0, 1), (0, 1), (3, 2)))
    path = tmp_path / "g.dgr"
    save_digraph(g, path)
    assert load_digraph(path) == g


def test_serialization_is_exact():
    assert format_dgr(directed_cycle(3)) == "3 3\n0 1\n1 2\n2 0\n"


def test_parallel_arc_lines():
    g = parse_dgr("2 2\n0 1\n0 1\n")
    assert g.arc_multiset[(0, 1)] == 2


def test_comments_and_blank_lines_are_stripped():
    text = "# a digraph\n3 2  # header\n\n0 1\n# middle\n2 1\n"
    g = parse_dgr(text)
    assert g.arcs == ((0, 1), (2, 1))


def test_loop_rejected():
    with pytest.raises(DgrFormatError):
        parse_dgr("3 1\n2 2\n")


def test_out_of_range_rejected():
    with pytest.raises(DgrFormatError):
        parse_dgr("2 1\n0 5\n")


def test_malformed_header():
    for text in ("", "3\n", "a b\n", "3 1\n0 1\n1 2\n", "3 2\n0 1\n"):
        with pytest.raises(DgrFormatError):
            parse_dgr(text)


def test_empty_digraph_round_trips():
    assert parse_dgr(format_dgr(Digraph(0, ()))) == Digraph(0, ())
