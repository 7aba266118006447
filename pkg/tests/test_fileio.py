import pytest

from perturb.fileio import EdgeListFormatError, read_digraph, read_graph, write_digraph, write_graph
from perturb.graphs import Graph, Orientation

from conftest import petersen


def test_graph_round_trip(tmp_path):
    g = petersen()
    path = tmp_path / "g.el"
    write_graph(g, path)
    assert read_graph(path) == g
    text = path.read_text()
    assert text.splitlines()[0] == "10 15"


def test_comments_ignored(tmp_path):
    path = tmp_path / "g.el"
    path.write_text("# a comment\n3 2\n0 1\n# another\n1 2\n")
    assert read_graph(path) == Graph(3, [(0, 1), (1, 2)])


def test_digraph_round_trip(tmp_path):
    g = Graph(3, [(0, 1), (1, 2)])
    d = Orientation(g, [(1, 0), (1, 2)])
    path = tmp_path / "d.el"
    write_digraph(d, path)
    assert path.read_text().splitlines()[0] == "3 2 directed"
    back = read_digraph(path)
    assert back.arcs == d.arcs


def test_header_mismatch(tmp_path):
    path = tmp_path / "bad.el"
    path.write_text("3 2\n0 1\n")
    with pytest.raises(EdgeListFormatError, match="declares 2"):
        read_graph(path)


def test_unsorted_pair_rejected(tmp_path):
    path = tmp_path / "bad.el"
    path.write_text("3 1\n1 0\n")
    with pytest.raises(EdgeListFormatError, match="u < v"):
        read_graph(path)


def test_directed_undirected_mixup(tmp_path):
    path = tmp_path / "d.el"
    path.write_text("3 1 directed\n1 0\n")
    with pytest.raises(EdgeListFormatError, match="undirected"):
        read_graph(path)
