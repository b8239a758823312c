from __future__ import annotations

import numpy as np
import pytest

from subiso.graphs import Embedding
from subiso.io import (
    format_graph,
    format_witness,
    parse_graph,
    parse_witness,
    read_graph,
    write_graph,
    write_witness,
)
from util import random_graph


def test_graph_round_trip():
    rng = np.random.default_rng(10)
    for _ in range(50):
        g = random_graph(rng, int(rng.integers(0, 15)), 0.4)
        assert parse_graph(format_graph(g)) == g


def test_graph_file_round_trip(tmp_path):
    g = random_graph(np.random.default_rng(11), 8, 0.5)
    p = tmp_path / "g.graph"
    write_graph(str(p), g, comment="sample")
    assert read_graph(str(p)) == g
    assert p.read_text().startswith("c sample\n")


def test_parse_graph_ignores_comments_and_blanks():
    text = "c hello\n\np si 2 1\nc mid\ne 1 2\n"
    g = parse_graph(text)
    assert g.n == 2 and g.m == 1


@pytest.mark.parametrize(
    "text",
    [
        "",  # no problem line
        "e 1 2\np si 2 1\n",  # edge first
        "p si 2 1\np si 2 1\ne 1 2\n",  # duplicate header
        "p si 2 2\ne 1 2\n",  # wrong count
        "p si 2 1\ne 1 1\n",  # loop
        "p si 2 1\ne 1 3\n",  # out of range
        "p si 2 2\ne 1 2\ne 2 1\n",  # duplicate edge
        "p si 2 1\ne 1\n",  # short edge line
        "p xx 2 1\ne 1 2\n",  # wrong format tag
        "q si 2 1\n",  # unknown record
        "p si -1 0\n",  # negative size
    ],
)
def test_parse_graph_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_graph(text)


def test_witness_round_trip():
    e = Embedding((4, 0, 2))
    assert parse_witness(format_witness(e)).mapping == e.mapping


def test_witness_file_round_trip(tmp_path):
    e = Embedding((1, 0))
    p = tmp_path / "w.txt"
    write_witness(str(p), e)
    assert parse_witness(p.read_text()).mapping == (1, 0)


def test_witness_is_one_based():
    assert format_witness(Embedding((0,))) == "v 1 1\n"


@pytest.mark.parametrize(
    "text",
    [
        "v 1 1\nv 1 2\n",  # repeated pattern vertex
        "v 2 1\n",  # gap: vertex 1 missing
        "v 0 1\n",  # zero id
        "v 1\n",  # short line
        "w 1 1\n",  # unknown record
    ],
)
def test_parse_witness_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_witness(text)
