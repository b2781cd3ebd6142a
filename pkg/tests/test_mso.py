import re
from math import comb

import pytest

from hpartition.graph import Graph
from hpartition.mso import Exists, Not, PairIn, emit_mso, free_variables, structure, walk
from hpartition.pattern import PatternInfo


@pytest.mark.parametrize("name,chain,pos,neg", [("K3", 1, 3, 0), ("P4", 3, 3, 3), ("C5", 2, 5, 5)])
def test_structure_examples(name, chain, pos, neg):
    s = structure(emit_mso(name))
    assert s["chain_length"] == chain
    assert s["positive_pairs"] == pos and s["negative_pairs"] == neg


@pytest.mark.parametrize("name", ["K2", "K3", "P3", "P4", "C5", "C6", "K4"])
def test_structure_follows_the_pattern(name):
    info = PatternInfo.of(name)
    s = structure(emit_mso(info))
    k = info.size
    assert s["vertex_variables"] == k
    assert s["pair_atoms"] == comb(k, 2)
    assert s["positive_pairs"] == info.h.m
    assert s["chain_length"] == info.diameter


def test_rendered_text_counts():
    text = emit_mso("P4").text
    assert len(re.findall(r"\{u\d+, u\d+\} in F", text)) == 6
    assert len(re.findall(r"~\(\{u\d+, u\d+\} in F\)", text)) == 3
    assert "exists e1 e2 e3: edge in F" in text
    assert text.startswith("exists F: edgeset . (forall u: vertex . (exists v: vertex .")


def test_sentence_is_closed():
    for name in ["K1", "K3", "P4", "C5"]:
        s = emit_mso(name)
        assert free_variables(s.formula) == set()


def test_single_vertex_pattern_uses_equality():
    s = emit_mso("K1")
    assert s.chain_length == 0 and "u = v" in s.text


def test_negated_atoms_match_non_edges():
    info = PatternInfo.of("C5")
    s = emit_mso(info)
    names = [v.name for v in s.vertex_vars]
    negated = {(names.index(g.body.a.name), names.index(g.body.b.name))
               for g in walk(s.copy) if isinstance(g, Not) and isinstance(g.body, PairIn)}
    non_edges = {(i, j) for i in range(5) for j in range(i + 1, 5) if not info.h.has_edge(i, j)}
    assert negated == non_edges
    assert isinstance(s.chain, Exists) and s.chain.within.name == "F"


def test_disconnected_pattern_rejected():
    with pytest.raises(ValueError):
        emit_mso(Graph.empty(2))
