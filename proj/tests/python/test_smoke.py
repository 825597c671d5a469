"""Smoke tests for the python bindings: one round-trip through each module."""

import pytest

import hompres


TRIANGLE = "EX x. EX y. EX z. R(x, y) & R(y, z) & R(z, x)"

SYM_K3_PLUS_PENDANT = """\
signature R/2
universe 4
R 0 1
R 0 2
R 1 0
R 1 2
R 2 0
R 2 1
R 2 3
R 3 2
"""


def test_graph_parameters():
    p7 = hompres.Graph.family("path", 7)
    assert p7.order == 7
    assert hompres.tree_depth(p7)["depth"] == 3
    assert hompres.tree_width(p7)["width"] == 1
    assert hompres.longest_path(p7)["length"] == 7

    c4 = hompres.Graph.family("grid", 2)
    assert hompres.minor_contains(hompres.Graph.family("clique", 4), c4) is None
    branch_sets = hompres.minor_contains(hompres.Graph.family("clique", 3), c4)
    assert branch_sets is not None and len(branch_sets) == 3


def test_cores():
    s = hompres.Structure.parse(SYM_K3_PLUS_PENDANT)
    assert s.size == 4
    result = hompres.core(s)
    assert result["core"].size == 3
    assert hompres.is_core(result["core"])
    assert hompres.hom_equivalent(s, result["core"])
    assert hompres.find_homomorphism(s, result["core"]) is not None

    minimal = hompres.min_cores([result["core"], s])
    assert len(minimal) == 1 and minimal[0].size == 3


def test_formula_and_compile():
    phi = hompres.Formula.parse("EX x. R(x, x)")
    assert phi.quantifier_rank == 1
    table = hompres.model_table(phi, 2)
    assert len(table) == 16
    assert table[0] is False and table[1] is True and table[8] is True
    assert sum(table) == 12

    loop = hompres.Structure.parse("signature R/2\nuniverse 1\nR 0 0\n")
    assert phi.evaluate(loop)

    measures = hompres.compile_fo(hompres.Formula.parse(TRIANGLE), 2)
    assert measures["inputs"] == 4
    assert measures["depth"] == 4
    assert measures["netlist"].startswith("input 0\n")


def test_sub_solvers_agree():
    p3 = hompres.Graph.family("path", 3)
    bits = [True] * 8
    brute = hompres.sub_solve(p3, 2, bits, solver="brute")
    assert brute["found"] and brute["witness"] == [0, 0, 0]
    assert hompres.sub_solve(p3, 2, bits, solver="dp")["found"]
    assert hompres.sub_solve(p3, 2, bits, solver="formula")["found"]

    empty = [False] * 8
    assert not hompres.sub_solve(p3, 2, empty)["found"]

    measures = hompres.sub_formula_measures(p3, 2)
    assert measures["formula_size"] == 8


def test_hpt_pipeline():
    report = hompres.hpt_pipeline(hompres.Formula.parse(TRIANGLE))
    assert report["preserved"]
    assert report["equivalent"]
    assert report["tree_depths"] == [3]
    assert report["psi_quantifier_rank"] == 3
    assert len(report["mincores"]) == 1

    negative = hompres.hpt_pipeline(hompres.Formula.parse("ALL x. ALL y. ~R(x, y)"))
    assert not negative["preserved"]
    assert hompres.find_homomorphism(negative["model"], negative["non_model"]) is not None

    reduction = hompres.hpt_reduction(hompres.Structure.parse(SYM_K3_PLUS_PENDANT), 1)
    assert reduction.count("\n") == 16


def test_errors_and_preservation():
    with pytest.raises(ValueError):
        hompres.Graph.parse("not a graph")
    with pytest.raises(RuntimeError):
        hompres.tree_width(hompres.Graph.family("path", 13))

    verdict = hompres.is_hom_preserved(hompres.Formula.parse("ALL x. ALL y. ~R(x, y)"), 2)
    assert not verdict["preserved"]
    assert "model" in verdict and "non_model" in verdict
