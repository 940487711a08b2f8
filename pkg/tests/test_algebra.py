"""Lie algebra validation and gradings."""

import pytest

from carnot.algebra import (LieAlgebra, carnot_grading, derivation_grading,
                            validate, is_nilpotent, nilpotency_step,
                            NotStratified, IncompatibleGrading)
from carnot.rationals import Rat
from carnot import corpus


def so3():
    return LieAlgebra.from_brackets(
        "so3", ["X", "Y", "Z"],
        {("X", "Y"): {"Z": 1}, ("Y", "Z"): {"X": 1}, ("Z", "X"): {"Y": 1}})


def test_validate_abelian():
    assert validate(corpus.abelian(4)) == []


def test_validate_engel():
    assert validate(corpus.engel()) == []


def test_validate_so3_not_nilpotent():
    report = validate(so3())
    assert len(report) == 1
    assert "not nilpotent" in report[0]
    assert not is_nilpotent(so3())


def test_validate_jacobi_violation_names_triple():
    bad = LieAlgebra.from_brackets(
        "bad", ["X", "Y", "Z"],
        {("X", "Y"): {"Z": 1}, ("Y", "Z"): {"Y": 1}})
    report = validate(bad)
    assert any("Jacobi" in r and "(X, Y, Z)" in r for r in report)


def test_nilpotency_steps():
    assert nilpotency_step(corpus.abelian(3)) == 1
    assert nilpotency_step(corpus.heisenberg(3)) == 2
    assert nilpotency_step(corpus.engel()) == 3
    assert nilpotency_step(corpus.free_nilpotent_2_3()) == 3
    with pytest.raises(ValueError):
        nilpotency_step(so3())


def test_carnot_grading_engel():
    g = carnot_grading(corpus.engel(), ["X", "Y"])
    assert g.weights == (Rat(1), Rat(1), Rat(2), Rat(3))
    assert g.homogeneous_dimension == 7
    assert g.is_carnot


def test_carnot_grading_heisenberg():
    g = carnot_grading(corpus.heisenberg(3), ["X", "Y"])
    assert g.weights == (Rat(1), Rat(1), Rat(2))
    assert g.homogeneous_dimension == 4


def test_carnot_grading_abelian():
    alg = corpus.abelian(5)
    g = carnot_grading(alg, list(alg.basis))
    assert all(w == 1 for w in g.weights)
    assert g.homogeneous_dimension == 5


def test_carnot_grading_idempotent_on_corpus():
    for name, entry in corpus.corpus().items():
        g = entry.gradings["carnot"]
        layer1 = [i for i in range(entry.algebra.n) if g.weights[i] == 1]
        assert carnot_grading(entry.algebra, layer1).weights == g.weights, name


def test_carnot_grading_rejects_non_generating_layer():
    with pytest.raises(NotStratified):
        carnot_grading(corpus.engel(), ["X"])  # [X,X]=0: generates nothing new
    with pytest.raises(NotStratified):
        carnot_grading(corpus.engel(), ["Y"])


def test_derivation_grading_engel():
    g = derivation_grading(corpus.engel(), {"X": 1, "Y": 2, "Z": 3, "T": 4})
    assert g.homogeneous_dimension == 10
    assert not g.is_carnot


def test_derivation_grading_incompatible():
    with pytest.raises(IncompatibleGrading):
        derivation_grading(corpus.engel(), {"X": 1, "Y": 1, "Z": 1, "T": 1})


def test_derivation_grading_heisenberg_123():
    g = derivation_grading(corpus.heisenberg(3), {"X": 1, "Y": 2, "Z": 3})
    assert g.homogeneous_dimension == 6
    assert not g.is_carnot


def test_derivation_grading_detects_stratification():
    g = derivation_grading(corpus.engel(), {"X": 1, "Y": 1, "Z": 2, "T": 3})
    assert g.is_carnot


def test_derivation_grading_rational_weights():
    g = derivation_grading(corpus.heisenberg(3), {"X": "1/2", "Y": "1/2", "Z": 1})
    assert g.homogeneous_dimension == 2
    assert not g.is_carnot


def test_derivation_grading_rejects_nonpositive():
    with pytest.raises(ValueError):
        derivation_grading(corpus.abelian(2), {"E1": 0, "E2": 1})


def test_compatibility_invariant_over_corpus():
    for name, entry in corpus.corpus().items():
        for gname, g in entry.gradings.items():
            for (i, j), targets in entry.algebra.brackets.items():
                for k, c in targets.items():
                    assert not c or g.weights[i] + g.weights[j] == g.weights[k], \
                        (name, gname)
            total = Rat(0)
            for w in g.weights:
                total += w
            assert g.homogeneous_dimension == total


def test_bracket_antisymmetry():
    alg = corpus.engel()
    assert alg.bracket_basis(1, 0) == {2: Rat(-1)}
    assert alg.bracket_basis(0, 1) == {2: Rat(1)}
    assert alg.bracket_basis(2, 2) == {}


def test_from_brackets_rejects_duplicates():
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets("dup", ["X", "X"], {})
    with pytest.raises(ValueError):
        LieAlgebra.from_brackets(
            "dup2", ["X", "Y", "Z"],
            {("X", "Y"): {"Z": 1}, ("Y", "X"): {"Z": 1}})
