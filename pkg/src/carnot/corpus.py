"""Built-in algebras: abelian spaces, Heisenberg groups, the Engel group
and free nilpotent algebras of rank 2."""

from dataclasses import dataclass

from .algebra import LieAlgebra, carnot_grading, derivation_grading


@dataclass(frozen=True)
class CorpusEntry:
    algebra: LieAlgebra
    gradings: dict
    description: str


def abelian(n):
    basis = [f"E{i}" for i in range(1, n + 1)]
    return LieAlgebra.from_brackets(f"abelian{n}", basis, {})


def heisenberg(dim):
    if dim % 2 == 0 or dim < 3:
        raise ValueError("Heisenberg algebras have odd dimension >= 3")
    m = (dim - 1) // 2
    if m == 1:
        basis = ["X", "Y", "Z"]
        brackets = {("X", "Y"): {"Z": 1}}
    else:
        basis = []
        brackets = {}
        for i in range(1, m + 1):
            basis += [f"X{i}", f"Y{i}"]
            brackets[(f"X{i}", f"Y{i}")] = {"Z": 1}
        basis.append("Z")
    return LieAlgebra.from_brackets(f"heisenberg{dim}", basis, brackets)


def engel():
    return LieAlgebra.from_brackets(
        "engel", ["X", "Y", "Z", "T"],
        {("X", "Y"): {"Z": 1}, ("X", "Z"): {"T": 1}})


def free_nilpotent_2_2():
    return LieAlgebra.from_brackets(
        "free2step2", ["X1", "X2", "X12"], {("X1", "X2"): {"X12": 1}})


def free_nilpotent_2_3():
    return LieAlgebra.from_brackets(
        "free2step3", ["X1", "X2", "X12", "X112", "X122"],
        {("X1", "X2"): {"X12": 1},
         ("X1", "X12"): {"X112": 1},
         ("X2", "X12"): {"X122": 1}})


def _entry(alg, layer1, description, extra=None):
    gradings = {"carnot": carnot_grading(alg, layer1)}
    if extra:
        gradings.update(extra)
    return CorpusEntry(alg, gradings, description)


def corpus():
    """Name -> CorpusEntry for every built-in algebra."""
    entries = {}
    for n in range(1, 7):
        alg = abelian(n)
        entries[alg.name] = _entry(alg, list(alg.basis), f"abelian R^{n}")
    h3 = heisenberg(3)
    entries["heisenberg3"] = _entry(h3, ["X", "Y"], "Heisenberg group, dim 3")
    h5 = heisenberg(5)
    entries["heisenberg5"] = _entry(
        h5, ["X1", "Y1", "X2", "Y2"], "Heisenberg group, dim 5")
    e = engel()
    entries["engel"] = _entry(
        e, ["X", "Y"], "Engel group ([X,Y]=Z, [X,Z]=T)",
        extra={"derivation": derivation_grading(e, {"X": 1, "Y": 2, "Z": 3, "T": 4})})
    f22 = free_nilpotent_2_2()
    entries["free2step2"] = _entry(f22, ["X1", "X2"],
                                   "free nilpotent, rank 2 step 2")
    f23 = free_nilpotent_2_3()
    entries["free2step3"] = _entry(f23, ["X1", "X2"],
                                   "free nilpotent, rank 2 step 3")
    return entries


def get(name):
    entries = corpus()
    if name not in entries:
        raise KeyError(f"unknown corpus algebra {name!r}; "
                       f"available: {', '.join(sorted(entries))}")
    return entries[name]
