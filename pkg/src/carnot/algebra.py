"""Graded nilpotent Lie algebras over the rationals.

A Lie algebra is given by a basis and sparse structure constants stored
for ordered index pairs i < j; antisymmetry is synthesized on read.  A
grading assigns a positive rational weight to every basis vector so that
nonzero brackets add weights.  Carnot (stratified) gradings are detected
and carry integer weights 1..r.
"""

from dataclasses import dataclass

from .rationals import Rat, ZERO, rat
from .linalg import Mat, rref


class NotStratified(Exception):
    """The requested layer-1 set does not stratify the algebra."""


class IncompatibleGrading(Exception):
    """Weights that do not add up along a nonzero bracket."""


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    basis: tuple
    brackets: dict  # (i, j) with i < j  ->  {k: c_ijk}

    @classmethod
    def from_brackets(cls, name, basis, brackets):
        """Build from label-keyed data, e.g. {("X","Y"): {"Z": 1}}.

        Bracket values may be ints, 'a/b' strings or rationals.  Pairs may
        be given in either order; they are normalized to i < j.
        """
        basis = tuple(basis)
        if len(set(basis)) != len(basis):
            raise ValueError("basis labels must be distinct")
        index = {lab: i for i, lab in enumerate(basis)}
        table = {}
        for (a, b), targets in brackets.items():
            i = index[a] if a in index else _missing(a)
            j = index[b] if b in index else _missing(b)
            if i == j:
                raise ValueError(f"bracket [{a},{a}] must be zero")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if (i, j) in table:
                raise ValueError(f"duplicate bracket for ({a},{b})")
            vec = {}
            for lab, c in targets.items():
                k = index[lab] if lab in index else _missing(lab)
                c = rat(c) * sign
                if c:
                    vec[k] = c
            if vec:
                table[(i, j)] = vec
        return cls(name, basis, table)

    @property
    def n(self):
        return len(self.basis)

    def index(self, label):
        try:
            return self.basis.index(label)
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a sparse {k: c} mapping, any index order."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket(self, u, v):
        """Bracket of two coefficient vectors."""
        out = [ZERO] * self.n
        for (i, j), targets in self.brackets.items():
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                for k, s in targets.items():
                    out[k] += s * c
        return out

    def structure_constant(self, i, j, k):
        return self.bracket_basis(i, j).get(k, ZERO)


def _missing(label):
    raise KeyError(f"unknown basis label {label!r}")


def _unit(n, i):
    v = [ZERO] * n
    v[i] = Rat(1)
    return v


def _span_basis(vectors, n):
    """Row-echelon basis of the span of the given vectors."""
    if not vectors:
        return []
    r, pivots = rref(Mat.from_rows(vectors, n))
    return [list(r.rows[i]) for i in range(len(pivots))]


def lower_central_series(alg):
    """Nonzero terms of the lower central series, starting with the algebra."""
    n = alg.n
    terms = [_span_basis([_unit(n, i) for i in range(n)], n)]
    while True:
        prev = terms[-1]
        gens = []
        for i in range(n):
            ei = _unit(n, i)
            for v in prev:
                w = alg.bracket(ei, v)
                if any(w):
                    gens.append(w)
        nxt = _span_basis(gens, n)
        if not nxt:
            return terms
        if len(nxt) >= len(prev):
            # stabilized at a nonzero ideal: not nilpotent
            terms.append(nxt)
            return terms
        terms.append(nxt)


def is_nilpotent(alg):
    terms = lower_central_series(alg)
    return len(terms) < 2 or len(terms[-1]) < len(terms[-2])


def nilpotency_step(alg):
    """Length of the lower central series (abelian algebras have step 1)."""
    terms = lower_central_series(alg)
    if len(terms) >= 2 and len(terms[-1]) >= len(terms[-2]):
        raise ValueError(f"{alg.name}: not nilpotent")
    return len(terms)


def validate(alg):
    """Check the Jacobi identity and nilpotency.

    Returns a list of violation messages (empty when the algebra is a
    valid nilpotent Lie algebra); each Jacobi violation names its triple.
    """
    report = []
    n = alg.n
    units = [_unit(n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            bij = alg.bracket(units[i], units[j])
            for k in range(j + 1, n):
                t1 = alg.bracket(bij, units[k])
                t2 = alg.bracket(alg.bracket(units[j], units[k]), units[i])
                t3 = alg.bracket(alg.bracket(units[k], units[i]), units[j])
                if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                    report.append(
                        "Jacobi identity fails for "
                        f"({alg.basis[i]}, {alg.basis[j]}, {alg.basis[k]})")
    if not is_nilpotent(alg):
        stable = len(lower_central_series(alg)[-1])
        report.append(
            f"not nilpotent: lower central series stabilizes at dimension {stable}")
    return report


@dataclass(frozen=True)
class Grading:
    """Positive weights per basis vector; Q is their sum (= trace of the
    grading derivation, the homogeneous dimension)."""

    weights: tuple
    is_carnot: bool
    homogeneous_dimension: Rat

    def weight(self, i):
        return self.weights[i]

    @property
    def n(self):
        return len(self.weights)


def _make_grading(weights, is_carnot):
    weights = tuple(weights)
    total = ZERO
    for w in weights:
        total += w
    return Grading(weights, is_carnot, total)


def grading_violations(alg, weights):
    """Bracket/weight compatibility failures: c_ijk != 0 needs w_i+w_j = w_k."""
    bad = []
    for (i, j), targets in alg.brackets.items():
        for k, c in targets.items():
            if c and weights[i] + weights[j] != weights[k]:
                bad.append(
                    f"bracket [{alg.basis[i]},{alg.basis[j]}] hits {alg.basis[k]} "
                    f"but {weights[i]}+{weights[j]} != {weights[k]}")
    return bad


def carnot_grading(alg, layer1):
    """Stratify from a generating first layer and grade by layer index.

    layer1 is a set of basis labels (or indices).  Raises NotStratified if
    the layers do not direct-sum to the algebra through the given basis.
    """
    n = alg.n
    idx = []
    for item in layer1:
        idx.append(item if isinstance(item, int) else alg.index(item))
    if not idx:
        raise NotStratified("layer 1 is empty")
    layers = [_span_basis([_unit(n, i) for i in idx], n)]
    while True:
        gens = []
        for i in idx:
            ei = _unit(n, i)
            for v in layers[-1]:
                w = alg.bracket(ei, v)
                if any(w):
                    gens.append(w)
        nxt = _span_basis(gens, n)
        if not nxt:
            break
        layers.append(nxt)
        if sum(len(t) for t in layers) > n:
            raise NotStratified("layers exceed the dimension; not a stratification")
    if sum(len(t) for t in layers) != n:
        raise NotStratified("layer 1 does not bracket-generate the algebra")
    weights = [None] * n
    for depth, layer in enumerate(layers, start=1):
        span_rank = len(layer)
        for b in range(n):
            stacked = _span_basis(layer + [_unit(n, b)], n)
            if len(stacked) == span_rank:  # e_b lies in this layer
                if weights[b] is not None:
                    raise NotStratified(
                        f"basis vector {alg.basis[b]} lies in two layers")
                weights[b] = Rat(depth)
    if any(w is None for w in weights):
        missing = [alg.basis[b] for b in range(n) if weights[b] is None]
        raise NotStratified(f"basis not adapted to the stratification: {missing}")
    bad = grading_violations(alg, weights)
    if bad:
        raise NotStratified("; ".join(bad))
    return _make_grading(weights, True)


def derivation_grading(alg, weights):
    """Grade by a diagonal expanding derivation (one weight per basis label).

    Accepts a {label: weight} mapping or a sequence in basis order.  The
    result is flagged Carnot when the weights coincide with a
    stratification generated by the weight-1 vectors.
    """
    n = alg.n
    if hasattr(weights, "keys"):
        missing = [lab for lab in alg.basis if lab not in weights]
        if missing:
            raise ValueError(f"no weight given for {missing}")
        vec = [rat(weights[lab]) for lab in alg.basis]
    else:
        vec = [rat(w) for w in weights]
        if len(vec) != n:
            raise ValueError("weight count does not match the basis")
    for lab, w in zip(alg.basis, vec):
        if w <= 0:
            raise ValueError(f"weight of {lab} must be positive, got {w}")
    bad = grading_violations(alg, vec)
    if bad:
        raise IncompatibleGrading("; ".join(bad))
    carnot = False
    if all(w.denominator == 1 for w in vec):
        layer1 = [i for i in range(n) if vec[i] == 1]
        if layer1:
            try:
                candidate = carnot_grading(alg, layer1)
                carnot = list(candidate.weights) == vec
            except NotStratified:
                carnot = False
    return _make_grading(vec, carnot)
