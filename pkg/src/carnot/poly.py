"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as {exponent tuple: coefficient}; no zero coefficients
are kept.  This is deliberately minimal: the group calculus only needs
ring operations, partial derivatives, evaluation and weight bookkeeping
under dilations.
"""

from .rationals import Rat, ZERO


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        self.nvars = nvars
        self.terms = terms

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars, c):
        c = Rat(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars, j):
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): Rat(1)})

    @classmethod
    def monomial(cls, nvars, exps, c=1):
        c = Rat(c)
        exps = tuple(exps)
        if len(exps) != nvars:
            raise ValueError("exponent length mismatch")
        return cls(nvars, {exps: c} if c else {})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, ZERO) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return Poly(self.nvars, terms)

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Poly(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = Rat(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def deriv(self, j):
        out = {}
        for e, c in self.terms.items():
            k = e[j]
            if k:
                e2 = e[:j] + (k - 1,) + e[j + 1:]
                v = out.get(e2, ZERO) + k * c
                if v:
                    out[e2] = v
                else:
                    out.pop(e2, None)
        return Poly(self.nvars, out)

    def evaluate(self, values):
        if len(values) != self.nvars:
            raise ValueError("value count mismatch")
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for x, k in zip(values, e):
                for _ in range(k):
                    term *= x
            total += term
        return total

    def restrict_tail_zero(self, keep):
        """Set variables keep.. to zero and drop them from the tuple."""
        out = {}
        for e, c in self.terms.items():
            if any(e[keep:]):
                continue
            out[e[:keep]] = c
        return Poly(keep, out)

    def dilation_weights(self, weights):
        """Set of monomial weights sum(beta_j * w_j) present."""
        return {exponent_weight(e, weights) for e in self.terms}

    def __str__(self):
        return self.pretty()

    def pretty(self, names=None):
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = []
            for j, k in enumerate(e):
                if k == 1:
                    factors.append(names[j])
                elif k > 1:
                    factors.append(f"{names[j]}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.pretty()})"


def exponent_weight(exps, weights):
    w = ZERO
    for k, wt in zip(exps, weights):
        if k:
            w += k * wt
    return w


def monomials_up_to_weight(weights, cap, include_constant=False):
    """All exponent tuples with dilation weight <= cap, sorted by
    (weight, exponents).  Weights must be positive rationals."""
    n = len(weights)
    out = []

    def build(prefix, j, remaining):
        if j == n:
            exps = tuple(prefix)
            if include_constant or any(exps):
                out.append((cap - remaining, exps))
            return
        w = weights[j]
        top = int(remaining / w)
        for k in range(top + 1):
            build(prefix + [k], j + 1, remaining - k * w)

    build([], 0, cap)
    out.sort()
    return [e for _, e in out]
