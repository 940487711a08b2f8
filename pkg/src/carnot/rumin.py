"""The contracted de Rham (Rumin) complex, realized symbolically.

Starting from the homotopy r = 1 - d0inv d - d d0inv (d0inv acting
pointwise on coefficients), iterating r on a polynomial form reaches a
fixed point: the weight-0 part of r is the harmonic projection onto E0
and each iteration pushes the residue strictly up in coframe weight,
which is bounded.  The stabilized map is the projection Pi_E onto

    E = ker d0inv  intersect  ker(d0inv d)

along F = Im d0inv + Im(d d0inv), and the conjugated differential

    d_c = Pi_E0 d Pi_E Pi_E0

squares to zero and raises coframe weight by at least 1 on contracted
forms.  All operators here are exact; sweeps enumerate monomial
generators up to a dilation-weight cap.
"""

from dataclasses import dataclass

from .rationals import Rat, ZERO
from . import forms
from .forms import mask_weight
from .group import GroupCalculus, PolyForm, DEFAULT_STEP_CAP
from .poly import Poly, exponent_weight, monomials_up_to_weight


class NonStabilizing(Exception):
    """The retraction failed to reach a fixed point within the cap."""


@dataclass(frozen=True)
class Witness:
    """A contracted form P*alpha0 with d_c(P alpha0) != 0."""

    degree: int               # degree k of the non-closed (k-1)-form's target
    exponents: tuple          # monomial exponents of P
    polynomial_weight: Rat
    base_index: int           # position in the degree-(k-1) E0 basis
    base: object              # InvariantForm alpha0
    value: PolyForm           # d_c(P alpha0)
    value_weight: Rat         # minimal coframe weight of the value


def _columns(mat, dom_masks, cod_masks):
    """Sparse column map {mask: ((mask', coeff), ...)} of a matrix."""
    cols = {}
    for c, mask in enumerate(dom_masks):
        entries = []
        for r, target in enumerate(cod_masks):
            v = mat.rows[r][c]
            if v:
                entries.append((target, v))
        if entries:
            cols[mask] = tuple(entries)
    return cols


class RuminEngine:
    """Contracted-complex operators for one graded algebra."""

    def __init__(self, alg, grading, step_cap=DEFAULT_STEP_CAP):
        self.alg = alg
        self.grading = grading
        self.calculus = GroupCalculus(alg, grading, step_cap)
        n = alg.n
        q = grading.homogeneous_dimension
        self.iteration_cap = int(q) + (0 if int(q) == q else 1) + 1
        masks = [forms.monomials(n, k) for k in range(n + 2)]
        self._pinv_cols = []   # degree k -> columns of d0inv : k -> k-1
        self._pi0_cols = []    # degree k -> columns of Pi_E0 : k -> k
        for k in range(n + 1):
            dom = masks[k]
            cod = masks[k - 1] if k >= 1 else []
            self._pinv_cols.append(_columns(forms.d0_pseudoinverse(alg, k), dom, cod))
            self._pi0_cols.append(_columns(forms.pi_e0_matrix(alg, k), dom, dom))
        self._e0_bases = [forms.e0_basis(alg, grading, k) for k in range(n + 1)]
        self._pi_e_cache = {}

    # -- pointwise operators -------------------------------------------

    def _apply_cols(self, cols, form, degree_shift):
        out = {}
        for (mask, exps), c in form.terms.items():
            for m2, v in cols.get(mask, ()):
                key = (m2, exps)
                nv = out.get(key, ZERO) + c * v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return PolyForm(form.degree + degree_shift, form.nvars, out)

    def d0_partial_inverse(self, form):
        """d0inv applied coefficientwise (degree k -> k-1)."""
        if form.degree <= 0 or form.degree > self.alg.n:
            return PolyForm(form.degree - 1, form.nvars)
        return self._apply_cols(self._pinv_cols[form.degree], form, -1)

    def pi_e0(self, form):
        """Harmonic projection applied coefficientwise."""
        if form.degree < 0 or form.degree > self.alg.n:
            return PolyForm(form.degree, form.nvars)
        return self._apply_cols(self._pi0_cols[form.degree], form, 0)

    def is_contracted(self, form):
        return self.pi_e0(form) == form

    def e0_basis(self, k):
        return self._e0_bases[k]

    # -- retraction and its stabilization --------------------------------

    def retraction(self, form):
        """One application of r = 1 - d0inv d - d d0inv."""
        d = self.calculus.de_rham_d
        out = form - self.d0_partial_inverse(d(form))
        if form.degree >= 1:
            out = out - d(self.d0_partial_inverse(form))
        return out

    def _pi_e_monomial(self, mask, exps):
        key = (mask, exps)
        hit = self._pi_e_cache.get(key)
        if hit is None:
            current = PolyForm.term(self.alg.n, mask, exps)
            iterations = None
            for m in range(1, self.iteration_cap + 1):
                nxt = self.retraction(current)
                if nxt == current:
                    iterations = m - 1
                    break
                current = nxt
            if iterations is None:
                raise NonStabilizing(
                    f"retraction not stable after {self.iteration_cap} steps "
                    f"on mask={mask:b}, exps={exps}")
            hit = (current, iterations)
            self._pi_e_cache[key] = hit
        return hit

    def pi_e(self, form):
        """Projection onto E along F (retraction stabilized; linear)."""
        return self.pi_e_with_iterations(form)[0]

    def pi_e_with_iterations(self, form):
        out = PolyForm(form.degree, form.nvars)
        worst = 0
        for (mask, exps), c in form.terms.items():
            res, iters = self._pi_e_monomial(mask, exps)
            worst = max(worst, iters)
            out = out + res.scale(c)
        return out, worst

    # -- the contracted differential --------------------------------------

    def d_c(self, form):
        """d_c = Pi_E0 d Pi_E Pi_E0 (degree k -> k+1)."""
        inner = self.pi_e(self.pi_e0(form))
        return self.pi_e0(self.calculus.de_rham_d(inner))

    def horizontal_differential(self, p):
        """Weight-1 part of d on a function: sum over weight-1 frame fields."""
        f = PolyForm.from_poly(p)
        parts = self.calculus.weight_split(f)
        one = parts.get(Rat(1))
        return one if one is not None else PolyForm(1, p.nvars)

    # -- sweeps ------------------------------------------------------------

    def check_stabilization(self, weight_cap, degrees=None):
        """Pi_E reaches a fixed point within the cap on every generator."""
        failures = []
        for mask, exps in self.calculus.homogeneous_generators(weight_cap, degrees):
            try:
                self._pi_e_monomial(mask, exps)
            except NonStabilizing as exc:
                failures.append(str(exc))
        return failures

    def check_e_membership(self, weight_cap, degrees=None):
        """Pi_E lands in E: d0inv(Pi_E g) = 0 and d0inv(d Pi_E g) = 0."""
        failures = []
        d = self.calculus.de_rham_d
        for mask, exps in self.calculus.homogeneous_generators(weight_cap, degrees):
            pe = self.pi_e(PolyForm.term(self.alg.n, mask, exps))
            if not self.d0_partial_inverse(pe).is_zero():
                failures.append(f"d0inv Pi_E != 0 on mask={mask:b}, exps={exps}")
            if not self.d0_partial_inverse(d(pe)).is_zero():
                failures.append(f"d0inv d Pi_E != 0 on mask={mask:b}, exps={exps}")
        return failures

    def check_d_commutation(self, weight_cap, degrees=None):
        """Pi_E is a chain map: d Pi_E = Pi_E d on the sweep."""
        failures = []
        d = self.calculus.de_rham_d
        for mask, exps in self.calculus.homogeneous_generators(weight_cap, degrees):
            g = PolyForm.term(self.alg.n, mask, exps)
            if d(self.pi_e(g)) != self.pi_e(d(g)):
                failures.append(f"d Pi_E != Pi_E d on mask={mask:b}, exps={exps}")
        return failures

    def check_conjugation_identities(self, weight_cap, degrees=None):
        """Pi_E Pi_E0 Pi_E = Pi_E and Pi_E0 Pi_E Pi_E0 = Pi_E0 on the sweep."""
        failures = []
        for mask, exps in self.calculus.homogeneous_generators(weight_cap, degrees):
            g = PolyForm.term(self.alg.n, mask, exps)
            pe = self.pi_e(g)
            if self.pi_e(self.pi_e0(pe)) != pe:
                failures.append(f"Pi_E Pi_E0 Pi_E != Pi_E on mask={mask:b}, exps={exps}")
            p0 = self.pi_e0(g)
            if self.pi_e0(self.pi_e(p0)) != p0:
                failures.append(f"Pi_E0 Pi_E Pi_E0 != Pi_E0 on mask={mask:b}, exps={exps}")
        return failures

    def contracted_generators(self, weight_cap, degrees=None):
        """Monomial contracted forms P * alpha0, total weight <= cap.

        Yields (degree, exponents, base_index, form); P = 1 included.
        """
        n = self.alg.n
        if degrees is None:
            degrees = range(n + 1)
        for k in degrees:
            for b, alpha in enumerate(self._e0_bases[k]):
                w0 = max(alpha.weights(self.grading), default=None)
                if w0 is None:
                    continue
                room = weight_cap - w0
                if room < 0:
                    continue
                for exps in monomials_up_to_weight(self.grading.weights, room,
                                                   include_constant=True):
                    form = PolyForm(k, n,
                                    {(m, exps): c for m, c in alpha.terms.items()})
                    yield k, exps, b, form

    def check_dc_squared(self, weight_cap, degrees=None):
        """d_c(d_c(g)) = 0 and Pi_E0 d_c = d_c on contracted generators."""
        failures = []
        for k, exps, b, g in self.contracted_generators(weight_cap, degrees):
            once = self.d_c(g)
            if not self.is_contracted(once):
                failures.append(f"d_c output not contracted at k={k}, exps={exps}, e0#{b}")
            if not self.d_c(once).is_zero():
                failures.append(f"d_c o d_c != 0 at k={k}, exps={exps}, e0#{b}")
        return failures

    def check_dc_weight_increase(self, weight_cap, degrees=None):
        """Every d_c output component sits >= 1 above the input coframe weight.

        Returns (failures, gaps) where gaps maps degree k to the minimal
        observed weight increase among nonzero outputs.
        """
        failures = []
        gaps = {}
        for k, exps, b, g in self.contracted_generators(weight_cap, degrees):
            w_in = g.min_coframe_weight(self.grading)
            out = self.d_c(g)
            if out.is_zero():
                continue
            w_out = out.min_coframe_weight(self.grading)
            gap = w_out - w_in
            if gap < 1:
                failures.append(
                    f"d_c weight increase {gap} < 1 at k={k}, exps={exps}, e0#{b}")
            old = gaps.get(k)
            gaps[k] = gap if old is None or gap < old else old
        return failures, gaps

    def check_dc_on_functions(self, weight_cap):
        """On a Carnot grading, d_c of a function is its horizontal differential."""
        failures = []
        for exps in monomials_up_to_weight(self.grading.weights, weight_cap,
                                           include_constant=True):
            p = Poly.monomial(self.alg.n, exps)
            lhs = self.d_c(PolyForm.from_poly(p))
            if lhs != self.horizontal_differential(p):
                failures.append(f"d_c != horizontal differential on exps={exps}")
        return failures

    # -- witness search ------------------------------------------------------

    def find_nonclosed_witness(self, k, poly_weight_cap=3):
        """First P, alpha0 with d_c(P alpha0) != 0, alpha0 in the E0 basis
        of degree k-1 and P a nonconstant monomial of weight <= cap.

        Search order: increasing polynomial weight, then lexicographic
        exponents, then E0 basis position; returns None when the cap is
        exhausted.
        """
        if not 1 <= k <= self.alg.n:
            raise ValueError(f"degree must be in 1..{self.alg.n}")
        n = self.alg.n
        basis = self._e0_bases[k - 1]
        for exps in monomials_up_to_weight(self.grading.weights, poly_weight_cap):
            w_p = exponent_weight(exps, self.grading.weights)
            for b, alpha in enumerate(basis):
                g = PolyForm(k - 1, n,
                             {(m, exps): c for m, c in alpha.terms.items()})
                val = self.d_c(g)
                if not val.is_zero():
                    return Witness(k, exps, w_p, b, alpha, val,
                                   val.min_coframe_weight(self.grading))
        return None
