"""Symbolic calculus on the nilpotent group in exponential coordinates.

The group law is the Baker-Campbell-Hausdorff series evaluated through
Dynkin's formula; nilpotency truncates the series, so the law is an
exactly associative polynomial map.  Differentiating left translation
gives the left-invariant frame

    X_i = d/dx_i + sum_{j>i} P_ij d/dx_j

with dilation-homogeneous P_ij, and the full de Rham differential acts
on forms written in the dual invariant coframe by

    d(f theta_I) = sum_i (X_i f) theta^i ^ theta_I + f d0(theta_I).

Collecting the right-hand side by the coframe weight it adds splits d
into d = d_0 + d_1 + ... + d_r where d_i raises coframe weight by
exactly i (and, dually, lowers the polynomial weight by i, so the total
dilation weight of a homogeneous form is preserved).
"""

import math
from functools import lru_cache

from .rationals import Rat, ZERO, ONE
from .algebra import nilpotency_step
from .poly import Poly, exponent_weight, monomials_up_to_weight
from . import forms
from .forms import InvariantForm, wedge_sign, mask_weight

DEFAULT_STEP_CAP = 6


class StepTooLarge(Exception):
    """Nilpotency step beyond the configured Dynkin truncation cap."""


class NotHomogeneous(Exception):
    """Operation requires a dilation-homogeneous form."""


@lru_cache(maxsize=None)
def _dynkin_terms(step):
    """BCH terms up to total word length `step`.

    Each entry is (coefficient, letters, core): the term is the nested
    bracket ad_{letters[0]} ... ad_{letters[-1]}(core) with letter 0 for
    the first argument and 1 for the second.
    """
    sequences = []

    def extend(seq, total):
        for p in range(step - total + 1):
            for q in range(step - total - p + 1):
                if p == 0 and q == 0:
                    continue
                sequences.append(seq + ((p, q),))
                extend(seq + ((p, q),), total + p + q)

    extend((), 0)
    terms = []
    for seq in sequences:
        m = len(seq)
        total = sum(p + q for p, q in seq)
        p_last, q_last = seq[-1]
        if q_last >= 2 or (q_last == 0 and p_last != 1):
            continue  # innermost ad of the core by itself: term vanishes
        letters = []
        for p, q in seq[:-1]:
            letters.extend([0] * p + [1] * q)
        if q_last == 1:
            letters.extend([0] * p_last)
            core = 1
        else:
            core = 0
        if letters and letters[-1] == core:
            continue  # [v, v] = 0
        denom = m * total
        for p, q in seq:
            denom *= math.factorial(p) * math.factorial(q)
        coeff = Rat(-1 if (m - 1) & 1 else 1, denom)
        terms.append((coeff, tuple(letters), core))
    return tuple(terms)


def _dynkin_apply(bracket, add_scaled, zero, x, y, step):
    """Evaluate the truncated BCH sum for any bilinear bracket."""
    args = (x, y)
    acc = zero()
    for coeff, letters, core in _dynkin_terms(step):
        v = args[core]
        for letter in reversed(letters):
            v = bracket(args[letter], v)
            if v is None:
                break
        if v is not None:
            add_scaled(acc, coeff, v)
    return acc


class VectorField:
    """Polynomial vector field; components in the coordinate frame."""

    __slots__ = ("components",)

    def __init__(self, components):
        self.components = tuple(components)

    def apply(self, p):
        n = len(self.components)
        out = Poly.zero(n)
        for j, comp in enumerate(self.components):
            if comp.is_zero():
                continue
            dp = p.deriv(j)
            if not dp.is_zero():
                out = out + comp * dp
        return out

    def commutator(self, other):
        n = len(self.components)
        comps = []
        for l in range(n):
            term = self.apply(other.components[l]) - other.apply(self.components[l])
            comps.append(term)
        return VectorField(comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components == other.components


class PolyForm:
    """Differential form with polynomial coefficients in the invariant
    coframe; terms keyed by (coframe bitmask, exponent tuple)."""

    __slots__ = ("degree", "nvars", "terms")

    def __init__(self, degree, nvars, terms=None):
        self.degree = degree
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, degree, nvars):
        return cls(degree, nvars)

    @classmethod
    def term(cls, nvars, mask, exps, coeff=1):
        coeff = Rat(coeff)
        exps = tuple(exps)
        terms = {(mask, exps): coeff} if coeff else {}
        return cls(mask.bit_count(), nvars, terms)

    @classmethod
    def from_invariant(cls, form, nvars):
        zero_e = (0,) * nvars
        return cls(form.degree, nvars,
                   {(m, zero_e): c for m, c in form.terms.items()})

    @classmethod
    def from_poly(cls, p, mask=0):
        return cls(mask.bit_count(), p.nvars,
                   {(mask, e): c for e, c in p.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (self.degree == other.degree and self.nvars == other.nvars
                and self.terms == other.terms)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            v = terms.get(key, ZERO) + c
            if v:
                terms[key] = v
            else:
                terms.pop(key, None)
        return PolyForm(self.degree, self.nvars, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Rat(c)
        if not c:
            return PolyForm(self.degree, self.nvars)
        return PolyForm(self.degree, self.nvars,
                        {k: c * v for k, v in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def coefficient(self, mask):
        """Polynomial coefficient of one coframe monomial."""
        out = {}
        for (m, e), c in self.terms.items():
            if m == mask:
                out[e] = c
        return Poly(self.nvars, out)

    def invariant_part(self):
        zero_e = (0,) * self.nvars
        return InvariantForm(self.degree,
                             {m: c for (m, e), c in self.terms.items() if e == zero_e})

    def coframe_weights(self, grading):
        return {mask_weight(m, grading) for (m, _e) in self.terms}

    def min_coframe_weight(self, grading):
        ws = self.coframe_weights(grading)
        return min(ws) if ws else None

    def total_weights(self, grading):
        """Dilation weights w(beta) + w(I) of the terms present."""
        return {exponent_weight(e, grading.weights) + mask_weight(m, grading)
                for (m, e) in self.terms}

    def is_homogeneous(self, grading):
        return len(self.total_weights(grading)) <= 1

    def pretty(self, basis, coords=None):
        if not self.terms:
            return "0"
        if coords is None:
            coords = coordinate_names(basis)
        parts = []
        for (m, e) in sorted(self.terms):
            c = self.terms[(m, e)]
            factors = []
            for j, k in enumerate(e):
                if k == 1:
                    factors.append(coords[j])
                elif k > 1:
                    factors.append(f"{coords[j]}^{k}")
            poly = "*".join(factors)
            mono = forms.monomial_label(m, basis)
            body = "*".join(x for x in (poly, f"[{mono}]" if m else "") if x)
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
        return f"PolyForm(deg={self.degree}, {len(self.terms)} terms)"


def coordinate_names(basis):
    names = [lab.lower() for lab in basis]
    if len(set(names)) != len(names):
        names = [f"x{i}" for i in range(len(basis))]
    return names


class GroupCalculus:
    """Group law, invariant frame and de Rham calculus for one algebra.

    Values are cached per instance; all methods are pure with respect to
    the immutable algebra and grading.
    """

    def __init__(self, alg, grading, step_cap=DEFAULT_STEP_CAP):
        self.alg = alg
        self.grading = grading
        self.step = nilpotency_step(alg)
        if self.step > step_cap:
            raise StepTooLarge(
                f"nilpotency step {self.step} exceeds the cap {step_cap}")
        self._law = None
        self._fields = None
        self._field_entries = None
        self._d0_mono = {}
        self._xi_mono = {}
        self._d_mono = {}

    # -- group law -----------------------------------------------------

    def group_law(self):
        """Polynomial group law m(x, y) in 2n variables (x then y)."""
        if self._law is None:
            n = self.alg.n
            nv = 2 * n
            x = [Poly.variable(nv, i) for i in range(n)]
            y = [Poly.variable(nv, n + i) for i in range(n)]

            def bracket(u, v):
                out = [Poly.zero(nv)] * n
                nonzero = False
                for (i, j), targets in self.alg.brackets.items():
                    c = u[i] * v[j] - u[j] * v[i]
                    if c.is_zero():
                        continue
                    nonzero = True
                    for k, s in targets.items():
                        out[k] = out[k] + c.scale(s)
                return out if nonzero else None

            def add_scaled(acc, coeff, v):
                for k in range(n):
                    acc[k] = acc[k] + v[k].scale(coeff)

            acc = _dynkin_apply(bracket, add_scaled,
                                lambda: [Poly.zero(nv) for _ in range(n)],
                                x, y, self.step)
            self._law = tuple(acc)
        return self._law

    def bch(self, x, y):
        """Group product of two rational coordinate vectors."""
        n = self.alg.n
        x = [Rat(v) for v in x]
        y = [Rat(v) for v in y]

        def bracket(u, v):
            w = self.alg.bracket(u, v)
            return w if any(w) else None

        def add_scaled(acc, coeff, v):
            for k in range(n):
                acc[k] += coeff * v[k]

        return _dynkin_apply(bracket, add_scaled, lambda: [ZERO] * n, x, y, self.step)

    # -- invariant frame -------------------------------------------------

    def left_invariant_fields(self):
        """Frame X_i = (d left-translation)(d/dx_i); triangular in Eq-form."""
        if self._fields is None:
            n = self.alg.n
            law = self.group_law()
            fields = []
            for i in range(n):
                comps = []
                for j in range(n):
                    comps.append(law[j].deriv(n + i).restrict_tail_zero(n))
                fields.append(VectorField(comps))
            self._fields = tuple(fields)
            self._field_entries = tuple(
                tuple((j, c) for j, c in enumerate(f.components) if not c.is_zero())
                for f in fields)
        return self._fields

    def _apply_field_to_monomial(self, i, exps):
        """X_i applied to the coordinate monomial x^exps (cached)."""
        key = (i, exps)
        out = self._xi_mono.get(key)
        if out is None:
            self.left_invariant_fields()
            n = self.alg.n
            out = Poly.zero(n)
            for j, comp in self._field_entries[i]:
                k = exps[j]
                if not k:
                    continue
                e2 = exps[:j] + (k - 1,) + exps[j + 1:]
                out = out + comp * Poly.monomial(n, e2, k)
            self._xi_mono[key] = out
        return out

    # -- de Rham differential ---------------------------------------------

    def _d0_monomial(self, mask):
        out = self._d0_mono.get(mask)
        if out is None:
            out = forms.d0_monomial(self.alg, mask)
            self._d0_mono[mask] = out
        return out

    def _d_monomial_split(self, mask, exps):
        """d of the basis term x^exps theta_mask, split by coframe-weight
        increment: {increment: {(mask', exps'): coeff}}."""
        key = (mask, exps)
        split = self._d_mono.get(key)
        if split is None:
            n = self.alg.n
            split = {}
            part0 = {}
            for m2, c in self._d0_monomial(mask).items():
                part0[(m2, exps)] = c
            if part0:
                split[ZERO] = part0
            for i in range(n):
                if mask & (1 << i):
                    continue
                xi_f = self._apply_field_to_monomial(i, exps)
                if xi_f.is_zero():
                    continue
                s = wedge_sign(1 << i, mask)
                m2 = mask | (1 << i)
                w = self.grading.weights[i]
                bucket = split.setdefault(w, {})
                for e2, c in xi_f.terms.items():
                    v = bucket.get((m2, e2), ZERO) + s * c
                    if v:
                        bucket[(m2, e2)] = v
                    else:
                        bucket.pop((m2, e2), None)
            split = {w: b for w, b in split.items() if b}
            self._d_mono[key] = split
        return split

    def de_rham_d(self, form):
        """Full de Rham differential of a coframe polynomial form."""
        out = {}
        for (mask, exps), c in form.terms.items():
            for bucket in self._d_monomial_split(mask, exps).values():
                for key, v in bucket.items():
                    nv = out.get(key, ZERO) + c * v
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        return PolyForm(form.degree + 1, form.nvars, out)

    def weight_split(self, form):
        """Components d_i of d applied to a dilation-homogeneous form.

        Returns {weight increment i: d_i(form)}; i = 0 is the algebraic
        part, every other component raises the coframe weight by exactly
        i (and preserves the total dilation weight).  Raises
        NotHomogeneous when the input mixes total weights.
        """
        if len(form.total_weights(self.grading)) > 1:
            raise NotHomogeneous("input mixes dilation weights")
        buckets = {}
        for (mask, exps), c in form.terms.items():
            for w, bucket in self._d_monomial_split(mask, exps).items():
                tgt = buckets.setdefault(w, {})
                for key, v in bucket.items():
                    nv = tgt.get(key, ZERO) + c * v
                    if nv:
                        tgt[key] = nv
                    else:
                        tgt.pop(key, None)
        return {w: PolyForm(form.degree + 1, form.nvars, b)
                for w, b in sorted(buckets.items()) if b}

    # -- sweeps ------------------------------------------------------------

    def homogeneous_generators(self, weight_cap, degrees=None):
        """Monomial generators x^beta theta_I of total weight <= cap."""
        n = self.alg.n
        if degrees is None:
            degrees = range(n + 1)
        for k in degrees:
            for mask in forms.monomials(n, k):
                room = weight_cap - mask_weight(mask, self.grading)
                if room < 0:
                    continue
                for exps in monomials_up_to_weight(self.grading.weights, room,
                                                   include_constant=True):
                    yield mask, exps

    def check_d_squared(self, weight_cap, degrees=None):
        """d(d(g)) = 0 on every homogeneous generator up to the cap."""
        failures = []
        for mask, exps in self.homogeneous_generators(weight_cap, degrees):
            g = PolyForm.term(self.alg.n, mask, exps)
            dd = self.de_rham_d(self.de_rham_d(g))
            if not dd.is_zero():
                failures.append(f"d o d != 0 on mask={mask:b}, exps={exps}")
        return failures


def bch_product(alg, x, y, step_cap=DEFAULT_STEP_CAP):
    """Group product of two rational points, without building a calculus."""
    step = nilpotency_step(alg)
    if step > step_cap:
        raise StepTooLarge(f"nilpotency step {step} exceeds the cap {step_cap}")
    n = alg.n
    x = [Rat(v) for v in x]
    y = [Rat(v) for v in y]

    def bracket(u, v):
        w = alg.bracket(u, v)
        return w if any(w) else None

    def add_scaled(acc, coeff, v):
        for k in range(n):
            acc[k] += coeff * v[k]

    return _dynkin_apply(bracket, add_scaled, lambda: [ZERO] * n, x, y, step)
