"""Left-invariant exterior forms and the algebraic differential.

Exterior monomials over n generators are encoded as integer bitmasks
(bit i set means the i-th coframe covector is a factor); this keeps sign
bookkeeping to transposition counting on bits.  Up to 16 generators are
supported.

The algebraic differential d0 acts on the coframe by

    d0 theta^k = - sum_{i<j} c_ijk theta^i ^ theta^j,

extended as an antiderivation; this is the Chevalley-Eilenberg
differential, i.e. the de Rham differential restricted to invariant
forms.  Its adjoint delta0 is taken with the monomial basis declared
orthonormal, so delta0 is a matrix transpose and everything stays
rational.  E0 = ker d0 intersect ker delta0 is the harmonic space, and
d0inv is the Moore-Penrose partial inverse of d0.
"""

from .rationals import Rat, ZERO, ONE
from .linalg import Mat, pseudoinverse, projector, nullspace, vstack, gram_schmidt

MAX_GENERATORS = 16


def monomials(n, k):
    """Degree-k exterior monomials as bitmasks, ascending mask order."""
    if n > MAX_GENERATORS:
        raise ValueError(f"at most {MAX_GENERATORS} generators supported")
    if k < 0 or k > n:
        return []
    return [m for m in range(1 << n) if m.bit_count() == k]


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_weight(mask, grading):
    w = ZERO
    for i in indices_of(mask):
        w += grading.weights[i]
    return w


def wedge_sign(a, b):
    """Sign of theta_a ^ theta_b relative to the sorted monomial; 0 on overlap."""
    if a & b:
        return 0
    sign = 1
    rest = a
    while rest:
        low = rest & -rest
        if (b & (low - 1)).bit_count() & 1:
            sign = -sign
        rest ^= low
    return sign


def monomial_label(mask, basis):
    if mask == 0:
        return "1"
    return "^".join(basis[i] for i in indices_of(mask))


class InvariantForm:
    """Sparse rational combination of exterior monomials of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree, terms=None):
        self.degree = degree
        self.terms = terms if terms is not None else {}

    @classmethod
    def of(cls, mask, coeff=1):
        coeff = Rat(coeff)
        terms = {mask: coeff} if coeff else {}
        return cls(mask.bit_count(), terms)

    @classmethod
    def zero(cls, degree):
        return cls(degree, {})

    @classmethod
    def from_vector(cls, degree, masks, vec):
        terms = {m: c for m, c in zip(masks, vec) if c}
        return cls(degree, terms)

    def coefficient(self, mask):
        return self.terms.get(mask, ZERO)

    def is_zero(self):
        return not self.terms

    def scale(self, c):
        c = Rat(c)
        if not c:
            return InvariantForm(self.degree, {})
        return InvariantForm(self.degree, {m: c * v for m, v in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m, ZERO) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return InvariantForm(self.degree, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def wedge(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s = wedge_sign(m1, m2)
                if s:
                    m = m1 | m2
                    v = out.get(m, ZERO) + s * c1 * c2
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return InvariantForm(self.degree + other.degree, out)

    def weights(self, grading):
        """Multiset of monomial weights present, ascending."""
        return sorted(mask_weight(m, grading) for m in self.terms)

    def __eq__(self, other):
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self):
        return f"InvariantForm(deg={self.degree}, {len(self.terms)} terms)"

    def pretty(self, basis):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            label = monomial_label(m, basis)
            if label == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(label)
            elif c == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{c}*{label}")
        return " + ".join(parts).replace("+ -", "- ")


def d0_monomial(alg, mask):
    """d0 of a coframe monomial as a sparse {mask: coeff} mapping."""
    out = {}
    idx = indices_of(mask)
    for pos, t in enumerate(idx):
        rest = mask ^ (1 << t)
        outer = -ONE if pos & 1 else ONE
        for (i, j), targets in alg.brackets.items():
            c = targets.get(t)
            if not c:
                continue
            pair = (1 << i) | (1 << j)
            s = wedge_sign(pair, rest)
            if s:
                v = out.get(pair | rest, ZERO) - outer * s * c
                if v:
                    out[pair | rest] = v
                else:
                    out.pop(pair | rest, None)
    return out


def d0(alg, form):
    """Algebraic differential of an invariant form (degree k -> k+1)."""
    out = InvariantForm.zero(form.degree + 1)
    for mask, c in form.terms.items():
        for m2, c2 in d0_monomial(alg, mask).items():
            v = out.terms.get(m2, ZERO) + c * c2
            if v:
                out.terms[m2] = v
            else:
                out.terms.pop(m2, None)
    return out


def d0_matrix(alg, k):
    """Matrix of d0 from degree k to k+1 in the bitmask monomial bases."""
    n = alg.n
    dom = monomials(n, k)
    cod = monomials(n, k + 1)
    row_index = {m: r for r, m in enumerate(cod)}
    mat = Mat(len(cod), len(dom))
    for c, mask in enumerate(dom):
        for m2, v in d0_monomial(alg, mask).items():
            mat.rows[row_index[m2]][c] = v
    return mat


def delta0_matrix(alg, k):
    """Matrix of the adjoint delta0 from degree k to k-1 (a transpose)."""
    if k <= 0:
        return Mat(0, len(monomials(alg.n, k)))
    return d0_matrix(alg, k - 1).transpose()


def d0_pseudoinverse(alg, k):
    """Partial inverse of d0 as a matrix from degree k to k-1.

    Inverts d0 from the orthogonal complement of its kernel onto its
    image and vanishes on ker delta0; exactly the Moore-Penrose
    pseudoinverse in the orthonormal monomial basis.
    """
    if k <= 0:
        return Mat(0, len(monomials(alg.n, k)))
    return pseudoinverse(d0_matrix(alg, k - 1))


def weight_blocks(grading, k):
    """Degree-k monomials grouped by weight: {weight: [masks]}, ascending."""
    blocks = {}
    for m in monomials(grading.n, k):
        blocks.setdefault(mask_weight(m, grading), []).append(m)
    return dict(sorted(blocks.items()))


def d0_weight_block(alg, grading, k, w):
    """The (k, w) block of d0, mapping into the (k+1, w) block."""
    dom = weight_blocks(grading, k).get(w, [])
    cod = weight_blocks(grading, k + 1).get(w, [])
    row_index = {m: r for r, m in enumerate(cod)}
    mat = Mat(len(cod), len(dom))
    for c, mask in enumerate(dom):
        for m2, v in d0_monomial(alg, mask).items():
            r = row_index.get(m2)
            if r is None:
                raise ValueError("d0 does not preserve the weight block")
            mat.rows[r][c] = v
    return mat


def _e0_block_vectors(alg, grading, k, w):
    """Kernel of [d0; delta0] restricted to the (k, w) monomial block."""
    down = d0_weight_block(alg, grading, k - 1, w) if k >= 1 else None
    up = d0_weight_block(alg, grading, k, w)
    mats = [up]
    if down is not None:
        mats.append(down.transpose())
    stacked = mats[0]
    for m in mats[1:]:
        stacked = vstack(stacked, m)
    return nullspace(stacked)


def e0_basis(alg, grading, k):
    """Orthogonal basis of E0 in degree k, weight-homogeneous, weights ascending."""
    out = []
    for w, masks in weight_blocks(grading, k).items():
        vecs = gram_schmidt(_e0_block_vectors(alg, grading, k, w))
        for v in vecs:
            out.append(InvariantForm.from_vector(k, masks, v))
    return out


def pi_e0_matrix(alg, k):
    """Orthogonal projection onto E0 = ker d0 intersect ker delta0 in degree k."""
    dom = monomials(alg.n, k)
    up = d0_matrix(alg, k)
    if k >= 1:
        stacked = vstack(up, d0_matrix(alg, k - 1).transpose())
    else:
        stacked = up
    return projector(nullspace(stacked), len(dom))


def hodge_star(alg, form):
    """Hodge star for the orthonormal coframe, orientation theta_1^...^theta_n."""
    n = alg.n
    full = (1 << n) - 1
    out = InvariantForm.zero(n - form.degree)
    for mask, c in form.terms.items():
        comp = full ^ mask
        s = wedge_sign(mask, comp)
        v = out.terms.get(comp, ZERO) + s * c
        if v:
            out.terms[comp] = v
        else:
            out.terms.pop(comp, None)
    return out


def volume_form(n):
    return InvariantForm.of((1 << n) - 1)
