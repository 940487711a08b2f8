"""Exterior algebra and the algebraic differential.

The independent oracle here evaluates the alternating Cartan sum
directly on basis tuples; the production code goes through the
antiderivation expansion, so agreement is a genuine cross-check.
"""

from itertools import combinations, permutations

import pytest

from carnot import corpus
from carnot.forms import (InvariantForm, monomials, mask_of, indices_of,
                          wedge_sign, mask_weight, d0, d0_monomial, d0_matrix,
                          delta0_matrix, d0_pseudoinverse, weight_blocks,
                          d0_weight_block, e0_basis, pi_e0_matrix, hodge_star,
                          volume_form)
from carnot.linalg import Mat, rank, nullspace, dot
from carnot.rationals import Rat, ZERO


def _perm_parity(seq):
    seq = list(seq)
    parity = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                parity = -parity
    return parity


def _eval_monomial(mask, args):
    """theta_I evaluated on a tuple of basis indices."""
    if len(set(args)) != len(args) or set(args) != set(indices_of(mask)):
        return 0
    return _perm_parity(args)


def _eval_form(form, arg_vectors):
    """Multilinear alternating evaluation on sparse basis-combination vectors."""
    total = ZERO
    for mask, c in form.terms.items():
        # expand multilinearly: each argument is {basis index: coeff}
        def expand(pos, chosen, scale):
            nonlocal total
            if not scale:
                return
            if pos == len(arg_vectors):
                total += c * scale * _eval_monomial(mask, tuple(chosen))
                return
            for b, v in arg_vectors[pos].items():
                expand(pos + 1, chosen + [b], scale * v)
        expand(0, [], Rat(1))
    return total


def cartan_d(alg, form):
    """Independent oracle: d(form) via the alternating bracket sum."""
    n = alg.n
    k = form.degree
    out = InvariantForm.zero(k + 1)
    for J in combinations(range(n), k + 1):
        val = ZERO
        for s in range(k + 1):
            for t in range(s + 1, k + 1):
                bracket = alg.bracket_basis(J[s], J[t])
                if not bracket:
                    continue
                rest = [({J[m]: Rat(1)}) for m in range(k + 1)
                        if m != s and m != t]
                sign = -1 if (s + t) % 2 else 1
                val += sign * _eval_form(form, [dict(bracket)] + rest)
        if val:
            out.terms[mask_of(J)] = val
    return out


@pytest.mark.parametrize("name", ["abelian3", "heisenberg3", "heisenberg5",
                                  "engel", "free2step3"])
def test_d0_matches_cartan_oracle(name):
    entry = corpus.get(name)
    alg = entry.algebra
    for k in range(0, min(alg.n, 3)):
        for mask in monomials(alg.n, k):
            form = InvariantForm.of(mask)
            assert d0(alg, form) == cartan_d(alg, form), (name, k, mask)


def test_d0_engel_generators():
    alg = corpus.engel()
    tz = d0(alg, InvariantForm.of(mask_of([2])))      # theta_Z
    assert tz == InvariantForm(2, {mask_of([0, 1]): Rat(-1)})
    tt = d0(alg, InvariantForm.of(mask_of([3])))      # theta_T
    assert tt == InvariantForm(2, {mask_of([0, 2]): Rat(-1)})


def test_d0_abelian_zero():
    alg = corpus.abelian(4)
    for k in range(5):
        for mask in monomials(4, k):
            assert d0(alg, InvariantForm.of(mask)).is_zero()


def test_d0_heisenberg_xz_closed():
    alg = corpus.heisenberg(3)
    assert d0(alg, InvariantForm.of(mask_of([0, 2]))).is_zero()


def test_d0_squared_zero_all_corpus():
    for name, entry in corpus.corpus().items():
        alg = entry.algebra
        for k in range(alg.n):
            prod = d0_matrix(alg, k + 1) @ d0_matrix(alg, k)
            assert prod.is_zero(), (name, k)


def test_d0_matrix_ranks():
    assert rank(d0_matrix(corpus.abelian(4), 2)) == 0
    assert rank(d0_matrix(corpus.heisenberg(3), 1)) == 1
    assert rank(d0_matrix(corpus.engel(), 1)) == 2


def test_d0_weight_block_diagonality():
    for name, entry in corpus.corpus().items():
        alg = entry.algebra
        for gname, g in entry.gradings.items():
            for mask in range(1 << alg.n):
                w = mask_weight(mask, g)
                for m2 in d0_monomial(alg, mask):
                    assert mask_weight(m2, g) == w, (name, gname, mask)


def test_delta0_is_transpose_and_squares_to_zero():
    for name, entry in corpus.corpus().items():
        alg = entry.algebra
        for k in range(1, alg.n + 1):
            dk = delta0_matrix(alg, k)
            assert dk == d0_matrix(alg, k - 1).transpose()
            if k >= 2:
                assert (delta0_matrix(alg, k - 1) @ dk).is_zero()


def test_delta0_examples():
    h = corpus.heisenberg(3)
    m = delta0_matrix(h, 2)
    dom = monomials(3, 2)
    cod = monomials(3, 1)
    col = dom.index(mask_of([0, 1]))
    vec = [m.rows[r][col] for r in range(len(cod))]
    expect = [ZERO] * len(cod)
    expect[cod.index(mask_of([2]))] = Rat(-1)
    assert vec == expect
    e = corpus.engel()
    m = delta0_matrix(e, 2)
    dom = monomials(4, 2)
    cod = monomials(4, 1)
    col = dom.index(mask_of([0, 2]))
    vec = [m.rows[r][col] for r in range(len(cod))]
    expect = [ZERO] * len(cod)
    expect[cod.index(mask_of([3]))] = Rat(-1)
    assert vec == expect


def _apply_to_monomial(mat, k_masks, out_masks, mask):
    col = k_masks.index(mask)
    return {m: mat.rows[r][col] for r, m in enumerate(out_masks) if mat.rows[r][col]}


def test_pseudoinverse_examples():
    h = corpus.heisenberg(3)
    p = d0_pseudoinverse(h, 2)
    dom = monomials(3, 2)
    cod = monomials(3, 1)
    assert _apply_to_monomial(p, dom, cod, mask_of([0, 1])) == {mask_of([2]): Rat(-1)}
    assert _apply_to_monomial(p, dom, cod, mask_of([0, 2])) == {}
    e = corpus.engel()
    p = d0_pseudoinverse(e, 2)
    dom = monomials(4, 2)
    cod = monomials(4, 1)
    assert _apply_to_monomial(p, dom, cod, mask_of([0, 2])) == {mask_of([3]): Rat(-1)}


def test_partial_inverse_identities_all_corpus():
    """d0inv d0 = projection onto (ker d0)-perp, d0 d0inv = projection onto
    Im d0, and d0inv vanishes on ker delta0 -- exact, every degree."""
    from carnot.linalg import projector
    for name, entry in corpus.corpus().items():
        alg = entry.algebra
        for k in range(alg.n):
            a = d0_matrix(alg, k)             # degree k -> k+1
            p = d0_pseudoinverse(alg, k + 1)  # degree k+1 -> k
            rows = [list(r) for r in a.rows]
            im_delta = projector(rows, a.ncols)            # span of delta0 image
            im_d = projector([a.col(j) for j in range(a.ncols)], a.nrows)
            assert p @ a == im_delta, (name, k)
            assert a @ p == im_d, (name, k)
            for v in nullspace(a.transpose()):             # ker delta0 in deg k+1
                assert all(not x for x in p.apply(v)), (name, k)


def test_e0_basis_engel():
    entry = corpus.get("engel")
    alg, g = entry.algebra, entry.gradings["carnot"]
    deg1 = e0_basis(alg, g, 1)
    assert [f.terms for f in deg1] == [{mask_of([0]): Rat(1)}, {mask_of([1]): Rat(1)}]
    assert [f.weights(g) for f in deg1] == [[Rat(1)], [Rat(1)]]
    deg2 = e0_basis(alg, g, 2)
    assert [f.terms for f in deg2] == [{mask_of([1, 2]): Rat(1)},
                                       {mask_of([0, 3]): Rat(1)}]
    assert sorted(w for f in deg2 for w in f.weights(g)) == [Rat(3), Rat(4)]


def test_e0_abelian_full():
    alg = corpus.abelian(4)
    from carnot.algebra import carnot_grading
    g = carnot_grading(alg, list(alg.basis))
    for k in range(5):
        basis = e0_basis(alg, g, k)
        assert len(basis) == len(monomials(4, k))
        for f in basis:
            assert set(f.weights(g)) == {Rat(k)} if k else True


def test_e0_orthogonal_and_weight_homogeneous():
    for name, entry in corpus.corpus().items():
        alg = entry.algebra
        for gname, g in entry.gradings.items():
            for k in range(alg.n + 1):
                basis = e0_basis(alg, g, k)
                masks = monomials(alg.n, k)
                vecs = [[f.terms.get(m, ZERO) for m in masks] for f in basis]
                for i in range(len(vecs)):
                    assert len(set(basis[i].weights(g))) == 1
                    for j in range(i + 1, len(vecs)):
                        assert dot(vecs[i], vecs[j]) == 0, (name, gname, k)


def test_pi_e0_examples_heisenberg():
    h = corpus.heisenberg(3)
    p = pi_e0_matrix(h, 2)
    dom = monomials(3, 2)
    assert _apply_to_monomial(p, dom, dom, mask_of([0, 1])) == {}
    assert _apply_to_monomial(p, dom, dom, mask_of([0, 2])) == {mask_of([0, 2]): Rat(1)}


def test_pi_e0_engel_xz_killed():
    e = corpus.engel()
    p = pi_e0_matrix(e, 2)
    dom = monomials(4, 2)
    assert _apply_to_monomial(p, dom, dom, mask_of([0, 2])) == {}


def test_pi_e0_abelian_identity():
    alg = corpus.abelian(3)
    for k in range(4):
        assert pi_e0_matrix(alg, k) == Mat.identity(len(monomials(3, k)))


def test_pi_e0_idempotent_symmetric_image_matches_basis():
    for name, entry in corpus.corpus().items():
        alg = entry.algebra
        g = entry.gradings["carnot"]
        for k in range(alg.n + 1):
            p = pi_e0_matrix(alg, k)
            assert p @ p == p
            assert p.transpose() == p
            assert rank(p) == len(e0_basis(alg, g, k)), (name, k)
            masks = monomials(alg.n, k)
            for f in e0_basis(alg, g, k):
                v = [f.terms.get(m, ZERO) for m in masks]
                assert p.apply(v) == v


def test_hodge_star_examples():
    e = corpus.engel()
    star_x = hodge_star(e, InvariantForm.of(mask_of([0])))
    assert star_x == InvariantForm(3, {mask_of([1, 2, 3]): Rat(1)})
    g = corpus.get("engel").gradings["carnot"]
    assert star_x.weights(g) == [Rat(6)]  # Q - 1
    h = corpus.heisenberg(3)
    assert hodge_star(h, InvariantForm.of(mask_of([2]))) == \
        InvariantForm(2, {mask_of([0, 1]): Rat(1)})
    assert hodge_star(h, volume_form(3)) == InvariantForm(0, {0: Rat(1)})


def test_hodge_star_involution_and_weight_law():
    for name, entry in corpus.corpus().items():
        alg = entry.algebra
        n = alg.n
        for gname, g in entry.gradings.items():
            q = g.homogeneous_dimension
            for k in range(n + 1):
                for mask in monomials(n, k):
                    f = InvariantForm.of(mask)
                    sf = hodge_star(alg, f)
                    assert sf.weights(g) == [q - mask_weight(mask, g)]
                    ss = hodge_star(alg, sf)
                    sign = -1 if (k * (n - k)) % 2 else 1
                    assert ss == f.scale(sign), (name, k, mask)


def test_wedge_sign_against_permutation_parity():
    for a_idx in combinations(range(5), 2):
        for b_idx in combinations(range(5), 2):
            a, b = mask_of(a_idx), mask_of(b_idx)
            if set(a_idx) & set(b_idx):
                assert wedge_sign(a, b) == 0
            else:
                assert wedge_sign(a, b) == _perm_parity(list(a_idx) + list(b_idx))


def test_dim_e0_equals_betti():
    from carnot.cohomology import cohomology
    for name, entry in corpus.corpus().items():
        alg = entry.algebra
        for gname, g in entry.gradings.items():
            table = cohomology(alg, g)
            for k in range(alg.n + 1):
                assert len(e0_basis(alg, g, k)) == table.betti[k], (name, gname, k)
