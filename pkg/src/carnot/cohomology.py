"""Weight-graded Lie algebra cohomology by exact block ranks.

The differential d0 preserves the weight of monomials, so cohomology is
computed one (degree, weight) block at a time:

    dim H^{k,w} = dim ker(d0 | k,w) - rank(d0 | k-1,w).

From the per-degree weight multisets the table derives w_min/w_max and
the weight gaps

    dN_max(k) = w_max(k) - w_min(k-1),
    dN_min(k) = max(1, w_min(k) - w_max(k-1)),

with the degree-0 convention w_min(0) = w_max(0) = 0 (constants have
weight zero).  If a cohomology group were zero-dimensional (impossible
for nilpotent algebras, but the engine must not fabricate values) the
gaps touching it are reported as undefined (None).
"""

from dataclasses import dataclass

from .rationals import Rat, ZERO, ONE
from .linalg import rank, nullspace
from . import forms


@dataclass(frozen=True)
class CohomologyTable:
    n: int
    homogeneous_dimension: Rat  # Q (Carnot) or trace of the derivation
    betti: tuple                # b_0 .. b_n
    weight_multisets: tuple     # per degree, ascending tuple of weights
    grading_is_carnot: bool

    def w_min(self, k):
        ws = self.weight_multisets[k]
        return ws[0] if ws else None

    def w_max(self, k):
        ws = self.weight_multisets[k]
        return ws[-1] if ws else None

    def delta_n_max(self, k):
        """w_max(k) - w_min(k-1), or None when either side is undefined."""
        hi, lo = self.w_max(k), self.w_min(k - 1)
        if hi is None or lo is None:
            return None
        return hi - lo

    def delta_n_min(self, k):
        """max(1, w_min(k) - w_max(k-1)), or None when undefined."""
        lo, hi = self.w_min(k), self.w_max(k - 1)
        if lo is None or hi is None:
            return None
        gap = lo - hi
        return gap if gap > 1 else ONE

    def euler_characteristic(self):
        chi = 0
        for k, b in enumerate(self.betti):
            chi += b if k % 2 == 0 else -b
        return chi


def cohomology(alg, grading):
    """Weight-graded cohomology table of a graded nilpotent Lie algebra."""
    n = alg.n
    betti = []
    multisets = []
    for k in range(n + 1):
        weights = []
        for w, masks in forms.weight_blocks(grading, k).items():
            up = forms.d0_weight_block(alg, grading, k, w)
            dim_ker = len(masks) - rank(up)
            if k >= 1:
                down = forms.d0_weight_block(alg, grading, k - 1, w)
                dim_ker -= rank(down)
            weights.extend([w] * dim_ker)
        betti.append(len(weights))
        multisets.append(tuple(sorted(weights)))
    return CohomologyTable(n, grading.homogeneous_dimension,
                           tuple(betti), tuple(multisets), grading.is_carnot)


def check_duality(table):
    """Poincare duality b_k = b_{n-k} and weight duality w -> Q - w.

    Returns violation messages; nonempty output on a valid nilpotent
    algebra indicates an engine bug.
    """
    report = []
    n, q = table.n, table.homogeneous_dimension
    for k in range(n + 1):
        if table.betti[k] != table.betti[n - k]:
            report.append(f"b_{k} = {table.betti[k]} != b_{n - k} = {table.betti[n - k]}")
        mirrored = tuple(sorted(q - w for w in table.weight_multisets[k]))
        if mirrored != table.weight_multisets[n - k]:
            report.append(
                f"weights of H^{n - k} differ from Q - weights of H^{k}: "
                f"{table.weight_multisets[n - k]} vs {mirrored}")
    return report


def check_eq9(table):
    """Monotonicity of the weight chains and ordering of the gaps.

    Checks w_max(k) - w_max(k-1) >= 1, w_min(k) - w_min(k-1) >= 1 and
    dN_max(k) >= dN_min(k) >= 1 for k = 1..n.
    """
    report = []
    for k in range(1, table.n + 1):
        for name, fn in (("w_max", table.w_max), ("w_min", table.w_min)):
            hi, lo = fn(k), fn(k - 1)
            if hi is None or lo is None:
                report.append(f"{name} undefined at degree {k} or {k - 1}")
            elif hi - lo < 1:
                report.append(f"{name}({k}) - {name}({k - 1}) = {hi - lo} < 1")
        dmax, dmin = table.delta_n_max(k), table.delta_n_min(k)
        if dmax is None or dmin is None:
            report.append(f"weight gap undefined at degree {k}")
        elif not (dmax >= dmin >= 1):
            report.append(f"dN_max({k}) = {dmax}, dN_min({k}) = {dmin} out of order")
    return report


def betti_from_full_matrices(alg, k):
    """Betti number from the full (non-blocked) d0 matrices; a cross-check."""
    up = forms.d0_matrix(alg, k)
    dim_ker = up.ncols - rank(up)
    if k >= 1:
        dim_ker -= rank(forms.d0_matrix(alg, k - 1))
    return dim_ker


def render_weight_table(table):
    """Four-row weight-gap table (columns k = 1..n), plus the Q line."""
    cols = list(range(1, table.n + 1))

    def fmt(value):
        return "-" if value is None else str(value)

    rows = [
        ("k", [str(k) for k in cols]),
        ("w_max(k)", [fmt(table.w_max(k)) for k in cols]),
        ("w_min(k)", [fmt(table.w_min(k)) for k in cols]),
        ("dN_max(k)", [fmt(table.delta_n_max(k)) for k in cols]),
        ("dN_min(k)", [fmt(table.delta_n_min(k)) for k in cols]),
    ]
    label_w = max(len(r[0]) for r in rows)
    col_w = max(max(len(v) for v in r[1]) for r in rows)
    lines = [f"Q = {table.homogeneous_dimension}", ""]
    for i, (label, values) in enumerate(rows):
        cells = "  ".join(v.rjust(col_w) for v in values)
        lines.append(f"{label.ljust(label_w)} |  {cells}")
        if i == 0:
            lines.append("-" * label_w + "-+-" + "-" * (len(cells) + 1))
    return "\n".join(lines) + "\n"


def table_to_json_dict(table):
    """JSON-ready dict; every rational is rendered as an exact string."""
    def s(value):
        return None if value is None else str(value)

    return {
        "n": table.n,
        "Q": str(table.homogeneous_dimension),
        "carnot": table.grading_is_carnot,
        "betti": list(table.betti),
        "weights": [[str(w) for w in ws] for ws in table.weight_multisets],
        "w_max": [s(table.w_max(k)) for k in range(table.n + 1)],
        "w_min": [s(table.w_min(k)) for k in range(table.n + 1)],
        "delta_n_max": [s(table.delta_n_max(k)) for k in range(1, table.n + 1)],
        "delta_n_min": [s(table.delta_n_min(k)) for k in range(1, table.n + 1)],
    }
