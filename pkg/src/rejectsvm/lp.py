"""Dense two-phase simplex solver and a brute-force vertex-enumeration oracle.

Problems are stated in general form,

    minimize    c . x
    subject to  row . x  {<=, >=, =}  rhs      (one relation per row)
                lower <= x <= upper            (entries may be infinite)

The solver is deliberately plain -- a dense tableau with explicit artificial
variables -- so that small instances can be confirmed independently by
enumerating every basic solution of the standard form.  Both routes share
nothing beyond the LinearProgram container.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.linalg import blas as _blas

from .constants import BLOWUP_LIMIT, FEAS_TOL, PIVOT_TOL

_RELATIONS = ("<=", ">=", "=")

# Dantzig pivoting switches to Bland's rule after this many pivots without
# objective improvement and stays there until the objective moves again,
# which breaks degenerate cycles while keeping Dantzig's speed elsewhere.
_STALL_LIMIT = 100


class LpError(Exception):
    """Base class for linear-program failures."""


class LpInputError(LpError):
    """Malformed problem data (dimension mismatch, bad relation, non-finite)."""


class LpNumericalError(LpError):
    """The solve aborted for numerical reasons; not an infeasibility verdict."""


class LpOversizeError(LpError):
    """Vertex enumeration refused: too many standard-form columns."""


@dataclass
class LinearProgram:
    """General-form LP data.  Arrays are coerced to float and validated."""

    objective: np.ndarray
    rows: np.ndarray
    relations: tuple
    rhs: np.ndarray
    lower: np.ndarray = None
    upper: np.ndarray = None

    def __post_init__(self):
        self.objective = np.atleast_1d(np.asarray(self.objective, dtype=float))
        n = self.objective.size
        self.rows = np.asarray(self.rows, dtype=float)
        if self.rows.size == 0:
            self.rows = self.rows.reshape(0, n)
        self.rows = np.atleast_2d(self.rows)
        self.rhs = np.atleast_1d(np.asarray(self.rhs, dtype=float))
        self.relations = tuple(self.relations)
        m = len(self.relations)
        if self.rows.shape != (m, n):
            raise LpInputError(
                f"constraint matrix has shape {self.rows.shape}, expected {(m, n)}"
            )
        if self.rhs.shape != (m,):
            raise LpInputError(f"rhs has shape {self.rhs.shape}, expected ({m},)")
        for rel in self.relations:
            if rel not in _RELATIONS:
                raise LpInputError(f"unknown relation {rel!r}")
        if not np.all(np.isfinite(self.objective)):
            raise LpInputError("objective contains non-finite entries")
        if not np.all(np.isfinite(self.rows)):
            raise LpInputError("constraint rows contain non-finite entries")
        if not np.all(np.isfinite(self.rhs)):
            raise LpInputError("rhs contains non-finite entries")
        if self.lower is None:
            self.lower = np.full(n, -np.inf)
        if self.upper is None:
            self.upper = np.full(n, np.inf)
        self.lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        self.upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if self.lower.shape != (n,) or self.upper.shape != (n,):
            raise LpInputError("variable bounds must have one entry per variable")
        if np.any(np.isnan(self.lower)) or np.any(np.isnan(self.upper)):
            raise LpInputError("variable bounds contain NaN")
        if np.any(self.lower > self.upper):
            raise LpInputError("some lower bound exceeds its upper bound")

    @property
    def nvar(self):
        return self.objective.size

    @property
    def ncon(self):
        return len(self.relations)


@dataclass
class LpSolution:
    status: str                    # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray = None           # defined iff optimal
    objective_value: float = None  # defined iff optimal
    iterations: int = 0


def _to_standard_form(lp):
    """Convert to min c.x, A x = b, x >= 0, b >= 0.

    Returns (A, b, c, recover, slack_rows) where recover maps standard-form
    columns back to the original variables and slack_rows pairs each slack
    column with its row for the initial-basis scan.
    """
    m0 = lp.ncon
    col_cost = []
    col_vec = []
    recover = []
    b = lp.rhs.copy()
    extra_rows = []  # (standard column, upper - lower) for two-sided bounds
    for j in range(lp.nvar):
        aj = lp.rows[:, j]
        cj = float(lp.objective[j])
        lo = lp.lower[j]
        up = lp.upper[j]
        if np.isneginf(lo) and np.isposinf(up):
            k = len(col_cost)
            col_cost.extend([cj, -cj])
            col_vec.extend([aj, -aj])
            recover.append(("split", k, k + 1))
        elif not np.isneginf(lo):
            if lo != 0.0:
                b = b - aj * lo
            k = len(col_cost)
            col_cost.append(cj)
            col_vec.append(aj)
            recover.append(("shift", k, float(lo)))
            if not np.isposinf(up):
                extra_rows.append((k, float(up - lo)))
        else:
            # upper bound only: mirror the variable
            b = b - aj * up
            k = len(col_cost)
            col_cost.append(-cj)
            col_vec.append(-aj)
            recover.append(("mirror", k, float(up)))
    nv = len(col_cost)
    mb = len(extra_rows)
    m = m0 + mb
    rels = list(lp.relations) + ["<="] * mb
    n_slack = sum(1 for rel in rels if rel != "=")
    A = np.zeros((m, nv + n_slack))
    if m0:
        for k in range(nv):
            A[:m0, k] = col_vec[k]
    bb = np.concatenate([b, [ub for _, ub in extra_rows]])
    for i, (k, _) in enumerate(extra_rows):
        A[m0 + i, k] = 1.0
    c = np.concatenate([col_cost, np.zeros(n_slack)])
    slack_rows = []
    s = nv
    for i, rel in enumerate(rels):
        if rel == "<=":
            A[i, s] = 1.0
            slack_rows.append((s, i))
            s += 1
        elif rel == ">=":
            A[i, s] = -1.0
            slack_rows.append((s, i))
            s += 1
    neg = bb < 0
    if neg.any():
        A[neg] *= -1.0
        bb[neg] *= -1.0
    return A, bb, c, recover, slack_rows


def _recover_x(recover, x_std, nvar):
    x = np.empty(nvar)
    for j, rec in enumerate(recover):
        kind = rec[0]
        if kind == "split":
            x[j] = x_std[rec[1]] - x_std[rec[2]]
        elif kind == "shift":
            x[j] = x_std[rec[1]] + rec[2]
        else:
            x[j] = rec[2] - x_std[rec[1]]
    return x


def _audit_feasible(lp, x):
    """Raise LpNumericalError if x violates any original constraint or bound."""
    if lp.ncon:
        res = lp.rows @ x - lp.rhs
        for i, rel in enumerate(lp.relations):
            bad = (
                (rel == "<=" and res[i] > FEAS_TOL)
                or (rel == ">=" and res[i] < -FEAS_TOL)
                or (rel == "=" and abs(res[i]) > FEAS_TOL)
            )
            if bad:
                raise LpNumericalError(
                    f"claimed-optimal point violates row {i} by {res[i]:.3e}"
                )
    if np.any(x < lp.lower - FEAS_TOL) or np.any(x > lp.upper + FEAS_TOL):
        raise LpNumericalError("claimed-optimal point violates a variable bound")


def _pivot(T, r, c):
    piv = T[r, c]
    if abs(piv) <= PIVOT_TOL:
        raise LpNumericalError("pivot element vanished")
    T[r, :] /= piv
    colv = T[:, c].copy()
    colv[r] = 0.0
    rowv = T[r, :].copy()
    # in-place rank-1 update T -= colv * rowv'; T is Fortran-ordered
    _blas.dger(-1.0, colv, rowv, a=T, overwrite_a=1)
    T[:, c] = 0.0
    T[r, c] = 1.0


def _run_phase(T, basis, m, obj_row, allowed, state):
    """Pivot until the phase objective is optimal.  Returns 'optimal'/'unbounded'."""
    ncols = T.shape[1] - 1
    best_z = -T[obj_row, -1]  # finite start keeps the relative test well-defined
    stall = 0
    bland_now = not state["dantzig"]
    while True:
        red = np.where(allowed, T[obj_row, :ncols], np.inf)
        if bland_now:
            neg = np.flatnonzero(red < -PIVOT_TOL)
            if neg.size == 0:
                return "optimal"
            j = int(neg[0])
        else:
            j = int(np.argmin(red))
            if red[j] >= -PIVOT_TOL:
                return "optimal"
        col = T[:m, j]
        pos = col > PIVOT_TOL
        if not pos.any():
            return "unbounded"
        ratios = np.full(m, np.inf)
        ratios[pos] = T[:m, -1][pos] / col[pos]
        rmin = ratios.min()
        cand = np.flatnonzero(ratios <= rmin + 1e-12)
        r = int(cand[np.argmin(basis[cand])])  # lowest basic index breaks ties
        _pivot(T, r, j)
        basis[r] = j
        state["iter"] += 1
        if state["iter"] > state["max_iter"]:
            raise LpNumericalError("simplex iteration limit exceeded")
        if state["iter"] % 64 == 0 and np.abs(T).max() > BLOWUP_LIMIT:
            raise LpNumericalError("tableau magnitude exceeded blow-up limit")
        z = -T[obj_row, -1]
        # threshold sits below the steps a relaxed rhs produces, so only a
        # truly degenerate plateau trips the Bland fallback
        if z < best_z - 1e-12 * (1.0 + abs(best_z)):
            best_z = z
            stall = 0
            if state["dantzig"]:
                bland_now = False  # plateau escaped, resume Dantzig
        else:
            stall += 1
            if stall >= _STALL_LIMIT:
                bland_now = True


def _dump_tableau(T, path):
    with open(path, "w") as fh:
        for row in T:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def _warm_tableau(A, b, c, basis):
    """Canonical tableau for a caller-supplied feasible basis, or None.

    Returns None when the basis is singular or its basic solution is not
    non-negative, in which case the ordinary two-phase route runs instead.
    """
    m, ncols = A.shape
    B = A[:, basis]
    try:
        body = np.linalg.solve(B, np.column_stack([A, b]))
    except np.linalg.LinAlgError:
        return None
    x_b = body[:, -1]
    if np.any(x_b < -FEAS_TOL):
        return None
    np.clip(x_b, 0.0, None, out=x_b)  # scrub roundoff dust
    T = np.zeros((m + 1, ncols + 1), order="F")
    T[:m] = body
    T[m, :ncols] = c - c[basis] @ body[:, :ncols]
    T[m, -1] = -float(c[basis] @ x_b)
    return T


def _simplex_core(A, b, c, initial_basis, state, debug_dump):
    """Run the (possibly warm-started) two-phase simplex on standard form.

    Returns (status, basis, basic_values, rows_dropped).  basis and
    basic_values are meaningful only for status "optimal".
    """
    m, ncols = A.shape
    T = None
    if initial_basis is not None:
        basis = initial_basis.copy()
        T = _warm_tableau(A, b, c, basis)
    if T is None:
        basis = np.full(m, -1, dtype=int)
        for j in range(ncols):
            if c[j] != 0.0:
                continue  # only costless unit columns keep the cost row priced
            col = A[:, j]
            hit = np.flatnonzero(col)
            if hit.size == 1 and col[hit[0]] == 1.0 and basis[hit[0]] == -1:
                basis[hit[0]] = j
        art_rows = [i for i in range(m) if basis[i] == -1]
        n_art = len(art_rows)
        T = np.zeros((m + 2, ncols + n_art + 1), order="F")
        T[:m, :ncols] = A
        T[:m, -1] = b
        for k, i in enumerate(art_rows):
            T[i, ncols + k] = 1.0
            basis[i] = ncols + k
        T[m, :ncols] = c
        if debug_dump is not None:
            _dump_tableau(T, debug_dump)
        allowed = np.ones(ncols + n_art, dtype=bool)
        allowed[ncols:] = False  # artificials may leave the basis, never enter
        if n_art:
            T[m + 1, ncols:ncols + n_art] = 1.0
            for i in art_rows:
                T[m + 1, :] -= T[i, :]
            status = _run_phase(T, basis, m, m + 1, allowed, state)
            if status != "optimal":
                raise LpNumericalError("auxiliary phase reported unbounded")
            z_aux = -T[m + 1, -1]
            if z_aux > FEAS_TOL * (1.0 + float(np.abs(b).max(initial=0.0))):
                return "infeasible", None, None, False
            drop = []
            for i in range(m):
                if basis[i] >= ncols:
                    good = np.flatnonzero(np.abs(T[i, :ncols]) > PIVOT_TOL)
                    if good.size:
                        _pivot(T, i, int(good[0]))
                        basis[i] = int(good[0])
                    else:
                        drop.append(i)  # redundant row
            if drop:
                T = np.delete(T, drop, axis=0)
                basis = np.delete(basis, drop)
                m -= len(drop)
        keep = np.concatenate([np.arange(ncols), [ncols + n_art]])
        T = np.asfortranarray(T[: m + 1][:, keep])
    elif debug_dump is not None:
        _dump_tableau(T, debug_dump)
    status = _run_phase(T, basis, m, m, np.ones(ncols, dtype=bool), state)
    if status == "unbounded":
        return "unbounded", None, None, False
    return "optimal", basis, T[:m, -1].copy(), m < A.shape[0]


# deterministic jitter for the anti-degeneracy perturbation
_GOLDEN = 0.6180339887498949


def solve_lp(lp, pivot_rule="dantzig_bland", initial_basis=None, debug_dump=None):
    """Solve a LinearProgram with a two-phase dense simplex method.

    pivot_rule "dantzig_bland" (default) picks the steepest reduced cost and
    falls back to Bland's rule while the objective stalls; "bland" uses
    Bland's rule throughout.  Identical inputs produce bitwise-identical
    solutions.

    Degenerate problems are first solved with the inequality right-hand
    sides relaxed by tiny, deterministic, strictly decreasing offsets, which
    removes ties from the ratio test; the true right-hand side is then
    restored through the final basis.  Reduced costs do not involve b, so a
    restored basis whose basic solution is non-negative is exactly optimal
    for the unperturbed problem; otherwise the solve reruns with a smaller
    relaxation and finally with none.  Relaxation only enlarges the feasible
    region, so an infeasible verdict under relaxation is already exact.

    initial_basis optionally names standard-form columns forming a feasible
    starting basis, skipping the auxiliary phase.  Standard-form columns are:
    one per variable in declared order, except free variables contribute two
    adjacent columns (positive then negative part), followed by one slack
    column per inequality row in row order (rows synthesized for two-sided
    variable bounds come after the user's rows).  An unusable basis silently
    falls back to the two-phase route.
    """
    if pivot_rule not in ("dantzig_bland", "bland"):
        raise LpInputError(f"unknown pivot rule {pivot_rule!r}")
    A, b_true, c, recover, slack_rows = _to_standard_form(lp)
    m, ncols = A.shape
    if initial_basis is not None:
        initial_basis = np.asarray(initial_basis, dtype=int)
        if initial_basis.shape != (m,) or len(set(initial_basis.tolist())) != m:
            raise LpInputError("initial basis must name one distinct column per row")
        if m and (initial_basis.min() < 0 or initial_basis.max() >= ncols):
            raise LpInputError("initial basis column out of range")
    # relaxing direction per row: sign of the slack coefficient (0 = equality)
    sigma = np.zeros(m)
    for s, i in slack_rows:
        sigma[i] = A[i, s]
    jitter = ((np.arange(m) + 1) * _GOLDEN) % 1.0
    # strictly decreasing magnitudes keep structured warm starts feasible
    profile = (1.0 + np.abs(b_true)) * (m - np.arange(m) + jitter) / max(m, 1)
    total_iters = 0
    for eps in (1e-7, 1e-10, 0.0):
        b = b_true + eps * sigma * profile
        flip = b < 0.0
        if flip.any():  # keep rhs non-negative for the artificial start
            A_eff = A.copy()
            A_eff[flip] *= -1.0
            b = b.copy()
            b[flip] *= -1.0
            bt_eff = b_true.copy()
            bt_eff[flip] *= -1.0
        else:
            A_eff, bt_eff = A, b_true
        state = {
            "iter": 0,
            "max_iter": 50000 + 200 * (m + ncols),
            "dantzig": pivot_rule == "dantzig_bland",
        }
        status, basis, basic_values, dropped = _simplex_core(
            A_eff, b, c, initial_basis, state, debug_dump if eps == 1e-7 else None
        )
        total_iters += state["iter"]
        if status == "infeasible":
            return LpSolution("infeasible", iterations=total_iters)
        if status == "unbounded":
            if eps == 0.0:
                return LpSolution("unbounded", iterations=total_iters)
            continue  # reconfirm the verdict without relaxation
        x_std = np.zeros(ncols)
        if eps == 0.0:
            x_std[basis] = basic_values
        else:
            if dropped:
                continue  # row drops were justified only for the relaxed rhs
            try:
                x_b = np.linalg.solve(A_eff[:, basis], bt_eff)
            except np.linalg.LinAlgError:
                continue
            if np.any(x_b < -FEAS_TOL):
                continue  # relaxation changed the optimal vertex; retry
            x_std[basis] = np.clip(x_b, 0.0, None)
        x = _recover_x(recover, x_std, lp.nvar)
        _audit_feasible(lp, x)
        return LpSolution("optimal", x, float(lp.objective @ x), total_iters)
    raise LpNumericalError("exhausted solve attempts")  # pragma: no cover


# ---------------------------------------------------------------------------
# brute-force oracle


def _oracle_standard_form(lp):
    """Independent standard-form conversion used only by the enumeration oracle."""
    cols = []
    costs = []
    recover = []
    b = lp.rhs.copy()
    bound_rows = []
    for j in range(lp.nvar):
        aj = lp.rows[:, j]
        cj = float(lp.objective[j])
        lo = lp.lower[j]
        up = lp.upper[j]
        if np.isneginf(lo) and np.isposinf(up):
            k = len(cols)
            cols.append(aj)
            cols.append(-aj)
            costs.extend([cj, -cj])
            recover.append(("split", k, k + 1))
        elif not np.isneginf(lo):
            b = b - aj * lo
            k = len(cols)
            cols.append(aj)
            costs.append(cj)
            recover.append(("shift", k, float(lo)))
            if not np.isposinf(up):
                bound_rows.append((k, float(up - lo)))
        else:
            b = b - aj * up
            k = len(cols)
            cols.append(-aj)
            costs.append(-cj)
            recover.append(("mirror", k, float(up)))
    nv = len(cols)
    m0 = lp.ncon
    rels = list(lp.relations) + ["<="] * len(bound_rows)
    m = len(rels)
    n_slack = sum(1 for rel in rels if rel != "=")
    A = np.zeros((m, nv + n_slack))
    for k in range(nv):
        A[:m0, k] = cols[k]
    for i, (k, _) in enumerate(bound_rows):
        A[m0 + i, k] = 1.0
    bb = np.concatenate([b, [ub for _, ub in bound_rows]])
    c = np.concatenate([costs, np.zeros(n_slack)])
    s = nv
    for i, rel in enumerate(rels):
        if rel == "<=":
            A[i, s] = 1.0
            s += 1
        elif rel == ">=":
            A[i, s] = -1.0
            s += 1
    return A, bb, c, recover


def enumerate_vertices_oracle(lp, guard=20):
    """Exhaustively enumerate basic solutions of the standard form.

    Intended as a test oracle on small problems: every size-m column subset
    is solved, feasible basic solutions are compared, and unboundedness is
    detected through a ray certificate (a feasible basis with a negative
    reduced cost whose update column is non-positive).  Assumes the
    standard-form rows are linearly independent, which holds for the shipped
    fixtures.  Refuses problems with more than `guard` standard-form columns.
    """
    A, b, c, recover = _oracle_standard_form(lp)
    m, ncols = A.shape
    if ncols > guard:
        raise LpOversizeError(
            f"standard form has {ncols} columns, enumeration guard is {guard}"
        )
    if m > ncols:
        raise LpInputError("standard form has more rows than columns")
    if m == 0:
        x = _recover_x(recover, np.zeros(ncols), lp.nvar)
        if np.any(c < -1e-12):
            return LpSolution("unbounded", iterations=1)
        return LpSolution("optimal", x, float(lp.objective @ x), 1)
    combos = np.array(list(combinations(range(ncols), m)), dtype=int)
    feas_idx = []
    feas_x = []
    for start in range(0, len(combos), 8192):
        idx = combos[start:start + 8192]
        bases = np.moveaxis(A[:, idx], 0, 1)  # (k, m, m)
        dets = np.linalg.det(bases)
        ok = np.abs(dets) > 1e-9
        if not ok.any():
            continue
        rhs = np.broadcast_to(b[:, None], (int(ok.sum()), m, 1))
        xs = np.linalg.solve(bases[ok], rhs)[..., 0]
        feas = (xs >= -1e-9).all(axis=1)
        if feas.any():
            feas_idx.append(idx[ok][feas])
            feas_x.append(xs[feas])
    examined = len(combos)
    if not feas_idx:
        return LpSolution("infeasible", iterations=examined)
    feas_idx = np.concatenate(feas_idx)
    feas_x = np.concatenate(feas_x)
    objs = np.einsum("km,km->k", c[feas_idx], feas_x)
    best = int(np.argmin(objs))
    # a minimizing feasible basis certifies unboundedness iff some improving
    # column has a non-positive update direction
    near = np.flatnonzero(objs <= objs[best] + 1e-9)
    for k in near:
        idx = feas_idx[k]
        B = A[:, idx]
        y = np.linalg.solve(B.T, c[idx])
        red = c - A.T @ y
        red[idx] = 0.0
        for j in np.flatnonzero(red < -1e-7):
            direction = np.linalg.solve(B, A[:, j])
            if np.all(direction <= 1e-9):
                return LpSolution("unbounded", iterations=examined)
    x_std = np.zeros(ncols)
    x_std[feas_idx[best]] = feas_x[best]
    x = _recover_x(recover, x_std, lp.nvar)
    return LpSolution("optimal", x, float(lp.objective @ x), examined)
