"""
Exact linear algebra for the Floer engine

Integer systems are solved through the Smith normal form, linear programs
over the rationals with a two-phase tableau simplex, and chain complexes are
reduced over the two-element field.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from app.core.errors import InternalInvariantError

logger = logging.getLogger(__name__)

IntVector = Tuple[int, ...]


class IntegerSystem:
    """
    The integer linear system  m . d = b  for a fixed integer matrix m

    The decomposition a = s . m . t is computed once; solving, the kernel
    lattice and the residue class of a right-hand side are read off it.
    """

    def __init__(self, rows: Sequence[Sequence[int]], columns: int):
        self.rows = len(rows)
        self.columns = columns
        self._m = Matrix(self.rows, columns, [int(v) for row in rows for v in row])
        if self.rows == 0 or columns == 0:
            self._s = Matrix.eye(self.rows)
            self._t = Matrix.eye(columns)
            self._diagonal: List[int] = []
            return
        a, s, t = smith_normal_decomp(self._m, domain=ZZ)
        if a != s * self._m * t:
            raise InternalInvariantError("Smith decomposition does not reproduce the matrix")
        size = min(self.rows, columns)
        for i in range(self.rows):
            for j in range(columns):
                if i != j and a[i, j] != 0:
                    raise InternalInvariantError("Smith form is not diagonal")
        self._s = s
        self._t = t
        self._diagonal = [int(a[i, i]) for i in range(size)]
        logger.debug(f"Integer system {self.rows}x{columns}: invariants {self._diagonal}")

    @property
    def rank(self) -> int:
        return sum(1 for d in self._diagonal if d != 0)

    def residue(self, rhs: Sequence[int]) -> IntVector:
        """
        Class of rhs in Z^rows / image(m)

        Two right-hand sides have equal residues iff their difference is in
        the image of m.
        """
        y = self._s * Matrix(self.rows, 1, [int(v) for v in rhs])
        key = []
        for i in range(self.rows):
            value = int(y[i])
            d = self._diagonal[i] if i < len(self._diagonal) else 0
            if d == 0:
                key.append(value)
            else:
                key.append(value % abs(d))
        return tuple(key)

    def solve(self, rhs: Sequence[int]) -> Optional[IntVector]:
        """Particular integer solution of m . d = rhs, or None"""
        if len(rhs) != self.rows:
            raise InternalInvariantError(f"right-hand side has {len(rhs)} entries, expected {self.rows}")
        y = self._s * Matrix(self.rows, 1, [int(v) for v in rhs])
        z = [0] * self.columns
        for i in range(self.rows):
            value = int(y[i])
            d = self._diagonal[i] if i < len(self._diagonal) else 0
            if d == 0:
                if value != 0:
                    return None
                continue
            if value % d != 0:
                return None
            z[i] = value // d
        d_vec = self._t * Matrix(self.columns, 1, z)
        solution = tuple(int(v) for v in d_vec)
        check = self._m * Matrix(self.columns, 1, list(solution))
        if [int(v) for v in check] != [int(v) for v in rhs]:
            raise InternalInvariantError("integer solution fails the system")
        return solution

    def kernel(self) -> List[IntVector]:
        """Basis of the saturated lattice {d : m . d = 0}"""
        free = [j for j in range(self.columns) if j >= len(self._diagonal) or self._diagonal[j] == 0]
        return [tuple(int(self._t[i, j]) for i in range(self.columns)) for j in free]


class SimplexTableau:
    """
    Dense tableau for  max c.x  subject to  A x = b, x >= 0, b >= 0

    Pivoting follows Bland's rule, so the method terminates on degenerate
    problems. Entries are Fractions throughout.
    """

    def __init__(self, a: List[List[Fraction]], b: List[Fraction], basis: List[int]):
        self.m = len(a)
        self.n = len(a[0]) if a else 0
        self.A = [list(row) for row in a]
        self.b = list(b)
        self.basis = list(basis)

    def reduced_costs(self, c: Sequence[Fraction]) -> List[Fraction]:
        result = list(c)
        for i, var in enumerate(self.basis):
            weight = c[var]
            if weight:
                for j in range(self.n):
                    result[j] -= weight * self.A[i][j]
        return result

    def objective(self, c: Sequence[Fraction]) -> Fraction:
        return sum((c[var] * self.b[i] for i, var in enumerate(self.basis)), Fraction(0))

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        self.A[i] = [v / piv for v in self.A[i]]
        self.b[i] /= piv
        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if f:
                self.A[k] = [v - f * w for v, w in zip(self.A[k], self.A[i])]
                self.b[k] -= f * self.b[i]
        self.basis[i] = j

    def bland_primal(self, c: Sequence[Fraction], allowed: Optional[Sequence[int]] = None) -> str:
        columns = range(self.n) if allowed is None else allowed
        while True:
            costs = self.reduced_costs(c)
            entering = [j for j in columns if costs[j] > 0 and j not in self.basis]
            if not entering:
                return "optimal"
            j = min(entering)
            candidates = [
                (self.b[i] / self.A[i][j], self.basis[i], i)
                for i in range(self.m)
                if self.A[i][j] > 0
            ]
            if not candidates:
                return "unbounded"
            _, _, i = min(candidates)
            self.pivot(i, j)

    def values(self) -> List[Fraction]:
        x = [Fraction(0)] * self.n
        for i, var in enumerate(self.basis):
            x[var] = self.b[i]
        return x


def maximize(
    objective: Sequence[Fraction],
    a_ub: Sequence[Sequence[Fraction]],
    b_ub: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
) -> Tuple[str, Optional[Fraction]]:
    """
    Exact rational LP over free variables

    Args:
        objective: Coefficients of the maximized linear form
        a_ub, b_ub: Constraints a_ub . x <= b_ub
        a_eq, b_eq: Constraints a_eq . x = b_eq

    Returns:
        ("optimal", value), ("unbounded", None) or ("infeasible", None)
    """
    k = len(objective)
    slacks = len(a_ub)
    n = 2 * k + slacks
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for r, (row, bound) in enumerate(zip(a_ub, b_ub)):
        coeffs = [Fraction(v) for v in row] + [-Fraction(v) for v in row] + [Fraction(0)] * slacks
        coeffs[2 * k + r] = Fraction(1)
        rows.append(coeffs)
        rhs.append(Fraction(bound))
    for row, bound in zip(a_eq, b_eq):
        rows.append([Fraction(v) for v in row] + [-Fraction(v) for v in row] + [Fraction(0)] * slacks)
        rhs.append(Fraction(bound))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    m = len(rows)
    # phase one: an artificial variable on every row
    wide = [row + [Fraction(1 if q == i else 0) for q in range(m)] for i, row in enumerate(rows)]
    tableau = SimplexTableau(wide, rhs, [n + i for i in range(m)])
    phase_one = [Fraction(0)] * n + [Fraction(-1)] * m
    tableau.bland_primal(phase_one)
    if tableau.objective(phase_one) < 0:
        return "infeasible", None

    keep = []
    for i in range(m):
        if tableau.basis[i] < n:
            keep.append(i)
            continue
        for j in range(n):
            if tableau.A[i][j] != 0 and j not in tableau.basis:
                tableau.pivot(i, j)
                keep.append(i)
                break
    trimmed = SimplexTableau(
        [tableau.A[i][:n] for i in keep],
        [tableau.b[i] for i in keep],
        [tableau.basis[i] for i in keep],
    )
    if trimmed.m == 0:
        trimmed.n = n
    cost = [Fraction(v) for v in objective] + [-Fraction(v) for v in objective] + [Fraction(0)] * slacks
    status = trimmed.bland_primal(cost, allowed=range(n))
    if status == "unbounded":
        return "unbounded", None
    return "optimal", trimmed.objective(cost)


# ---- the two-element field ---------------------------------------------------


def f2(matrix) -> np.ndarray:
    return np.asarray(matrix, dtype=np.uint8) % 2


def f2_echelon(matrix: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F2 and its pivot columns"""
    work = f2(matrix).copy()
    rows, cols = work.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(work[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            work[[r, p]] = work[[p, r]]
        others = np.nonzero(work[:, c])[0]
        for k in others:
            if k != r:
                work[k] ^= work[r]
        pivots.append(c)
        r += 1
    return work, pivots


def f2_rank(matrix) -> int:
    array = f2(matrix)
    if array.size == 0:
        return 0
    return len(f2_echelon(array)[1])


def f2_kernel(matrix) -> List[np.ndarray]:
    """Basis of the null space {v : matrix . v = 0}"""
    array = f2(matrix)
    rows, cols = array.shape
    if cols == 0:
        return []
    if rows == 0:
        return [np.eye(cols, dtype=np.uint8)[j] for j in range(cols)]
    reduced, pivots = f2_echelon(array)
    basis = []
    for free in (j for j in range(cols) if j not in pivots):
        v = np.zeros(cols, dtype=np.uint8)
        v[free] = 1
        for r, p in enumerate(pivots):
            v[p] = reduced[r, free]
        basis.append(v)
    return basis


def f2_in_span(columns: np.ndarray, vector: np.ndarray) -> bool:
    """vector lies in the column span of columns"""
    columns = f2(columns)
    if columns.size == 0:
        return not f2(vector).any()
    extended = np.column_stack([columns, f2(vector)])
    return f2_rank(extended) == f2_rank(columns)


def f2_solve(columns: np.ndarray, vector: np.ndarray) -> Optional[np.ndarray]:
    """Some c with columns . c = vector over F2, or None"""
    columns = f2(columns)
    rows, cols = columns.shape
    target = f2(vector)
    if cols == 0:
        return np.zeros(0, dtype=np.uint8) if not target.any() else None
    reduced, pivots = f2_echelon(np.column_stack([columns, target]))
    if cols in pivots:
        return None
    solution = np.zeros(cols, dtype=np.uint8)
    for r, p in enumerate(pivots):
        solution[p] = reduced[r, cols]
    return solution
