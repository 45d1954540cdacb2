"""
Linear algebra over F_p.

``Echelon`` is an incremental sparse row-echelon form used for the
relation spaces; rows are dicts {column: coefficient}, each normalised so
its smallest column carries coefficient 1.  The dense helpers work on
numpy int64 arrays and are used for kernels (primitives, fixed spaces).
"""

from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np

Row = Dict[int, int]


class Echelon:
    def __init__(self, p: int):
        self.p = p
        self.rows: Dict[int, Row] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vec: Row) -> Row:
        """Unique representative of vec modulo the row span supported off
        the pivot columns."""
        p = self.p
        v = {c: a % p for c, a in vec.items() if a % p}
        rows = self.rows
        while True:
            hits = [c for c in v if c in rows]
            if not hits:
                return v
            c = min(hits)
            f = v[c]
            for cc, a in rows[c].items():
                w = (v.get(cc, 0) - f * a) % p
                if w:
                    v[cc] = w
                else:
                    v.pop(cc, None)

    def add(self, vec: Row) -> bool:
        """Insert a row; returns True if the rank grew."""
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        inv = pow(v[c], -1, self.p)
        self.rows[c] = {cc: a * inv % self.p for cc, a in v.items()}
        return True


def rref_mod_p(A, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of A over F_p; returns (nonzero rows, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    nrows, ncols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(A, p: int) -> int:
    return len(rref_mod_p(A, p)[1])


def nullspace_mod_p(A, p: int, ncols: int = None) -> np.ndarray:
    """Basis (as rows, in reduced echelon form) of {x : A x = 0} over F_p."""
    A = np.array(A, dtype=np.int64)
    if A.size == 0:
        n = ncols if ncols is not None else (A.shape[1] if A.ndim == 2 else 0)
        return np.eye(n, dtype=np.int64)
    R, pivots = rref_mod_p(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for r, pc in enumerate(pivots):
            basis[b, pc] = (-R[r, f]) % p
    if len(basis):
        basis, _ = rref_mod_p(basis, p)
    return basis


def sparse_kernel(columns: List[Dict], p: int) -> np.ndarray:
    """Kernel of the matrix whose j-th column is the sparse dict columns[j]
    (arbitrary hashable row keys).  Rows of the result are in reduced
    echelon form, as for nullspace_mod_p."""
    n = len(columns)
    stored: Dict = {}  # pivot key -> (vector, combination)
    kernel = []
    for j, col in enumerate(columns):
        v = {k: a % p for k, a in col.items() if a % p}
        comb = {j: 1}
        while True:
            hit = next((k for k in v if k in stored), None)
            if hit is None:
                break
            f = v[hit]
            row, rcomb = stored[hit]
            for k, a in row.items():
                w = (v.get(k, 0) - f * a) % p
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)
            for k, a in rcomb.items():
                w = (comb.get(k, 0) - f * a) % p
                if w:
                    comb[k] = w
                else:
                    comb.pop(k, None)
        if not v:
            kernel.append(comb)
            continue
        piv = next(iter(v))
        inv = pow(v[piv], -1, p)
        stored[piv] = ({k: a * inv % p for k, a in v.items()}, {k: a * inv % p for k, a in comb.items()})
    if not kernel:
        return np.zeros((0, n), dtype=np.int64)
    K = np.zeros((len(kernel), n), dtype=np.int64)
    for r, comb in enumerate(kernel):
        for k, a in comb.items():
            K[r, k] = a
    return rref_mod_p(K, p)[0]
