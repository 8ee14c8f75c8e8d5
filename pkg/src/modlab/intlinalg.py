"""Exact integer linear algebra.

Two engines, both exact:

* `smith_normal_form` over Z with all four transform matrices, used to put
  finite abelian groups (subgroups, quotients) into invariant-factor form.
  Matrices here are tiny (generators x generators), so plain Python integers
  are used and overflow is a non-issue.

* `solve_congruences` for systems  sum_l A[r,l] * w_l == rhs[r]  (mod m_r)
  with each unknown w_l living in Z/o_l.  This is the workhorse behind every
  hom-set computation.  The system is embedded into (Z/L)^u for
  L = lcm(all moduli), split by CRT into prime-power components, and each
  component is diagonalized mod p^a (a Smith-style reduction in which the
  pivot is an entry of minimal p-valuation, hence invertible-up-to-p-power).
  Everything stays below L <= a few hundred, so int64 arithmetic is exact.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

def smith_normal_form(mat):
    """Diagonalize an integer matrix over Z.

    Args:
      mat: sequence of rows of ints (r x c), not necessarily square.

    Returns:
      (D, U, V, Uinv, Vinv) as lists of lists of ints with U*mat*V == D,
      U, V unimodular, D diagonal with nonnegative entries satisfying
      D[0][0] | D[1][1] | ...
    """
    A = [list(map(int, row)) for row in mat]
    r = len(A)
    c = len(A[0]) if r else 0
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    Uinv = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]
    Vinv = [[int(i == j) for j in range(c)] for i in range(c)]

    def row_sub(i, k, q):  # row_i -= q*row_k
        A[i] = [a - q * b for a, b in zip(A[i], A[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]
        for t in range(r):  # Uinv col_k += q*col_i
            Uinv[t][k] += q * Uinv[t][i]

    def col_sub(j, k, q):  # col_j -= q*col_k
        for t in range(r):
            A[t][j] -= q * A[t][k]
        for t in range(c):
            V[t][j] -= q * V[t][k]
        Vinv[k] = [a + q * b for a, b in zip(Vinv[k], Vinv[j])]

    def row_swap(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        for t in range(r):
            Uinv[t][i], Uinv[t][k] = Uinv[t][k], Uinv[t][i]

    def col_swap(j, k):
        for t in range(r):
            A[t][j], A[t][k] = A[t][k], A[t][j]
        for t in range(c):
            V[t][j], V[t][k] = V[t][k], V[t][j]
        Vinv[j], Vinv[k] = Vinv[k], Vinv[j]

    def row_neg(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for t in range(r):
            Uinv[t][i] = -Uinv[t][i]

    n = min(r, c)
    for k in range(n):
        # locate a minimal-magnitude nonzero entry in the trailing block
        best = None
        for i in range(k, r):
            for j in range(k, c):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        while True:
            i, j = best
            if i != k:
                row_swap(i, k)
            if j != k:
                col_swap(j, k)
            if A[k][k] < 0:
                row_neg(k)
            # clear column k below the pivot
            dirty = False
            for t in range(k + 1, r):
                if A[t][k] != 0:
                    q = A[t][k] // A[k][k]
                    row_sub(t, k, q)
                    if A[t][k] != 0:
                        dirty = True
            # clear row k right of the pivot
            for t in range(k + 1, c):
                if A[k][t] != 0:
                    q = A[k][t] // A[k][k]
                    col_sub(t, k, q)
                    if A[k][t] != 0:
                        dirty = True
            if not dirty and all(A[t][k] == 0 for t in range(k + 1, r)) \
                    and all(A[k][t] == 0 for t in range(k + 1, c)):
                # pivot must divide the whole trailing block
                offender = None
                for i2 in range(k + 1, r):
                    for j2 in range(k + 1, c):
                        if A[i2][j2] % A[k][k] != 0:
                            offender = (i2, j2)
                            break
                    if offender:
                        break
                if offender is None:
                    break
                # fold the offending row in and keep reducing
                row_sub(k, offender[0], -1)
            # find the new minimal entry and loop
            best = None
            for i2 in range(k, r):
                for j2 in range(k, c):
                    if A[i2][j2] != 0 and (best is None or abs(A[i2][j2]) < abs(A[best[0]][best[1]])):
                        best = (i2, j2)

    return A, U, V, Uinv, Vinv


def mat_mul(X, Y):
    """Integer matrix product of lists-of-lists."""
    if not X:
        return []
    inner = len(Y)
    cols = len(Y[0]) if inner else 0
    return [[sum(X[i][t] * Y[t][j] for t in range(inner)) for j in range(cols)]
            for i in range(len(X))]


# ---------------------------------------------------------------------------
# Linear congruence systems
# ---------------------------------------------------------------------------

@dataclass
class SolutionGroup:
    """Solution set of a congruence system as a coset of a finite group.

    particular: one solution vector (mod unk_mods), or None for homogeneous
      calls where 0 is returned implicitly.
    gens/orders: independent generators of the homogeneous solution group and
      their additive orders; the full group is { sum t_i*gens[i] } with
      0 <= t_i < orders[i], all combinations distinct.
    size: order of the homogeneous group (== prod(orders)).
    """
    particular: np.ndarray
    gens: np.ndarray      # shape (g, u) int64
    orders: np.ndarray    # shape (g,) int64
    size: int
    unk_mods: np.ndarray  # shape (u,) int64

    def enumerate(self):
        """All solutions, shape (size, u).  Caller guards the size."""
        out = self.particular[None, :].astype(np.int64)
        for g, o in zip(self.gens, self.orders):
            mult = np.arange(int(o), dtype=np.int64)[:, None] * g[None, :]
            out = (out[:, None, :] + mult[None, :, :]).reshape(-1, out.shape[1])
            out %= self.unk_mods[None, :]
        return out


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _diagonalize_mod_q(B, c, p, a):
    """Diagonalize B mod q = p**a with column transform V; row ops hit c too.

    Returns (pivots, V, c) where pivots is the list of diagonal entries
    (one per pivot column, each with p-valuation < a), the trailing block
    after the last pivot being zero mod q.
    """
    q = p ** a
    B = B.copy() % q
    c = c.copy() % q
    r, u = B.shape
    V = np.eye(u, dtype=np.int64)
    pivots = []
    k = 0
    while k < min(r, u):
        # entry of minimal p-valuation in the trailing block
        block = B[k:, k:] % q
        nz = np.nonzero(block)
        if len(nz[0]) == 0:
            break
        vals = block[nz]
        pvals = np.zeros(len(vals), dtype=np.int64)
        for idx, x in enumerate(vals):
            v = 0
            x = int(x)
            while x % p == 0:
                x //= p
                v += 1
            pvals[idx] = v
        best = int(np.argmin(pvals))
        bi, bj = int(nz[0][best]) + k, int(nz[1][best]) + k
        if bi != k:
            B[[k, bi]] = B[[bi, k]]
            c[[k, bi]] = c[[bi, k]]
        if bj != k:
            B[:, [k, bj]] = B[:, [bj, k]]
            V[:, [k, bj]] = V[:, [bj, k]]
        piv = int(B[k, k])
        v = int(pvals[best])
        unit = piv // (p ** v)
        unit_inv = pow(unit, -1, q)
        # clear column k below pivot
        for i in range(k + 1, r):
            x = int(B[i, k])
            if x % q:
                f = ((x // (p ** v)) * unit_inv) % q
                B[i] = (B[i] - f * B[k]) % q
                c[i] = (c[i] - f * c[k]) % q
        # clear row k right of pivot
        for j in range(k + 1, u):
            x = int(B[k, j])
            if x % q:
                f = ((x // (p ** v)) * unit_inv) % q
                B[:, j] = (B[:, j] - f * B[:, k]) % q
                V[:, j] = (V[:, j] - f * V[:, k]) % q
        pivots.append((piv, v))
        k += 1
    return pivots, V, B, c, k


def solve_congruences(A, row_mods, unk_mods, rhs=None):
    """Solve  sum_l A[r,l]*w_l == rhs[r] (mod row_mods[r]),  w_l in Z/unk_mods[l].

    Requires the system to be well-posed: A[r,l]*unk_mods[l] == 0
    (mod row_mods[r]) for all r, l — every system modlab builds satisfies
    this by construction, and it is asserted here.

    Returns a SolutionGroup, or None when an inhomogeneous system has no
    solution.  For rhs=None the particular solution is the zero vector.
    """
    row_mods = np.asarray(row_mods, dtype=np.int64)
    unk_mods = np.asarray(unk_mods, dtype=np.int64)
    u = len(unk_mods)
    r = len(row_mods)
    A = np.asarray(A, dtype=np.int64).reshape(r, u)
    if rhs is None:
        rhs = np.zeros(r, dtype=np.int64)
    else:
        rhs = np.asarray(rhs, dtype=np.int64)

    if u == 0:
        ok = np.all(rhs % np.maximum(row_mods, 1) == 0) if r else True
        if not ok:
            return None
        return SolutionGroup(np.zeros(0, dtype=np.int64), np.zeros((0, 0), dtype=np.int64),
                             np.zeros(0, dtype=np.int64), 1, unk_mods)

    assert np.all((A * unk_mods[None, :]) % np.maximum(row_mods[:, None], 1) == 0), \
        "congruence system is not well-posed"

    L = 1
    for m in list(row_mods) + list(unk_mods):
        m = int(m)
        if m > 0:
            L = L * m // gcd(L, m)

    if L == 1:
        # every unknown lives in a trivial group
        return SolutionGroup(np.zeros(u, dtype=np.int64), np.zeros((0, u), dtype=np.int64),
                             np.zeros(0, dtype=np.int64), 1, unk_mods)

    # Embed into (Z/L)^u: x_l = (L/o_l) * w_l.  Coefficients become
    # A[r,l]*o_l/m_r, the rhs becomes rhs*(L/m_r), and each unknown picks up
    # a containment row o_l * x_l == 0 (mod L).
    scaled = (A * unk_mods[None, :]) // np.maximum(row_mods[:, None], 1)
    contain = np.diag(unk_mods)
    B = np.vstack([scaled, contain]).astype(np.int64)
    b = np.concatenate([(rhs * (L // np.maximum(row_mods, 1))) % L,
                        np.zeros(u, dtype=np.int64)])

    part_x = np.zeros(u, dtype=np.int64)   # accumulated particular solution mod L
    gens_x = []
    orders = []
    for p, a in sorted(_factorize(L).items()):
        q = p ** a
        cof = L // q
        # CRT idempotent: 1 mod q, 0 mod L/q
        if cof == 1:
            e_p = 1
        else:
            e_p = (cof * pow(cof, -1, q)) % L
        pivots, V, _, c, k = _diagonalize_mod_q(B % q, b % q, p, a)
        # solvability on pivotless rows
        if np.any(c[k:] % q != 0):
            return None
        y = np.zeros(u, dtype=np.int64)
        for i, (piv, v) in enumerate(pivots):
            ci = int(c[i])
            if ci % (p ** v) != 0:
                return None
            unit_inv = pow(piv // (p ** v), -1, q)
            y[i] = ((ci // (p ** v)) * unit_inv) % q
            if v > 0:
                gens_x.append((e_p * (p ** (a - v)) * V[:, i]) % L)
                orders.append(p ** v)
        for j in range(k, u):
            gens_x.append((e_p * V[:, j]) % L)
            orders.append(q)
        xp = (V @ y) % q
        part_x = (part_x + e_p * xp) % L

    scale = L // unk_mods  # x_l = scale_l * w_l
    def to_w(x):
        assert np.all(x % scale == 0), "solution escaped the embedded lattice"
        return (x // scale) % unk_mods

    particular = to_w(part_x)
    gens = []
    kept_orders = []
    for g, o in zip(gens_x, orders):
        w = to_w(np.asarray(g, dtype=np.int64))
        gens.append(w)
        kept_orders.append(int(o))
    gens = np.array(gens, dtype=np.int64).reshape(len(gens), u)
    kept_orders = np.array(kept_orders, dtype=np.int64)
    size = 1
    for o in kept_orders:
        size *= int(o)
    return SolutionGroup(particular, gens, kept_orders, size, unk_mods)
