"""Integer matrix normal forms.

Dense Smith normal form (with unimodular transforms) for small matrices,
and a sparse elimination routine that returns only rank and torsion for the
large boundary matrices produced by the homology code. All arithmetic is on
Python integers, so there is no overflow and no modular reduction.
"""


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


class SmithForm:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``U_inv`` and ``V_inv`` are the inverses, maintained alongside so callers
    never invert an integer matrix themselves.
    """

    def __init__(self, U, D, V, U_inv, V_inv):
        self.U, self.D, self.V = U, D, V
        self.U_inv, self.V_inv = U_inv, V_inv

    @property
    def diagonal(self):
        r = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(r) if self.D[i][i] != 0]


def smith_normal_form(M):
    """Smith normal form of an integer matrix given as a list of rows.

    The nonzero diagonal entries are positive and each divides the next.
    """
    A = [[int(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, U_inv = _identity(m), _identity(m)
    V, V_inv = _identity(n), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in U_inv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def add_row(dst, src, c):
        # row dst += c * row src
        if c == 0:
            return
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        for r in U_inv:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):
        # col dst += c * col src
        if c == 0:
            return
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]
        V_inv[src] = [a - c * b for a, b in zip(V_inv[src], V_inv[dst])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in U_inv:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m)
                   for j in range(t, n) if A[i][j] != 0]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, m)
                            for j in range(t + 1, n)
                            if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            entries = [(abs(A[i][j]), i, j)
                       for i in range(t, m) for j in range(t, n)
                       if A[i][j] != 0 and (i == t or j == t)]
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    return SmithForm(U, A, V, U_inv, V_inv)


def elementary_divisors(M):
    """Nonzero invariant factors of ``M`` in divisibility order."""
    if not M or not M[0]:
        return []
    return _dense_invariant_factors([list(r) for r in M])


def _dense_invariant_factors(A):
    # same elimination as smith_normal_form, without tracking transforms
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for r in A:
                r[t], r[j] = r[j], r[t]
        while True:
            dirty = False
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for r in A:
                        r[j] -= q * r[t]
                    dirty = dirty or A[t][j] != 0
            if not dirty:
                bad = next((i for i in range(t + 1, m)
                            if any(A[i][j] % p for j in range(t + 1, n))), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cand)
            A[t], A[i] = A[i], A[t]
            if j != t:
                for r in A:
                    r[t], r[j] = r[j], r[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def sparse_rank_torsion(vectors):
    """Rank and torsion coefficients of the integer span of sparse vectors.

    ``vectors`` is an iterable of ``{coordinate: value}`` dicts, e.g. the
    columns of a boundary matrix. Unit pivots are eliminated first (cheap and
    fill-in friendly for simplicial boundaries); whatever is left without a
    unit entry goes through the dense Smith form.
    Returns ``(rank, [invariant factors > 1])``.
    """
    vecs = {}
    occ = {}
    for vid, vec in enumerate(vectors):
        v = {c: val for c, val in vec.items() if val}
        if not v:
            continue
        vecs[vid] = v
        for c in v:
            occ.setdefault(c, set()).add(vid)

    rank = 0
    progress = True
    while progress and vecs:
        progress = False
        for vid in sorted(vecs, key=lambda i: len(vecs[i])):
            v = vecs.get(vid)
            if v is None:
                continue
            pivot_col = None
            best = None
            for c, val in v.items():
                if val == 1 or val == -1:
                    size = len(occ[c])
                    if best is None or size < best:
                        best, pivot_col = size, c
                        if size == 1:
                            break
            if pivot_col is None:
                continue
            p = v[pivot_col]
            for other in list(occ[pivot_col]):
                if other == vid:
                    continue
                w = vecs[other]
                f = w[pivot_col] * p
                for c, val in v.items():
                    nv = w.get(c, 0) - f * val
                    if nv:
                        if c not in w:
                            occ[c].add(other)
                        w[c] = nv
                    elif c in w:
                        del w[c]
                        occ[c].discard(other)
                if not w:
                    del vecs[other]
            for c in v:
                occ[c].discard(vid)
            del occ[pivot_col]
            del vecs[vid]
            rank += 1
            progress = True

    if not vecs:
        return rank, []
    cols = sorted({c for v in vecs.values() for c in v})
    pos = {c: i for i, c in enumerate(cols)}
    dense = []
    for v in vecs.values():
        row = [0] * len(cols)
        for c, val in v.items():
            row[pos[c]] = val
        dense.append(row)
    factors = _dense_invariant_factors(dense)
    return rank + len(factors), [f for f in factors if f > 1]


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix (zero rows dropped).

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``,
    so two matrices have the same HNF iff their rows span the same lattice.
    """
    A = [[int(v) for v in r] for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    for c in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            i = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i] = A[i], A[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return [row for row in A if any(row)]
