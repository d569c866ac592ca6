"""Dense-API sparse-storage exact matrices, kernels, minimal polynomials, and
certified operator orders in GL and PGL.

Kernels over Q run a modular fast path: nullspaces are computed modulo a few
word-size primes, combined by CRT, lifted by rational reconstruction, and then
*certified* — the mod-p rank of an integer matrix is a lower bound for the
rational rank, and every lifted kernel vector is re-checked with exact integer
arithmetic, so the returned basis is exact regardless of which primes were
used.  A fully exact elimination is the fallback for other fields or if the
lift fails.

Order certification never materializes the conjugation operator on the full
matrix space: the GL procedure only consumes the conjugation operator's
minimal polynomial, which is computed as the minimal polynomial of x/y in
F[x,y]/(m(x), m(y)) where m is the minimal polynomial of the operator (the
matrix space is a faithful module over that commutative algebra).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .fields import Field, FieldMismatch, QQ, is_prime
from . import polys as P


class LinAlgError(Exception):
    pass


class NotInvertible(LinAlgError):
    pass


class Matrix:
    """Immutable-by-convention matrix over an exact field.

    Rows are stored as ``dict`` of column -> nonzero raw field value; dense
    accessors fill in zeros.  All arithmetic goes through the field object.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: list[dict] | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [{} for _ in range(nrows)]

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        m = cls(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @classmethod
    def from_dense(cls, field: Field, data) -> "Matrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        m = cls(field, nrows, ncols)
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise LinAlgError("ragged rows")
            for j, v in enumerate(row):
                if not field.is_zero(v):
                    m.rows[i][j] = v
        return m

    @classmethod
    def diagonal(cls, field: Field, entries) -> "Matrix":
        entries = list(entries)
        m = cls(field, len(entries), len(entries))
        for i, v in enumerate(entries):
            if not field.is_zero(v):
                m.rows[i][i] = v
        return m

    # -- accessors ----------------------------------------------------------

    def entry(self, i: int, j: int):
        return self.rows[i].get(j, self.field.zero)

    def to_dense(self) -> list[list]:
        z = self.field.zero
        return [[row.get(j, z) for j in range(self.ncols)] for row in self.rows]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols) or self.field != other.field:
            return False
        F = self.field
        for ra, rb in zip(self.rows, other.rows):
            for j in set(ra) | set(rb):
                if not F.eq(ra.get(j, F.zero), rb.get(j, F.zero)):
                    return False
        return True

    __hash__ = None

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.kind}, nnz={self.nnz()})"

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")

    def add(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in add")
        F = self.field
        out = Matrix(F, self.nrows, self.ncols)
        for i in range(self.nrows):
            row = dict(self.rows[i])
            for j, v in other.rows[i].items():
                s = F.add(row.get(j, F.zero), v)
                if F.is_zero(s):
                    row.pop(j, None)
                else:
                    row[j] = s
            out.rows[i] = row
        return out

    def sub(self, other: "Matrix") -> "Matrix":
        return self.add(other.scale(self.field.neg(self.field.one)))

    def scale(self, c) -> "Matrix":
        F = self.field
        out = Matrix(F, self.nrows, self.ncols)
        if F.is_zero(c):
            return out
        for i, row in enumerate(self.rows):
            out.rows[i] = {j: F.mul(c, v) for j, v in row.items()}
        return out

    def mul(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise LinAlgError("shape mismatch in mul")
        F = self.field
        add, mul, is_zero = F.add, F.mul, F.is_zero
        out = Matrix(F, self.nrows, other.ncols)
        orows = other.rows
        for i, row in enumerate(self.rows):
            acc: dict = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    prod = mul(a, b)
                    if j in acc:
                        acc[j] = add(acc[j], prod)
                    else:
                        acc[j] = prod
            out.rows[i] = {j: v for j, v in acc.items() if not is_zero(v)}
        return out

    __matmul__ = mul
    __mul__ = mul
    __add__ = add
    __sub__ = sub

    def transpose(self) -> "Matrix":
        out = Matrix(self.field, self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out.rows[j][i] = v
        return out

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, left factor major: (A⊗B)(v⊗w) = Av ⊗ Bw."""
        self._check(other)
        F = self.field
        out = Matrix(F, self.nrows * other.nrows, self.ncols * other.ncols)
        bn, bm = other.nrows, other.ncols
        for i, arow in enumerate(self.rows):
            for bi, brow in enumerate(other.rows):
                target = out.rows[i * bn + bi]
                for j, a in arow.items():
                    jb = j * bm
                    for bj, b in brow.items():
                        target[jb + bj] = F.mul(a, b)
        return out

    def apply_right(self, vec: list) -> list:
        """Matrix times column vector."""
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero
            for j, a in row.items():
                x = vec[j]
                if not F.is_zero(x):
                    acc = F.add(acc, F.mul(a, x))
            out.append(acc)
        return out

    def apply_left(self, vec: list) -> list:
        """Row vector times matrix."""
        F = self.field
        out = [F.zero] * self.ncols
        for i, x in enumerate(vec):
            if F.is_zero(x):
                continue
            for j, a in self.rows[i].items():
                out[j] = F.add(out[j], F.mul(x, a))
        return out

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise LinAlgError("power of a non-square matrix")
        if k < 0:
            return inverse(self).power(-k)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base) if k > 1 else base
            k >>= 1
        return result

    def trace(self):
        F = self.field
        return F.sum(self.rows[i].get(i, F.zero) for i in range(min(self.nrows, self.ncols)))

    def is_zero_matrix(self) -> bool:
        F = self.field
        return all(all(F.is_zero(v) for v in row.values()) for row in self.rows)

    def is_identity(self) -> bool:
        if not self.is_square():
            return False
        F = self.field
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                if j != i and not F.is_zero(v):
                    return False
            if not F.eq(row.get(i, F.zero), F.one):
                return False
        return True

    def scalar_value(self):
        """The scalar c if this matrix equals c*I, else None."""
        if not self.is_square() or self.nrows == 0:
            return None
        F = self.field
        c = self.rows[0].get(0, F.zero)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                if j != i and not F.is_zero(v):
                    return None
            if not F.eq(row.get(i, F.zero), c):
                return None
        return c

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.nrows != other.nrows:
            raise LinAlgError("row mismatch in hstack")
        out = Matrix(self.field, self.nrows, self.ncols + other.ncols)
        off = self.ncols
        for i in range(self.nrows):
            row = dict(self.rows[i])
            for j, v in other.rows[i].items():
                row[off + j] = v
            out.rows[i] = row
        return out


def tensor_product(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


@dataclass
class KernelBasis:
    """Kernel basis in reduced form: vectors[i][free_cols[j]] = delta_ij."""

    vectors: list[list]
    free_cols: list[int]
    ncols: int

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def coordinates_of(self, vec: list) -> list:
        """Coordinates of vec in this basis, assuming vec lies in the span."""
        return [vec[c] for c in self.free_cols]

    def in_span(self, field: Field, vec: list) -> bool:
        coords = self.coordinates_of(vec)
        recon = [field.zero] * self.ncols
        for c, bvec in zip(coords, self.vectors):
            if field.is_zero(c):
                continue
            for j, x in enumerate(bvec):
                if not field.is_zero(x):
                    recon[j] = field.add(recon[j], field.mul(c, x))
        return all(field.eq(a, b) for a, b in zip(recon, vec))


def kernel(a: Matrix) -> list[list]:
    """Basis of the right null space {v : A v = 0}."""
    return simultaneous_kernel([a]).vectors


def simultaneous_kernel(mats: list[Matrix]) -> KernelBasis:
    """Basis of the intersection of the kernels of the given matrices."""
    if not mats:
        raise LinAlgError("simultaneous_kernel of no matrices")
    F = mats[0].field
    n = mats[0].ncols
    for m in mats:
        if m.field != F or m.ncols != n:
            raise FieldMismatch("incompatible matrices in simultaneous_kernel")
    if n == 0:
        return KernelBasis([], [], 0)
    if F is QQ or F == QQ:
        int_mats = [_integer_rows(m) for m in mats]
        result = _kernel_modular(int_mats, n)
        if result is not None:
            return result
    return _kernel_exact(mats)


def _integer_rows(m: Matrix) -> list[dict]:
    """Row-scaled copies with integer entries (kernel is unchanged)."""
    out = []
    for row in m.rows:
        if not row:
            continue
        denom = 1
        for v in row.values():
            if isinstance(v, Fraction):
                denom = denom * v.denominator // gcd(denom, v.denominator)
        if denom == 1:
            out.append({j: int(v) for j, v in row.items()})
        else:
            out.append({j: int(v * denom) for j, v in row.items()})
    return out


_MODULAR_PRIMES: list[int] = []


def _modular_primes() -> list[int]:
    if not _MODULAR_PRIMES:
        p = (1 << 25) - 1
        while len(_MODULAR_PRIMES) < 10:
            if is_prime(p):
                _MODULAR_PRIMES.append(p)
            p -= 2
    return _MODULAR_PRIMES


def _densify_modp(rows: list[dict], n: int, p: int) -> np.ndarray:
    a = np.zeros((len(rows), n), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in row.items():
            a[i, j] = v % p
    return a


def _np_rref_modp(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a % p
    nr, nc = a.shape
    piv: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        rows = np.flatnonzero(a[:, c])
        rows = rows[rows != r]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        piv.append(c)
        r += 1
    return a[: len(piv)], piv


def _np_nullspace_modp(a: np.ndarray, p: int) -> np.ndarray:
    """Nullspace basis (ncols x k) in reduced form from a mod-p matrix."""
    rref, piv = _np_rref_modp(a, p)
    nc = a.shape[1]
    piv_set = set(piv)
    free = [c for c in range(nc) if c not in piv_set]
    out = np.zeros((nc, len(free)), dtype=np.int64)
    for idx, f in enumerate(free):
        out[f, idx] = 1
        for r, c in enumerate(piv):
            out[c, idx] = (-int(rref[r, f])) % p
    return out


def _modp_kernel_standard(int_mats: list[list[dict]], n: int, p: int):
    """Intersection of kernels mod p, returned as (free_cols, k x n residue rows)."""
    K: np.ndarray | None = None
    for rows in int_mats:
        if not rows:
            continue
        dense = _densify_modp(rows, n, p)
        b = dense if K is None else dense @ K % p
        null = _np_nullspace_modp(b, p)
        K = null if K is None else K @ null % p
        if K.shape[1] == 0:
            break
    if K is None:
        K = np.eye(n, dtype=np.int64)
    if K.shape[1] == 0:
        return (), np.zeros((0, n), dtype=np.int64)
    rref_t, piv_t = _np_rref_modp(K.T % p, p)
    return tuple(piv_t), rref_t


def _rational_reconstruct(r: int, m: int):
    """Wang's rational reconstruction of r mod m; None if no small fraction."""
    bound = isqrt(m // 2)
    v0, v1 = (m, 0), (r % m, 1)
    while v1[0] > bound:
        q = v0[0] // v1[0]
        v0, v1 = v1, (v0[0] - q * v1[0], v0[1] - q * v1[1])
    num, den = v1
    if den == 0:
        return None
    if den < 0:
        num, den = -num, -den
    if den > bound or gcd(num, den) != 1 or gcd(den, m) != 1:
        return None
    return Fraction(num, den)


def _verify_integer_kernel(int_mats: list[list[dict]], vec: list) -> bool:
    denom = 1
    for v in vec:
        if isinstance(v, Fraction):
            denom = denom * v.denominator // gcd(denom, v.denominator)
    ivec = [int(v * denom) if isinstance(v, Fraction) else v * denom for v in vec]
    for rows in int_mats:
        for row in rows:
            if sum(c * ivec[j] for j, c in row.items()) != 0:
                return False
    return True


def _kernel_modular(int_mats: list[list[dict]], n: int) -> KernelBasis | None:
    if n > 4000:
        return None
    buckets: dict[tuple, list[tuple[int, np.ndarray]]] = {}
    for p in _modular_primes():
        free, vecs = _modp_kernel_standard(int_mats, n, p)
        if len(free) == 0:
            # rank_p = n certifies rank_Q = n: the kernel is exactly zero
            return KernelBasis([], [], n)
        buckets.setdefault(free, []).append((p, vecs))
        entries = [[int(v) for v in row] for row in buckets[free][0][1]]
        modulus = buckets[free][0][0]
        for q, qvecs in buckets[free][1:]:
            inv = pow(modulus % q, -1, q)
            for i, row in enumerate(entries):
                for j in range(n):
                    diff = (int(qvecs[i, j]) - row[j]) % q
                    row[j] = row[j] + modulus * (diff * inv % q)
            modulus *= q
        candidate = []
        ok = True
        for row in entries:
            vec = []
            for r in row:
                fr = _rational_reconstruct(r, modulus)
                if fr is None:
                    ok = False
                    break
                vec.append(QQ.normalize(fr))
            if not ok:
                break
            candidate.append(vec)
        if ok and all(_verify_integer_kernel(int_mats, v) for v in candidate):
            return KernelBasis(candidate, list(free), n)
    return None


def _primitive_row(field: Field, row: dict) -> dict:
    """Over Q, divide a sparse row by its content to keep entries small."""
    if field is not QQ or not row:
        return row
    denom = 1
    for v in row.values():
        if isinstance(v, Fraction):
            denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = {j: int(v * denom) if isinstance(v, Fraction) else v * denom for j, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {j: v // g for j, v in ints.items()}
    return ints


def _kernel_exact(mats: list[Matrix]) -> KernelBasis:
    F = mats[0].field
    n = mats[0].ncols
    pivots: list[tuple[int, dict]] = []  # (col, normalized reduced row)
    for m in mats:
        for raw in m.rows:
            if not raw:
                continue
            row = dict(raw)
            for col, prow in pivots:
                c = row.get(col)
                if c is None or F.is_zero(c):
                    continue
                for j, v in prow.items():
                    d = F.sub(row.get(j, F.zero), F.mul(c, v))
                    if F.is_zero(d):
                        row.pop(j, None)
                    else:
                        row[j] = d
            row = {j: v for j, v in row.items() if not F.is_zero(v)}
            if not row:
                continue
            row = _primitive_row(F, row)
            lead = min(row)
            inv = F.inv(row[lead])
            row = {j: F.mul(inv, v) for j, v in row.items()}
            # keep full RREF: eliminate the new leading column from older pivots
            for k, (col, prow) in enumerate(pivots):
                c = prow.get(lead)
                if c is None or F.is_zero(c):
                    continue
                newr = dict(prow)
                for j, v in row.items():
                    d = F.sub(newr.get(j, F.zero), F.mul(c, v))
                    if F.is_zero(d):
                        newr.pop(j, None)
                    else:
                        newr[j] = d
                pivots[k] = (col, newr)
            pivots.append((lead, row))
    pivots.sort(key=lambda t: t[0])
    piv_cols = {col for col, _ in pivots}
    free = [c for c in range(n) if c not in piv_cols]
    vectors = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for col, prow in pivots:
            c = prow.get(f)
            if c is not None and not F.is_zero(c):
                v[col] = F.neg(c)
        vectors.append(v)
    return KernelBasis(vectors, free, n)


def rank(a: Matrix) -> int:
    return a.ncols - simultaneous_kernel([a]).dim


def solve_unique(a: Matrix, b: list) -> list:
    """The unique x with A x = b; raises if no solution or not unique."""
    F = a.field
    col = Matrix(F, a.nrows, 1)
    for i, v in enumerate(b):
        if not F.is_zero(v):
            col.rows[i][0] = F.neg(v)
    ker = simultaneous_kernel([a.hstack(col)])
    sols = [v for v in ker.vectors if not F.is_zero(v[a.ncols])]
    if not sols or ker.dim != 1:
        raise LinAlgError("system has no unique solution")
    v = sols[0]
    t_inv = F.inv(v[a.ncols])
    return [F.mul(t_inv, x) for x in v[: a.ncols]]


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise NotInvertible("non-square matrix")
    F = a.field
    n = a.nrows
    # exact Gauss-Jordan on [A | I]
    work = [dict(a.rows[i]) for i in range(n)]
    aug = [{i: F.one} for i in range(n)]
    perm = list(range(n))
    for c in range(n):
        piv = None
        for r in range(c, n):
            if not F.is_zero(work[r].get(c, F.zero)):
                piv = r
                break
        if piv is None:
            raise NotInvertible("singular matrix")
        work[c], work[piv] = work[piv], work[c]
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = F.inv(work[c][c])
        work[c] = {j: F.mul(inv, v) for j, v in work[c].items()}
        aug[c] = {j: F.mul(inv, v) for j, v in aug[c].items()}
        for r in range(n):
            if r == c:
                continue
            f = work[r].get(c)
            if f is None or F.is_zero(f):
                continue
            for j, v in work[c].items():
                d = F.sub(work[r].get(j, F.zero), F.mul(f, v))
                if F.is_zero(d):
                    work[r].pop(j, None)
                else:
                    work[r][j] = d
            for j, v in aug[c].items():
                d = F.sub(aug[r].get(j, F.zero), F.mul(f, v))
                if F.is_zero(d):
                    aug[r].pop(j, None)
                else:
                    aug[r][j] = d
    out = Matrix(F, n, n)
    out.rows = aug
    return out


# ---------------------------------------------------------------------------
# Minimal polynomials
# ---------------------------------------------------------------------------


class _Echelon:
    """Incremental row echelon over a field for dense vectors."""

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.pivots: list[tuple[int, list]] = []  # (lead col, vector with lead 1)

    def reduce(self, vec: list) -> list:
        F = self.field
        v = list(vec)
        for col, pv in self.pivots:
            c = v[col]
            if F.is_zero(c):
                continue
            for j in range(self.n):
                x = pv[j]
                if not F.is_zero(x):
                    v[j] = F.sub(v[j], F.mul(c, x))
        return v

    def contains(self, vec: list) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.reduce(vec))

    def add(self, vec: list) -> bool:
        F = self.field
        v = self.reduce(vec)
        lead = next((j for j in range(self.n) if not F.is_zero(v[j])), None)
        if lead is None:
            return False
        inv = F.inv(v[lead])
        self.pivots.append((lead, [F.mul(inv, x) for x in v]))
        return True

    @property
    def dim(self) -> int:
        return len(self.pivots)


def _sequence_annihilator(field: Field, vec_iter) -> list:
    """Monic polynomial of least degree annihilating the stream v, Tv, T^2 v, ...

    ``vec_iter`` yields the successive vectors; term j is consumed only until
    the first linear dependence appears.
    """
    F = field
    pivots: list[tuple[int, list, list]] = []  # (lead, vector, combination)
    j = 0
    for w in vec_iter:
        n = len(w)
        r = list(w)
        rc = [F.zero] * j + [F.one]
        for lead, pv, pc in pivots:
            c = r[lead]
            if F.is_zero(c):
                continue
            for t in range(n):
                x = pv[t]
                if not F.is_zero(x):
                    r[t] = F.sub(r[t], F.mul(c, x))
            for t, x in enumerate(pc):
                if not F.is_zero(x):
                    rc[t] = F.sub(rc[t], F.mul(c, x))
        lead = next((t for t in range(n) if not F.is_zero(r[t])), None)
        if lead is None:
            return rc  # monic by construction: position j untouched
        inv = F.inv(r[lead])
        pivots.append((lead, [F.mul(inv, x) for x in r], [F.mul(inv, x) for x in rc]))
        j += 1
    raise LinAlgError("annihilator stream exhausted without dependence")


def _krylov_stream(t: Matrix, v: list):
    w = list(v)
    while True:
        yield w
        w = t.apply_right(w)


def _plcm(field: Field, a: list, b: list) -> list:
    g = P.pgcd(field, a, b)
    return P.pmonic(field, P.pmul(field, a, P.pexactdiv(field, b, g)))


def _evaluate_poly_at_matrix(m: list, t: Matrix) -> Matrix:
    F = t.field
    ident = Matrix.identity(F, t.nrows)
    acc = ident.scale(m[-1])
    for c in reversed(m[:-1]):
        acc = t.mul(acc)
        if not F.is_zero(c):
            acc = acc.add(ident.scale(c))
    return acc


def minimal_polynomial(t: Matrix) -> list:
    """Monic minimal polynomial of a square matrix, low degree first.

    Starts from the annihilator of one generic vector and repeatedly replaces
    m by its minimal multiple annihilating a witness column of m(T); each
    extension stays a divisor of the true minimal polynomial, and the loop
    ends exactly when m(T) = 0.
    """
    if not t.is_square():
        raise LinAlgError("minimal polynomial of non-square matrix")
    F = t.field
    n = t.nrows
    if n == 0:
        return [F.one]
    w0 = [F.one] * n
    m = _sequence_annihilator(F, _krylov_stream(t, w0))
    while True:
        residue = _evaluate_poly_at_matrix(m, t)
        witness = None
        for i, row in enumerate(residue.rows):
            for j, v in row.items():
                if not F.is_zero(v):
                    witness = j
                    break
            if witness is not None:
                break
        if witness is None:
            return m
        col = [residue.rows[i].get(witness, F.zero) for i in range(n)]
        q = _sequence_annihilator(F, _krylov_stream(t, col))
        m = P.pmul(F, m, q)


# ---------------------------------------------------------------------------
# Orders in GL and PGL
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrderVerdict:
    kind: str  # "finite" | "infinite" | "unknown"
    n: int | None = None
    reason: str | None = None  # NotSemisimple | RootNotUnity for infinite
    cap: int | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self):
        if self.kind == "finite":
            return f"Finite({self.n})"
        if self.kind == "infinite":
            return f"Infinite({self.reason})"
        return f"Unknown(cap={self.cap})"

    def to_json(self):
        out = {"kind": self.kind}
        if self.n is not None:
            out["n"] = self.n
        if self.reason is not None:
            out["reason"] = self.reason
        if self.cap is not None:
            out["cap"] = self.cap
        return out


def finite(n: int) -> OrderVerdict:
    return OrderVerdict("finite", n=n)


def infinite(reason: str) -> OrderVerdict:
    return OrderVerdict("infinite", reason=reason)


def unknown(cap: int) -> OrderVerdict:
    return OrderVerdict("unknown", cap=cap)


@dataclass(frozen=True)
class OrderCertificate:
    gl_order: OrderVerdict
    pgl_order: OrderVerdict
    minpoly_squarefree: bool
    evidence: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "gl_order": self.gl_order.to_json(),
            "pgl_order": self.pgl_order.to_json(),
            "minpoly_squarefree": self.minpoly_squarefree,
            "evidence": self.evidence,
        }

    def __str__(self):
        return f"gl={self.gl_order}, pgl={self.pgl_order}"


_PHI_SIEVE_LIMIT = 50_000_000


def _unity_candidates(bound: int) -> list[int]:
    """All k >= 1 with euler_phi(k) <= bound, complete by phi(k) >= sqrt(k/2)."""
    limit = 2 * bound * bound + 2
    if limit > _PHI_SIEVE_LIMIT:
        raise LinAlgError(f"root-of-unity search bound {limit} too large")
    phi = np.arange(limit, dtype=np.int64)
    for p in range(2, limit):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return [int(k) for k in np.flatnonzero(phi[1:] <= bound) + 1]


def _unity_order(field: Field, m: list) -> OrderVerdict:
    """Order of a root x of the squarefree polynomial m, if all roots are
    roots of unity; Infinite(RootNotUnity) otherwise.

    Any root that is a primitive k-th root of unity satisfies
    phi(k) <= deg(m) * [field : Q], which bounds the search exactly.
    """
    deg = P.pdeg(m)
    if deg == 0:
        return finite(1)
    bound = deg * max(field.rational_degree(), 1)
    rem = P.pmonic(field, m)
    order = 1
    for k in _unity_candidates(bound):
        if P.pdeg(rem) == 0:
            break
        g = P.pgcd(field, rem, P.cyclotomic_over(field, k))
        if P.pdeg(g) >= 1:
            order = order * k // gcd(order, k)
            rem = P.pexactdiv(field, rem, g)
    if P.pdeg(rem) > 0:
        return infinite("RootNotUnity")
    return finite(order)


class _QuotientPair:
    """The commutative algebra F[x,y]/(m(x), m(y)), elements as d x d coefficient grids."""

    def __init__(self, field: Field, m: list):
        self.field = field
        self.m = m
        self.d = P.pdeg(m)
        d, F = self.d, field
        red = []
        prev = [F.neg(c) for c in m[:d]]  # x^d mod m
        red.append(list(prev))
        for _ in range(1, d):
            shifted = [F.zero] + prev[:-1]
            top = prev[-1]
            row = [F.add(shifted[i], F.mul(top, red[0][i])) for i in range(d)]
            red.append(row)
            prev = row
        self.red = red

    def one(self):
        F, d = self.field, self.d
        g = [[F.zero] * d for _ in range(d)]
        g[0][0] = F.one
        return g

    def _reduce_axis(self, grid, axis: int):
        F, d = self.field, self.d
        size = len(grid) if axis == 0 else len(grid[0])
        if size <= d:
            return grid
        if axis == 0:
            for i in range(len(grid) - 1, d - 1, -1):
                row = grid[i]
                for t, x in enumerate(row):
                    if not F.is_zero(x):
                        rr = self.red[i - d]
                        for s in range(d):
                            if not F.is_zero(rr[s]):
                                grid[s][t] = F.add(grid[s][t], F.mul(x, rr[s]))
                grid[i] = None
            return [r for r in grid if r is not None]
        for row in grid:
            for j in range(len(row) - 1, d - 1, -1):
                x = row[j]
                if not F.is_zero(x):
                    rr = self.red[j - d]
                    for s in range(d):
                        if not F.is_zero(rr[s]):
                            row[s] = F.add(row[s], F.mul(x, rr[s]))
        return [row[:d] for row in grid]

    def mul(self, a, b):
        F, d = self.field, self.d
        out = [[F.zero] * (2 * d - 1) for _ in range(2 * d - 1)]
        for i, arow in enumerate(a):
            for j, av in enumerate(arow):
                if F.is_zero(av):
                    continue
                for k, brow in enumerate(b):
                    for l, bv in enumerate(brow):
                        if not F.is_zero(bv):
                            out[i + k][j + l] = F.add(out[i + k][j + l], F.mul(av, bv))
        out = self._reduce_axis(out, 0)
        out = self._reduce_axis(out, 1)
        return out

    def flatten(self, g):
        return [g[i][j] for i in range(self.d) for j in range(self.d)]


def _poly_invmod(field: Field, a: list, mod: list) -> list:
    """Inverse of a modulo mod in F[x] (requires gcd(a, mod) constant)."""
    r0, r1 = P.pmonic(field, mod), P.ptrim(field, a)
    s0: list = []
    s1 = [field.one]
    while P.pdeg(r1) > 0:
        q, r = P.pdivmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, P.psub(field, s0, P.pmul(field, q, s1))
        if not r1:
            raise LinAlgError("element not invertible in quotient")
    c = field.inv(r1[0])
    inv = P.pscale(field, s1, c)
    _, inv = P.pdivmod(field, inv, P.pmonic(field, mod))
    return inv


def _ratio_minimal_polynomial(field: Field, m: list) -> list:
    """Minimal polynomial of x * y^(-1) in F[x,y]/(m(x), m(y)).

    This equals the minimal polynomial of the conjugation operator
    X -> T X T^(-1) on the full matrix space when m = minpoly(T): that space
    is a faithful module over the algebra, so element and operator share
    their minimal polynomial.
    """
    d = P.pdeg(m)
    if d <= 1:
        return [field.neg(field.one), field.one]  # scalar operator: x - 1
    C = _QuotientPair(field, P.pmonic(field, m))
    y_poly = [field.zero, field.one]
    yinv = _poly_invmod(field, y_poly, m)
    u = [[field.zero] * d for _ in range(d)]
    for j, c in enumerate(yinv):
        if not field.is_zero(c) and j < d:
            u[1][j] = c  # x^1 * (y-inverse coefficients)
    def stream():
        w = C.one()
        while True:
            yield C.flatten(w)
            w = C.mul(w, u)
    return _sequence_annihilator(field, stream())


def _order_by_iteration(t: Matrix, cap: int) -> tuple[OrderVerdict, OrderVerdict]:
    ident = Matrix.identity(t.field, t.nrows)
    power = t
    gl = None
    pgl = None
    for k in range(1, cap + 1):
        if pgl is None and power.scalar_value() is not None:
            pgl = finite(k)
        if power == ident:
            gl = finite(k)
            break
        power = power.mul(t)
    if gl is None:
        gl = unknown(cap)
    if pgl is None:
        pgl = unknown(cap) if gl.kind == "unknown" else gl
    return gl, pgl


DEFAULT_FP_ORDER_CAP = 10_000


def operator_order(t: Matrix, cap: int | None = None) -> OrderCertificate:
    """Certified order of an invertible operator in GL and PGL.

    Characteristic zero: the verdict comes from the minimal polynomial m.
    If m is not squarefree the operator is not semisimple and no positive
    power is the identity (or a scalar), hence Infinite(NotSemisimple).
    Otherwise all candidate orders k satisfy phi(k) <= deg * [F:Q]; stripping
    cyclotomic factors off m decides finiteness and yields the exact order.
    The PGL verdict applies the same procedure to the minimal polynomial of
    the conjugation operator (computed in F[x,y]/(m,m), see module docs).

    Over F_p both orders are found by direct iteration up to ``cap``.
    """
    F = t.field
    m = minimal_polynomial(t)
    if F.is_zero(m[0]):
        raise NotInvertible("operator is singular (minimal polynomial has root 0)")
    evidence = {"minpoly": _format_poly_list(F, m)}
    if F.kind == "Fp":
        gl, pgl = _order_by_iteration(t, cap or DEFAULT_FP_ORDER_CAP)
        sf = P.is_squarefree(F, m)
        return OrderCertificate(gl, pgl, sf, evidence)
    sf = P.is_squarefree(F, m)
    if not sf:
        v = infinite("NotSemisimple")
        evidence["reason"] = "minimal polynomial shares a root with its derivative"
        return OrderCertificate(v, v, False, evidence)
    gl = _unity_order(F, m)
    ratio = _ratio_minimal_polynomial(F, m)
    evidence["conjugation_minpoly"] = _format_poly_list(F, ratio)
    pgl = _unity_order(F, ratio)
    return OrderCertificate(gl, pgl, True, evidence)


def _format_poly_list(field: Field, m: list) -> list:
    return [field.format(c) for c in m]


def conjugation_operator(t: Matrix) -> Matrix:
    """The operator X -> T X T^(-1) on the full matrix space (row-major vec)."""
    return t.kron(inverse(t).transpose())
