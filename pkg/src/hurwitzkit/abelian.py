"""Integer matrices, Smith normal form, and abelianization.

Everything runs over Python integers, so entry growth during pivoting is
harmless.  The pivot rule is fixed (smallest absolute nonzero entry,
ties broken in row-major order) to keep outputs reproducible, and every
call re-checks U*A*V = D before returning.
"""

from dataclasses import dataclass

from .errors import InternalInvariantError
from .words import exponent_sum


class IntMatrix:
    """Immutable integer matrix; entries stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = tuple(tuple(int(x) for x in row) for row in entries)
        rows = len(entries)
        if rows:
            cols = len(entries[0])
            if any(len(row) != cols for row in entries):
                raise ValueError("ragged rows")
        elif cols is None:
            cols = 0
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n)))

    @classmethod
    def zeros(cls, rows, cols):
        return cls(tuple((0,) * cols for _ in range(rows)), cols=cols)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix)
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        return IntMatrix(
            tuple(
                tuple(sum(self.entries[i][k] * other.entries[k][j]
                          for k in range(self.cols))
                      for j in range(other.cols))
                for i in range(self.rows)
            ),
            cols=other.cols,
        )

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"

    def dump(self):
        """Row-major debug dump: space-separated integers, one row per line."""
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


@dataclass(frozen=True)
class SnfResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple


def _pivot(work, start, rows, cols):
    """Smallest absolute nonzero entry of the trailing block, row-major ties."""
    best = None
    for i in range(start, rows):
        for j in range(start, cols):
            x = work[i][j]
            if x and (best is None or abs(x) < abs(best[0])):
                best = (x, i, j)
    return best


def smith_normal_form(matrix):
    """Diagonalize by unimodular row/column operations.

    Returns U, D, V with U*A*V = D, D diagonal with each entry dividing
    the next, and the positive diagonal entries as invariant factors.
    """
    rows, cols = matrix.rows, matrix.cols
    work = [list(row) for row in matrix.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, k, q):  # row_i -= q * row_k
        work[i] = [a - q * b for a, b in zip(work[i], work[k])]
        u[i] = [a - q * b for a, b in zip(u[i], u[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for row in work:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        work[i], work[k] = work[k], work[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in work:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    while True:
        found = _pivot(work, t, rows, cols)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            # clear column t, refreshing the pivot whenever a remainder shrinks it
            dirty = False
            for i in range(t + 1, rows):
                if work[i][t]:
                    q = work[i][t] // work[t][t]
                    row_op(i, t, q)
                    if work[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if work[t][j]:
                    q = work[t][j] // work[t][t]
                    col_op(j, t, q)
                    if work[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the whole trailing block for the factor chain
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if work[i][j] % work[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # pull the offending row into row t
        if work[t][t] < 0:
            work[t] = [-x for x in work[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    U = IntMatrix(u, cols=rows)
    D = IntMatrix(work, cols=cols)
    V = IntMatrix(v, cols=cols)
    if U @ matrix @ V != D:
        raise InternalInvariantError("smith normal form: U*A*V != D")
    factors = []
    for i in range(min(rows, cols)):
        d = D.entries[i][i]
        if d:
            factors.append(d)
    for a, b in zip(factors, factors[1:]):
        if b % a:
            raise InternalInvariantError("smith normal form: broken divisibility chain")
    return SnfResult(U, D, V, tuple(factors))


# -- abelianization ------------------------------------------------------------


@dataclass(frozen=True)
class AbelianDescription:
    """Finitely generated abelian group: free rank and torsion in divisor order."""

    free_rank: int
    torsion: tuple

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


def relation_matrix(pres):
    """Row per relator, column per generator, entry = exponent sum."""
    return IntMatrix(
        tuple(tuple(exponent_sum(r, g) for g in pres.generators)
              for r in pres.relators),
        cols=len(pres.generators),
    )


def abelianization(pres):
    snf = smith_normal_form(relation_matrix(pres))
    free_rank = len(pres.generators) - len(snf.invariant_factors)
    torsion = tuple(d for d in snf.invariant_factors if d > 1)
    return AbelianDescription(free_rank, torsion)


def is_irreducible_c(cpres):
    """True when the presented group abelianizes to the integers."""
    ab = abelianization(cpres.base)
    return ab.free_rank == 1 and not ab.torsion
