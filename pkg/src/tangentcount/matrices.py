"""The box-moving matrix that converts split point constraints back into
single-point constraints.

Fix a weight k and list the partitions of k in increasing diagram order,
y_1 < y_2 < ... < y_T, so y_1 is the single column (1,...,1) and y_T the
single row (k).  Splitting the deepest branch off a constraint rewrites the
invariant with constraint y (one point) as the invariant with constraints
(top row of y), (remaining rows of y) at two points, and expanding the
two-point side produces y itself plus every diagram obtained by merging the
top row of y into one of its lower rows.  Collecting these expansions for
all non-horizontal y gives a square integer matrix A of size T-1:

    rows    r = 1..T-1  indexed by y_r      (every diagram except (k)),
    cols    c = 1..T-1  indexed by y_{c+1}  (every diagram except the column),
    entry   [y_{c+1} == y_r]  +  #{ lower rows i of y_r whose merge with the
                                    top row of y_r resorts to y_{c+1} }.

Merging the top row always makes the first row strictly longer, so merge
targets sit strictly later in the order: the matrix is upper Hessenberg with
unit subdiagonal, and |det A| = (k-1)!.  Solving the system recovers all
one-point invariants of weight k from the split two-point values, which have
strictly smaller constraint weights.

The determinant is computed by fraction-free Bareiss elimination; the linear
solve exploits the Hessenberg shape by expressing every unknown as an affine
function of the last one and closing the loop with the first equation, which
costs only the number of nonzero entries.
"""

from fractions import Fraction

from .errors import InconsistencyError
from .partitions import as_diagram, partitions_of


def merge_top_into(y, i):
    """Merge the top (first, longest) row of y into its i-th row, i >= 1."""
    rows = list(y)
    rows[i] += rows[0]
    return as_diagram(rows[1:])


def move_matrix(k):
    """The (p(k)-1) x (p(k)-1) box-moving matrix described above."""
    parts = partitions_of(k)
    t = len(parts)
    col_of = {q: j for j, q in enumerate(parts[1:])}
    a = [[0] * (t - 1) for _ in range(t - 1)]
    for r, y in enumerate(parts[:-1]):
        if y in col_of:
            a[r][col_of[y]] += 1
        for i in range(1, len(y)):
            a[r][col_of[merge_top_into(y, i)]] += 1
    return a


def determinant(matrix):
    """Exact determinant of a square integer matrix (Bareiss elimination).

    Every intermediate division is exact, so all arithmetic stays in the
    integers no matter how the entries grow.
    """
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for p in range(n - 1):
        if m[p][p] == 0:
            for r in range(p + 1, n):  # pivot search
                if m[r][p] != 0:
                    m[p], m[r] = m[r], m[p]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(p + 1, n):
            for c in range(p + 1, n):
                m[r][c] = (m[r][c] * m[p][p] - m[r][p] * m[p][c]) // prev
            m[r][p] = 0
        prev = m[p][p]
    return sign * m[n - 1][n - 1]


def solve_split_system(k, split_values, all_ones_value):
    """Recover all one-point invariants of weight k from split values.

    split_values lists, for each non-horizontal y in increasing order, the
    two-point invariant with constraints (top row of y) and (rest of y); the
    separately supplied all_ones_value is the invariant with the fully split
    constraint (1,...,1).  Solves

        split_values = all_ones_value * e_1 + A * unknowns

    exactly and returns {y: invariant} for every y except the single column.
    All results must come out integral; anything else means the inputs were
    inconsistent and raises InconsistencyError.
    """
    parts = partitions_of(k)
    t = len(parts)
    if len(split_values) != t - 1:
        raise ValueError("expected %d split values for weight %d, got %d"
                         % (t - 1, k, len(split_values)))
    if t == 1:  # weight 1: nothing to solve
        return {}
    pos = {q: j for j, q in enumerate(parts)}
    # Unknown j (0-based, j = 0..t-2) is the invariant for parts[j+1].  Walk
    # the equations from the top of the order down, writing each unknown as
    # const + coef * (last unknown); merge targets always sit strictly later
    # in the order, so every term is already resolved when it is needed.
    affine = [None] * (t - 1)
    affine[t - 2] = (0, 1)
    for r in range(t - 2, 0, -1):
        y = parts[r]
        const, coef = split_values[r], 0
        for i in range(1, len(y)):
            ta, tb = affine[pos[merge_top_into(y, i)] - 1]
            const -= ta
            coef -= tb
        affine[r - 1] = (const, coef)
    # First equation (the single-column diagram) closes the loop.
    y = parts[0]
    const, coef = all_ones_value, 0
    for i in range(1, len(y)):
        ta, tb = affine[pos[merge_top_into(y, i)] - 1]
        const += ta
        coef += tb
    if coef == 0:
        raise InconsistencyError("singular splitting system at weight %d" % k)
    top = Fraction(split_values[0] - const, coef)
    out = {}
    for j in range(t - 1):
        a, b = affine[j]
        value = a + b * top
        if value.denominator != 1:
            raise InconsistencyError(
                "non-integral invariant %s for constraint %s at weight %d"
                % (value, parts[j + 1], k))
        out[parts[j + 1]] = int(value)
    return out
