"""
Exact membership in finitely generated convex cones.

A vector b lies in the cone R_{>=0} {v_1, ..., v_k} iff the linear system V x = b has a solution x >= 0. This is
decided by the first phase of the simplex method on Fractions with Bland's rule, so the answer is exact and the
pivoting cannot cycle.
"""

from fractions import Fraction


def _pivot(rows, row, col):
    pivot = rows[row][col]
    rows[row] = [value / pivot for value in rows[row]]
    for i, other in enumerate(rows):
        if i != row and other[col] != 0:
            factor = other[col]
            rows[i] = [a - factor * b for a, b in zip(other, rows[row])]


def feasible_nonnegative(columns, target):
    """
    Decides whether target is a nonnegative combination of columns.
    @param columns: list of integer (or Fraction) vectors of one dimension
    @param target: vector of the same dimension
    @return: a list of nonnegative Fraction coefficients if feasible, else None
    """
    dim = len(target)
    k = len(columns)
    if not any(target):
        return [Fraction(0)] * k
    if k == 0:
        return None
    rows = []
    for i in range(dim):
        sign = -1 if target[i] < 0 else 1
        row = [Fraction(sign * columns[j][i]) for j in range(k)]
        row += [Fraction(1) if a == i else Fraction(0) for a in range(dim)]
        row.append(Fraction(sign * target[i]))
        rows.append(row)
    basis = [k + i for i in range(dim)]
    costs = [Fraction(0)] * k + [Fraction(1)] * dim
    while True:
        entering = None
        for j in range(k + dim):
            if j in basis:
                continue
            reduced = costs[j] - sum(costs[basis[i]] * rows[i][j] for i in range(dim))
            if reduced < 0:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(dim):
            if rows[i][entering] > 0:
                ratio = rows[i][-1] / rows[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            break
        _pivot(rows, leaving, entering)
        basis[leaving] = entering
    if sum(costs[basis[i]] * rows[i][-1] for i in range(dim)) != 0:
        return None
    solution = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            solution[var] = rows[i][-1]
    return solution


def in_cone(generators, target):
    """
    @param generators: iterable of Root (or coordinate tuples)
    @param target: Root (or coordinate tuple)
    @return: True iff target lies in the closed cone spanned by generators
    """
    columns = [tuple(getattr(g, "coords", g)) for g in generators]
    vector = tuple(getattr(target, "coords", target))
    return feasible_nonnegative(columns, vector) is not None
