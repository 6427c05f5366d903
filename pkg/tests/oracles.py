"""Independent reference implementations used by the tests.

Each one avoids the code path it checks: exhaustive loops instead of pruning,
determinantal divisors instead of row reduction, Cayley-graph closure instead
of stabilizer chains.
"""

from fractions import Fraction
from itertools import combinations, product
from math import gcd

import sympy

from k3tk.ade_lattice import disc_order, is_square, stabilizer_record
from k3tk.config_enumerator import ListEntry, SingConfig
from k3tk.permgroup import Permutation


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def det(m):
    return int(sympy.Matrix(m).det())


def determinantal_invariants(m):
    """Invariant factors from gcds of k x k minors (square input)."""
    n = len(m)
    M = sympy.Matrix(m)
    divisors = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = gcd(g, int(M.extract(list(rows), list(cols)).det()))
                if g == 1:
                    break
            if g == 1:
                break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] if divisors[k - 1] else 0 for k in range(1, n + 1)]


def brute_force(alphabet, k_range, rank20=True, nonsquare=True):
    """Unpruned enumeration over every count vector on the alphabet."""
    alphabet = sorted(alphabet)
    out = set()
    for counts in product(range(k_range[1] + 1), repeat=len(alphabet)):
        k = sum(counts)
        if not k_range[0] <= k <= k_range[1]:
            continue
        types = [t for t, n in zip(alphabet, counts) for _ in range(n)]
        if rank20 and sum(t.rank for t in types) != 20:
            continue
        orders = [stabilizer_record(t).o_x for t in types]
        s = sum(Fraction(1, o) for o in orders) - (k - 4)
        if s <= 0 or (24 / s).denominator != 1:
            continue
        N = int(24 / s)
        if any(N % o for o in orders):
            continue
        if nonsquare and is_square(disc_order(types)):
            continue
        out.add(ListEntry(N, SingConfig(tuple(types))))
    return out


def closure(gens):
    """All products of the generators, by breadth-first search."""
    n = gens[0].degree
    seen = {Permutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen
