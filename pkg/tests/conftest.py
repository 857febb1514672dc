"""Shared helpers: random regular-builtin instances and brute-force oracles."""

import itertools
import random
from fractions import Fraction

from holant import HolantInstance, builtin, random_graph


def random_regular_function(rng, q, d):
    """A random builtin with small rational weights, keeping regularity low."""
    kinds = ["equality", "cyclic", "constant"]
    if q == 2:
        kinds += ["at_most_one", "exact_one", "boolean_weights"]
    kind = rng.choice(kinds)
    if kind == "equality":
        return builtin("equality", q, d,
                       weights=[Fraction(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(q)])
    if kind == "cyclic":
        c = rng.randint(1, 3)
        if q == 2:
            vals = [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(c)]
            if not any(vals):
                vals[0] = Fraction(1)
            return builtin("cyclic", q, d, c=c, values=vals)
        values = {key: Fraction(rng.randint(0, 3), rng.randint(1, 2))
                  for key in itertools.product(range(c), repeat=q)}
        values[(0,) * q] = Fraction(1)
        return builtin("cyclic", q, d, c=c, values=values)
    if kind == "at_most_one":
        return builtin("at_most_one", 2, d)
    if kind == "exact_one":
        return builtin("exact_one", 2, d)
    if kind == "boolean_weights":
        vals = [Fraction(rng.randint(0, 3), rng.randint(1, 2)) for _ in range(d + 1)]
        if not any(vals):
            vals[0] = Fraction(1)
        return builtin("explicit_boolean_weights", 2, d, values=vals)
    weight = Fraction(rng.randint(1, 5), rng.randint(1, 3))
    if q == 2:
        return builtin("cyclic", q, d, c=1, values=[weight])
    return builtin("cyclic", q, d, c=1, values={(0,) * q: weight})


def random_instance(rng, max_n=8, max_edges=None, qs=(2, 3)):
    """A random instance small enough for the brute-force oracle."""
    q = rng.choice(list(qs))
    n = rng.randint(2, max_n)
    cap = max_edges if max_edges is not None else (14 if q == 2 else 9)
    m = rng.randint(1, min(n * (n - 1) // 2, cap))
    g = random_graph(n, m, seed=rng.randint(0, 10 ** 9))
    funcs = [random_regular_function(rng, q, g.degree(v)) for v in range(g.n)]
    return HolantInstance(g, q, funcs)


def tuple_table_oracle(fn):
    """Evaluate a symmetric function on every raw tuple, grouping by composition.

    Independent check that the composition-indexed table agrees with direct
    tuple evaluation (tuples that are permutations must share their value).
    """
    out = {}
    for tup in itertools.product(range(fn.q), repeat=fn.d):
        counts = [0] * fn.q
        for x in tup:
            counts[x] += 1
        out[tup] = fn.value_at(tuple(counts))
    return out
