"""Brute-force Gibbs oracles used by the tests and for desk checking.

Everything here enumerates configurations directly from the definitions, kept
deliberately independent of the solver implementations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional

import mpmath

from .errors import FailedPreconditionError, InvalidArgumentError, ResourceExhaustedError
from .exact import enumeration_cap_bits
from .graphcore import Graph, HolantInstance
from .symfun import SymmetricFunction
from .values import ONE, ZERO, GaussianRational


class GibbsOracle:
    """Exact Gibbs measure of a feasible nonnegative instance, by enumeration."""

    def __init__(self, instance: HolantInstance, cap_bits: Optional[int] = None):
        g = instance.graph
        cap = enumeration_cap_bits() if cap_bits is None else cap_bits
        if g.m * math.log2(instance.q) > cap:
            raise ResourceExhaustedError(
                f"Gibbs enumeration needs {g.m * math.log2(instance.q):.1f} bits > cap {cap}"
            )
        self.instance = instance
        self.weights = {}
        total = ZERO
        for config in product(range(instance.q), repeat=g.m):
            w = instance.weight(config)
            if w:
                self.weights[config] = w
                total = total + w
        self.total = total

    def partition_value(self) -> GaussianRational:
        return self.total

    def probability(self, config) -> Fraction:
        w = self.weights.get(tuple(config))
        if w is None:
            return Fraction(0)
        return (w / self.total).as_fraction()

    def marginal(self, e: int, cond: Optional[Mapping[int, int]] = None) -> list[Fraction]:
        """Exact conditional distribution of edge e given a partial configuration."""
        cond = dict(cond or {})
        q = self.instance.q
        mass = [ZERO] * q
        total = ZERO
        for config, w in self.weights.items():
            if any(config[c] != val for c, val in cond.items()):
                continue
            mass[config[e]] = mass[config[e]] + w
            total = total + w
        if not total:
            raise FailedPreconditionError("conditioning event has zero mass")
        return [(m / total).as_fraction() for m in mass]


def gibbs_oracle(instance: HolantInstance, cap_bits: Optional[int] = None) -> GibbsOracle:
    return GibbsOracle(instance, cap_bits)


def spin_partition_brute(
    graph: Graph, q: int, edge_function: SymmetricFunction, vertex_function: SymmetricFunction
) -> GaussianRational:
    """Direct spin-system partition function: sum over vertex spin assignments."""
    if edge_function.d != 2 or vertex_function.d != 1:
        raise InvalidArgumentError("need a binary edge function and a unary vertex function")
    total = ZERO
    for spins in product(range(q), repeat=graph.n):
        term = ONE
        for v in range(graph.n):
            term = term * vertex_function.value_of_tuple((spins[v],))
            if not term:
                break
        else:
            for u, w in graph.edges:
                term = term * edge_function.value_of_tuple((spins[u], spins[w]))
                if not term:
                    break
        if term:
            total = total + term
    return total


def subgraphs_world_brute(graph: Graph, lam, mu) -> GaussianRational:
    """Direct subgraphs-world partition function: sum over edge subsets of
    mu^(#odd-degree vertices) * lambda^(#edges)."""
    lam, mu = Fraction(lam), Fraction(mu)
    lam_pow = [Fraction(1)]
    for _ in range(graph.m):
        lam_pow.append(lam_pow[-1] * lam)
    mu_pow = [Fraction(1)]
    for _ in range(graph.n):
        mu_pow.append(mu_pow[-1] * mu)
    parity_masks = [0] * graph.m  # vertex-parity bitmask flipped by each edge
    for e, (u, w) in enumerate(graph.edges):
        parity_masks[e] = (1 << u) | (1 << w)
    total = Fraction(0)
    for mask in range(1 << graph.m):
        parity = 0
        size = 0
        for e in range(graph.m):
            if mask >> e & 1:
                size += 1
                parity ^= parity_masks[e]
        total += mu_pow[bin(parity).count("1")] * lam_pow[size]
    return GaussianRational(total)


def ising_partition_mpf(graph: Graph, beta, b_field, bits: int = 128):
    """Z_Ising over {-1,+1} spins, evaluated in mpmath floats at the given precision."""
    beta, b_field = Fraction(beta), Fraction(b_field)
    with mpmath.workprec(bits):
        bb = mpmath.mpf(beta.numerator) / beta.denominator
        hh = mpmath.mpf(b_field.numerator) / b_field.denominator
        total = mpmath.mpf(0)
        for mask in range(1 << graph.n):
            spins = [1 if mask >> v & 1 else -1 for v in range(graph.n)]
            energy = sum(bb * spins[u] * spins[w] for u, w in graph.edges)
            energy += sum(hh * s for s in spins)
            total += mpmath.exp(energy)
        return total
