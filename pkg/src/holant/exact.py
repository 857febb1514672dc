"""Exact Holant evaluation: brute force, vertex-elimination DP, and the FPT solver.

The FPT solver follows the three-way recursion over a separator decomposition:
at a node with children U1, U2 and separator S, the value Z(U, {phi_v}) is a sum
over joint choices of peer images (one per core vertex per side) of
Z0 * Z1 * Z2 * prod_v gtilde_v, where Z1/Z2 recurse into the children with the
chosen peer images as boundary constraints and Z0 is a small Holant on the core
solved by the simple DP.

Two equivalent term enumerations are provided.  The default ("folded") absorbs
the core-side peer images into Z0 by pinning each core function with the chosen
child-side representatives, so only child-side images are enumerated; the
"literal" path enumerates all three images per vertex exactly as the recursion
is stated.  Both are cross-checked in the tests.
"""

from __future__ import annotations

import math
import os
from itertools import product
from typing import Mapping, Optional

from .errors import InvalidArgumentError, ResourceExhaustedError
from .graphcore import HolantInstance, vertex_boundary
from .sepdecomp import SeparatorDecomposition, find_min_width, validate
from .symfun import (
    BooleanSymmetricFunction,
    SymmetricFunction,
    add_compositions,
    composition_of,
    peer_partition,
    pin,
    worst_pair_count,
)
from .values import ONE, ZERO, GaussianRational

DEFAULT_ENUM_CAP_BITS = 24
ENUM_CAP_ENV = "HOLANT_ENUM_CAP"


def enumeration_cap_bits() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP_BITS
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidArgumentError(f"bad {ENUM_CAP_ENV}={raw!r}") from exc


# ---------------------------------------------------------------------------
# brute force

def brute_force_hol(instance: HolantInstance, cap_bits: Optional[int] = None) -> GaussianRational:
    """Sum over all q^m edge configurations of the product of vertex evaluations."""
    q, g = instance.q, instance.graph
    m = g.m
    cap = enumeration_cap_bits() if cap_bits is None else cap_bits
    if m * math.log2(q) > cap:
        raise ResourceExhaustedError(
            f"enumeration needs {m}*log2({q}) = {m * math.log2(q):.1f} bits > cap {cap}",
            last_attempt=cap,
        )
    funcs = instance.functions
    incident = g.incident
    total = ZERO
    for config in product(range(q), repeat=m):
        term = ONE
        for v in range(g.n):
            counts = [0] * q
            for e in incident[v]:
                counts[config[e]] += 1
            val = funcs[v].value_at(tuple(counts))
            if not val:
                term = ZERO
                break
            term = term * val
        if term:
            total = total + term
    return total


# ---------------------------------------------------------------------------
# simple vertex-elimination dynamic program

def _unit_compositions(q):
    return tuple(tuple(1 if i == j else 0 for j in range(q)) for i in range(q))


def _simple_dp(q, funcs, incident, endpoints) -> GaussianRational:
    """Eliminate vertices in descending index order, pinning lower neighbors.

    ``funcs[v]`` must have arity equal to v's degree in the given edge lists.
    The DP state is the tuple of current (pinned) functions at the remaining
    vertices; regularity keeps the number of reachable states per vertex small.
    """
    n = len(funcs)
    lower = [[] for _ in range(n)]
    for v in range(n):
        for e in incident[v]:
            u, w = endpoints[e]
            other = w if u == v else u
            if other < v:
                lower[v].append(other)
    units = _unit_compositions(q)
    memo = {}

    def z(k, state):
        if k == 0:
            return ONE
        key = tuple(f.uid for f in state)
        got = memo.get(key)
        if got is not None:
            return got
        v = k - 1
        fv = state[v]
        neighbors = lower[v]
        total = ZERO
        for assign in product(range(q), repeat=len(neighbors)):
            factor = fv.value_at(composition_of(q, assign))
            if not factor:
                continue
            new_state = list(state[:v])
            for other, val in zip(neighbors, assign):
                new_state[other] = pin(new_state[other], units[val])
            sub = z(v, tuple(new_state))
            if sub:
                total = total + factor * sub
        memo[key] = total
        return total

    return z(n, tuple(funcs))


def simple_dp_hol(instance: HolantInstance) -> GaussianRational:
    """Exact Holant by vertex elimination; equals brute_force_hol on every instance."""
    g = instance.graph
    return _simple_dp(instance.q, list(instance.functions), g.incident, g.edges)


def instance_vertex_costs(instance: HolantInstance) -> list[int]:
    """Log-scale branching costs per vertex, for cost-aware separator search.

    The separator recursion enumerates up to worst_pair_count(f_v) joint peer
    images per separator vertex; minimizing the cost sum over cuts minimizes
    the product of branching factors.
    """
    out = []
    for f in instance.functions:
        pairs = worst_pair_count(f)
        out.append(max(1, round(16 * math.log2(max(2, pairs)))))
    return out


def instance_decomposition(
    instance: HolantInstance, s_cap: Optional[int] = None
) -> tuple[SeparatorDecomposition, int]:
    """A separator decomposition of the instance graph, steered by vertex costs.

    Regions are split down to pairs so every local subproblem handed to the
    simple DP stays small even for large domains.
    """
    cap = max(1, instance.graph.n) if s_cap is None else s_cap
    return find_min_width(instance.graph, cap, instance_vertex_costs(instance), base_size=2)


# ---------------------------------------------------------------------------
# boundary-constrained sub-Holants

def hol_with_boundary(
    instance: HolantInstance,
    constraints: Mapping[int, BooleanSymmetricFunction],
    *,
    method: str = "auto",
    dp_threshold: int = 16,
) -> GaussianRational:
    """The Holant of ``instance`` with boolean constraints replacing boundary functions.

    The constraint at vertex v must have arity deg(v).  Small instances go to
    the simple DP; larger ones are decomposed and solved by the FPT recursion.
    """
    g = instance.graph
    funcs = list(instance.functions)
    for v, phi in constraints.items():
        if not 0 <= v < g.n:
            raise InvalidArgumentError(f"constraint vertex {v} out of range")
        if phi.q != instance.q or phi.k != g.degree(v):
            raise InvalidArgumentError(
                f"constraint at vertex {v} has shape (q={phi.q}, k={phi.k}), "
                f"need (q={instance.q}, k={g.degree(v)})"
            )
        funcs[v] = phi.to_function()
    constrained = HolantInstance(g, instance.q, funcs)
    if method == "simple" or (method == "auto" and g.n <= dp_threshold and instance.q <= 4):
        return simple_dp_hol(constrained)
    decomp, _ = instance_decomposition(constrained)
    return FptSolver(constrained, decomp).holant()


# ---------------------------------------------------------------------------
# the FPT solver

class FptStats:
    __slots__ = ("memo_entries", "terms", "z0_entries")

    def __init__(self):
        self.memo_entries = 0
        self.terms = 0
        self.z0_entries = 0

    def as_dict(self):
        return {
            "memo_entries": self.memo_entries,
            "z0_entries": self.z0_entries,
            "terms": self.terms,
        }


class _NodeInfo:
    __slots__ = ("core", "roles", "d0", "d1", "d2", "bd1_pos", "bd2_pos",
                 "h0_incident", "h0_endpoints", "children", "h0_order")

    def __init__(self, core, roles, d0, d1, d2, bd1_pos, bd2_pos,
                 h0_incident, h0_endpoints, children, h0_order):
        self.core = core
        self.roles = roles
        self.d0 = d0
        self.d1 = d1
        self.d2 = d2
        self.bd1_pos = bd1_pos
        self.bd2_pos = bd2_pos
        self.h0_incident = h0_incident
        self.h0_endpoints = h0_endpoints
        self.children = children
        self.h0_order = h0_order


_pairs_cache: dict = {}


def _survivor_pairs(gv, d1, d2, skip_zero):
    """Per-vertex peer-image pairs for the folded recursion, grouped by the
    child-1 image; cached globally by (function, split)."""
    key = (gv.uid, d1, d2, skip_zero)
    got = _pairs_cache.get(key)
    if got is not None:
        return got
    part1 = peer_partition(gv, d1)
    part2 = peer_partition(gv, d2)
    by_c1 = []
    for c1, r1 in zip(part1.classes, part1.representatives):
        inner = []
        for c2, r2 in zip(part2.classes, part2.representatives):
            h = pin(gv, add_compositions(r1, r2))
            if skip_zero and h.is_zero_function():
                continue
            inner.append((c2, h))
        if inner:
            by_c1.append((c1, tuple(inner)))
    got = tuple(by_c1)
    _pairs_cache[key] = got
    return got


class FptSolver:
    """Memoized evaluator of the separator-decomposition recursion.

    One solver instance precomputes the per-node structure for a fixed graph and
    decomposition; ``holant`` may then be called repeatedly, optionally with a
    few vertex functions overridden (pinned variants), sharing the memo table
    across calls.
    """

    def __init__(
        self,
        instance: HolantInstance,
        decomposition: SeparatorDecomposition,
        *,
        literal: bool = False,
        skip_zero_terms: bool = True,
        check_closure_membership: bool = False,
        validate_decomposition: bool = True,
    ):
        if validate_decomposition:
            err = validate(instance.graph, decomposition)
            if err is not None:
                raise InvalidArgumentError(f"invalid decomposition: {err}")
        self.instance = instance
        self.dec = decomposition
        self.literal = literal
        self.skip_zero_terms = skip_zero_terms
        self.check_closure = check_closure_membership
        self.stats = FptStats()
        self._memo = {}
        self._z0_memo = {}
        self._boundary = {}
        self._info = {}
        self._overrides = {}
        self._sig_cache = {}
        g = instance.graph
        for node in decomposition.nodes:
            self._boundary[node.id] = tuple(sorted(vertex_boundary(g, node.v_set)))
        for node in decomposition.nodes:
            if not node.is_leaf():
                self._info[node.id] = self._build_info(node)

    def _build_info(self, node) -> _NodeInfo:
        g = self.instance.graph
        j, k = node.children
        u_set = node.v_set
        s_set = node.s_set
        u1 = self.dec.nodes[j].v_set
        u2 = self.dec.nodes[k].v_set
        bd = self._boundary[node.id]
        core = tuple(sorted(set(s_set) | set(bd)))
        pos = {v: i for i, v in enumerate(core)}
        roles = tuple(v in s_set for v in core)  # True: separator (keeps f_v)
        d0 = [0] * len(core)
        d1 = [0] * len(core)
        d2 = [0] * len(core)
        h0_edges = []
        for i, v in enumerate(core):
            in_u = roles[i]
            for u in g.neighbors(v):
                if not in_u and u not in u_set:
                    continue  # boundary-boundary and outward edges are not in H
                if u in u1:
                    d1[i] += 1
                elif u in u2:
                    d2[i] += 1
                else:
                    d0[i] += 1  # u is in S u dU (every H-neighbor outside U1, U2 is)
        for a, b in g.edges:
            if a in pos and b in pos and (a in s_set or b in s_set):
                h0_edges.append((pos[a], pos[b]))
        h0_incident = [[] for _ in core]
        for e_idx, (a, b) in enumerate(h0_edges):
            h0_incident[a].append(e_idx)
            h0_incident[b].append(e_idx)
        bd1_pos = tuple(i for i, v in enumerate(core) if d1[i] > 0)
        bd2_pos = tuple(i for i, v in enumerate(core) if d2[i] > 0)
        if tuple(core[i] for i in bd1_pos) != self._boundary[j] or \
                tuple(core[i] for i in bd2_pos) != self._boundary[k]:
            raise InvalidArgumentError(
                f"decomposition node {node.id}: children boundaries do not match the graph"
            )
        # eliminate low-degree H0 vertices first: hubs get low indices
        h0_deg = [len(inc) for inc in h0_incident]
        order = sorted(range(len(core)), key=lambda i: (-h0_deg[i], i))
        inv = {old: new for new, old in enumerate(order)}
        perm_edges = tuple((inv[a], inv[b]) for a, b in h0_edges)
        perm_incident = [[] for _ in core]
        for e_idx, (a, b) in enumerate(perm_edges):
            perm_incident[a].append(e_idx)
            perm_incident[b].append(e_idx)
        return _NodeInfo(core, roles, tuple(d0), tuple(d1), tuple(d2),
                         bd1_pos, bd2_pos, perm_incident, perm_edges, (j, k),
                         tuple(order))

    # -- public -----------------------------------------------------------

    def holant(self, function_overrides: Optional[Mapping[int, SymmetricFunction]] = None) -> GaussianRational:
        """Z(V, {}) for the instance, with optional per-vertex function overrides."""
        g = self.instance.graph
        self._overrides = {}
        self._sig_cache = {}
        if function_overrides:
            for v, f in function_overrides.items():
                if f.q != self.instance.q or f.d != g.degree(v):
                    raise InvalidArgumentError(f"override at vertex {v} has wrong shape")
                self._overrides[v] = f
        return self._z(self.dec.root.id, ())

    # -- internals ----------------------------------------------------------

    def _func(self, v) -> SymmetricFunction:
        got = self._overrides.get(v)
        return self.instance.functions[v] if got is None else got

    def _sig(self, node_id):
        if not self._overrides:
            return ()
        got = self._sig_cache.get(node_id)
        if got is None:
            v_set = self.dec.nodes[node_id].v_set
            got = tuple((v, f.uid) for v, f in sorted(self._overrides.items()) if v in v_set)
            self._sig_cache[node_id] = got
        return got

    def _z(self, node_id, phi) -> GaussianRational:
        node = self.dec.nodes[node_id]
        if node.is_leaf():
            return ONE
        key = (node_id, tuple(c.uid for c in phi), self._sig(node_id))
        got = self._memo.get(key)
        if got is not None:
            return got
        value = self._expand(node_id, phi)
        self._memo[key] = value
        self.stats.memo_entries += 1
        return value

    def _effective(self, node_id, phi):
        """g_v for each core vertex: original (possibly overridden) in S, constraint on the boundary."""
        info = self._info[node_id]
        bd = self._boundary[node_id]
        bd_pos = {v: i for i, v in enumerate(bd)}
        funcs = []
        for i, v in enumerate(info.core):
            if info.roles[i]:
                funcs.append(self._func(v))
            else:
                constraint = phi[bd_pos[v]]
                if self.check_closure:
                    self._check_membership(v, constraint)
                funcs.append(constraint.to_function())
        return funcs

    def _check_membership(self, v, constraint):
        base = peer_partition(self._func(v), constraint.k)
        for cls in base.classes:
            inter = cls.members & constraint.members
            if inter and inter != cls.members:
                raise AssertionError(
                    f"constraint at vertex {v} is not a union of base peer classes"
                )

    def _expand(self, node_id, phi) -> GaussianRational:
        info = self._info[node_id]
        q = self.instance.q
        g_funcs = self._effective(node_id, phi)
        j, k = info.children

        if self.literal:
            return self._expand_literal(info, g_funcs, j, k)

        # per core vertex: child-1 image choices, each with its surviving child-2 images
        outer = []
        for i in range(len(info.core)):
            by_c1 = _survivor_pairs(g_funcs[i], info.d1[i], info.d2[i], self.skip_zero_terms)
            if not by_c1:
                return ZERO
            outer.append(by_c1)

        bd1_pos, bd2_pos = info.bd1_pos, info.bd2_pos
        node2_prefix = (k, self._sig(k))
        z_memo = self._memo
        z0_memo = self._z0_memo
        stats = self.stats
        total = ZERO
        for c1_joint in product(*outer):
            z1 = self._z(j, tuple(c1_joint[p][0] for p in bd1_pos))
            if not z1:
                stats.terms += 1
                continue
            for c2_joint in product(*(c[1] for c in c1_joint)):
                stats.terms += 1
                h_key = (node_id,) + tuple(t[1].uid for t in c2_joint)
                z0 = z0_memo.get(h_key)
                if z0 is None:
                    z0 = self._hol0_compute(node_id, tuple(t[1] for t in c2_joint), h_key)
                if not z0:
                    continue
                key2 = tuple(c2_joint[p][0].uid for p in bd2_pos)
                z2 = z_memo.get((k, key2, node2_prefix[1]))
                if z2 is None:
                    z2 = self._z(k, tuple(c2_joint[p][0] for p in bd2_pos))
                if not z2:
                    continue
                total = total + z0 * z1 * z2
        return total

    def _expand_literal(self, info, g_funcs, j, k) -> GaussianRational:
        choices = []
        for i in range(len(info.core)):
            gv = g_funcs[i]
            part0 = peer_partition(gv, info.d0[i])
            part1 = peer_partition(gv, info.d1[i])
            part2 = peer_partition(gv, info.d2[i])
            triples = []
            for c0, r0 in zip(part0.classes, part0.representatives):
                for c1, r1 in zip(part1.classes, part1.representatives):
                    for c2, r2 in zip(part2.classes, part2.representatives):
                        gtilde = gv.value_at(add_compositions(add_compositions(r0, r1), r2))
                        if self.skip_zero_terms and not gtilde:
                            continue
                        triples.append((c0, c1, c2, gtilde))
            if not triples:
                return ZERO
            choices.append(triples)

        bd1_pos, bd2_pos = info.bd1_pos, info.bd2_pos
        total = ZERO
        for joint in product(*choices):
            self.stats.terms += 1
            weight = ONE
            for t in joint:
                weight = weight * t[3]
            if not weight:
                continue
            z0 = self._hol0_boolean(info, tuple(t[0] for t in joint))
            if not z0:
                continue
            z1 = self._z(j, tuple(joint[p][1] for p in bd1_pos))
            if not z1:
                continue
            z2 = self._z(k, tuple(joint[p][2] for p in bd2_pos))
            if not z2:
                continue
            total = total + weight * z0 * z1 * z2
        return total

    def _hol0_compute(self, node_id, h_funcs, key) -> GaussianRational:
        info = self._info[node_id]
        if not info.h0_endpoints:
            value = ONE
            for f in h_funcs:
                value = value * f.scalar()
                if not value:
                    break
        else:
            value = _simple_dp(
                self.instance.q,
                [h_funcs[i] for i in info.h0_order],
                info.h0_incident,
                info.h0_endpoints,
            )
        self._z0_memo[key] = value
        self.stats.z0_entries += 1
        return value

    def _hol0_boolean(self, info, phi0) -> GaussianRational:
        return _simple_dp(
            self.instance.q,
            [phi0[i].to_function() for i in info.h0_order],
            info.h0_incident,
            info.h0_endpoints,
        )


def fpt_hol(instance: HolantInstance, decomposition: SeparatorDecomposition, **kwargs) -> GaussianRational:
    """Exact Holant via the separator-decomposition recursion."""
    return FptSolver(instance, decomposition, **kwargs).holant()
