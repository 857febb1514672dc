"""Correlation-decay approximation: r-ball marginals and the self-reduction FPTAS.

A conditional edge marginal is estimated from the r-ball around the edge: the
fringe just outside the ball is fixed to a feasible fill obtained from a
tractable-search completion, the ball is restricted and pinned, and the ratio
of exact sub-Holants gives the estimate.  Under the adaptive policy the radius
doubles until consecutive distributions agree within the stabilization
tolerance.  The FPTAS pins edges one at a time at the argmax estimated value
and divides the chosen configuration's weight by the product of the recorded
conditional probabilities.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import (
    FailedPreconditionError,
    InfeasibleBoundaryError,
    InfeasibleInstanceError,
    InvalidArgumentError,
)
from .exact import FptSolver, instance_decomposition, simple_dp_hol
from .graphcore import HolantInstance, edge_ball, restrict_instance
from .values import GaussianRational


# ---------------------------------------------------------------------------
# radius policy

@dataclass(frozen=True)
class RadiusPolicy:
    """How far marginal estimation looks: a fixed radius or adaptive doubling."""

    mode: str = "adaptive"
    r_fixed: Optional[int] = None
    delta_stab: Optional[Fraction] = None
    r_cap: Optional[int] = None

    def __post_init__(self):
        if self.mode not in ("adaptive", "fixed"):
            raise InvalidArgumentError(f"unknown radius mode {self.mode!r}")
        if self.mode == "fixed" and self.r_fixed is not None and self.r_fixed < 0:
            raise InvalidArgumentError("fixed radius must be >= 0")
        if self.delta_stab is not None and self.delta_stab <= 0:
            raise InvalidArgumentError("stabilization tolerance must be > 0")

    @staticmethod
    def fixed(r: int) -> "RadiusPolicy":
        return RadiusPolicy(mode="fixed", r_fixed=r)

    @staticmethod
    def adaptive(delta_stab: Optional[Fraction] = None, r_cap: Optional[int] = None) -> "RadiusPolicy":
        return RadiusPolicy(mode="adaptive", delta_stab=delta_stab, r_cap=r_cap)

    @staticmethod
    def whole_graph() -> "RadiusPolicy":
        """Fixed radius large enough to always cover the edge's whole component."""
        return RadiusPolicy(mode="fixed", r_fixed=None)


def edge_diameter(graph) -> int:
    """Largest finite line-graph distance between edges (0 for <= 1 edge)."""
    best = 0
    for start in range(graph.m):
        dist = {start: 0}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for v in graph.endpoints(cur):
                for nxt in graph.incident[v]:
                    if nxt not in dist:
                        dist[nxt] = dist[cur] + 1
                        queue.append(nxt)
        best = max(best, max(dist.values()))
    return best


# ---------------------------------------------------------------------------
# tractable search

def _values_real_nonnegative(instance) -> bool:
    return all(
        not v.im and v.re >= 0 for f in instance.functions for v in f.table
    )


def _model_kind(instance):
    spec = instance.model
    return getattr(spec, "kind", None)


SEARCH_PLUGINS = (
    "matchings", "perfect_matchings", "weighted_matchings",
    "subgraphs_world", "ising", "potts", "colorings", "generic",
)


def tractable_search(
    instance: HolantInstance, partial: Mapping[int, int], plugin: Optional[str] = None
) -> Optional[dict]:
    """Extend a partial edge configuration to a full feasible one, or return None.

    Model-specific completions are used when the instance carries model
    provenance (or when ``plugin`` names one explicitly); anything else falls
    back to extension testing with the exact solvers (polynomial only in the
    sub-exponential sense, fine at desk scale).
    """
    g = instance.graph
    for e, val in partial.items():
        if not 0 <= e < g.m:
            raise InvalidArgumentError(f"partial assigns out-of-range edge {e}")
        if not 0 <= val < instance.q:
            raise InvalidArgumentError(f"partial value {val} outside domain [{instance.q}]")
    kind = _model_kind(instance) if plugin in (None, "auto") else plugin
    if kind == "generic":
        return _complete_generic(instance, partial)
    if kind == "matchings":
        return _complete_matchings(instance, partial)
    if kind in ("subgraphs_world", "ising", "weighted_matchings"):
        return _complete_paired_incidence(instance, partial, kind)
    if kind in ("potts", "colorings"):
        return _complete_spin_incidence(instance, partial, kind)
    if kind not in (None, "perfect_matchings") and plugin not in (None, "auto"):
        raise InvalidArgumentError(f"unknown search plugin {plugin!r}")
    return _complete_generic(instance, partial)


def _complete_matchings(instance, partial):
    g = instance.graph
    used = [0] * g.n
    for e, val in partial.items():
        if val:
            for v in g.endpoints(e):
                used[v] += 1
    if any(c > 1 for c in used):
        return None
    out = {e: 0 for e in range(g.m)}
    out.update(partial)
    return out


def _complete_paired_incidence(instance, partial, kind):
    """Incidence models whose edge-side function vanishes exactly on mixed pairs.

    The two incidence edges of each original edge must agree; matchings-like
    vertex sides additionally allow at most one selected edge per vertex.
    """
    base = getattr(instance.model, "base_graph", None)
    if base is None:
        raise InvalidArgumentError(f"the {kind} search plugin needs incidence-model provenance")
    n = base.n
    g = instance.graph
    out = dict(partial)
    for j in range(base.m):
        ev = n + j  # the edge-side vertex carries exactly the two half-edges
        half = g.incident[ev]
        have = [out[e] for e in half if e in out]
        if len(set(have)) > 1:
            return None
        fill = have[0] if have else 0
        for e in half:
            out.setdefault(e, fill)
        if len(set(out[e] for e in half)) > 1:
            return None
    if kind == "weighted_matchings":
        for v in range(n):
            if sum(out[e] for e in g.incident[v]) > 1:
                return None
    return out


def _complete_spin_incidence(instance, partial, kind):
    """Spin models on the incidence graph: all half-edges at a vertex share its spin."""
    base = getattr(instance.model, "base_graph", None)
    if base is None:
        raise InvalidArgumentError(f"the {kind} search plugin needs incidence-model provenance")
    n = base.n
    g = instance.graph
    spin = {}
    for e, val in partial.items():
        u, w = g.endpoints(e)
        v = u if u < n else w  # one endpoint is always an original vertex
        if spin.setdefault(v, val) != val:
            return None
    q = instance.q
    if kind == "potts":
        for v in range(n):
            spin.setdefault(v, 0)
    else:  # colorings: greedy proper extension, valid in the gated regime q > deg
        for v in range(n):
            if v in spin:
                continue
            taken = {spin[u] for u in base.neighbors(v) if u in spin}
            free = next((c for c in range(q) if c not in taken), None)
            if free is None:
                return None
            spin[v] = free
        for u, w in base.edges:
            if spin[u] == spin[w]:
                return None
    out = {}
    for e in range(g.m):
        u, w = g.endpoints(e)
        v = u if u < n else w
        out[e] = spin[v]
    out.update(partial)
    return out


def _auto_hol(instance) -> GaussianRational:
    if instance.graph.n <= 14 and instance.q <= 4:
        return simple_dp_hol(instance)
    decomp, _ = instance_decomposition(instance)
    return FptSolver(instance, decomp).holant()


def _restricted_positive(instance, pins) -> bool:
    keep = [e for e in range(instance.graph.m) if e not in pins]
    sub = restrict_instance(instance, pins, keep)
    if not sub.scalar:
        return False
    subinst, _ = sub.as_instance()
    return bool(_auto_hol(subinst))


def _complete_generic(instance, partial):
    if not _values_real_nonnegative(instance):
        raise InvalidArgumentError(
            "generic tractable search needs nonnegative real function values"
        )
    pins = dict(partial)
    if not _restricted_positive(instance, pins):
        return None
    for e in range(instance.graph.m):
        if e in pins:
            continue
        for i in range(instance.q):
            pins[e] = i
            if _restricted_positive(instance, pins):
                break
            del pins[e]
        else:
            return None  # cannot happen after the positivity check above
    return pins


# ---------------------------------------------------------------------------
# marginal estimation

@dataclass
class MarginalReport:
    r_used: int
    radii: tuple = ()
    gaps: tuple = ()  # (radius, total-variation gap to the previous radius)
    stabilized: bool = False
    full_cover: bool = False

    @property
    def certified(self) -> bool:
        return self.stabilized or self.full_cover


_decomp_cache: dict = {}


def _decomposition_for(instance):
    graph = instance.graph
    key = (graph.n, graph.edges, tuple(f.uid for f in instance.functions))
    got = _decomp_cache.get(key)
    if got is None:
        got, _ = instance_decomposition(instance)
        _decomp_cache[key] = got
    return got


def _ball_distribution(instance, e, cond, completion, r):
    """Exact conditional distribution of edge e on the radius-r restriction."""
    g = instance.graph
    q = instance.q
    ball, fringe = edge_ball(g, e, r)
    fix = {}
    for b in fringe:
        fix[b] = cond[b] if b in cond else completion[b]
    for c_edge, val in cond.items():
        if c_edge in ball:
            fix[c_edge] = val
    keep = sorted(ball - set(fix) - {e})
    subs = []
    for i in range(q):
        fix_i = dict(fix)
        fix_i[e] = i
        subs.append(restrict_instance(instance, fix_i, keep))
    base_inst, _ = subs[0].as_instance()
    numerators = []
    if base_inst.graph.n == 0:
        for sub in subs:
            numerators.append(sub.scalar.as_fraction())
    else:
        solver = FptSolver(base_inst, _decomposition_for(base_inst))
        vmap = {v: i for i, v in enumerate(subs[0].vertices)}
        for sub in subs:
            overrides = {}
            for v in sub.vertices:
                if sub.functions[v] is not subs[0].functions[v]:
                    overrides[vmap[v]] = sub.functions[v]
            z = solver.holant(overrides)
            numerators.append((sub.scalar * z).as_fraction())
    total = sum(numerators)
    if total == 0:
        raise InfeasibleBoundaryError(
            f"boundary fill gives zero mass around edge {e} at radius {r}"
        )
    full_cover = all(b in cond for b in fringe)
    return [num / total for num in numerators], full_cover


def _tv_distance(p, r):
    return sum(abs(a - b) for a, b in zip(p, r)) / 2


def marginal_distribution(
    instance: HolantInstance,
    e: int,
    cond: Mapping[int, int],
    policy: RadiusPolicy,
    *,
    completion: Optional[Mapping[int, int]] = None,
    search_plugin: Optional[str] = None,
) -> tuple[list[Fraction], MarginalReport]:
    """All q conditional marginals of edge e (they share one denominator and sum to 1)."""
    g = instance.graph
    if not 0 <= e < g.m:
        raise InvalidArgumentError(f"edge {e} out of range")
    if e in cond:
        dist = [Fraction(i == cond[e]) for i in range(instance.q)]
        return dist, MarginalReport(r_used=0, stabilized=True, full_cover=True)
    if completion is None:
        completion = tractable_search(instance, dict(cond), search_plugin)
        if completion is None:
            raise FailedPreconditionError("conditioning configuration is infeasible")
    cap = policy.r_cap if policy.r_cap is not None else max(1, edge_diameter(g))

    if policy.mode == "fixed":
        r = cap if policy.r_fixed is None else min(policy.r_fixed, cap)
        dist, full = _ball_distribution(instance, e, cond, completion, r)
        return dist, MarginalReport(r_used=r, radii=(r,), full_cover=full)

    delta = policy.delta_stab if policy.delta_stab is not None else Fraction(1, 64)
    prev = None
    radii = []
    gaps = []
    small_gaps = 0
    r = 1
    while True:
        r_eff = min(r, cap)
        dist, full = _ball_distribution(instance, e, cond, completion, r_eff)
        radii.append(r_eff)
        if full:
            # the ball covers everything not conditioned; the estimate is exact
            return dist, MarginalReport(
                r_used=r_eff, radii=tuple(radii), gaps=tuple(gaps),
                stabilized=bool(gaps) and gaps[-1][1] <= delta, full_cover=True,
            )
        if prev is not None:
            gap = _tv_distance(dist, prev)
            gaps.append((r_eff, gap))
            # one small gap can be an artifact of slow ball growth; demand two
            small_gaps = small_gaps + 1 if gap <= delta else 0
            if small_gaps >= 2:
                return dist, MarginalReport(
                    r_used=r_eff, radii=tuple(radii), gaps=tuple(gaps),
                    stabilized=True, full_cover=False,
                )
        if r_eff >= cap:
            return dist, MarginalReport(
                r_used=r_eff, radii=tuple(radii), gaps=tuple(gaps),
                stabilized=False, full_cover=False,
            )
        prev = dist
        r *= 2


def estimate_marginal(
    instance: HolantInstance,
    e: int,
    cond: Mapping[int, int],
    i: int,
    policy: RadiusPolicy,
) -> Fraction:
    """Estimated conditional probability that edge e takes value i."""
    if not 0 <= i < instance.q:
        raise InvalidArgumentError(f"value {i} outside domain [{instance.q}]")
    dist, _ = marginal_distribution(instance, e, cond, policy)
    return dist[i]


# ---------------------------------------------------------------------------
# the self-reduction FPTAS

@dataclass
class StepRecord:
    edge: int
    chosen: int
    probability: Fraction
    report: MarginalReport


@dataclass
class ApproxResult:
    value: GaussianRational
    certified: bool
    p_min: Fraction
    epsilon: Fraction
    steps: list = field(default_factory=list)
    flags: tuple = ()

    def __repr__(self):
        tag = "certified" if self.certified else "non-certified"
        return f"ApproxResult({self.value}, {tag}, p_min={self.p_min})"


def fptas_hol(
    instance: HolantInstance,
    eps,
    policy: Optional[RadiusPolicy] = None,
    search_plugin: Optional[str] = None,
) -> ApproxResult:
    """Approximate the Holant by telescoping estimated conditional marginals.

    Edges are pinned in id order to the value with the largest estimated
    marginal (ties to the smallest value); the result is the pinned
    configuration's weight divided by the product of recorded probabilities.
    Exact when every step's radius covers the whole component.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise InvalidArgumentError("epsilon must be > 0")
    if not _values_real_nonnegative(instance):
        raise InvalidArgumentError("approximation needs nonnegative rational values")
    g = instance.graph
    q, m = instance.q, g.m
    if policy is None:
        policy = RadiusPolicy.adaptive()
    if policy.mode == "adaptive" and policy.delta_stab is None:
        policy = RadiusPolicy(
            mode="adaptive",
            delta_stab=eps / (8 * q * max(1, m)),
            r_cap=policy.r_cap,
        )
    if tractable_search(instance, {}, search_plugin) is None:
        raise InfeasibleInstanceError("instance has no feasible configuration")

    pins: dict[int, int] = {}
    steps = []
    flags = []
    p_min = Fraction(1)
    for e in range(m):
        dist, report = marginal_distribution(instance, e, pins, policy, search_plugin=search_plugin)
        order = sorted(range(q), key=lambda i: (-dist[i], i))
        chosen = None
        for i in order:
            if dist[i] == 0:
                break
            if tractable_search(instance, {**pins, e: i}, search_plugin) is not None:
                chosen = i
                break
        if chosen is None:
            raise InfeasibleBoundaryError(
                f"no feasible extension at edge {e}; estimates too coarse"
            )
        if chosen != order[0]:
            flags.append(f"edge {e}: argmax value {order[0]} infeasible, used {chosen}")
        pins[e] = chosen
        p = dist[chosen]
        p_min = min(p_min, p)
        steps.append(StepRecord(edge=e, chosen=chosen, probability=p, report=report))

    config = tuple(pins[e] for e in range(m))
    weight = instance.weight(config)
    denom = Fraction(1)
    for rec in steps:
        denom *= rec.probability
    value = weight * (Fraction(1) / denom)
    certified = all(rec.report.certified for rec in steps)
    if m and p_min < Fraction(1, 2 * q):
        flags.append(f"p_min={p_min} fell below 1/(2q)")
    return ApproxResult(
        value=value,
        certified=certified,
        p_min=p_min,
        epsilon=eps,
        steps=steps,
        flags=tuple(flags),
    )
