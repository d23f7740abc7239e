"""Weak Fraisse sequence prefixes: construction, verification, zig-zags.

A prefix is a finite chain of objects and connecting arrows.  Construction
is greedy bookkeeping over a dovetailed queue of cofinality tasks (attach
every enumerated object) and absorption tasks (absorb every arrow out of a
prefix member), using the backend's constructive equalizer; it needs a
backend where spans out of prefix members equalize (amalgamation-property
backends: chains, decided trees, single-degree trees).

Verification is separate and bounded: (W0) scans enumerated objects for an
arrow into some member; (W1) hunts an amalgamable connector; prefixes carry
the bounds they were checked at, so claims are never stronger than checked.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .categories.base import Arrow, EnumerableCategory
from .categories.search import is_amalgamable_arrow, _objects_in_budget
from .verdicts import InputError, SearchBudget, Verdict


@dataclass(frozen=True)
class SequencePrefix:
    category: EnumerableCategory
    objects: tuple
    steps: tuple[Arrow, ...]  # steps[i]: objects[i] -> objects[i+1]
    log: tuple[str, ...] = ()
    checked: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if len(self.steps) != max(0, len(self.objects) - 1):
            raise InputError("prefix needs exactly one step between members")
        for i, s in enumerate(self.steps):
            if s.dom != self.objects[i] or s.cod != self.objects[i + 1]:
                raise InputError(f"step {i} does not connect members {i},{i+1}")

    def __len__(self) -> int:
        return len(self.objects)

    def arrow(self, k: int, m: int) -> Arrow:
        """The composite u_k^m."""
        if not (0 <= k <= m < len(self.objects)):
            raise InputError("indices outside the prefix")
        out = self.category.identity(self.objects[k])
        for i in range(k, m):
            out = self.category.compose(self.steps[i], out)
        return out

    def functoriality_violations(self) -> list[str]:
        out = []
        n = len(self.objects)
        for k in range(n):
            if self.arrow(k, k).data != self.category.identity(self.objects[k]).data:
                out.append(f"u_{k}^{k} is not the identity")
        for k in range(n):
            for l in range(k, n):
                for m in range(l, n):
                    lhs = self.arrow(k, m)
                    rhs = self.category.compose(self.arrow(l, m), self.arrow(k, l))
                    if lhs.data != rhs.data:
                        out.append(f"u_{k}^{m} != u_{l}^{m} . u_{k}^{l}")
        return out


def build_weak_fraisse_prefix(
    c: EnumerableCategory, length: int, budget: SearchBudget
) -> SequencePrefix:
    """Greedy prefix construction for backends with constructive equalizers.

    Bookkeeping schedule: first a batch cofinality step joining in every
    enumerated object not yet received by a member, then absorption steps
    equalizing queued arrows out of earlier members against the chain, in
    canonical queue order.
    """
    if length < 1:
        raise InputError("prefix length must be positive")
    objs, _ = _objects_in_budget(c, budget)
    if not objs:
        raise InputError("category has no objects within budget")
    if c.join(objs[0], objs[0]) is None:
        raise InputError("backend lacks amalgamation capability")

    members = [objs[0]]
    steps: list[Arrow] = []
    log = ["start"]

    def received(x) -> bool:
        return any(c.hom(x, u) for u in members)

    # batch cofinality: one join absorbing every unreceived enumerated object
    if length > 1:
        cur = members[-1]
        conn = c.identity(cur)
        joined = 0
        for x in objs:
            if joined >= budget.max_candidates:
                break
            if any(c.hom(x, u) for u in members) or c.hom(x, cur):
                continue
            got = c.join(cur, x)
            if got is None:
                log.append("cofinal:stuck")
                continue
            cur, e1, _ex = got[0], got[1], got[2]
            conn = c.compose(e1, conn)
            joined += 1
        if joined:
            members.append(cur)
            steps.append(conn)
            log.append(f"cofinal:batch-join[{joined}]")

    # absorption: equalize arrows out of earlier members against the chain
    absorb_queue: list[tuple[int, Arrow]] = []

    def refresh_absorb() -> None:
        n = len(members) - 1
        count = 0
        for y in objs:
            for f in c.hom(members[n], y):
                absorb_queue.append((n, f))
                count += 1
                if count >= budget.max_candidates:
                    return

    for n in range(len(members)):
        count = 0
        for y in objs:
            for f in c.hom(members[n], y):
                absorb_queue.append((n, f))
                count += 1
                if count >= budget.max_candidates:
                    break
            if count >= budget.max_candidates:
                break

    while len(members) < length:
        if absorb_queue:
            n, f = absorb_queue.pop(0)
            u_n_top = _composite(c, members, steps, n, len(members) - 1)
            got = c.equalize(f, u_n_top)
            if got is None:
                log.append("absorb:stuck")
                continue
            w, _f2, g2 = got
            if w == members[-1] and g2.data == c.identity(w).data:
                log.append("absorb:noop")
                continue
            members.append(w)
            steps.append(g2)
            log.append(f"absorb:equalize[{n}]")
            refresh_absorb()
        else:
            members.append(members[-1])
            steps.append(c.identity(members[-1]))
            log.append("pad:identity")
    return SequencePrefix(c, tuple(members), tuple(steps), tuple(log))


def _composite(c, members, steps, k, m) -> Arrow:
    out = c.identity(members[k])
    for i in range(k, m):
        out = c.compose(steps[i], out)
    return out


def verify_W0(prefix: SequencePrefix, size_bound: int) -> Verdict:
    """Every object up to the bound admits an arrow into some member."""
    c = prefix.category
    objs, exhaustive = _objects_in_budget(c, SearchBudget(max_size=size_bound))
    for x in objs:
        if not any(c.hom(x, u) for u in prefix.objects):
            return Verdict.no(
                certificate=c.describe_object(x),
                bound=size_bound,
                exhaustive=True,
            )
    prefix.checked["W0"] = size_bound
    return Verdict.yes(bound=size_bound, objects=len(objs), exhaustive=exhaustive)


def verify_W1_step(prefix: SequencePrefix, n: int, budget: SearchBudget) -> Verdict:
    """Find m >= n in the prefix with u_n^m amalgamable."""
    c = prefix.category
    if not (0 <= n < len(prefix)):
        raise InputError("index outside the prefix")
    attempts = {}
    for m in range(n, len(prefix)):
        v = is_amalgamable_arrow(c, prefix.arrow(n, m), budget)
        attempts[m] = v.status
        if v.is_yes:
            prefix.checked.setdefault("W1", {})[n] = m
            return Verdict.yes(n=n, m=m, scope=v.payload, exhaustive=v.exhaustive)
    if all(s == "no" for s in attempts.values()):
        return Verdict.no(n=n, attempts=attempts, exhaustive=True)
    return Verdict.unknown(n=n, attempts=attempts)


@dataclass(frozen=True)
class ZigZag:
    left: SequencePrefix
    right: SequencePrefix
    k_indices: tuple[int, ...]
    l_indices: tuple[int, ...]
    forward: tuple[Arrow, ...]  # f_i: u_{k_i} -> v_{l_i}
    backward: tuple[Arrow, ...]  # g_i: v_{l_i} -> u_{k_{i+1}}

    def identity_violations(self) -> list[str]:
        c = self.left.category
        out = []
        for i, g in enumerate(self.backward):
            lhs = c.compose(g, self.forward[i])
            rhs = self.left.arrow(self.k_indices[i], self.k_indices[i + 1])
            if lhs.data != rhs.data:
                out.append(f"g_{i}.f_{i} != u_k{i}^k{i+1}")
        for i in range(1, len(self.forward)):
            lhs = c.compose(self.forward[i], self.backward[i - 1])
            rhs = self.right.arrow(self.l_indices[i - 1], self.l_indices[i])
            if lhs.data != rhs.data:
                out.append(f"f_{i}.g_{i-1} != v_l{i-1}^l{i}")
        return out


def back_and_forth(
    left: SequencePrefix, right: SequencePrefix, steps: int, budget: SearchBudget
) -> ZigZag:
    """Close `steps` zig-zag squares between two prefixes by arrow search.

    Each square is closed exactly: g_i . f_i equals the left composite and
    f_{i+1} . g_i equals the right composite.  Raises InputError when the
    prefixes are too short to close a square within budget.
    """
    c = left.category
    k_idx = [0]
    l_idx: list[int] = []
    forward: list[Arrow] = []
    backward: list[Arrow] = []
    for step in range(steps):
        k = k_idx[-1]
        found = None
        l_start = l_idx[-1] + 1 if l_idx else 0
        for l in range(l_start, len(right)):
            for cand_f in c.hom(left.objects[k], right.objects[l]):
                if forward:
                    # the new forward arrow must close the previous square
                    want_v = right.arrow(l_idx[-1], l)
                    if c.compose(cand_f, backward[-1]).data != want_v.data:
                        continue
                got = _close_square(c, left, right, k, l, cand_f, budget)
                if got is not None:
                    found = (l, cand_f, got[0], got[1])
                    break
            if found is not None:
                break
        if found is None:
            raise InputError(f"budget exhausted before closing square {step}")
        l2, f, g, k2 = found
        forward.append(f)
        backward.append(g)
        l_idx.append(l2)
        k_idx.append(k2)
    return ZigZag(left, right, tuple(k_idx), tuple(l_idx), tuple(forward), tuple(backward))


def _close_square(c, left, right, k, l, f: Arrow, budget):
    """Find g: v_l -> u_k2, k2 > k, with g . f == u_k^k2 (strict progress
    toward a cofinal index sequence)."""
    for k2 in range(k + 1, len(left)):
        want = left.arrow(k, k2)
        for g in c.hom(right.objects[l], left.objects[k2]):
            if c.compose(g, f).data == want.data:
                return g, k2
    return None


# ---------------------------------------------------------------------------
# Generic colored chains


@dataclass(frozen=True)
class ColoredChain:
    colors: tuple[str, ...]
    sequence: tuple[int, ...]  # color index per point, in chain order
    rounds: int
    stages: tuple[tuple[int, ...], ...]  # point ids per round, in chain order
    point_ids: tuple[int, ...]  # stable ids, in chain order


def generic_coloring_prefix(colors, rounds: int) -> ColoredChain:
    """A finite stage of the generic coloring of a dense chain.

    Round 0 lays one point of each color; every later round inserts a full
    palette into every gap between adjacent existing points.  After round r,
    every gap between round-(r-1) points contains every color, and each
    stage is an initial construction stage of the next.
    """
    colors = tuple(colors)
    if not colors:
        raise InputError("need at least one color")
    if rounds < 0:
        raise InputError("rounds must be nonnegative")
    next_id = 0
    chain: list[tuple[int, int]] = []  # (point id, color index)
    stages = []
    for c_idx in range(len(colors)):
        chain.append((next_id, c_idx))
        next_id += 1
    stages.append(tuple(pid for pid, _ in chain))
    for _r in range(rounds):
        out: list[tuple[int, int]] = []
        for i, (pid, c_idx) in enumerate(chain):
            out.append((pid, c_idx))
            if i + 1 < len(chain):
                for c2 in range(len(colors)):
                    out.append((next_id, c2))
                    next_id += 1
        chain = out
        stages.append(tuple(pid for pid, _ in chain))
    return ColoredChain(
        colors,
        tuple(c for _, c in chain),
        rounds,
        tuple(stages),
        tuple(pid for pid, _ in chain),
    )
