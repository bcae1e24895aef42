"""Conjugation combinatorics in the extended affine Weyl group.

Cyclic-shift reduction to minimal length, closures under length-preserving
shifts, the decomposition of a minimal-length element as (finite part u) x
(straight part x) adapted to a spherical generator subset, straight
conjugacy classes keyed by (kappa, dominant Newton point), and the alcove
sign test for Levi compatibility.

All searches are deterministic: frontiers are explored smallest canonical
key first and generators in label order, so reported witnesses and paths are
reproducible.  Every closure is budget-capped and raises instead of
truncating silently.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .affweyl import (
    AffineWeylElt,
    aw_identity,
    defect_of,
    kappa_w,
    newton_point,
    is_straight,
    omega_elements,
    simple_reflections,
    transport_affine_root,
    AffineRoot,
)
from .errors import (
    DecompositionNotFound,
    ExplorationBudgetExceeded,
    InternalAssertion,
    NotMinimal,
    UnknownClass,
)

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class StraightClass:
    """A straight conjugacy class, identified by (kappa, nu_bar).

    Doubles as the combinatorial stand-in for a Frobenius-twisted conjugacy
    class of the associated residually split group.  Equality and hashing
    use only the identifying pair; length and defect are derived invariants
    carried along for the dimension formulas.
    """

    kappa: tuple
    nu_bar: tuple
    length: int
    defect: int

    def __eq__(self, other):
        if not isinstance(other, StraightClass):
            return NotImplemented
        return self.kappa == other.kappa and self.nu_bar == other.nu_bar

    def __hash__(self):
        return hash((self.kappa, self.nu_bar))

    @property
    def pair_key(self):
        return (self.kappa, self.nu_bar)

    def to_json(self):
        return {
            "kappa": list(self.kappa),
            "nu": [linalg.format_fraction(x) for x in self.nu_bar],
            "length": self.length,
            "defect": self.defect,
        }

    def __repr__(self):
        nu = ",".join(linalg.format_fraction(x) for x in self.nu_bar)
        return f"StraightClass(kappa={list(self.kappa)}, nu=({nu}), l={self.length}, def={self.defect})"


@dataclass(frozen=True)
class ConjugationStep:
    label: int
    before: AffineWeylElt
    after: AffineWeylElt

    def to_json(self):
        return {"s": self.label, "before": self.before.to_json(), "after": self.after.to_json()}


@dataclass(frozen=True)
class MinimizationResult:
    w_min: AffineWeylElt
    path: tuple

    def to_json(self):
        return {"w_min": self.w_min.to_json(), "path": [st.to_json() for st in self.path]}


@dataclass(frozen=True)
class UxDecomposition:
    u: AffineWeylElt
    x: AffineWeylElt
    K: tuple
    witness: AffineWeylElt

    def to_json(self):
        return {
            "u": self.u.to_json(),
            "x": self.x.to_json(),
            "K": list(self.K),
            "witness": self.witness.to_json(),
        }


def _class_of_straight(x):
    """StraightClass populated from a straight representative."""
    _, nu_bar = newton_point(x)
    length = linalg.vec_dot(x.datum.two_rho, nu_bar)
    if Fraction(length).denominator != 1:
        raise InternalAssertion("<2 rho, nu_bar> is not an integer")
    length = int(length)
    if length != x.length:
        raise InternalAssertion("representative is not straight")
    return StraightClass(
        kappa=kappa_w(x), nu_bar=nu_bar, length=length, defect=defect_of(x)
    )


def reduce_to_min(w, budget=None):
    """Minimal-length element of the conjugacy class of w.

    Walks w via conjugation steps v -> s v s, s simple, never increasing
    length: each length level is explored breadth-first and the walk descends
    at the first strictly shorter conjugate found.  The returned path records
    every step taken.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    memo = w.datum._cache.setdefault("reduce_min", {})
    hit = memo.get(w.key)
    if hit is not None:
        return hit
    refl = simple_reflections(w.datum)
    path = []
    current = w
    explored = 0
    while True:
        lcur = current.length
        elts = {current.key: current}
        parent = {current.key: None}
        heap = [current.key]
        descent = None
        while heap:
            k = heapq.heappop(heap)
            v = elts[k]
            for label, s in refl:
                v2 = s * v * s
                if v2.length < lcur:
                    descent = (v, label, v2)
                    break
                if v2.length == lcur and v2.key not in parent:
                    parent[v2.key] = (k, label)
                    elts[v2.key] = v2
                    heapq.heappush(heap, v2.key)
                    explored += 1
                    if explored > budget:
                        raise ExplorationBudgetExceeded(
                            f"cyclic-shift search exceeded {budget} nodes"
                        )
            if descent is not None:
                break
        if descent is None:
            result = MinimizationResult(current, tuple(path))
            memo[w.key] = result
            return result
        v, label, v2 = descent
        chain = []
        k = v.key
        while parent[k] is not None:
            pk, plabel = parent[k]
            chain.append(ConjugationStep(plabel, elts[pk], elts[k]))
            k = pk
        chain.reverse()
        path.extend(chain)
        path.append(ConjugationStep(label, v, v2))
        current = v2


def approx_closure(w, budget=None):
    """All elements connected to w by length-preserving conjugation steps,
    as a list sorted by canonical key."""
    budget = DEFAULT_BUDGET if budget is None else budget
    refl = simple_reflections(w.datum)
    lw = w.length
    elts = {w.key: w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for _, s in refl:
                v2 = s * v * s
                if v2.length == lw and v2.key not in elts:
                    elts[v2.key] = v2
                    nxt.append(v2)
                    if len(elts) > budget:
                        raise ExplorationBudgetExceeded(
                            f"shift-class closure exceeded {budget} nodes"
                        )
        frontier = nxt
    return [elts[k] for k in sorted(elts)]


def _spherical_subsets(datum):
    """Spherical subsets of the generator labels, smallest first."""
    cached = datum._cache.get("spherical_subsets")
    if cached is not None:
        return cached
    labels = [label for label, _ in simple_reflections(datum)]
    subsets = []
    for mask in range(1 << len(labels)):
        k = tuple(labels[i] for i in range(len(labels)) if mask & (1 << i))
        if is_spherical(datum, k):
            subsets.append(k)
    subsets.sort(key=lambda k: (len(k), k))
    result = tuple(subsets)
    datum._cache["spherical_subsets"] = result
    return result


def enumerate_parabolic(datum, labels, cap=100_000):
    """The finite subgroup generated by the labeled generators."""
    refl = dict(simple_reflections(datum))
    gens = [refl[l] for l in labels]
    ident = aw_identity(datum)
    seen = {ident.key: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for v in frontier:
            for s in gens:
                v2 = v * s
                if v2.key not in seen:
                    seen[v2.key] = v2
                    nxt.append(v2)
                    if len(seen) > cap:
                        raise ExplorationBudgetExceeded(
                            f"parabolic subgroup closure exceeded {cap} elements"
                        )
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def is_spherical(datum, labels):
    """True iff the labels omit a node from every component of the affine
    diagram, i.e. the subgroup they generate is finite.

    The diagram is derived from the generators themselves: two generators
    are adjacent iff they fail to commute.
    """
    labels = frozenset(labels)
    graph = datum._cache.get("affine_diagram")
    if graph is None:
        refl = simple_reflections(datum)
        graph = {}
        for la, sa in refl:
            graph[la] = set()
            for lb, sb in refl:
                if la != lb and (sa * sb).key != (sb * sa).key:
                    graph[la].add(lb)
        datum._cache["affine_diagram"] = graph
    all_labels = set(graph)
    if not labels <= all_labels:
        raise InternalAssertion(f"unknown generator labels: {sorted(labels - all_labels)}")
    seen = set()
    for start in sorted(all_labels):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in graph[a]:
                if b not in comp:
                    comp.add(b)
                    stack.append(b)
        seen |= comp
        if comp <= labels:
            return False
    return True


def ux_decompose(w_min, budget=None, check_minimal=True):
    """Split a minimal-length element through a spherical subset.

    Scans the shift-class of w_min (smallest key first) and the spherical
    subsets K (smallest first) for a presentation w'' = u x with x the
    minimal-length element of W_K w'', u in W_K, x straight, x doubly
    K-minimal, and conjugation by x permuting K.  Returns the first success.
    """
    if check_minimal:
        reduced = reduce_to_min(w_min, budget)
        if reduced.w_min.length < w_min.length:
            raise NotMinimal(
                f"element of length {w_min.length} reduces to length {reduced.w_min.length}"
            )
    datum = w_min.datum
    memo = datum._cache.setdefault("ux", {})
    hit = memo.get(w_min.key)
    if hit is not None:
        return hit
    refl = dict(simple_reflections(datum))
    closure = approx_closure(w_min, budget)
    for w2 in closure:
        for k_labels in _spherical_subsets(datum):
            gens = [(l, refl[l]) for l in k_labels]
            x = w2
            u_word = []
            changed = True
            while changed:
                changed = False
                for label, s in gens:
                    if (s * x).length < x.length:
                        u_word.append(label)
                        x = s * x
                        changed = True
                        break
            if not is_straight(x):
                continue
            # x must be minimal on both sides of W_K
            if any((x * s).length < x.length for _, s in gens):
                continue
            u = aw_identity(datum)
            for label in u_word:
                u = u * refl[label]
            if u.length != len(u_word) or u.length + x.length != w2.length:
                continue
            # conjugation by x must permute the chosen generators
            xinv = x.inv()
            images = []
            ok = True
            for _, s in gens:
                c = x * s * xinv
                match = next((l for l, g in gens if g == c), None)
                if match is None:
                    ok = False
                    break
                images.append(match)
            if not ok or sorted(images) != sorted(k_labels):
                continue
            result = UxDecomposition(u=u, x=x, K=tuple(k_labels), witness=w2)
            memo[w_min.key] = result
            for elt in closure:
                memo.setdefault(elt.key, result)
            return result
    raise DecompositionNotFound(
        f"no spherical decomposition found for {w_min!r}; this contradicts the "
        "minimal-length structure theory"
    )


def straight_class_of(w, budget=None):
    """The straight conjugacy class whose closure contains w's class."""
    memo = w.datum._cache.setdefault("straight_class", {})
    hit = memo.get(w.key)
    if hit is not None:
        return hit
    reduced = reduce_to_min(w, budget)
    dec = ux_decompose(reduced.w_min, budget, check_minimal=False)
    cls = _class_of_straight(dec.x)
    if cls.kappa != kappa_w(w):
        raise InternalAssertion("kappa of the straight part differs from kappa of w")
    memo[w.key] = cls
    memo.setdefault(reduced.w_min.key, cls)
    return cls


def length_ball(datum, max_len, budget=None):
    """All elements of length <= max_len, sorted by (length, key).

    BFS closure under right multiplication by the generators, seeded with
    the length-zero elements, accepting only elements inside the ball.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    cached = datum._cache.setdefault("length_ball", {})
    hit = cached.get(max_len)
    if hit is not None:
        return hit
    refl = simple_reflections(datum)
    seed = omega_elements(datum)
    elts = {w.key: w for w in seed}
    frontier = list(seed)
    while frontier:
        nxt = []
        for v in frontier:
            for _, s in refl:
                v2 = v * s
                if v2.length <= max_len and v2.key not in elts:
                    elts[v2.key] = v2
                    nxt.append(v2)
                    if len(elts) > budget:
                        raise ExplorationBudgetExceeded(
                            f"length ball exceeded {budget} elements"
                        )
        frontier = nxt
    result = tuple(sorted(elts.values(), key=lambda w: (w.length, w.key)))
    cached[max_len] = result
    return result


def enumerate_straight_classes(datum, max_len, budget=None):
    """All straight conjugacy classes with a representative of length
    <= max_len, sorted by (length, nu_bar, kappa)."""
    groups = {}
    for w in length_ball(datum, max_len, budget):
        if not is_straight(w):
            continue
        _, nu_bar = newton_point(w)
        key = (kappa_w(w), nu_bar)
        if key in groups:
            if defect_of(w) != groups[key].defect:
                raise InternalAssertion("defect is not constant on a straight class")
        else:
            groups[key] = _class_of_straight(w)
    return tuple(
        sorted(groups.values(), key=lambda c: (c.length, c.nu_bar, c.kappa))
    )


def resolve_class(datum, kappa, nu_bar):
    """StraightClass with the given invariants, or UnknownClass."""
    kappa = tuple(int(x) for x in kappa)
    nu_bar = datum.dominant_rep(nu_bar)
    length = linalg.vec_dot(datum.two_rho, nu_bar)
    if Fraction(length).denominator != 1 or length < 0:
        raise UnknownClass(f"<2 rho, nu> = {length} is not a nonnegative integer")
    for cls in enumerate_straight_classes(datum, int(length)):
        if cls.kappa == kappa and cls.nu_bar == nu_bar:
            return cls
    raise UnknownClass(
        f"no straight class with kappa={list(kappa)}, nu={[str(x) for x in nu_bar]}"
    )


def p_alcove_test(w, nu):
    """Alcove sign test against the parabolic determined by nu.

    True iff (i) the finite part of w lies in the reflection subgroup
    generated by the roots vanishing on nu, and (ii) for every root alpha
    positive on nu, positivity of (alpha, k) o w^-1 implies positivity of
    (alpha, k) over the finite window of levels k where the signs can
    differ.
    """
    datum = w.datum
    nu = tuple(Fraction(x) for x in nu)

    levi = datum._cache.setdefault("levi_groups", {})
    group = levi.get(nu)
    if group is None:
        gens = []
        for beta, betavee in zip(datum.pos_roots, datum.pos_coroots):
            if linalg.vec_dot(beta, nu) == 0:
                gens.append(datum.reflection_matrix(beta, betavee))
        ident = linalg.identity_matrix(datum.rank)
        group = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    m2 = linalg.mat_mul(m, g)
                    if m2 not in group:
                        group.add(m2)
                        nxt.append(m2)
            frontier = nxt
        levi[nu] = group
    if w.fw.matrix not in group:
        return False

    n_roots = [
        beta
        for beta in list(datum.pos_roots) + [linalg.vec_neg(b) for b in datum.pos_roots]
        if linalg.vec_dot(beta, nu) > 0
    ]
    if not n_roots:
        return True
    # window covers every level where the two signs can disagree, for the
    # original root and for its transported image alike
    window = 1 + max(abs(linalg.vec_dot(beta, w.lam)) for beta in datum.pos_roots)
    winv = w.inv()
    for beta in n_roots:
        for k in range(-window, window + 1):
            ar = AffineRoot(beta, k)
            if transport_affine_root(winv, ar).is_positive(datum) and not ar.is_positive(datum):
                return False
    return True
