"""The finite Weyl group W0 acting on the lattice, with twisted conjugation.

Elements are stored as the integer matrix of their action on X; the matrix
is the canonical hash key (reduced words are not unique).  A canonical
reduced word is recovered greedily by smallest left descent, which makes
every reported word deterministic.  Elements of one datum are interned so
per-element caches (word, inverse, inversion pattern) are shared.
"""

from __future__ import annotations

from . import linalg
from .errors import DatumMismatch, GroupTooLarge
from .rootdata import DiagramAutomorphism

W0_CAP = 10_000_000


class FiniteWeylElt:
    __slots__ = ("datum", "matrix", "_word", "_length", "_inverse", "_neg_mask", "_order")

    def __init__(self, datum, matrix):
        self.datum = datum
        self.matrix = matrix
        self._word = None
        self._length = None
        self._inverse = None
        self._neg_mask = None
        self._order = None

    @property
    def key(self):
        return self.matrix

    @property
    def is_identity(self):
        return self.matrix == linalg.identity_matrix(self.datum.rank)

    @property
    def length(self):
        """Number of positive roots sent to negative roots."""
        if self._length is None:
            d = self.datum
            self._length = sum(
                1 for beta in d.pos_roots if linalg.row_mat(beta, self.matrix) in d._neg_set
            )
        return self._length

    @property
    def word(self):
        """Canonical reduced word: repeatedly strip the smallest left descent."""
        if self._word is None:
            d = self.datum
            word = []
            m = self.matrix
            ident = linalg.identity_matrix(d.rank)
            while m != ident:
                i = next(
                    i
                    for i in range(d.n_simple)
                    if linalg.row_mat(d.simple_roots[i], m) in d._neg_set
                )
                word.append(i)
                m = linalg.mat_mul(d.simple_reflection_matrix(i), m)
            self._word = tuple(word)
            if len(self._word) != self.length:
                raise AssertionError("canonical word length disagrees with inversion count")
        return self._word

    @property
    def neg_mask(self):
        """neg_mask[k] is True iff this element's inverse sends pos_roots[k]
        to a negative root; drives the affine length formula."""
        if self._neg_mask is None:
            d = self.datum
            self._neg_mask = tuple(
                linalg.row_mat(beta, self.matrix) in d._neg_set for beta in d.pos_roots
            )
        return self._neg_mask

    def inverse(self):
        if self._inverse is None:
            inv = linalg.invert_unimodular(self.matrix)
            if inv is None:
                raise AssertionError("Weyl group matrix is not unimodular")
            self._inverse = _intern(self.datum, inv)
            self._inverse._inverse = self
        return self._inverse

    def order(self):
        if self._order is None:
            ident = linalg.identity_matrix(self.datum.rank)
            m = self.matrix
            k = 1
            while m != ident:
                m = linalg.mat_mul(m, self.matrix)
                k += 1
                if k > W0_CAP:
                    raise AssertionError("element order exceeds group cap")
            self._order = k
        return self._order

    def act(self, v):
        """Action on a coweight vector."""
        return linalg.mat_vec(self.matrix, v)

    def act_root(self, beta):
        """Action on a root functional: beta o (matrix inverse)."""
        return linalg.row_mat(beta, self.inverse().matrix)

    def inv_act_root(self, beta):
        """The inverse element acting on a root functional: beta o matrix."""
        return linalg.row_mat(beta, self.matrix)

    def __mul__(self, other):
        if not isinstance(other, FiniteWeylElt):
            return NotImplemented
        if not self.datum.same_datum(other.datum):
            raise DatumMismatch("cannot compose elements of different root data")
        return _intern(self.datum, linalg.mat_mul(self.matrix, other.matrix))

    def __eq__(self, other):
        if not isinstance(other, FiniteWeylElt):
            return NotImplemented
        return self.matrix == other.matrix and self.datum.same_datum(other.datum)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        word = "*".join(f"s{i + 1}" for i in self.word) or "e"
        return f"<{word}>"


def _intern(datum, matrix):
    table = datum._cache.setdefault("fw_intern", {})
    elt = table.get(matrix)
    if elt is None:
        elt = FiniteWeylElt(datum, matrix)
        table[matrix] = elt
    return elt


def fw_identity(datum):
    return _intern(datum, linalg.identity_matrix(datum.rank))


def fw_simple(datum, i):
    return _intern(datum, datum.simple_reflection_matrix(i))


def fw_from_word(datum, word):
    elt = fw_identity(datum)
    for i in word:
        elt = elt * fw_simple(datum, i)
    return elt


def fw_reflection(datum, beta, betavee):
    return _intern(datum, datum.reflection_matrix(beta, betavee))


def fw_compose(a, b):
    return a * b


def fw_inverse(a):
    return a.inverse()


def enumerate_w0(datum, cap=W0_CAP):
    """All elements of W0 by closure under right multiplication.

    Cached on the datum; the returned list is sorted by (length, key) so the
    identity comes first and the longest element last.
    """
    cached = datum._cache.get("w0")
    if cached is not None:
        return cached
    gens = [fw_simple(datum, i) for i in range(datum.n_simple)]
    seen = {fw_identity(datum).key: fw_identity(datum)}
    frontier = [fw_identity(datum)]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = w * s
                if ws.key not in seen:
                    seen[ws.key] = ws
                    nxt.append(ws)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"|W0| exceeds cap {cap}")
        frontier = nxt
    result = tuple(sorted(seen.values(), key=lambda w: (w.length, w.key)))
    datum._cache["w0"] = result
    return result


def longest_element(datum):
    return enumerate_w0(datum)[-1]


def _resolve_delta(datum, delta):
    if delta is None:
        delta = datum.delta
    if delta is None:
        delta = DiagramAutomorphism.identity(datum.n_simple, datum.rank)
    return delta


def apply_delta(delta, w):
    """The automorphism of W0 induced by a diagram automorphism: g M g^-1."""
    g = delta.matrix
    ginv = linalg.invert_unimodular(g)
    return _intern(w.datum, linalg.mat_mul(g, linalg.mat_mul(w.matrix, ginv)))


def twisted_conjugate(w, i, delta):
    """s_i * w * delta(s_i)."""
    return fw_simple(w.datum, i) * w * fw_simple(w.datum, delta.perm[i])


def delta_reduce_to_min(w, delta=None):
    """Walk w down to a minimal-length element of its twisted conjugacy class.

    Moves are w -> s * w * delta(s) and never increase length; the walk
    explores each length level breadth-first (smallest canonical key first)
    and descends at the first strictly shorter conjugate.  Returns the
    landing element and the full list of (i, before, after) steps.
    """
    import heapq

    delta = _resolve_delta(w.datum, delta)
    path = []
    current = w
    while True:
        lcur = current.length
        elts = {current.key: current}
        parent = {current.key: None}
        heap = [current.key]
        descent = None
        while heap:
            k = heapq.heappop(heap)
            v = elts[k]
            for i in range(w.datum.n_simple):
                v2 = twisted_conjugate(v, i, delta)
                if v2.length < lcur:
                    descent = (v, i, v2)
                    break
                if v2.length == lcur and v2.key not in parent:
                    parent[v2.key] = (k, i)
                    elts[v2.key] = v2
                    heapq.heappush(heap, v2.key)
            if descent is not None:
                break
        if descent is None:
            return current, tuple(path)
        v, i, v2 = descent
        chain = []
        k = v.key
        while parent[k] is not None:
            pk, pi = parent[k]
            chain.append((pi, elts[pk], elts[k]))
            k = pk
        chain.reverse()
        path.extend(chain)
        path.append((i, v, v2))
        current = v2


def supp(w):
    """Simple indices occurring in a reduced word (independent of the word)."""
    return frozenset(w.word)


def supp_delta(w, delta=None):
    delta = _resolve_delta(w.datum, delta)
    out = set()
    frontier = set(supp(w))
    while frontier:
        out |= frontier
        frontier = {delta.perm[i] for i in frontier} - out
    return frozenset(out)


def is_elliptic_delta(w, delta=None):
    return supp_delta(w, delta) == frozenset(range(w.datum.n_simple))
