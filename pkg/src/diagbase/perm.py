"""Permutation-group kernel: orbits, stabilizer chains, transporters, classes.

Composition is left-to-right throughout: ``(p * q)`` applies ``p`` first,
so point images satisfy ``x^(p*q) = (x^p)^q``.  The stabilizer-chain code is
generic over the element type; it only needs ``*``, ``inv()``, ``image(pt)``,
``is_identity()``, ``first_moved()``, ``identity_element()`` and hashability,
so the diagonal-action module reuses it with its own compact elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    DomainError,
    InternalConsistencyError,
    MalformedPermutationError,
    ResourceLimitError,
)

ORDER_CAP_DEFAULT = 10_000_000
TRANSPORTER_STATE_CAP = 5_000_000


class Permutation:
    """A permutation of {0..n-1} stored as the tuple of images."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        imgs = tuple(images)
        if sorted(imgs) != list(range(len(imgs))):
            raise MalformedPermutationError(
                "not a bijection on 0..%d: %r" % (len(imgs) - 1, imgs)
            )
        self.images = imgs
        self._hash = None

    @classmethod
    def _raw(cls, imgs):
        p = object.__new__(cls)
        p.images = imgs
        p._hash = None
        return p

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n, *cycles):
        """Build a permutation of 0..n-1 from disjoint cycles."""
        imgs = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:]):
                imgs[a] = b
            if cycle:
                imgs[cycle[-1]] = cycle[0]
        return cls(imgs)

    @property
    def degree(self):
        return len(self.images)

    def identity_element(self):
        return Permutation.identity(len(self.images))

    def image(self, p):
        return self.images[p]

    def __mul__(self, other):
        b = other.images
        return Permutation._raw(tuple(b[x] for x in self.images))

    def inv(self):
        out = [0] * len(self.images)
        for i, j in enumerate(self.images):
            out[j] = i
        return Permutation._raw(tuple(out))

    def conj(self, u):
        """u^-1 * self * u."""
        return u.inv() * self * u

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def first_moved(self):
        for i, j in enumerate(self.images):
            if i != j:
                return i
        return None

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self):
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def sign(self):
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def key(self):
        return self.images

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "Permutation(id/%d)" % len(self.images)
        return "Permutation(%s)" % "".join(
            "(" + " ".join(map(str, c)) + ")" for c in cyc
        )


class _Budget:
    """Visited-state counter guarding orbit/transversal blowup."""

    __slots__ = ("left",)

    def __init__(self, cap):
        self.left = cap

    def charge(self, n):
        self.left -= n
        if self.left < 0:
            raise ResourceLimitError("visited-state cap exceeded")


def _build_tree(root, gens, budget=None):
    """Schreier vector: point -> None (root) or (gen_index, parent_point)."""
    tree = {root: None}
    frontier = [root]
    while frontier:
        nxt = []
        for gi, g in enumerate(gens):
            for a in frontier:
                b = g.image(a)
                if b not in tree:
                    tree[b] = (gi, a)
                    nxt.append(b)
        frontier = nxt
    if budget is not None:
        budget.charge(len(tree))
    return tree


class _Transversal:
    """Lazy transversal over a Schreier vector (iterative walk, memoized)."""

    __slots__ = ("tree", "gens", "fwd", "inv")

    def __init__(self, root, gens, identity, tree=None, budget=None):
        self.gens = gens
        self.tree = tree if tree is not None else _build_tree(root, gens, budget)
        self.fwd = {root: identity}
        self.inv = {}

    def __contains__(self, p):
        return p in self.tree

    def __len__(self):
        return len(self.tree)

    def element(self, p):
        """Element u with root^u = p."""
        el = self.fwd.get(p)
        if el is not None:
            return el
        path = []
        q = p
        while q not in self.fwd:
            gi, parent = self.tree[q]
            path.append((q, gi))
            q = parent
        el = self.fwd[q]
        for q2, gi in reversed(path):
            el = el * self.gens[gi]
            self.fwd[q2] = el
        return el

    def element_inv(self, p):
        el = self.inv.get(p)
        if el is None:
            el = self.element(p).inv()
            self.inv[p] = el
        return el


def orbit_of(gens, point):
    """Sorted orbit of a point under a generator list."""
    return sorted(_build_tree(point, gens))


def orbits(generators, domain_size):
    """Orbit partition of {0..domain_size-1}.

    Returned as sorted tuples, ordered by decreasing size then by smallest
    element.
    """
    seen = [False] * domain_size
    out = []
    for start in range(domain_size):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            nxt = []
            for g in generators:
                for a in frontier:
                    b = g.image(a)
                    if not seen[b]:
                        seen[b] = True
                        orb.append(b)
                        nxt.append(b)
            frontier = nxt
        orb.sort()
        out.append(tuple(orb))
    out.sort(key=lambda o: (-len(o), o[0]))
    return out


class _Level:
    __slots__ = ("point", "gens", "trans", "processed")

    def __init__(self, point, identity):
        self.point = point
        self.gens = []
        self.trans = _Transversal(point, [], identity, tree={point: None})
        self.processed = set()

    def rebuild(self, all_gens, identity, budget=None):
        self.trans = _Transversal(self.point, list(all_gens), identity, budget=budget)
        self.processed = set()


class StabilizerChain:
    """Base points, strong generators and Schreier-vector transversals.

    Immutable once built; safe to share read-only.  ``levels[i]`` holds the
    strong generators that fix the first ``i`` base points; the group at level
    ``i`` is generated by the generators of all levels from ``i`` down.
    """

    __slots__ = ("identity", "levels", "_order")

    def __init__(self, identity, levels):
        self.identity = identity
        self.levels = levels
        self._order = None

    def order(self):
        if self._order is None:
            n = 1
            for lvl in self.levels:
                n *= len(lvl.trans)
            self._order = n
        return self._order

    def base(self):
        return [lvl.point for lvl in self.levels]

    def strong_generators(self, start=0):
        return [g for lvl in self.levels[start:] for g in lvl.gens]

    def generators(self):
        """Generators of the full group (the level-0 strong set)."""
        return self.strong_generators(0)

    def sift(self, g):
        """Residue after dividing out transversal elements; identity iff member."""
        for lvl in self.levels:
            b = g.image(lvl.point)
            if b == lvl.point:
                continue
            if b not in lvl.trans:
                return g
            g = g * lvl.trans.element_inv(b)
        return g

    def contains(self, g):
        return self.sift(g).is_identity()

    def stabilizer_of_first(self):
        """Chain for the stabilizer of the first base point (shared levels)."""
        if not self.levels:
            return self
        return StabilizerChain(self.identity, self.levels[1:])

    def first_orbit(self):
        return self.levels[0].trans.tree.keys() if self.levels else ()

    def elements(self, order_cap=ORDER_CAP_DEFAULT):
        """All group elements; guarded by order_cap."""
        if self.order() > order_cap:
            raise ResourceLimitError(
                "group order %d exceeds enumeration cap %d" % (self.order(), order_cap)
            )
        result = [self.identity]
        for lvl in reversed(self.levels):
            trans = [lvl.trans.element(p) for p in lvl.trans.tree]
            result = [h * u for h in result for u in trans]
        return result

    def random_element(self, rng):
        g = self.identity
        for lvl in reversed(self.levels):
            g = g * lvl.trans.element(rng.choice(sorted(lvl.trans.tree)))
        return g


class _Builder:
    def __init__(self, identity, known_order=None, budget=None):
        self.identity = identity
        self.levels = []
        self.known = known_order
        self.budget = budget

    def order(self):
        n = 1
        for lvl in self.levels:
            n *= len(lvl.trans)
        return n

    def done(self):
        return self.known is not None and self.order() >= self.known

    def _gens_from(self, i):
        return [g for lvl in self.levels[i:] for g in lvl.gens]

    def _rebuild(self, i):
        self.levels[i].rebuild(self._gens_from(i), self.identity, self.budget)

    def sift_from(self, g, start):
        for lvl in self.levels[start:]:
            b = g.image(lvl.point)
            if b == lvl.point:
                continue
            if b not in lvl.trans:
                return g
            g = g * lvl.trans.element_inv(b)
        return g

    def place(self, g, start=0):
        """Sift g from the given level; install the residue if nontrivial.

        A generator installed at level j is new for levels start..j, whose
        transversal trees are rebuilt; shallower levels already generate it
        (their trees span full orbits of the generated group, so they cannot
        grow).  Base points are always smallest moved points.
        """
        i = start
        while True:
            if g.is_identity():
                return False
            if i == len(self.levels):
                self.levels.append(_Level(g.first_moved(), self.identity))
                self.levels[i].gens.append(g)
                for j in range(i, start - 1, -1):
                    self._rebuild(j)
                return True
            lvl = self.levels[i]
            b = g.image(lvl.point)
            if b == lvl.point:
                i += 1
                continue
            if b not in lvl.trans:
                lvl.gens.append(g)
                for j in range(i, start - 1, -1):
                    self._rebuild(j)
                return True
            g = g * lvl.trans.element_inv(b)
            i += 1

    def close(self):
        """Sift Schreier generators to a fixpoint (or to the known order)."""
        while True:
            if self.done():
                return
            changed = False
            for i in range(len(self.levels)):
                lvl = self.levels[i]
                gens_here = self._gens_from(i)
                for a in list(lvl.trans.tree):
                    ua = None
                    for s in gens_here:
                        if (a, s) in lvl.processed:
                            continue
                        if ua is None:
                            ua = lvl.trans.element(a)
                        sg = ua * s * lvl.trans.element_inv(s.image(a))
                        while True:
                            res = self.sift_from(sg, i + 1)
                            if res.is_identity():
                                break
                            self.place(res, i + 1)
                            changed = True
                            if self.done():
                                return
                        lvl.processed.add((a, s))
                if changed:
                    break  # deeper levels changed; rescan with fresh pair lists
            if not changed:
                return

    def finish(self):
        chain = StabilizerChain(self.identity, self.levels)
        if self.known is not None and chain.order() != self.known:
            raise InternalConsistencyError(
                "chain order %d != expected %d" % (chain.order(), self.known)
            )
        return chain


def bsgs_build(generators, *, degree=None, identity=None, known_order=None, budget=None):
    """Deterministic Schreier-Sims; base points are smallest moved points.

    ``generators`` may be any iterable and is consumed lazily, so a stream of
    Schreier generators stops early once ``known_order`` is reached.  For an
    empty generator list the identity must come from ``degree`` or
    ``identity``.
    """
    gens = iter(generators)
    first = None
    if identity is None:
        first = next(gens, None)
        if first is None:
            if degree is None:
                raise DomainError("empty generator list needs degree= or identity=")
            identity = Permutation.identity(degree)
        else:
            identity = first.identity_element()
    b = _Builder(identity, known_order, budget)
    if first is not None:
        b.place(first)
    if not b.done():
        for g in gens:
            if degree is not None and isinstance(g, Permutation) and g.degree != degree:
                raise DomainError("generator degree mismatch")
            b.place(g)
            if b.done():
                break
    b.close()
    return b.finish()


def membership(chain, g):
    """True iff g is a product of the chain's strong generators."""
    if isinstance(g, Permutation) and isinstance(chain.identity, Permutation):
        if g.degree != chain.identity.degree:
            raise DomainError(
                "degree mismatch: %d vs chain %d" % (g.degree, chain.identity.degree)
            )
    return chain.contains(g)


def assemble_transitive_chain(gens, root, stab_gens, stab_order, identity, total_order):
    """Chain for a transitive group with a known point stabilizer.

    The top transversal is the orbit of ``root`` under ``gens``; the levels
    below are built from ``stab_gens`` with the stabilizer's known order.
    Reaching ``total_order`` (an a-priori upper bound) certifies completeness,
    because transversal products are pairwise distinct group elements.
    """
    for s in stab_gens:
        if s.image(root) != root:
            raise InternalConsistencyError("seed generator moves the root point")
    lvl0 = _Level(root, identity)
    lvl0.gens = list(gens)
    lvl0.rebuild(lvl0.gens, identity)
    sub = bsgs_build(stab_gens, identity=identity, known_order=stab_order)
    chain = StabilizerChain(identity, [lvl0] + list(sub.levels))
    if chain.order() != total_order:
        raise InternalConsistencyError(
            "assembled order %d != expected %d" % (chain.order(), total_order)
        )
    return chain


def point_stabilizer(chain, point, budget=None):
    """Chain for the stabilizer of a point.

    Free when the point is the first base point; by conjugating the first
    stabilizer when the point lies in the top orbit; otherwise from Schreier
    generators of the point's orbit.  Known target orders stop the rebuilds
    early.
    """
    ident = chain.identity
    if isinstance(ident, Permutation) and not 0 <= point < ident.degree:
        raise DomainError("point %d out of range" % point)
    if not chain.levels:
        return chain
    lvl0 = chain.levels[0]
    if point == lvl0.point:
        return chain.stabilizer_of_first()
    if point in lvl0.trans:
        u = lvl0.trans.element(point)
        ui = lvl0.trans.element_inv(point)
        sub_order = chain.order() // len(lvl0.trans)
        gens = (ui * s * u for s in chain.strong_generators(1))
        return bsgs_build(gens, identity=ident, known_order=sub_order, budget=budget)
    # point lies in another orbit of the group
    gens = chain.generators()
    trans = _Transversal(point, gens, ident, budget=budget)
    if chain.order() % len(trans):
        raise InternalConsistencyError("orbit size does not divide group order")
    target = chain.order() // len(trans)

    def schreier_gens():
        for a in list(trans.tree):
            ua = trans.element(a)
            for s in gens:
                yield ua * s * trans.element_inv(s.image(a))

    return bsgs_build(schreier_gens(), identity=ident, known_order=target, budget=budget)


def pointwise_stabilizer(chain, points, budget=None):
    for p in points:
        chain = point_stabilizer(chain, p, budget=budget)
    return chain


def transporter_tuple(chain, src, dst, memory_cap=TRANSPORTER_STATE_CAP):
    """Some g in the group with src^g = dst entrywise, or None.

    Works down the tuple: map the next source point into place with a
    transversal element of the current prefix stabilizer, then descend to the
    stabilizer of the matched destination point.  Visited orbit states are
    charged against memory_cap; exceeding it raises ResourceLimitError, which
    is distinct from a None ("no transporter") answer.
    """
    if len(src) != len(dst):
        raise DomainError("tuples must have equal length")
    budget = _Budget(memory_cap)
    g = chain.identity
    H = chain
    for s_pt, d_pt in zip(src, dst):
        b = g.image(s_pt)
        if b != d_pt:
            trans = _Transversal(d_pt, H.generators(), H.identity, budget=budget)
            if b not in trans:
                return None
            g = g * trans.element_inv(b)
        H = point_stabilizer(H, d_pt, budget=budget)
    return g


def tuple_orbit(chain, start, memory_cap=TRANSPORTER_STATE_CAP):
    """Full orbit of a point tuple (the transporter cross-check oracle)."""
    gens = chain.generators()
    start = tuple(start)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for g in gens:
            for t in frontier:
                u = tuple(g.image(p) for p in t)
                if u not in seen:
                    if len(seen) >= memory_cap:
                        raise ResourceLimitError("tuple orbit exceeds memory cap")
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


@dataclass
class ConjClass:
    representative: object
    size: int
    element_order: int


def element_order(g, identity=None):
    if isinstance(g, Permutation):
        return g.order()
    if identity is None:
        identity = g.identity_element()
    n = 1
    h = g
    while h != identity:
        h = h * g
        n += 1
    return n


def conjugacy_classes(chain, order_cap=ORDER_CAP_DEFAULT):
    """Conjugacy classes by full element enumeration below the order cap.

    Deterministic: representatives are the minimal class members under the
    element sort key.
    """
    if chain.order() > order_cap:
        raise ResourceLimitError(
            "order %d exceeds conjugacy enumeration cap" % chain.order()
        )
    els = chain.elements(order_cap)
    gens = chain.generators()
    gen_invs = [g.inv() for g in gens]
    remaining = {g.key(): g for g in els}
    classes = []
    while remaining:
        _, x = min(remaining.items())
        members = {x.key(): x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g, gi in zip(gens, gen_invs):
                    z = gi * y * g
                    k = z.key()
                    if k not in members:
                        members[k] = z
                        nxt.append(z)
            frontier = nxt
        for k in members:
            del remaining[k]
        rep = members[min(members)]
        classes.append(ConjClass(rep, len(members), element_order(rep, chain.identity)))
    classes.sort(key=lambda c: (c.size, c.representative.key()))
    return classes


def centralizer(chain, g, order_cap=ORDER_CAP_DEFAULT):
    """Centralizer of g, by filtering the element list below the order cap."""
    members = [x for x in chain.elements(order_cap) if x * g == g * x]
    return bsgs_build(members, identity=chain.identity, known_order=len(members))
