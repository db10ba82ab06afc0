"""Diagonal-type primitive actions of G <= T^k.(Out(T) x S_k) on |T|^(k-1) points.

A point is the coset of the diagonal subgroup containing an inner k-tuple;
left-multiplying the tuple by a constant does not change the coset, so the
canonical representative normalizes the first coordinate to the identity and
a point is the remaining (k-1)-tuple of T-element indices (encoded as one
integer, with the distinguished point D at index 0).

A group element is stored in the normal form

    (inner tuple t_1..t_k) * (diagonal Out-representative) * (top permutation),

which is unique, so equality is structural.  Composition, inversion and the
point action are all O(k) table lookups; no degree-|Omega| permutations are
ever materialized, which keeps stabilizer chains cheap even at large degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import catalog
from .errors import DomainError, InternalConsistencyError, ResourceLimitError
from .perm import Permutation, assemble_transitive_chain

REALIZE_CAP_DEFAULT = 10**6


class DiagonalContext:
    """Shared lookup tables for one (T, k) pair."""

    __slots__ = (
        "T",
        "aut",
        "k",
        "nT",
        "mult",
        "inv",
        "out_apply",
        "out_apply_inv",
        "out_mult",
        "out_corr",
        "out_inv",
        "out_inv_corr",
        "omega_size",
        "identity_w",
        "id_top",
    )

    def __init__(self, T, aut, k):
        if k < 2:
            raise DomainError("diagonal type needs k >= 2")
        self.T = T
        self.aut = aut
        self.k = k
        self.nT = T.order
        self.mult = T.mult
        self.inv = T.inv
        self.out_apply = tuple(r.images for r in aut.out_reps)
        self.out_apply_inv = tuple(r.inv().images for r in aut.out_reps)
        self.out_mult = aut.out_mult
        self.out_corr = aut.out_corr
        self.out_inv = aut.out_inv
        self.out_inv_corr = aut.out_inv_corr
        self.omega_size = T.order ** (k - 1)
        self.id_top = tuple(range(k))
        self.identity_w = WElement(self, (0,) * k, 0, self.id_top)

    def encode(self, coords):
        idx = 0
        for c in reversed(coords):
            idx = idx * self.nT + c
        return idx

    def decode(self, idx):
        out = []
        for _ in range(self.k - 1):
            idx, r = divmod(idx, self.nT)
            out.append(r)
        return tuple(out)


class WElement:
    """Element of W_0 = T^k.(Out(T) x S_k) in inner-out-top normal form."""

    __slots__ = ("ctx", "tvec", "out", "top", "topinv", "_hash")

    def __init__(self, ctx, tvec, out, top):
        self.ctx = ctx
        self.tvec = tvec
        self.out = out
        self.top = top
        inv = [0] * ctx.k
        for i, j in enumerate(top):
            inv[j] = i
        self.topinv = tuple(inv)
        self._hash = None

    def identity_element(self):
        return self.ctx.identity_w

    def image(self, pt):
        ctx = self.ctx
        nT = ctx.nT
        k = ctx.k
        full = [0] * k
        for i in range(1, k):
            pt, full[i] = divmod(pt, nT)
        mult = ctx.mult
        app = ctx.out_apply[self.out]
        tv = self.tvec
        ti = self.topinv
        new = [app[mult[full[ti[j]]][tv[ti[j]]]] for j in range(k)]
        c = ctx.inv[new[0]]
        idx = 0
        for i in range(k - 1, 0, -1):
            idx = idx * nT + mult[c][new[i]]
        return idx

    def __mul__(self, other):
        ctx = self.ctx
        m = ctx.mult
        o3 = ctx.out_mult[self.out][other.out]
        h = ctx.out_corr[self.out][other.out]
        ai = ctx.out_apply_inv[self.out]
        t1, t2 = self.tvec, other.tvec
        s1, s2 = self.top, other.top
        tv = tuple(m[m[t1[j]][ai[t2[s1[j]]]]][h] for j in range(ctx.k))
        top = tuple(s2[s1[j]] for j in range(ctx.k))
        return WElement(ctx, tv, o3, top)

    def inv(self):
        ctx = self.ctx
        m = ctx.mult
        o2 = ctx.out_inv[self.out]
        h2 = ctx.out_inv_corr[self.out]
        app = ctx.out_apply[self.out]
        ti = self.topinv
        tv = tuple(m[app[ctx.inv[self.tvec[ti[j]]]]][h2] for j in range(ctx.k))
        return WElement(ctx, tv, o2, ti)

    def is_identity(self):
        return (
            self.out == 0
            and self.top == self.ctx.id_top
            and all(t == 0 for t in self.tvec)
        )

    def first_moved(self):
        for p in range(self.ctx.omega_size):
            if self.image(p) != p:
                return p
        return None

    def key(self):
        return (self.tvec, self.out, self.top)

    def __eq__(self, other):
        return (
            isinstance(other, WElement)
            and self.tvec == other.tvec
            and self.out == other.out
            and self.top == other.top
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.tvec, self.out, self.top))
        return self._hash

    def __repr__(self):
        return "WElement(t=%r, out=%d, top=%r)" % (self.tvec, self.out, self.top)

    def as_permutation(self):
        return Permutation._raw(tuple(self.image(p) for p in range(self.ctx.omega_size)))


@dataclass(frozen=True)
class OmegaPoint:
    """Canonical coset representative: k-1 T-element indices, first coord 1."""

    coords: tuple

    @staticmethod
    def from_full(ctx, full):
        """Canonicalize a full k-tuple of T-indices (idempotent)."""
        c = ctx.inv[full[0]]
        return OmegaPoint(tuple(ctx.mult[c][x] for x in full[1:]))

    def to_index(self, ctx):
        return ctx.encode(self.coords)

    @staticmethod
    def from_index(ctx, idx):
        return OmegaPoint(ctx.decode(idx))


@dataclass(frozen=True)
class DiagonalConfig:
    """A diagonal-type group, given by T, k and the quotient H <= Out(T) x S_k.

    ``hgens`` lists generators of H as (out_index, top_images) pairs; the
    group is the preimage of H over the socle T^k.
    """

    family: str
    param: int
    k: int
    hgens: tuple = ()
    label: str = "socle"

    def to_json(self):
        return {
            "T": {"family": self.family, "n": self.param},
            "k": self.k,
            "preset": "custom",
            "hgens": [[o, list(t)] for o, t in self.hgens],
            "label": self.label,
        }


def _top_gens(k, label):
    if label == "S":
        if k == 2:
            return [(1, 0)]
        return [
            tuple(Permutation.from_cycles(k, (0, 1)).images),
            tuple(Permutation.from_cycles(k, tuple(range(k))).images),
        ]
    if label == "A":
        if k == 2:
            return []
        gens = [tuple(Permutation.from_cycles(k, (0, 1, 2)).images)]
        if k > 3:
            if k % 2:
                gens.append(tuple(Permutation.from_cycles(k, tuple(range(k))).images))
            else:
                gens.append(tuple(Permutation.from_cycles(k, tuple(range(1, k))).images))
        return gens
    raise DomainError("top label must be 'S' or 'A'")


def make_config(family, param, k, preset="socle", top="S", q=None, twist_out=1, label=None):
    """Convenience constructor covering the common presets.

    preset 'socle' gives G = T^k; 'full_W' gives T^k.(Out x P) with P from the
    top label.  With q != top (the only proper case is P = S, Q = A) the odd
    top generators are twisted by a nontrivial outer representative, so the
    pure-top subgroup Q stays alternating.
    """
    T = catalog.build_simple(family, param)
    aut = catalog.build_aut(T)
    idtop = tuple(range(k))
    hgens = []
    if preset == "socle":
        pass
    elif preset == "full_W":
        hgens += [(o, idtop) for o in range(1, aut.out_order)]
        hgens += [(0, t) for t in _top_gens(k, top)]
    elif preset == "top":
        if q is None or q == top:
            hgens += [(0, t) for t in _top_gens(k, top)]
        else:
            if (top, q) != ("S", "A"):
                raise DomainError("only the (P,Q) = (S,A) twist is proper")
            if aut.out_order == 1:
                raise DomainError("P != Q needs a nontrivial outer part")
            hgens += [(0, t) for t in _top_gens(k, "A")]
            hgens += [(twist_out, _top_gens(k, "S")[0])]
    else:
        raise DomainError("preset must be 'socle', 'full_W' or 'top'")
    if label is None:
        label = "%s(%s) k=%d %s" % (family, param, k, preset if q is None else "P=%s Q=%s" % (top, q))
    return DiagonalConfig(family=family, param=param, k=k, hgens=tuple(hgens), label=label)


def config_from_json(doc):
    t = doc["T"]
    family = t.get("family", "Alt")
    param = t.get("n", t.get("q"))
    k = doc["k"]
    preset = doc.get("preset", "socle")
    if preset == "custom":
        hgens = tuple((int(o), tuple(tp)) for o, tp in doc.get("hgens", ()))
        return DiagonalConfig(family, param, k, hgens, doc.get("label", "custom"))
    if preset == "socle":
        return make_config(family, param, k, "socle", label=doc.get("label"))
    top = doc.get("top", "S")
    q = doc.get("q", top)
    out_part = doc.get("out_part", "full" if preset == "full_W" else "trivial")
    if preset == "full_W" and out_part != "trivial":
        return make_config(family, param, k, "full_W", top=top, label=doc.get("label"))
    return make_config(family, param, k, "top", top=top, q=q, label=doc.get("label"))


def _close_h(ctx, hgens):
    """Closure of (out, top) pairs inside Out(T) x S_k."""
    ident = (0, ctx.id_top)
    els = {ident}
    frontier = [ident]
    gens = [(int(o), tuple(t)) for o, t in hgens]
    for o, t in gens:
        if not 0 <= o < len(ctx.out_apply):
            raise DomainError("out index %d out of range" % o)
        if sorted(t) != list(range(ctx.k)):
            raise DomainError("top part is not a permutation of [k]")
    while frontier:
        nxt = []
        for o1, t1 in frontier:
            for o2, t2 in gens:
                prod = (ctx.out_mult[o1][o2], tuple(t2[t1[j]] for j in range(ctx.k)))
                if prod not in els:
                    els.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return els


def _perm_closure(gens, k):
    ident = tuple(range(k))
    els = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = tuple(g[a[j]] for j in range(k))
                if c not in els:
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    return els


def is_primitive_top(gen_tops, k):
    """Transitive + no nontrivial block system (minimal-block refinement)."""
    gens = [tuple(t) for t in gen_tops]
    orb = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                if g[a] not in orb:
                    orb.add(g[a])
                    nxt.append(g[a])
        frontier = nxt
    if len(orb) != k:
        return False
    for delta in range(1, k):
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        queue = [(0, delta)]
        parent[find(delta)] = find(0)
        while queue:
            a, b = queue.pop()
            for g in gens:
                ra, rb = find(g[a]), find(g[b])
                if ra != rb:
                    parent[rb] = ra
                    queue.append((g[a], g[b]))
        root = find(0)
        if any(find(x) != root for x in range(k)):
            return False
    return True


@dataclass
class DiagonalGroup:
    config: DiagonalConfig
    ctx: DiagonalContext
    generators: tuple
    hgroup: frozenset
    omega_size: int
    order: int
    _chain: object = field(default=None, repr=False)

    @property
    def T(self):
        return self.ctx.T

    @property
    def aut(self):
        return self.ctx.aut

    @property
    def k(self):
        return self.ctx.k

    def top_group(self):
        """P: the top group induced on the k socle factors."""
        return _perm_closure([t for _, t in self.hgroup], self.ctx.k)

    def pure_top_group(self):
        """Q = S_k intersect G: tops that occur with trivial outer part."""
        return {t for o, t in self.hgroup if o == 0}

    def socle_diag_gens(self):
        """Generators of D = G intersect D_0 (all fix the point D)."""
        ctx = self.ctx
        gens = [WElement(ctx, (g,) * ctx.k, 0, ctx.id_top) for g in ctx.T.gens]
        gens += [WElement(ctx, (0,) * ctx.k, int(o), tuple(t)) for o, t in self.config.hgens]
        return gens

    def stabilizer_order(self):
        return self.ctx.nT * len(self.hgroup)

    def act(self, point, w):
        """Right action on canonical points: act(act(p,g),h) = act(p, g*h)."""
        return OmegaPoint.from_index(self.ctx, w.image(point.to_index(self.ctx)))

    def point(self, full):
        """Point D(t_1,...,t_k) from a full k-tuple of T-element indices."""
        return OmegaPoint.from_full(self.ctx, tuple(full))

    def realize(self, cap=REALIZE_CAP_DEFAULT):
        """Stabilizer chain on Omega with base starting at D.

        The stabilizer of D is the diagonal subgroup D itself, whose generators
        are known, so the chain is assembled without top-level Schreier
        generators; matching the theoretical order certifies it.
        """
        if self._chain is not None:
            return self._chain
        if self.omega_size > cap:
            raise ResourceLimitError(
                "omega size %d exceeds realization cap %d" % (self.omega_size, cap)
            )
        dgens = self.socle_diag_gens()
        for g in dgens:
            if g.image(0) != 0:
                raise InternalConsistencyError("diagonal generator moves the point D")
        self._chain = assemble_transitive_chain(
            list(self.generators),
            0,
            dgens,
            self.stabilizer_order(),
            self.ctx.identity_w,
            self.order,
        )
        return self._chain

    def verify_q(self):
        """Membership check that the pure-top subgroup is exactly Q."""
        chain = self.realize()
        ctx = self.ctx
        P = self.top_group()
        Q = self.pure_top_group()
        for t in P:
            w = WElement(ctx, (0,) * ctx.k, 0, t)
            if chain.contains(w) != (t in Q):
                return False
        return True


def build_group(config):
    """Realize a DiagonalConfig as generators of G acting on Omega."""
    T = catalog.build_simple(config.family, config.param)
    aut = catalog.build_aut(T)
    ctx = DiagonalContext(T, aut, config.k)
    hgroup = frozenset(_close_h(ctx, config.hgens))
    if config.k >= 3:
        tops = [tuple(t) for _, t in config.hgens if tuple(t) != ctx.id_top]
        if tops and not is_primitive_top(tops, config.k):
            raise DomainError(
                "for k >= 3 the top group P must be primitive on [k] "
                "(config %r is not)" % (config.label,)
            )
    gens = []
    for i in range(config.k):
        for g in T.gens:
            tv = [0] * config.k
            tv[i] = g
            gens.append(WElement(ctx, tuple(tv), 0, ctx.id_top))
    for o, t in config.hgens:
        gens.append(WElement(ctx, (0,) * config.k, int(o), tuple(t)))
    order = (T.order ** config.k) * len(hgroup)
    return DiagonalGroup(
        config=config,
        ctx=ctx,
        generators=tuple(gens),
        hgroup=hgroup,
        omega_size=ctx.omega_size,
        order=order,
    )


@dataclass
class OvergroupCase:
    config: DiagonalConfig
    h_order: int
    sigma_present: bool
    case: str  # (a) no sigma-coset; (b)/(c) twisted; (d) sigma in G


def enumerate_overgroups(family, param, k=2):
    """All diagonal-type G for k=2 over T: one per subgroup of Out(T) x S_2.

    Each subgroup is tagged with its inversion-coset case: (a) none, (d) the
    plain inversion map lies in G, (c) an Inndiag-twisted inversion does, and
    (b) only field-twisted inversions do.
    """
    if k != 2:
        raise DomainError("overgroup enumeration is a k=2 operation")
    T = catalog.build_simple(family, param)
    aut = catalog.build_aut(T)
    ctx = DiagonalContext(T, aut, 2)
    swap = (1, 0)
    elems = [(o, s) for o in range(aut.out_order) for s in (ctx.id_top, swap)]

    def close(subset):
        els = set(subset) | {(0, ctx.id_top)}
        frontier = list(els)
        while frontier:
            nxt = []
            for o1, t1 in frontier:
                for o2, t2 in els.copy():
                    for a, b in (((o1, t1), (o2, t2)), ((o2, t2), (o1, t1))):
                        prod = (
                            ctx.out_mult[a[0]][b[0]],
                            tuple(b[1][a[1][j]] for j in range(2)),
                        )
                        if prod not in els:
                            els.add(prod)
                            nxt.append(prod)
            frontier = nxt
        return frozenset(els)

    subgroups = {close(())}
    frontier = [close(())]
    while frontier:
        nxt = []
        for S in frontier:
            for e in elems:
                if e not in S:
                    S2 = close(S | {e})
                    if S2 not in subgroups:
                        subgroups.add(S2)
                        nxt.append(S2)
        frontier = nxt
    ordered = sorted(subgroups, key=lambda S: (len(S), sorted(S)))

    pgl_part = {0}
    if aut.pgl_out_index is not None:
        pgl_part = {0, aut.pgl_out_index}
    cases = []
    for i, S in enumerate(ordered):
        swaps = [o for o, t in S if t == swap]
        if not swaps:
            case = "a"
        elif 0 in swaps:
            case = "d"
        elif any(o in pgl_part for o in swaps):
            case = "c"
        else:
            case = "b"
        label = "%s(%s) k=2 H#%d |H|=%d case=%s" % (family, param, i, len(S), case)
        cfg = DiagonalConfig(
            family=family,
            param=param,
            k=2,
            hgens=tuple(sorted(S - {(0, ctx.id_top)})),
            label=label,
        )
        cases.append(
            OvergroupCase(config=cfg, h_order=len(S), sigma_present=bool(swaps), case=case)
        )
    return cases
