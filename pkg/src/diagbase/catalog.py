"""Small non-abelian simple groups with indexed element tables and Aut data.

Alt(n) is built on n points, PSL2(q) on the q+1 points of the projective
line.  Elements are indexed by sorting their natural permutations, so index 0
is always the identity and every build is reproducible.  Automorphism groups
act on element indices (degree |T|), which keeps invertilisers and the k=2
action directly computable.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

from .errors import (
    DomainError,
    InternalConsistencyError,
    ResourceLimitError,
    UnsupportedGroupError,
)
from .perm import (
    Permutation,
    _Transversal,
    assemble_transitive_chain,
    bsgs_build,
    point_stabilizer,
)

T_ORDER_CAP_DEFAULT = 1200
PSL2_Q_MAX_DEFAULT = 13
CACHE_ENV = "DIAGBASE_CACHE_DIR"

_MEMO = {}


# ---------------------------------------------------------------- GF(q)

def _prime_power(q):
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            f = 0
            r = q
            while r % p == 0:
                r //= p
                f += 1
            return (p, f) if r == 1 else None
    return None


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    while len(a) < dm:
        a.append(0)
    return a


def _find_irreducible(p, f):
    """Lexicographically first monic irreducible of degree f over GF(p)."""

    def divides(d, m):
        # does monic poly d divide m (over GF(p))?
        r = list(m)
        while len(r) >= len(d) and any(r):
            if not r[-1]:
                r.pop()
                continue
            lead = r[-1]
            shift = len(r) - len(d)
            for i, c in enumerate(d):
                r[shift + i] = (r[shift + i] - lead * c) % p
            while r and not r[-1]:
                r.pop()
        return not any(r)

    def monics(deg):
        for code in range(p**deg):
            coeffs = []
            c = code
            for _ in range(deg):
                coeffs.append(c % p)
                c //= p
            yield coeffs + [1]

    for m in monics(f):
        if all(not divides(d, m) for deg in range(1, f // 2 + 1) for d in monics(deg)):
            return m
    raise InternalConsistencyError("no irreducible polynomial found")


class _GF:
    """GF(q) with table arithmetic; elements are ints 0..q-1 (base-p digits)."""

    def __init__(self, q):
        pf = _prime_power(q)
        if pf is None:
            raise DomainError("%d is not a prime power" % q)
        self.q = q
        self.p, self.f = pf
        p, f = self.p, self.f
        if f == 1:
            self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            mpoly = _find_irreducible(p, f)
            digits = [self._digits(e) for e in range(q)]
            self.add = [
                [self._enc([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                for a in range(q)
            ]
            self.mul = [
                [self._enc(_poly_mod(_poly_mul(digits[a], digits[b], p), mpoly, p)) for b in range(q)]
                for a in range(q)
            ]
        self.neg = [self._neg(a) for a in range(q)]
        self.inv = [None] + [next(b for b in range(1, q) if self.mul[a][b] == 1) for a in range(1, q)]

    def _digits(self, e):
        out = []
        for _ in range(self.f):
            out.append(e % self.p)
            e //= self.p
        return out

    def _enc(self, digits):
        e = 0
        for d in reversed(digits[: self.f]):
            e = e * self.p + d
        return e

    def _neg(self, a):
        return self._enc([(-d) % self.p for d in self._digits(a)])

    def primitive_element(self):
        for a in range(2, self.q):
            x, n = a, 1
            while x != 1:
                x = self.mul[x][a]
                n += 1
            if n == self.q - 1:
                return a
        raise InternalConsistencyError("no primitive element")

    def frobenius(self, a):
        x = a
        for _ in range(self.p - 1):
            x = self.mul[x][a]
        return x

    def non_square(self):
        squares = {self.mul[a][a] for a in range(self.q)}
        for a in range(1, self.q):
            if a not in squares:
                return a
        return None


# ---------------------------------------------------------------- group data

@dataclass
class SimpleGroupData:
    name: str
    family: str
    param: int
    order: int
    degree: int
    elements: tuple
    index: dict = field(repr=False)
    mult: list = field(repr=False)
    inv: tuple = field(repr=False)
    gens: tuple
    identity_index: int = 0
    _orders: list = field(default=None, repr=False)
    _classes: list = field(default=None, repr=False)

    def elem_order(self, i):
        if self._orders is None:
            self._orders = [None] * self.order
        if self._orders[i] is None:
            self._orders[i] = self.elements[i].order()
        return self._orders[i]

    def classes(self):
        """Conjugacy classes of T as sorted index tuples, smallest rep first."""
        if self._classes is None:
            seen = [False] * self.order
            out = []
            for start in range(self.order):
                if seen[start]:
                    continue
                seen[start] = True
                orb = [start]
                frontier = [start]
                while frontier:
                    nxt = []
                    for x in frontier:
                        for g in self.gens:
                            y = self.mult[self.mult[self.inv[g]][x]][g]
                            if not seen[y]:
                                seen[y] = True
                                orb.append(y)
                                nxt.append(y)
                    frontier = nxt
                out.append(tuple(sorted(orb)))
            out.sort(key=lambda c: c[0])
            self._classes = out
        return self._classes

    def class_of(self, i):
        for c in self.classes():
            if i in c:
                return c
        raise DomainError("index out of range")

    def class_reps(self):
        return [c[0] for c in self.classes()]

    def generated_by(self, ids):
        """Closure of the given element indices inside the multiplication table."""
        seen = set(ids) | {self.identity_index}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in ids:
                    y = self.mult[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def conj_index_perm(self, t):
        """The inner automorphism x -> t^-1 x t as a permutation of indices."""
        ti = self.inv[t]
        mult = self.mult
        return Permutation._raw(tuple(mult[mult[ti][x]][t] for x in range(self.order)))


def _close_and_index(gen_perms, expected_order, cap):
    els = {g.key(): g for g in gen_perms}
    ident = gen_perms[0].identity_element()
    els[ident.key()] = ident
    frontier = list(els.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in gen_perms:
                c = a * g
                if c.key() not in els:
                    if len(els) > cap:
                        raise ResourceLimitError(
                            "group order exceeds cap %d" % cap
                        )
                    els[c.key()] = c
                    nxt.append(c)
        frontier = nxt
    if len(els) != expected_order:
        raise InternalConsistencyError(
            "closure has %d elements, expected %d" % (len(els), expected_order)
        )
    ordered = sorted(els.values(), key=lambda p: p.images)
    index = {p.images: i for i, p in enumerate(ordered)}
    return ordered, index


def _make_group(name, family, param, gen_perms, expected_order, cap):
    ordered, index = _close_and_index(gen_perms, expected_order, cap)
    n = len(ordered)
    if ordered[0].first_moved() is not None:
        raise InternalConsistencyError("identity is not index 0")
    mult = [None] * n
    for i, a in enumerate(ordered):
        ai = a.images
        row = [0] * n
        for j, b in enumerate(ordered):
            row[j] = index[tuple(b.images[x] for x in ai)]
        mult[i] = row
    inv = [0] * n
    for i, a in enumerate(ordered):
        inv[i] = index[a.inv().images]
    gens = tuple(index[g.images] for g in gen_perms)
    return SimpleGroupData(
        name=name,
        family=family,
        param=param,
        order=n,
        degree=ordered[0].degree,
        elements=tuple(ordered),
        index=index,
        mult=mult,
        inv=tuple(inv),
        gens=gens,
    )


def _alt_gen_perms(n):
    if n < 4:
        raise UnsupportedGroupError("Alt(n) needs n >= 4 (simple from 5)")
    c3 = Permutation.from_cycles(n, (0, 1, 2))
    if n % 2:
        big = Permutation.from_cycles(n, tuple(range(n)))
    else:
        big = Permutation.from_cycles(n, tuple(range(1, n)))
    return [c3, big]


def _psl2_gen_perms(q):
    gf = _GF(q)
    inf = q

    def mat_perm(a, b, c, d):
        add, mul = gf.add, gf.mul
        imgs = []
        for x in range(q):
            num = add[mul[a][x]][b]
            den = add[mul[c][x]][d]
            imgs.append(mul[num][gf.inv[den]] if den else inf)
        imgs.append(mul[a][gf.inv[c]] if c else inf)
        return Permutation(imgs)

    lam = gf.primitive_element()
    gens = [mat_perm(1, gf.p**i if gf.f > 1 else 1, 0, 1) for i in range(gf.f)]
    gens.append(mat_perm(lam, 0, 0, gf.inv[lam]))
    gens.append(mat_perm(0, 1, gf.neg[1], 0))
    return gens, gf, mat_perm


def build_simple(family, param, *, order_cap=T_ORDER_CAP_DEFAULT, allow_alias=False,
                 allow_big_q=False):
    """Construct a catalog group with a fully verified element table."""
    family = {"A": "Alt", "L2": "PSL2"}.get(family, family)
    key = (family, param)
    if key in _MEMO:
        return _MEMO[key]
    if family == "Alt":
        import math

        n = param
        if n < 5:
            raise UnsupportedGroupError("Alt(%d) is not a non-abelian simple group" % n)
        expected = math.factorial(n) // 2
        if expected > order_cap:
            raise ResourceLimitError(
                "|Alt(%d)| = %d exceeds order cap %d" % (n, expected, order_cap)
            )
        data = _make_group("Alt(%d)" % n, "Alt", n, _alt_gen_perms(n), expected, order_cap)
    elif family == "PSL2":
        q = param
        pf = _prime_power(q)
        if pf is None or q < 4:
            raise UnsupportedGroupError("PSL2(%d): parameter must be a prime power >= 4" % q)
        if q in (4, 5, 9):
            if not allow_alias:
                raise UnsupportedGroupError(
                    "PSL2(%d) is an alias of an alternating group; "
                    "pass allow_alias=True to build the Alt model" % q
                )
            return build_simple("Alt", 5 if q in (4, 5) else 6, order_cap=order_cap)
        if q > PSL2_Q_MAX_DEFAULT and not allow_big_q:
            raise UnsupportedGroupError(
                "PSL2(%d): q > %d is config-gated" % (q, PSL2_Q_MAX_DEFAULT)
            )
        expected = q * (q * q - 1) // (2 if q % 2 else 1)
        if expected > order_cap:
            raise ResourceLimitError(
                "|PSL2(%d)| = %d exceeds order cap %d" % (q, expected, order_cap)
            )
        gens, _, _ = _psl2_gen_perms(q)
        data = _make_group("L2(%d)" % q, "PSL2", q, gens, expected, order_cap)
    else:
        raise UnsupportedGroupError("unknown family %r" % family)
    _MEMO[key] = data
    return data


# ---------------------------------------------------------------- Aut(T)

def expected_out_order(T):
    if T.family == "Alt":
        return 4 if T.param == 6 else 2
    if T.family == "PSL2":
        p, f = _prime_power(T.param)
        return (2 if T.param % 2 else 1) * f
    raise UnsupportedGroupError(T.family)


@dataclass
class AutGroupData:
    T: SimpleGroupData
    aut_chain: object
    inn_chain: object
    out_order: int
    out_reps: tuple          # Permutation on element indices; index 0 = identity
    out_mult: list           # out_mult[i][j] -> out index
    out_corr: list           # inner T-index h with rep_i*rep_j = conj(h)*rep_m
    out_inv: tuple
    out_inv_corr: tuple
    pgl_out_index: int | None = None

    def coset_index(self, phi):
        for o, rep in enumerate(self.out_reps):
            if self.inn_chain.contains(phi * rep.inv()):
                return o
        raise InternalConsistencyError("permutation is not an automorphism coset member")

    def decompose(self, phi):
        """(h, o) with phi = conj(h) * out_reps[o]."""
        o = self.coset_index(phi)
        h = inner_element_of(self.T, phi * self.out_reps[o].inv())
        return h, o


def inner_element_of(T, iota):
    """The T-index h whose conjugation map equals the index permutation iota."""
    mult, inv = T.mult, T.inv
    g0 = T.gens[0]
    w0 = iota.image(g0)
    g1 = T.gens[1] if len(T.gens) > 1 else g0
    w1 = iota.image(g1)
    for h in range(T.order):
        hi = inv[h]
        if mult[mult[hi][g0]][h] == w0 and mult[mult[hi][g1]][h] == w1:
            if all(mult[mult[hi][x]][h] == iota.image(x) for x in range(T.order)):
                return h
    raise InternalConsistencyError("index permutation is not an inner automorphism")


def _is_automorphism(T, phi):
    mult = T.mult
    img = phi.images
    return all(
        img[mult[i][j]] == mult[img[i]][img[j]]
        for i in range(T.order)
        for j in range(T.order)
    )


def _try_extend(T, a, b, b2, a2=None):
    """Extend a->a2, b->b2 to an automorphism via table closure, or None."""
    if a2 is None:
        a2 = a
    mult = T.mult
    m = {T.identity_index: T.identity_index}
    pairs = ((a, a2), (b, b2))
    frontier = [T.identity_index]
    while frontier:
        nxt = []
        for x in frontier:
            mx = m[x]
            for g, g2 in pairs:
                y = mult[x][g]
                y2 = mult[mx][g2]
                got = m.get(y)
                if got is None:
                    m[y] = y2
                    nxt.append(y)
                elif got != y2:
                    return None
        frontier = nxt
    if len(m) != T.order or len(set(m.values())) != T.order:
        return None
    return Permutation._raw(tuple(m[i] for i in range(T.order)))


def _scan_pair(T):
    """Deterministic (a, b) with <a,b> = T; a from an Aut-stable class.

    A class is Aut-stable when its (element order, size) fingerprint is unique
    among classes, so candidate automorphism images of a can be fixed to a.
    """
    classes = T.classes()
    fps = {}
    for c in classes:
        fps.setdefault((T.elem_order(c[0]), len(c)), []).append(c)
    stable = sorted(
        (len(cs[0]), cs[0][0])
        for fp, cs in fps.items()
        if len(cs) == 1 and T.elem_order(cs[0][0]) > 1
    )
    if not stable:
        raise InternalConsistencyError("no Aut-stable class fingerprint found")
    for _, a in stable:
        # pick b minimizing the size of its fingerprint candidate set
        cands = []
        for c in classes:
            fp = (T.elem_order(c[0]), len(c))
            union = sum(len(x) for x in fps[fp])
            cands.append((union, c))
        for union, c in sorted(cands):
            if c[0] == T.identity_index:
                continue
            fp = (T.elem_order(c[0]), len(c))
            b_cands = sorted(i for cc in fps[fp] for i in cc)
            for b in c:
                if len(T.generated_by([a, b])) == T.order:
                    return a, b, b_cands
    raise InternalConsistencyError("no generating pair found")


def _aut_seeds(T):
    """Directly constructed outer automorphisms (validated like any other)."""
    seeds = []
    if T.family == "Alt":
        tau = Permutation.from_cycles(T.degree, (0, 1))
        seeds.append(Permutation._raw(tuple(T.index[(tau * e * tau).images] for e in T.elements)))
    elif T.family == "PSL2":
        q = T.param
        gens, gf, mat_perm = _psl2_gen_perms(q)
        if q % 2:
            nu = gf.non_square()
            m = mat_perm(nu, 0, 0, 1)
            mi = m.inv()
            seeds.append(
                Permutation._raw(tuple(T.index[(mi * e * m).images] for e in T.elements))
            )
        if gf.f > 1:
            frob_imgs = [gf.frobenius(x) for x in range(q)] + [q]
            fr = Permutation(frob_imgs)
            fri = fr.inv()
            seeds.append(
                Permutation._raw(tuple(T.index[(fri * e * fr).images] for e in T.elements))
            )
    return seeds


def build_aut(T):
    """Aut(T) on element indices, with Out coset tables.

    Seeds from the known graph/diagonal/field constructions come first; if
    they do not reach the expected order (the Alt(6) exceptional coset), a
    generator-image backtracking scan over class-fingerprint candidates fills
    the gap.  Falling short of the expectation table is an internal error.
    """
    key = ("aut", T.family, T.param)
    if key in _MEMO:
        return _MEMO[key]
    out_expected = expected_out_order(T)
    target = T.order * out_expected
    inn_gens = [T.conj_index_perm(g) for g in T.gens]
    seeds = _aut_seeds(T)
    for phi in seeds:
        if not _is_automorphism(T, phi):
            raise InternalConsistencyError("seed automorphism fails the table check")

    def stream():
        yield from inn_gens
        yield from seeds
        a, b, b_cands = _scan_pair(T)
        for b2 in b_cands:
            phi = _try_extend(T, a, b, b2)
            if phi is not None:
                yield phi

    aut_chain = bsgs_build(stream(), known_order=target)
    for phi in aut_chain.generators():
        if not _is_automorphism(T, phi):
            raise InternalConsistencyError("chain generator fails the table check")
    inn_chain = bsgs_build(inn_gens, known_order=T.order)

    # one representative per Inn-coset, identity first, others sorted
    ident = Permutation.identity(T.order)
    reps = [ident]
    frontier = [ident]
    sgens = aut_chain.generators()
    while frontier and len(reps) < out_expected:
        nxt = []
        for r in frontier:
            for s in sgens:
                cand = r * s
                if not any(inn_chain.contains(cand * r2.inv()) for r2 in reps):
                    reps.append(cand)
                    nxt.append(cand)
        frontier = nxt
    if len(reps) != out_expected:
        raise InternalConsistencyError("failed to enumerate Out cosets")
    reps = [ident] + sorted(reps[1:], key=lambda p: p.images)

    n_out = len(reps)
    out_mult = [[None] * n_out for _ in range(n_out)]
    out_corr = [[None] * n_out for _ in range(n_out)]
    for i in range(n_out):
        for j in range(n_out):
            prod = reps[i] * reps[j]
            for m in range(n_out):
                iota = prod * reps[m].inv()
                if inn_chain.contains(iota):
                    out_mult[i][j] = m
                    out_corr[i][j] = inner_element_of(T, iota)
                    break
            else:
                raise InternalConsistencyError("Out multiplication table incomplete")
    out_inv = [None] * n_out
    out_inv_corr = [None] * n_out
    for i in range(n_out):
        for m in range(n_out):
            if inn_chain.contains(reps[i] * reps[m]):
                out_inv[i] = m
                iota = (reps[m] * reps[i]).inv()
                out_inv_corr[i] = inner_element_of(T, iota)
                break
        else:
            raise InternalConsistencyError("Out inversion table incomplete")

    pgl_idx = None
    if T.family == "PSL2" and T.param % 2:
        diag = _aut_seeds(T)[0]
        pgl_idx = next(
            o for o, r in enumerate(reps) if inn_chain.contains(diag * r.inv())
        )

    data = AutGroupData(
        T=T,
        aut_chain=aut_chain,
        inn_chain=inn_chain,
        out_order=n_out,
        out_reps=tuple(reps),
        out_mult=out_mult,
        out_corr=out_corr,
        out_inv=tuple(out_inv),
        out_inv_corr=tuple(out_inv_corr),
        pgl_out_index=pgl_idx,
    )
    _MEMO[key] = data
    return data


# ---------------------------------------------------------------- subgroup ops

def invertiliser(A_sub, t, T):
    """{phi in A_sub : t^phi in {t, t^-1}} as a stabilizer chain."""
    cent = point_stabilizer(A_sub, t)
    ti = T.inv[t]
    if ti == t:
        return cent
    trans = _Transversal(t, A_sub.generators(), A_sub.identity)
    if ti not in trans:
        return cent
    w = trans.element(ti)
    return bsgs_build(
        cent.generators() + [w],
        identity=A_sub.identity,
        known_order=2 * cent.order(),
    )


def invertiliser_order(aut, t):
    """|I_Aut(t)| from class data: 2|C| iff t^-1 is Aut-conjugate to t != t^-1."""
    T = aut.T
    orbit = set()
    frontier = [t]
    orbit.add(t)
    gens = aut.aut_chain.generators()
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g.image(x)
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    c = aut.aut_chain.order() // len(orbit)
    ti = T.inv[t]
    if ti != t and ti in orbit:
        return 2 * c
    return c


# ---------------------------------------------------------------- holomorph

@dataclass
class HolomorphAction:
    T: SimpleGroupData
    degree: int
    translation_gens: tuple
    aut_gens: tuple
    inversion: object | None
    chain: object


def holomorph(T, aut, include_inversion=False):
    """Hol(T) = T:Aut(T) on T, optionally extended by the inversion map.

    Action on a point t: translations send t to g^-1 t, automorphisms apply
    directly, and the inversion map sends t to t^-1.  The stabilizer of the
    identity element is Aut(T) (or its extension by inversion), which seeds
    the chain; reaching |T|*|stab| certifies it.
    """
    mult = T.mult
    trans_gens = tuple(
        Permutation._raw(tuple(mult[T.inv[g]][x] for x in range(T.order)))
        for g in T.gens
    )
    aut_gens = tuple(aut.aut_chain.generators())
    inv_perm = Permutation._raw(tuple(T.inv)) if include_inversion else None
    stab_gens = list(aut_gens) + ([inv_perm] if include_inversion else [])
    stab_order = aut.aut_chain.order() * (2 if include_inversion else 1)
    chain = assemble_transitive_chain(
        list(trans_gens) + stab_gens,
        T.identity_index,
        stab_gens,
        stab_order,
        Permutation.identity(T.order),
        T.order * stab_order,
    )
    return HolomorphAction(
        T=T,
        degree=T.order,
        translation_gens=trans_gens,
        aut_gens=aut_gens,
        inversion=inv_perm,
        chain=chain,
    )


# ---------------------------------------------------------------- snapshots

def snapshot(T, aut=None):
    """JSON-serializable snapshot with a validation digest."""
    payload = {
        "schema": "diagbase-group/1",
        "family": T.family,
        "param": T.param,
        "order": T.order,
        "degree": T.degree,
        "gen_images": [list(T.elements[g].images) for g in T.gens],
    }
    if aut is not None:
        payload["aut"] = {
            "out_order": aut.out_order,
            "gen_images": [list(p.images) for p in aut.aut_chain.generators()],
        }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    payload["digest"] = hashlib.sha256(blob.encode()).hexdigest()
    return payload


def load_snapshot(payload, order_cap=T_ORDER_CAP_DEFAULT):
    """Rebuild group data from a snapshot, re-running all validation."""
    body = dict(payload)
    digest = body.pop("digest", None)
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    if digest != hashlib.sha256(blob.encode()).hexdigest():
        raise DomainError("snapshot digest mismatch")
    T = build_simple(body["family"], body["param"], order_cap=order_cap)
    if T.order != body["order"] or T.degree != body["degree"]:
        raise InternalConsistencyError("snapshot disagrees with rebuilt group")
    rebuilt = [list(T.elements[g].images) for g in T.gens]
    if rebuilt != body["gen_images"]:
        raise InternalConsistencyError("snapshot generator images disagree")
    return T


def cache_dir():
    return os.environ.get(CACHE_ENV)


def get_simple(family, param, **kw):
    """build_simple with optional on-disk snapshot caching."""
    cdir = cache_dir()
    if cdir:
        path = os.path.join(cdir, "%s_%s.json" % (family, param))
        if os.path.exists(path):
            with open(path) as fh:
                return load_snapshot(json.load(fh), order_cap=kw.get("order_cap", T_ORDER_CAP_DEFAULT))
        T = build_simple(family, param, **kw)
        os.makedirs(cdir, exist_ok=True)
        with open(path, "w") as fh:
            json.dump(snapshot(T), fh, sort_keys=True)
        return T
    return build_simple(family, param, **kw)


def catalog_entries():
    """Supported (family, param) pairs under the default caps."""
    out = [("Alt", n) for n in (5, 6, 7, 8)]
    out += [("PSL2", q) for q in (7, 8, 11, 13)]
    return out
