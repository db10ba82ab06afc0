"""Partition-type combinatorics behind the k >= 3 greedy-base analysis.

Everything works on partition *types* (multisets of part sizes, zero parts
allowed), never on labeled partitions, so k in the thousands stays instant.
The labeled brute force lives in the test suite as the oracle.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import factorial

from .errors import DomainError, ResourceLimitError

PTYPE_ENUM_CAP = 2_000_000


def ptype(counter_or_pairs):
    """Canonical type: ((size, multiplicity), ...) with sizes increasing."""
    if isinstance(counter_or_pairs, Counter):
        items = counter_or_pairs.items()
    else:
        items = counter_or_pairs
    merged = Counter()
    for size, mult in items:
        if mult:
            merged[size] += mult
    return tuple(sorted(merged.items()))


def ptype_from_sizes(sizes):
    return ptype(Counter(sizes))


def ptype_total(t):
    return sum(size * mult for size, mult in t)


def ptype_nparts(t):
    return sum(mult for _, mult in t)


def gamma_type(k, n):
    """The near-even n-part type: all parts of size m = ceil(k/n) or m-1."""
    if k < 1 or n < 1:
        raise DomainError("gamma_type needs k, n >= 1")
    m = -(-k // n)
    r = k - (m - 1) * n  # number of parts of size m; 1 <= r <= n
    return ptype(Counter({m: r, m - 1: n - r}))


def sigma_type(k, n):
    """The perturbed near-even type with the second-smallest part stabiliser.

    Defined for k >= n+1 (so m >= 2) and n >= 5 (so all multiplicities are
    nonnegative); keyed by k relative to the window (m-1)n .. mn.
    """
    if n < 5:
        raise DomainError("sigma_type needs n >= 5")
    if k < n + 1:
        raise DomainError("sigma_type needs k >= n+1")
    m = -(-k // n)
    a = k - (m - 1) * n
    if a == 1:
        c = Counter({m - 2: 1, m - 1: n - 3, m: 2})
    elif a == 2:
        c = Counter({m - 2: 1, m - 1: n - 4, m: 3})
    elif a <= n - 3:
        return gamma_type(k, n)
    elif a == n - 2:
        c = Counter({m - 1: 3, m: n - 4, m + 1: 1})
    elif a == n - 1:
        c = Counter({m - 1: 2, m: n - 3, m + 1: 1})
    else:  # a == n, i.e. k = mn
        c = Counter({m - 1: 2, m: n - 4, m + 1: 2})
    return ptype(c)


def stab_order(t, q_label):
    """Order of the partwise setwise stabiliser of a type in S_k or A_k.

    For S_k it is the product of part-size factorials; intersecting with A_k
    halves it exactly when some part has size >= 2 (a transposition inside a
    part is the odd witness).
    """
    total = 1
    for size, mult in t:
        total *= factorial(size) ** mult
    if q_label == "S":
        return total
    if q_label == "A":
        return total // 2 if any(size >= 2 for size, _ in t) else total
    raise DomainError("q_label must be 'A' or 'S'")


def stab_is_trivial(t, q_label):
    """stab_order(t, q_label) == 1, without big factorials."""
    if q_label == "S":
        return all(size <= 1 for size, _ in t)
    if q_label == "A":
        if any(size >= 3 for size, _ in t):
            return False
        twos = sum(mult for size, mult in t if size == 2)
        return twos <= 1
    raise DomainError("q_label must be 'A' or 'S'")


def npart_types(k, n, cap=PTYPE_ENUM_CAP):
    """All types of partitions of k into exactly n parts, empty allowed."""
    out = []

    def rec(remaining, max_part, parts_left, acc):
        if len(out) > cap:
            raise ResourceLimitError("partition-type enumeration cap exceeded")
        if parts_left == 0:
            if remaining == 0:
                out.append(ptype_from_sizes(acc))
            return
        if remaining > max_part * parts_left:
            return
        lo = -(-remaining // parts_left)
        for first in range(min(max_part, remaining), lo - 1, -1):
            rec(remaining - first, first, parts_left - 1, acc + [first])

    rec(k, k, n, [])
    return out


def verify_min_part(k, n, q_label, cap=PTYPE_ENUM_CAP):
    """Exhaustive check that the near-even type uniquely minimizes stabilisers.

    For every n-part type P != gamma of k, with smallest part d and largest e:
    |H_(P)| >= (e/(d+1))|H_(gamma)| > |H_(gamma)|, with equality in the first
    bound exactly when the non-{m-1, m} parts are a single part of size m-2
    or m+1, or one of each.  Returns (ok, counterexample-or-None).
    """
    if k < n + 1 or n < 3:
        raise DomainError("verify_min_part needs k >= n+1, n >= 3")
    gamma = gamma_type(k, n)
    h_gamma = stab_order(gamma, q_label)
    m = -(-k // n)
    for t in npart_types(k, n, cap):
        if t == gamma:
            continue
        sizes = [s for s, mult in t for _ in range(mult)]
        d, e = sizes[0], sizes[-1]
        h = stab_order(t, q_label)
        bound = Fraction(e, d + 1) * h_gamma
        odd_parts = [(s, mult) for s, mult in t if s not in (m, m - 1)]
        n_odd = sum(mult for _, mult in odd_parts)
        expect_eq = (
            n_odd == 1 and odd_parts[0][0] in (m - 2, m + 1)
        ) or (
            n_odd == 2
            and sorted(s for s, _ in odd_parts) == [m - 2, m + 1]
            and all(mult == 1 for _, mult in odd_parts)
        )
        if h < bound or h <= h_gamma or (h == bound) != expect_eq:
            return False, t
    return True, None


def sigma_extra_exception(k, n):
    """The type missing from the stated exclusion list, when one exists.

    At k = (m-1)n + 2 the type [(m-1)^(n-1), (m+1)^1] has stabiliser ratio
    (m+1)/m < m/(m-1) below sigma's for every m, so the "every other type
    exceeds sigma" claim needs it excluded alongside the k = mn one.
    """
    m = -(-k // n)
    if k == (m - 1) * n + 2:
        return ptype([(m - 1, n - 1), (m + 1, 1)])
    return None


def sigma_factor_bound(k, n):
    """The sharp |H_(sigma)| / |H_(gamma)| ratio for this k window.

    The stated factor-2 bound fails exactly at k = 2n, where sigma differs
    from gamma in two parts on each side and the ratio is (3/2)^2 = 9/4.
    """
    m = -(-k // n)
    a = k - (m - 1) * n
    if a in (1, 2):
        return Fraction(m, m - 1)
    if a <= n - 3:
        return Fraction(1)
    if a == n:
        return Fraction(m + 1, m) ** 2
    return Fraction(m + 1, m)


def verify_part_sigma(k, n, q_label, cap=PTYPE_ENUM_CAP, corrected=False):
    """Exhaustive check that sigma has at worst the third-smallest stabiliser.

    The stated claim: every n-part type other than gamma, sigma and
    [(m-1)^1, m^(n-2), (m+1)^1] has a strictly larger stabiliser than sigma,
    and |H_(sigma)| <= 2 |H_(gamma)|.  Exhaustive enumeration shows two edge
    defects (see sigma_extra_exception and sigma_factor_bound); with
    corrected=True those sharp forms are checked instead.  Returns
    (ok, counterexample-or-None).
    """
    if k < n + 1 or n < 6:
        raise DomainError("verify_part_sigma needs k >= n+1, n >= 6")
    gamma = gamma_type(k, n)
    sigma = sigma_type(k, n)
    m = -(-k // n)
    h_sigma = stab_order(sigma, q_label)
    factor = Fraction(9, 4) if corrected else Fraction(2)
    if h_sigma > factor * stab_order(gamma, q_label):
        return False, sigma
    excluded = {gamma, sigma}
    if k == m * n:
        excluded.add(ptype([(m - 1, 1), (m, n - 2), (m + 1, 1)]))
    if corrected:
        extra = sigma_extra_exception(k, n)
        if extra is not None:
            excluded.add(extra)
    for t in npart_types(k, n, cap):
        if t in excluded:
            continue
        if stab_order(t, q_label) <= h_sigma:
            return False, t
    return True, None


def ceil_chain(m, n, r):
    """ceil(ceil(m/n^r)/n) == ceil(m/n^(r+1)); true for all valid inputs."""
    if m < 0 or n < 1 or r < 0:
        raise DomainError("ceil_chain needs m, r >= 0 and n >= 1")
    d = n**r
    inner = -(-m // d)
    return -(-inner // n) == -(-m // (d * n))


def split_type(t, n):
    """Refine every part into n near-even parts (the greedy split rule)."""
    c = Counter()
    for size, mult in t:
        q, r = divmod(size, n)
        if r:
            c[q + 1] += r * mult
            c[q] += (n - r) * mult
        else:
            c[q] += n * mult
    return ptype(c)


def m_prime(k, n):
    """Largest part of the second greedy point's partition (m or m+1)."""
    m = -(-k // n)
    return m + 1 if k >= m * n - 2 else m


def greedy_refine_trace(n, k, q_label):
    """Type sequence of the greedy partition refinement, sigma first."""
    t = sigma_type(k, n)
    trace = [t]
    while not stab_is_trivial(t, q_label):
        t = split_type(t, n)
        trace.append(t)
    return trace


def greedy_refine_sim(n, k, q_label):
    """Simulated greedy base size: 1 + (steps until the stabiliser is trivial).

    The leading 1 counts the first base point D; step i holds the partition
    left after i further points.
    """
    return 1 + len(greedy_refine_trace(n, k, q_label))


def ell(n, k):
    """ceil(log_n k) for k >= 2."""
    if k < 2 or n < 2:
        raise DomainError("ell needs n, k >= 2")
    e, v = 1, n
    while v < k:
        v *= n
        e += 1
    return e


def predicted_refine_value(n, k, q_label, reading="prop"):
    """Closed-form greedy size for k >= n+1 under either textual reading.

    'prop' is the consistent reading (boundary cases k in {n^l-1, n^l-2} give
    l+2 when Q = S_k); 'thm-literal' flips the boundary condition to Q = A_k.
    """
    e = ell(n, k)
    if k == n**e:
        return e + 2
    if k in (n**e - 1, n**e - 2):
        if reading == "prop":
            return e + 2 if q_label == "S" else e + 1
        if reading == "thm-literal":
            return e + 2 if q_label == "A" else e + 1
        raise DomainError("reading must be 'prop' or 'thm-literal'")
    return e + 1


def closed_form_vs_sim(n, ks, q_labels=("A", "S")):
    """Simulator vs both readings, one row per (k, Q)."""
    rows = []
    for k in ks:
        for q in q_labels:
            sim = greedy_refine_sim(n, k, q)
            prop = predicted_refine_value(n, k, q, "prop")
            lit = predicted_refine_value(n, k, q, "thm-literal")
            rows.append(
                {
                    "n": n,
                    "k": k,
                    "q": q,
                    "ell": ell(n, k),
                    "sim": sim,
                    "prop_reading": prop,
                    "thm_reading": lit,
                    "agree_prop": sim == prop,
                    "agree_thm": sim == lit,
                }
            )
    return rows
