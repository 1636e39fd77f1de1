"""
Theorem checkers over matrix realizations.

Every statement becomes an equality of finite sets of matrices. Left-hand sides are given by an exact predicate on
group elements (a centralizer or normalizer condition); right-hand sides are enumerated sets (products of the
centre, root subgroups, parabolic subgroups, L). A check runs in one of two modes:

    exhaustive          the point group is enumerated and the left-hand side is filtered out of it
    one-sided+sampled   every right-hand element is checked against the predicate (the easy inclusion), and
                        seeded random words in the generators are checked the other way

THEOREMS
========

    long-norm     the normalizer-like set of a long root subgroup is a parabolic subgroup
    dbl-centzer   double centralizers Cent_G(Z_a)
    cent-norm     Cent_G(all root elements) = Cent(G), and their common normalizer condition gives L
    urad-cent     centralizer of a unipotent radical inside G0_{ker f} for a 5-grading f
    diophantine   the set identities behind the Diophantine descriptions of Cent(G), L and U_a
    cent-us       the centralizer of the non-ultrashort root subgroups against its expected order

plus property checks of the realization: gauss, subgr-int, nondeg, two-step, commutator, weyl.
"""

from dataclasses import dataclass, field
import itertools
import time

import numpy as np
import sympy

from . import groups, subsets
from .errors import ParameterError, PreconditionError, UnsupportedError
from .realize import two_step_axioms
from .roots import Root

EXHAUSTIVE_LIMIT = 10 ** 6
DEFAULT_SAMPLES = 10 ** 5


@dataclass
class VerificationResult:
    theorem: str
    instance: dict
    mode: str
    outcome: str
    counts: dict = field(default_factory=dict)
    counterexample: list = None
    detail: str = ""
    checks: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self):
        return self.outcome == "pass"

    def as_dict(self, timings=False):
        out = {"theorem": self.theorem,
               "instance": self.instance,
               "mode": self.mode,
               "outcome": self.outcome,
               "counts": self.counts,
               "counterexample": self.counterexample,
               "detail": self.detail,
               "checks": self.checks}
        if timings:
            out["wall_time"] = round(self.wall_time, 3)
        return out


@dataclass(frozen=True)
class Grading:
    """A linear functional on the relative root space, given by its values on the relative simple roots."""
    values: tuple

    def __call__(self, root):
        return sum(v * c for v, c in zip(self.values, root.coords))

    def is_valid(self, system):
        return all(-2 <= self(root) <= 2 for root in system.roots)

    def top(self, system):
        return [root for root in system.roots if self(root) == 2]

    def as_dict(self):
        return {"values": list(self.values)}


def default_grading(realization):
    """f(b) = 2 (a.b)/(a.a) for the highest root a."""
    rel = realization.relative
    alpha = rel.highest_root()
    return Grading(tuple(rel.cartan_integer(b, alpha) for b in rel.basis))


def gradings(realization):
    """All 5-gradings with values in {-2, ..., 2} on the simple roots and a root of degree 2."""
    rel = realization.relative
    out = []
    for values in itertools.product(range(-2, 3), repeat=rel.rank):
        grading = Grading(values)
        if grading.is_valid(rel) and grading.top(rel):
            out.append(grading)
    return out


def order_bound(realization):
    """|K|^dim G, an upper bound for the order of the point group."""
    size = realization.size
    dim = {"sl": size * size - 1, "sp": size * (size + 1) // 2, "so": size * (size - 1) // 2}[realization.kind]
    return realization.ring.order ** dim


class Context:
    """
    The point group of a realization (or a seeded sample of it) and its centre, shared by the checkers.
    """

    def __init__(self, realization, sampled=None, seed=0, cap=groups.DEFAULT_CAP, limit=EXHAUSTIVE_LIMIT,
                 verbose=False):
        """
        @param sampled: number of random words; None means exhaustive whenever the group is small enough
        @param seed: seed of the random words
        @param cap: enumeration cap
        @param limit: largest order bound enumerated in exhaustive mode
        """
        self.realization = realization
        self.ring = realization.ring
        self.seed = seed
        self.cap = cap
        self.group = None
        self.samples = None
        self.center = np.unique(self.ring.encode(realization.center_points()))
        if sampled is None and order_bound(realization) <= limit:
            group = groups.point_group(realization, cap=cap, verbose=verbose)
            if group.complete:
                self.group = group
        if self.group is None:
            gens = np.concatenate([realization.all_generators(), realization.L_points(cap=cap)])
            self.samples = groups.random_words(realization, gens, sampled or DEFAULT_SAMPLES, seed=seed)

    @property
    def exhaustive(self):
        return self.group is not None

    @property
    def mode(self):
        return "exhaustive" if self.exhaustive else "one-sided+sampled"

    def elements(self):
        return self.group.matrices() if self.exhaustive else self.samples

    def counts(self):
        if self.exhaustive:
            return {"group": len(self.group), "center": len(self.center)}
        return {"samples": len(self.samples), "center": len(self.center)}

    def root_codes(self, alpha):
        return np.unique(self.ring.encode(self.realization.root_points(alpha)))

    def center_times(self, codes):
        return groups.set_product(self.realization, self.center, codes, cap=self.cap)


# Predicates on batches of group elements

def _conjugates(realization, batch, x):
    ring = realization.ring
    return ring.mat_mul(ring.mat_mul(batch, x), realization.inverse(batch))


def _normalizes(realization, batch, alpha, gens):
    """g t_a(x) g^-1 in U_a for every generator"""
    mask = np.ones(len(batch), dtype=bool)
    for x in gens:
        mask &= realization.in_root_subgroup(alpha, _conjugates(realization, batch, x))
    return mask


def _commutes(realization, batch, gens):
    ring = realization.ring
    mask = np.ones(len(batch), dtype=bool)
    for s in gens:
        mask &= np.all(ring.mat_mul(batch, s) == ring.mat_mul(s, batch), axis=(1, 2, 3))
    return mask


def _rows(realization, matrix):
    return realization.ring.to_rows(matrix)


def _instance(realization, **extra):
    out = {"index": realization.index.name, "ring": realization.ring.spec}
    out.update({k: str(v) for k, v in extra.items()})
    return out


def _require_rank(realization, theorem):
    if realization.relative.rank < 2:
        raise UnsupportedError(theorem + " needs relative rank at least 2, " + realization.index.name + " has "
                               + str(realization.relative.rank))


def _finish(result, start):
    result.wall_time = time.monotonic() - start
    return result


def _compare(ctx, predicate, rhs, rhs_contains=None):
    """
    Compares {g : predicate(g)} with the right-hand set.
    @param predicate: batch -> boolean mask
    @param rhs: sorted codes (possibly a lower bound in sampled mode)
    @param rhs_contains: exact membership test for the right-hand side, used on samples when rhs is truncated
    @return: (outcome, counts, counterexample matrix or None)
    """
    realization = ctx.realization
    ring = ctx.ring
    size = realization.size
    if ctx.exhaustive:
        elements = ctx.group.matrices()
        lhs = ctx.group.codes[predicate(elements)]
        counts = {"lhs": len(lhs), "rhs": len(rhs)}
        if np.array_equal(lhs, rhs):
            return "pass", counts, None
        difference = np.setxor1d(lhs, rhs)
        return "fail", counts, ring.decode(difference[:1], size)[0]
    right = ring.decode(rhs, size)
    inside = predicate(right)
    counts = {"rhs": len(rhs)}
    if not inside.all():
        return "fail", counts, right[~inside][0]
    samples = ctx.samples[predicate(ctx.samples)]
    counts["sampled_lhs"] = len(samples)
    if rhs_contains is None:
        found = np.isin(ring.encode(samples), rhs)
    else:
        found = rhs_contains(samples)
    if not found.all():
        return "fail", counts, samples[~found][0]
    return "pass", counts, None


def _result(theorem, ctx, instance, outcome, counts, counterexample, detail=""):
    counts = dict(counts)
    counts.update(ctx.counts())
    return VerificationResult(theorem=theorem, instance=instance, mode=ctx.mode, outcome=outcome, counts=counts,
                              counterexample=None if counterexample is None else _rows(ctx.realization,
                                                                                        counterexample),
                              detail=detail)


def _parabolic_roots(rel, alpha):
    """{b : angle(a, b) <= pi/2}"""
    return [beta for beta in rel.roots if rel.inner(alpha, beta) >= 0]


def _parabolic(ctx, alpha):
    """P = G0_{b : angle(a, b) <= pi/2} as (codes, exact membership test)"""
    realization = ctx.realization
    members = _parabolic_roots(realization.relative, alpha)
    cap = ctx.cap if ctx.exhaustive else min(ctx.cap, EXHAUSTIVE_LIMIT)
    parabolic = groups.points_of(realization, subsets.RootSubset(realization.relative, members), with_L=True,
                                 cap=cap)
    shape = set(members)

    def contains(batch):
        return realization.has_shape(shape, batch) & realization.in_group(batch)
    return parabolic, contains


def _long_root(rel, alpha):
    if alpha is None:
        alpha = rel.highest_root()
    if alpha not in rel:
        raise PreconditionError(str(alpha) + " is not a relative root")
    if rel.length_class[alpha] != "long":
        raise PreconditionError(str(alpha) + " is not long")
    return alpha


# Theorems

def check_long_norm(realization, alpha=None, ctx=None, **options):
    """
    N = {g : g t_a(x) g^-1 in U_a for all x in X} equals P = G0_{b : angle(a, b) <= pi/2}.
    @param alpha: long relative root (the highest root by default)
    @return: VerificationResult
    """
    start = time.monotonic()
    _require_rank(realization, "long-norm")
    rel = realization.relative
    alpha = _long_root(rel, alpha)
    ctx = ctx or Context(realization, **options)
    gens = realization.generators(alpha)
    parabolic, contains = _parabolic(ctx, alpha)
    outcome, counts, witness = _compare(ctx, lambda batch: _normalizes(realization, batch, alpha, gens),
                                        parabolic.codes, None if parabolic.complete else contains)
    counts["parabolic"] = len(parabolic)
    return _finish(_result("long-norm", ctx, _instance(realization, root=alpha), outcome, counts, witness), start)


def _gamma(rel, alpha):
    """G_a = {b : a + b not in F u {0}}"""
    return [beta for beta in rel.roots if not (alpha + beta).is_zero() and (alpha + beta) not in rel]


def _frame(rel):
    """Pairwise orthogonal long roots 2e_1, ..., 2e_l of a C, BC (or B_2) system."""
    frame = []
    for root in sorted(rel.roots, reverse=True):
        if rel.length_class[root] == "long" and all(rel.inner(root, f) == 0 for f in frame):
            frame.append(root)
    return frame


def _half(rel, root):
    if any(c % 2 for c in root.coords):
        return None
    half = Root(tuple(c // 2 for c in root.coords))
    return half if half in rel else None


def _c_like(rel):
    return rel.type_label in ("C", "BC") or (rel.type_label == "B" and rel.rank == 2)


def cent_us(realization):
    """Points of L centralizing every non-ultrashort root subgroup, as sorted codes."""
    rel = realization.relative
    levi = realization.L_points()
    roots = [beta for beta in rel.roots if rel.length_class[beta] != "ultrashort"]
    mask = _commutes(realization, levi, realization.all_generators(roots))
    return np.unique(realization.ring.encode(levi[mask]))


def dbl_centzer_rhs(ctx, alpha):
    """The predicted Cent_G(Z_a) as (case label, sorted codes)."""
    realization = ctx.realization
    rel = realization.relative
    cls = rel.length_class[alpha]
    if rel.type_label == "BC" and cls == "ultrashort":
        return "ultrashort", groups.set_product(realization, cent_us(realization), ctx.root_codes(alpha),
                                                cap=ctx.cap)
    if cls == "short" and _c_like(rel):
        members = [alpha] + [beta for beta in rel.roots
                             if rel.length_class[beta] == "long" and rel.inner(alpha, beta) > 0]
        points = groups.points_of(realization, subsets.RootSubset(rel, members), cap=ctx.cap)
        return "c-short", ctx.center_times(points)
    return "generic", ctx.center_times(ctx.root_codes(alpha))


def check_dbl_centzer(realization, alpha=None, ctx=None, **options):
    """
    Cent_G(Z_a) for Z_a = union of t_b(X_b), b in G_a, against Cent^us U_a (ultrashort a in BC),
    Cent U_{2e_i} U_{e_i+e_j} U_{2e_j} (a = e_i + e_j short in C or BC) or Cent U_a.
    """
    start = time.monotonic()
    _require_rank(realization, "dbl-centzer")
    rel = realization.relative
    if alpha is None:
        alpha = rel.highest_root()
    if alpha not in rel:
        raise PreconditionError(str(alpha) + " is not a relative root")
    ctx = ctx or Context(realization, **options)
    z_gens = realization.all_generators(_gamma(rel, alpha))
    case, rhs = dbl_centzer_rhs(ctx, alpha)
    outcome, counts, witness = _compare(ctx, lambda batch: _commutes(realization, batch, z_gens), rhs)
    counts["Z_generators"] = len(z_gens)
    return _finish(_result("dbl-centzer", ctx, _instance(realization, root=alpha), outcome, counts, witness,
                           detail="case " + case), start)


def check_cent_norm(realization, ctx=None, **options):
    """Cent_G(all t_a(X_a)) = Cent(G) and {g : g t_a(X_a) g^-1 in U_a for all a} = L."""
    start = time.monotonic()
    _require_rank(realization, "cent-norm")
    rel = realization.relative
    ctx = ctx or Context(realization, **options)
    every = realization.all_generators()
    outcome, counts, witness = _compare(ctx, lambda batch: _commutes(realization, batch, every), ctx.center)
    checks = {"centralizer": outcome}
    levi = np.unique(ctx.ring.encode(realization.L_points(cap=ctx.cap)))

    def normalizes_all(batch):
        mask = np.ones(len(batch), dtype=bool)
        for alpha in rel.roots:
            mask &= _normalizes(realization, batch, alpha, realization.generators(alpha))
        return mask
    second, second_counts, second_witness = _compare(ctx, normalizes_all, levi, realization.in_L)
    checks["normalizer"] = second
    counts.update({"normalizer_" + k: v for k, v in second_counts.items()})
    counts["L"] = len(levi)
    outcome = "fail" if "fail" in checks.values() else "pass"
    result = _result("cent-norm", ctx, _instance(realization), outcome, counts,
                     witness if witness is not None else second_witness)
    result.checks = checks
    return _finish(result, start)


def check_urad_cent(realization, grading=None, ctx=None, **options):
    """
    C = {g in G0_{F n ker f} : [g, t_a(x)] = 1 for f(a) > 0} equals the centre.
    @param grading: Grading (default_grading by default)
    """
    start = time.monotonic()
    rel = realization.relative
    grading = grading or default_grading(realization)
    if len(grading.values) != rel.rank or not grading.is_valid(rel):
        raise ParameterError("grading " + str(list(grading.values)) + " does not take values in {-2, ..., 2} on "
                             + rel.label())
    if not grading.top(rel):
        raise PreconditionError("grading " + str(list(grading.values)) + " has no root of degree 2")
    ctx = ctx or Context(realization, **options)
    kernel = subsets.RootSubset(rel, [beta for beta in rel.roots if grading(beta) == 0])
    levi_part = groups.points_of(realization, kernel, with_L=True, cap=ctx.cap)
    instance = _instance(realization, grading=list(grading.values))
    if not levi_part.complete:
        result = _result("urad-cent", ctx, instance, "inconclusive", {"kernel_group": len(levi_part)}, None,
                         detail="G0 of the kernel exceeds the cap")
        return _finish(result, start)
    positive = realization.all_generators([beta for beta in rel.roots if grading(beta) > 0])
    elements = levi_part.matrices()
    found = levi_part.codes[_commutes(realization, elements, positive)]
    counts = {"kernel_group": len(levi_part), "C": len(found)}
    if np.array_equal(found, ctx.center):
        outcome, witness = "pass", None
    else:
        outcome = "fail"
        witness = ctx.ring.decode(np.setxor1d(found, ctx.center)[:1], realization.size)[0]
    result = _result("urad-cent", ctx, instance, outcome, counts, witness)
    result.mode = "exhaustive"
    return _finish(result, start)


# Diophantine identities

def _product_of_commutators(ctx, left, alpha, module_gens=None):
    """prod over x in X of [left, t_a(x)] with X the generators of a"""
    realization = ctx.realization
    gens = realization.generators(alpha) if module_gens is None else module_gens
    sets = [groups.commutator_set(realization, left, g) for g in gens]
    return groups.product_of(realization, *sets, cap=ctx.cap)


def _verdict(equal):
    return "pass" if equal else "fail"


def _identity_center(ctx, long_roots):
    """(a) Cent = Cent U_a n Cent U_-a for every long a"""
    ok = True
    for alpha in long_roots:
        both = groups.intersect(ctx.center_times(ctx.root_codes(alpha)), ctx.center_times(ctx.root_codes(-alpha)))
        ok = ok and np.array_equal(both, ctx.center)
    return _verdict(ok)


def _identity_normalizer(ctx, alpha):
    """(b) {g : g t_a(X) g^-1 in Cent U_a} = P_a"""
    realization = ctx.realization
    target = ctx.center_times(ctx.root_codes(alpha))
    gens = realization.generators(alpha)
    ring = ctx.ring

    def predicate(batch):
        mask = np.ones(len(batch), dtype=bool)
        for x in gens:
            mask &= np.isin(ring.encode(_conjugates(realization, batch, x)), target)
        return mask
    parabolic, contains = _parabolic(ctx, alpha)
    outcome, _, _ = _compare(ctx, predicate, parabolic.codes, None if parabolic.complete else contains)
    return outcome


def _identity_levi(ctx, long_roots):
    """(c) L = intersection of the parabolics P_a over long a"""
    realization = ctx.realization
    common = None
    for alpha in long_roots:
        parabolic, _ = _parabolic(ctx, alpha)
        if not parabolic.complete:
            return "inconclusive"
        common = parabolic.codes if common is None else groups.intersect(common, parabolic.codes)
    levi = np.unique(ctx.ring.encode(realization.L_points(cap=ctx.cap)))
    return _verdict(np.array_equal(common, levi))


def _identity_long(ctx, alpha):
    """(d) U_a = prod_x [Cent U_b, t_{a-b}(x)] for a long b at angle pi/3"""
    rel = ctx.realization.relative
    for beta in rel.roots:
        if (rel.length_class[beta] == "long" and 2 * rel.inner(alpha, beta) == rel.inner(alpha, alpha)
                and (alpha - beta) in rel):
            product = _product_of_commutators(ctx, ctx.center_times(ctx.root_codes(beta)), alpha - beta)
            return _verdict(np.array_equal(product, ctx.root_codes(alpha)))
    return "skipped: no long root at angle pi/3"


def _identity_b_short(ctx):
    """(e) U_{e_i} = Cent U_{e_i} n U_{e_i+e_j} prod_x [Cent U_{e_j}, t_{e_i-e_j}(x)]"""
    rel = ctx.realization.relative
    shorts = [root for root in rel.roots if rel.length_class[root] == "short"]
    alpha = max(shorts)
    beta = next(root for root in shorts if root != alpha and root != -alpha)
    commutators = _product_of_commutators(ctx, ctx.center_times(ctx.root_codes(beta)), alpha - beta)
    right = groups.intersect(ctx.center_times(ctx.root_codes(alpha)),
                             groups.set_product(ctx.realization, ctx.root_codes(alpha + beta), commutators,
                                                cap=ctx.cap))
    return _verdict(np.array_equal(right, ctx.root_codes(alpha)))


def _c_roots(rel, frame, i, j):
    """(e_i + e_j, e_i - e_j) from the frame 2e_1, ..., 2e_l"""
    return _half(rel, frame[i] + frame[j]), _half(rel, frame[i] - frame[j])


def _identity_c_chain(ctx, frame):
    """(f) the C/BC chains for U_{e_i+e_j}, U_{2e_i} and (in BC) U_{e_i}"""
    realization = ctx.realization
    rel = realization.relative
    out = {}
    plus_ij, minus_ij = _c_roots(rel, frame, 0, 1)
    plus_jk, minus_jk = _c_roots(rel, frame, 1, 2)
    inner = groups.points_of(realization, subsets.RootSubset(rel, [frame[1], plus_jk, frame[2]]), cap=ctx.cap)
    start = ctx.center_times(inner)
    pieces = []
    for x in realization.generators(minus_ij):
        first = groups.commutator_set(realization, start, x)
        for y in realization.generators(minus_jk):
            pieces.append(groups.commutator_set(realization, first, y))
    product = groups.product_of(realization, *pieces, cap=ctx.cap)
    out["U_{e_i+e_j}"] = _verdict(np.array_equal(product, ctx.root_codes(plus_ij)))
    commutators = _product_of_commutators(ctx, ctx.center_times(ctx.root_codes(frame[1])), minus_ij)
    right = groups.intersect(ctx.center_times(ctx.root_codes(frame[0])),
                             groups.set_product(realization, ctx.root_codes(plus_ij), commutators, cap=ctx.cap))
    out["U_{2e_i}"] = _verdict(np.array_equal(right, ctx.root_codes(frame[0])))
    if rel.type_label == "BC":
        e_i, e_j = _half(rel, frame[0]), _half(rel, frame[1])
        us = cent_us(realization)
        commutators = _product_of_commutators(
            ctx, groups.set_product(realization, us, ctx.root_codes(e_j), cap=ctx.cap), minus_ij)
        tail = groups.product_of(realization, ctx.root_codes(minus_ij), ctx.root_codes(plus_ij), commutators,
                                 cap=ctx.cap)
        right = groups.intersect(groups.set_product(realization, us, ctx.root_codes(e_i), cap=ctx.cap), tail)
        out["U_{e_i}"] = _verdict(np.array_equal(right, ctx.root_codes(e_i)))
    return out


def _identity_rank_two(ctx, frame):
    """(g) the C_2 / BC_2 clauses"""
    realization = ctx.realization
    rel = realization.relative
    ring = ctx.ring
    out = {}
    plus_ij, minus_ij = _c_roots(rel, frame, 0, 1)
    if rel.type_label == "BC":
        e_i = _half(rel, frame[0])
        candidates = groups.set_product(realization, cent_us(realization), ctx.root_codes(e_i), cap=ctx.cap)
        target = ctx.center_times(ctx.root_codes(frame[0]))
        elements = ring.decode(candidates, realization.size)
        mask = np.ones(len(elements), dtype=bool)
        for x in realization.generators(e_i):
            comms = realization.commutator(elements, np.broadcast_to(x, elements.shape))
            mask &= np.isin(ring.encode(comms), target)
        out["Cent U_{e_i}"] = _verdict(np.array_equal(candidates[mask], ctx.center_times(ctx.root_codes(e_i))))
    left_roots = [frame[0], plus_ij]
    whole = groups.points_of(realization, subsets.RootSubset(rel, [frame[0], plus_ij, frame[1]]), cap=ctx.cap)
    commutators = _product_of_commutators(ctx, ctx.center_times(whole), minus_ij)
    head = ctx.center_times(ctx.root_codes(frame[0]))
    right = groups.set_product(realization, head, commutators, cap=ctx.cap)
    left = ctx.center_times(groups.points_of(realization, subsets.RootSubset(rel, left_roots), cap=ctx.cap))
    out["Cent U_{2e_i} U_{e_i+e_j}"] = _verdict(np.array_equal(left, right))
    return out


def check_diophantine_identities(realization, ctx=None, **options):
    """
    Every set identity of the Diophantine descriptions that applies to the instance; the others are reported as
    skipped with the reason.
    """
    start = time.monotonic()
    _require_rank(realization, "diophantine")
    rel = realization.relative
    ctx = ctx or Context(realization, **options)
    long_roots = [root for root in rel.roots if rel.length_class[root] == "long"]
    alpha = rel.highest_root()
    checks = {"center": _identity_center(ctx, long_roots),
              "normalizer": _identity_normalizer(ctx, alpha),
              "levi": _identity_levi(ctx, long_roots)}
    if _c_like(rel):
        checks["long_commutators"] = "skipped: type " + rel.label()
    else:
        checks["long_commutators"] = _identity_long(ctx, alpha)
    if rel.type_label == "B" and rel.rank >= 3:
        checks["b_short"] = _identity_b_short(ctx)
    else:
        checks["b_short"] = "skipped: needs B_l with l >= 3"
    frame = _frame(rel) if _c_like(rel) else []
    if _c_like(rel) and rel.rank >= 3:
        checks.update(_identity_c_chain(ctx, frame))
    else:
        checks["c_chain"] = "skipped: needs C_l or BC_l with l >= 3"
    if _c_like(rel) and rel.rank == 2:
        checks.update(_identity_rank_two(ctx, frame))
    else:
        checks["rank_two"] = "skipped: needs C_2 or BC_2"
    verdicts = [v for v in checks.values() if not v.startswith("skipped")]
    if "fail" in verdicts:
        outcome = "fail"
    elif "inconclusive" in verdicts or not verdicts:
        outcome = "inconclusive"
    else:
        outcome = "pass"
    result = _result("diophantine", ctx, _instance(realization), outcome, {}, None)
    result.checks = checks
    return _finish(result, start)


# Cent^us

def _local_factors(ring):
    out = []
    for m in ring.moduli:
        for p, k in sympy.factorint(m).items():
            out.append((p, k))
    return out


def _gl_order(p, k, m):
    value = p ** ((k - 1) * m * m)
    for i in range(m):
        value *= p ** m - p ** i
    return value


def _sp_order(p, k, m):
    """|Sp_{2m}(Z/p^k)|"""
    value = p ** ((k - 1) * m * (2 * m + 1)) * p ** (m * m)
    for i in range(1, m + 1):
        value *= p ** (2 * i) - 1
    return value


def _so_order(p, k, m):
    """|SO_{2m}(Z/p^k)| for the split form, p odd"""
    if m == 0:
        return 1
    value = p ** ((k - 1) * m * (2 * m - 1)) * p ** (m * (m - 1)) * (p ** m - 1)
    for i in range(1, m):
        value *= p ** (2 * i) - 1
    return value


def expected_cent_us_order(realization):
    """
    Order of the centralizer of the non-ultrashort root subgroups in the natural matrix group:
    |GL_{n+1-2rd}(K)| for 2A, |mu_2(K)| |Sp_{2n-2rd}(K)| for C and |mu_2(K)| |SO_{2n-2rd}(K)| for D.
    """
    index = realization.index
    rel = realization.relative
    if index.family not in ("2A", "C", "1D", "2D") or rel.type_label != "BC" or rel.rank < 2:
        raise UnsupportedError("no classical Cent^us row for " + index.name)
    n, r, d = index.params
    ring = realization.ring
    mu2 = sum(1 for e in ring.elements() if ring.mul(e, e) == ring.one())
    value = 1
    for p, k in _local_factors(ring):
        if index.family == "2A":
            value *= _gl_order(p, k, n + 1 - 2 * r * d)
        elif index.family == "C":
            value *= _sp_order(p, k, n - r * d)
        else:
            value *= _so_order(p, k, n - r * d)
    return value if index.family == "2A" else mu2 * value


def check_cent_us_table(realization, **options):
    """The centralizer of the non-ultrashort root subgroups, compared by order with its table entry."""
    start = time.monotonic()
    expected = expected_cent_us_order(realization)
    found = cent_us(realization)
    center = np.unique(realization.ring.encode(realization.center_points()))
    contains_center = bool(np.isin(center, found).all())
    outcome = "pass" if len(found) == expected and contains_center else "fail"
    result = VerificationResult(theorem="cent-us", instance=_instance(realization), mode="exhaustive",
                                outcome=outcome, counts={"cent_us": len(found), "expected": expected,
                                                         "L": len(realization.L_points())},
                                detail="center inside: " + str(contains_center))
    return _finish(result, start)


# Properties of the realization

def _plain(theorem, realization, ok, counts=None, detail="", checks=None, mode="exhaustive"):
    return VerificationResult(theorem=theorem, instance=_instance(realization), mode=mode,
                              outcome="pass" if ok else "fail", counts=counts or {}, detail=detail,
                              checks=checks or {})


def check_gauss(realization, subset=None, cap=groups.DEFAULT_CAP, **options):
    start = time.monotonic()
    ok = groups.gauss_check(realization, subset=subset, cap=cap)
    return _finish(_plain("gauss", realization, ok, detail="subset " + (str(subset) if subset else "all")), start)


def check_subgroup_intersection(realization, first=None, second=None, cap=groups.DEFAULT_CAP, **options):
    """Defaults: the positive roots against the standard parabolic of the first simple root."""
    start = time.monotonic()
    rel = realization.relative
    first = first or subsets.positive(rel)
    second = second or subsets.standard_parabolic(rel, [1])
    ok = groups.subgroup_intersection_check(realization, first, second, cap=cap)
    return _finish(_plain("subgr-int", realization, ok, detail=str(first) + " / " + str(second)), start)


def check_nondegeneracy(realization, **options):
    """Every pair of relative roots in one of the non-degeneracy configurations."""
    start = time.monotonic()
    rel = realization.relative
    checks = {}
    for alpha, beta in itertools.permutations(rel.roots, 2):
        try:
            configuration, ok = realization.nondegeneracy_check(alpha, beta)
        except PreconditionError:
            continue
        checks[str(alpha) + "," + str(beta)] = configuration + ":" + _verdict(ok)
    ok = all(v.endswith("pass") for v in checks.values())
    return _finish(_plain("nondeg", realization, ok, counts={"pairs": len(checks)}, checks=checks), start)


def check_two_step(realization, seed=0, **options):
    start = time.monotonic()
    rel = realization.relative
    checks = {}
    for alpha in rel.roots:
        if rel.length_class[alpha] == "ultrashort":
            for name, ok in two_step_axioms(realization.two_step_module(alpha), seed=seed).items():
                checks[str(alpha) + ":" + name] = _verdict(ok)
    if not checks:
        raise UnsupportedError(realization.index.name + " has no ultrashort roots")
    ok = all(v == "pass" for v in checks.values())
    return _finish(_plain("two-step", realization, ok, counts={"identities": len(checks)}, checks=checks), start)


def check_commutator_containment(realization, cap=groups.DEFAULT_CAP, **options):
    start = time.monotonic()
    rel = realization.relative
    checks = {}
    for alpha, beta in itertools.combinations(rel.roots, 2):
        product = rel.inner(alpha, beta)
        if product * product == rel.inner(alpha, alpha) * rel.inner(beta, beta):
            continue
        checks[str(alpha) + "," + str(beta)] = _verdict(realization.chevalley_commutator_check(alpha, beta, cap=cap))
    ok = all(v == "pass" for v in checks.values())
    return _finish(_plain("commutator", realization, ok, counts={"pairs": len(checks)}, checks=checks), start)


def check_weyl_elements(realization, **options):
    """A Weyl element for every simple relative root; w^2 normalizes every root subgroup."""
    start = time.monotonic()
    rel = realization.relative
    checks = {}
    for alpha in rel.basis:
        w = realization.weyl_element(alpha)
        square = realization.multiply(w, w)
        inverse = realization.inverse(square)
        involution = True
        for beta in rel.roots:
            images = realization.ring.mat_mul(realization.ring.mat_mul(square[None], realization.generators(beta)),
                                              inverse[None])
            involution = involution and bool(realization.in_root_subgroup(beta, images).all())
        checks[str(alpha)] = _verdict(realization.reflects(w, alpha) and involution)
    ok = all(v == "pass" for v in checks.values())
    return _finish(_plain("weyl", realization, ok, counts={"roots": len(checks)}, checks=checks), start)


# One root per orbit

def orbit_representatives(realization, classes=None):
    """
    One relative root per Weyl orbit, the largest of each.
    @param classes: length classes to keep (all by default)
    @return: list of roots, highest first
    """
    rel = realization.relative
    seen = set()
    out = []
    for root in sorted(rel.roots, reverse=True):
        if root in seen or (classes is not None and rel.length_class[root] not in classes):
            continue
        seen |= rel.weyl_orbit([root])
        out.append(root)
    return out


def check_every_orbit(theorem, realization, ctx):
    """
    Runs a root-dependent checker on one root of every applicable orbit, sharing the context.
    @param theorem: a key of ROOT_THEOREMS
    @return: VerificationResult whose checks map each root to its outcome
    """
    start = time.monotonic()
    checker = THEOREMS[theorem]
    results = [checker(realization, alpha=alpha, ctx=ctx)
               for alpha in orbit_representatives(realization, ROOT_THEOREMS[theorem])]
    outcomes = [r.outcome for r in results]
    if "fail" in outcomes:
        outcome = "fail"
    elif "inconclusive" in outcomes:
        outcome = "inconclusive"
    else:
        outcome = "pass"
    instance = _instance(realization)
    instance["roots"] = [r.instance["root"] for r in results]
    checks = {r.instance["root"]: r.outcome + (" (" + r.detail + ")" if r.detail else "") for r in results}
    counts = dict(ctx.counts())
    counts["orbits"] = len(results)
    witness = next((r.counterexample for r in results if r.counterexample is not None), None)
    result = VerificationResult(theorem=theorem, instance=instance, mode=ctx.mode, outcome=outcome, counts=counts,
                                counterexample=witness, checks=checks)
    return _finish(result, start)


THEOREMS = {
    "long-norm": check_long_norm,
    "dbl-centzer": check_dbl_centzer,
    "cent-norm": check_cent_norm,
    "urad-cent": check_urad_cent,
    "diophantine": check_diophantine_identities,
    "cent-us": check_cent_us_table,
    "gauss": check_gauss,
    "subgr-int": check_subgroup_intersection,
    "nondeg": check_nondegeneracy,
    "two-step": check_two_step,
    "commutator": check_commutator_containment,
    "weyl": check_weyl_elements,
}

GROUP_THEOREMS = ("long-norm", "dbl-centzer", "cent-norm", "urad-cent", "diophantine")

# length classes each root-dependent theorem applies to (None: every class)
ROOT_THEOREMS = {"long-norm": ("long",), "dbl-centzer": None}


def run_theorem(theorem, realization, sampled=None, seed=0, cap=groups.DEFAULT_CAP, verbose=False, ctx=None):
    """
    Dispatches a theorem name to its checker. Root-dependent theorems run on every applicable root orbit.
    @return: VerificationResult
    """
    if theorem not in THEOREMS:
        raise ParameterError("unknown theorem " + repr(theorem) + "; choose from " + ", ".join(THEOREMS))
    if theorem in GROUP_THEOREMS:
        ctx = ctx or Context(realization, sampled=sampled, seed=seed, cap=cap, verbose=verbose)
        if theorem in ROOT_THEOREMS:
            return check_every_orbit(theorem, realization, ctx)
        return THEOREMS[theorem](realization, ctx=ctx)
    return THEOREMS[theorem](realization, cap=cap, seed=seed)
