"""
Closed subsets of root systems and their classes.

A subset S of a root system F is closed if (S + S) n F is contained in S. A closed set is

    unipotent   if it contains no pair of opposite roots,
    a subsystem if S = -S,
    parabolic   if F = S u (-S),
    saturated   if S = F n R_{>=0} S.

Every closed S splits uniquely as S_r u S_u with S_r = S n (-S) a closed subsystem and S_u = S minus (-S)
unipotent. The functions below work on any RootSet (absolute or relative); saturation is decided by exact cone
membership (cone.py).
"""

from dataclasses import dataclass
import itertools
import random

from . import cone
from .errors import PreconditionError

EXHAUSTIVE_LIMIT = 14


class RootSubset:
    """
    A subset of the roots of one system.
    """

    def __init__(self, system, members):
        """
        @param system: RootSet the members belong to
        @param members: iterable of roots of system
        """
        self._system = system
        self._members = frozenset(members)
        for root in self._members:
            if root not in system:
                raise PreconditionError("root " + str(root) + " is not in " + system.label())

    @property
    def system(self):
        return self._system

    @property
    def members(self):
        """frozenset of roots"""
        return self._members

    def __contains__(self, root):
        return root in self._members

    def __len__(self):
        return len(self._members)

    def __iter__(self):
        return iter(sorted(self._members))

    def __eq__(self, other):
        return isinstance(other, RootSubset) and self._members == other._members

    def __hash__(self):
        return hash(self._members)

    def negative(self):
        return RootSubset(self._system, [-r for r in self._members])

    def intersection(self, other):
        return RootSubset(self._system, self._members & other.members)

    def bitmask(self):
        mask = 0
        for root in self._members:
            mask |= 1 << self._system.index_of(root)
        return mask

    def __str__(self):
        return "{" + ", ".join(str(r) for r in self) + "}"


@dataclass(frozen=True)
class Classification:
    unipotent: bool
    parabolic: bool
    saturated: bool
    subsystem: bool

    def as_dict(self):
        return {"unipotent": self.unipotent, "parabolic": self.parabolic,
                "saturated": self.saturated, "subsystem": self.subsystem}


def is_closed(subset):
    """
    @param subset: RootSubset
    @return: True iff every sum of two members that is a root is a member
    """
    system = subset.system
    members = subset.members
    for a, b in itertools.combinations_with_replacement(members, 2):
        s = a + b
        if s in system and s not in members:
            return False
    return True


def closure(subset):
    """
    Smallest closed superset, by fixpoint iteration of pairwise sums.
    @param subset: RootSubset
    @return: RootSubset
    """
    system = subset.system
    members = set(subset.members)
    frontier = list(members)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(members):
                s = a + b
                if s in system and s not in members:
                    members.add(s)
                    fresh.append(s)
        frontier = fresh
    return RootSubset(system, members)


def is_unipotent(subset):
    return not any(-r in subset.members for r in subset.members)


def is_subsystem(subset):
    return all(-r in subset.members for r in subset.members)


def is_parabolic(subset):
    return all(r in subset.members or -r in subset.members for r in subset.system.roots)


def is_saturated(subset):
    """
    Exact saturation test: no root outside the subset lies in its nonnegative cone.
    @param subset: RootSubset
    @return: boolean
    """
    generators = [subset.system.coefficients(r) for r in subset.members]
    for gamma in subset.system.roots:
        if gamma in subset.members:
            continue
        if cone.in_cone(generators, subset.system.coefficients(gamma)):
            return False
    return True


def _require_closed(subset):
    if not is_closed(subset):
        raise PreconditionError("subset " + str(subset) + " is not closed")


def classify(subset):
    """
    Classifies a closed subset.
    @param subset: closed RootSubset
    @return: Classification
    """
    _require_closed(subset)
    return Classification(unipotent=is_unipotent(subset),
                          parabolic=is_parabolic(subset),
                          saturated=is_saturated(subset),
                          subsystem=is_subsystem(subset))


def decompose(subset):
    """
    Splits a closed subset into its reductive and unipotent parts.
    @param subset: closed RootSubset
    @return: (S_r, S_u)
    """
    _require_closed(subset)
    members = subset.members
    reductive = frozenset(r for r in members if -r in members)
    return RootSubset(subset.system, reductive), RootSubset(subset.system, members - reductive)


def splitting_compatible(reductive, unipotent):
    """True iff (S_r + S_u) n F is contained in S_u."""
    system = reductive.system
    for a in reductive.members:
        for b in unipotent.members:
            s = a + b
            if s in system and s not in unipotent.members:
                return False
    return True


# Standard subsets and enumeration

def positive(system):
    return RootSubset(system, system.positive_roots())


def standard_parabolic(system, J):
    """
    (F+ + ZJ) n F for a set J of basis indices (1-based).
    @param system: RootSet
    @param J: iterable of basis indices
    @return: RootSubset
    """
    outside = [i for i in range(len(system.basis)) if i + 1 not in set(J)]
    members = []
    for root in system.roots:
        coeffs = system.coefficients(root)
        if all(c >= 0 for c in coeffs) or all(coeffs[i] == 0 for i in outside):
            members.append(root)
    return RootSubset(system, members)


def _apply_reflection(system, alpha, members):
    return frozenset(system.reflect(alpha, r) for r in members)


def is_parabolic_by_weyl(subset):
    """
    Searches the Weyl orbits of the standard parabolic sets for the subset.
    @param subset: RootSubset
    @return: True iff w S = (F+ + ZJ) n F for some w and J
    """
    system = subset.system
    target = subset.members
    if len(target) < len(system.roots) // 2:
        return False
    size = len(system.basis)
    for count in range(size + 1):
        for J in itertools.combinations(range(1, size + 1), count):
            start = standard_parabolic(system, J).members
            if len(start) != len(target):
                continue
            seen = {start}
            frontier = [start]
            while frontier:
                fresh = []
                for members in frontier:
                    if members == target:
                        return True
                    for alpha in system.basis:
                        image = _apply_reflection(system, alpha, members)
                        if image not in seen:
                            seen.add(image)
                            fresh.append(image)
                frontier = fresh
    return False


def _sum_table(system):
    roots = system.roots
    table = []
    for i, a in enumerate(roots):
        for j in range(i, len(roots)):
            s = a + roots[j]
            if s in system:
                table.append((i, j, system.index_of(s)))
    return table


def enumerate_closed(system, limit=EXHAUSTIVE_LIMIT):
    """
    Lists every closed subset of a small root system.
    @param system: RootSet with at most `limit` roots
    @param limit: largest root count accepted
    @return: list of RootSubset, ordered by bitmask
    """
    size = len(system.roots)
    if size > limit:
        raise PreconditionError("exhaustive enumeration needs |F| <= " + str(limit) + ", got " + str(size))
    table = _sum_table(system)
    out = []
    for mask in range(1 << size):
        closed = True
        for i, j, k in table:
            if (mask >> i) & 1 and (mask >> j) & 1 and not (mask >> k) & 1:
                closed = False
                break
        if closed:
            out.append(RootSubset(system, [system.roots[i] for i in range(size) if (mask >> i) & 1]))
    return out


def sample_closed(system, count, seed=0):
    """
    Closures of seeded random subsets, without repetition.
    @param system: RootSet
    @param count: number of draws
    @param seed: random seed
    @return: list of RootSubset
    """
    rng = random.Random(seed)
    roots = list(system.roots)
    seen = set()
    out = []
    for _ in range(count):
        k = rng.randint(0, min(4, len(roots)))
        subset = closure(RootSubset(system, rng.sample(roots, k)))
        if subset.members not in seen:
            seen.add(subset.members)
            out.append(subset)
    return out


def closed_subsets(system, count=200, seed=0):
    """Exhaustive list for small systems, seeded sample otherwise."""
    if len(system.roots) <= EXHAUSTIVE_LIMIT:
        return enumerate_closed(system)
    return sample_closed(system, count, seed)


def atlas(system, count=200, seed=0):
    """
    Classification records of the closed subsets of a system (bitmask and class flags).
    @return: list of dicts
    """
    records = []
    for subset in closed_subsets(system, count, seed):
        record = {"bitmask": subset.bitmask(), "size": len(subset)}
        record.update(classify(subset).as_dict())
        records.append(record)
    return records


# Behaviour under the folding map

def _closed_in_absolute(fm, members):
    return is_closed(RootSubset(fm.base, members))


def _saturated_preimage(fm, subset, pre0):
    """
    Saturation of u^-1(S u {0}). A root g outside pre0 lies outside its cone as soon as u(g) lies outside the
    cone of S, because u is linear; only the remaining roots need a cone test in the absolute system.
    """
    base = fm.base
    relative = fm.relative
    rel_generators = [relative.coefficients(r) for r in subset.members]
    abs_generators = [base.coefficients(r) for r in pre0]
    verdicts = {}
    for gamma in base.roots:
        if gamma in pre0:
            continue
        image = fm.image(gamma)
        if image not in verdicts:
            verdicts[image] = cone.in_cone(rel_generators, relative.coefficients(image))
        if verdicts[image] and cone.in_cone(abs_generators, base.coefficients(gamma)):
            return False
    return True


def preimage_class_details(fm, subset):
    """
    Evaluates, for every class held by a closed subset of the relative system, the same class on its preimage.
    @param fm: FoldingMap
    @param subset: closed RootSubset of fm.relative
    @return: dict class name -> boolean
    """
    _require_closed(subset)
    cls = classify(subset)
    pre = fm.preimage(subset.members)
    pre0 = frozenset(pre) | frozenset(fm.kernel)
    details = {"closed": _closed_in_absolute(fm, pre0)}
    absolute = RootSubset(fm.base, pre0)
    if cls.unipotent:
        details["unipotent"] = is_unipotent(RootSubset(fm.base, pre))
    if cls.subsystem:
        details["subsystem"] = details["closed"] and is_subsystem(absolute)
        hull = closure(RootSubset(fm.base, pre))
        details["closure_subsystem"] = is_subsystem(hull)
    if cls.parabolic:
        details["parabolic"] = is_parabolic(absolute)
    if cls.saturated:
        details["saturated"] = _saturated_preimage(fm, subset, pre0)
    return details


def preimage_class_check(fm, subset):
    """
    @param fm: FoldingMap
    @param subset: closed RootSubset of fm.relative
    @return: True iff each class held by the subset is held by the corresponding preimage
    """
    return all(preimage_class_details(fm, subset).values())
