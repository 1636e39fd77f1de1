"""
Finite point groups of realizations and the set algebra the theorem checkers are written in.

A GroupSet holds the sorted canonical codes (ring.encode) of a set of matrices of one realization. Sets produced by
generate() are subgroups; `complete` is False when the closure stopped at the cap, in which case the set is only a
lower bound and supports membership of produced elements and one-sided inclusions. Plain set products,
intersections and commutator sets are returned as sorted code arrays.
"""

from datetime import timedelta
import time

import numpy as np

from . import subsets
from .errors import CapExceededError, PreconditionError

DEFAULT_CAP = 2 * 10 ** 7
WORD_LENGTH = 40
CHUNK = 1 << 18


class GroupSet:
    """
    A finite set of matrices of one realization, stored as sorted int64 codes.
    """

    def __init__(self, realization, codes, complete=True, provenance=""):
        """
        @param realization: Realization the matrices belong to
        @param codes: iterable of canonical codes
        @param complete: False when the set is a truncated closure
        @param provenance: description of the generators
        """
        self._realization = realization
        self._codes = np.unique(np.asarray(codes, dtype=np.int64))
        self._complete = complete
        self._provenance = provenance
        self._notes = {}

    @property
    def realization(self):
        return self._realization

    @property
    def codes(self):
        return self._codes

    @property
    def complete(self):
        return self._complete

    @property
    def provenance(self):
        return self._provenance

    @property
    def notes(self):
        """Side results recorded while building the set (e.g. the product decomposition check)"""
        return self._notes

    def __len__(self):
        return len(self._codes)

    def matrices(self):
        return self._realization.ring.decode(self._codes, self._realization.size)

    def contains_codes(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        if not len(self._codes):
            return np.zeros(codes.shape, dtype=bool)
        positions = np.minimum(np.searchsorted(self._codes, codes), len(self._codes) - 1)
        return self._codes[positions] == codes

    def contains(self, matrices):
        """
        @param matrices: (f, N, N) or batch
        @return: boolean or boolean array
        """
        single = matrices.ndim == 3
        codes = self._realization.ring.encode(matrices[None] if single else matrices)
        found = self.contains_codes(codes)
        return bool(found[0]) if single else found

    def require_complete(self, operation):
        if not self._complete:
            raise PreconditionError(operation + " needs a complete set, " + self._provenance + " was truncated")

    def equals(self, other):
        """Two-sided equality, refused on truncated sets."""
        self.require_complete("equality")
        other_codes = other.codes if isinstance(other, GroupSet) else np.unique(other)
        if isinstance(other, GroupSet):
            other.require_complete("equality")
        return bool(np.array_equal(self._codes, other_codes))

    def subset_of(self, other):
        """One-sided inclusion; valid for a truncated self."""
        other_codes = other.codes if isinstance(other, GroupSet) else np.unique(other)
        return bool(np.isin(self._codes, other_codes).all())

    def as_dict(self):
        return {"order": len(self._codes), "complete": self._complete, "provenance": self._provenance}

    def __str__(self):
        return ("GroupSet of " + str(len(self._codes)) + " elements"
                + ("" if self._complete else " (truncated)") + ": " + self._provenance)


def _as_codes(value):
    if isinstance(value, GroupSet):
        return value.codes
    return np.unique(np.asarray(value, dtype=np.int64))


def generate(realization, gens, cap=DEFAULT_CAP, provenance="", verbose=False):
    """
    Closure of a generating set under multiplication, breadth first from the identity.
    @param realization: Realization
    @param gens: batch (k, f, N, N) of invertible matrices
    @param cap: largest number of elements to collect
    @param provenance: description of gens for reports
    @param verbose: prints one line per layer
    @return: GroupSet, incomplete when the cap was reached first
    """
    ring = realization.ring
    start = time.monotonic()
    identity = realization.identity()[None]
    if len(gens):
        gens = np.concatenate([gens, realization.inverse(gens)])
        gens = ring.decode(np.unique(ring.encode(gens)), realization.size)
    seen = ring.encode(identity)
    frontier = identity
    layer = 0
    while len(frontier) and len(gens):
        step = max(1, CHUNK // len(gens))
        fresh = []
        for lo in range(0, len(frontier), step):
            block = frontier[lo:lo + step]
            products = ring.mat_mul(block[:, None], gens[None]).reshape((-1,) + identity.shape[1:])
            fresh.append(np.unique(ring.encode(products)))
        fresh = np.setdiff1d(np.unique(np.concatenate(fresh)), seen, assume_unique=True)
        seen = np.union1d(seen, fresh)
        layer += 1
        if verbose:
            print("  layer " + str(layer) + ": " + str(len(seen)) + " elements ("
                  + str(timedelta(seconds=time.monotonic() - start)) + ")")
        if len(seen) > cap:
            return GroupSet(realization, seen, complete=False, provenance=provenance)
        frontier = ring.decode(fresh, realization.size)
    return GroupSet(realization, seen, complete=True, provenance=provenance)


def random_words(realization, gens, count, length=WORD_LENGTH, seed=0):
    """
    Seeded random products of generators and their inverses.
    @param count: number of words
    @param length: largest word length
    @return: batch (count, f, N, N)
    """
    rng = np.random.default_rng(seed)
    letters = np.concatenate([gens, realization.inverse(gens)])
    lengths = rng.integers(1, length + 1, size=count)
    out = np.broadcast_to(realization.identity(), (count,) + letters.shape[1:]).copy()
    for step in range(length):
        active = lengths > step
        picks = rng.integers(0, len(letters), size=int(active.sum()))
        out[active] = realization.multiply(out[active], letters[picks])
    return out


def points_of(realization, subset, with_L=False, cap=DEFAULT_CAP):
    """
    G_Sigma(K) (or G0_Sigma(K) with L) for a closed subset of the relative roots. For unipotent subsets the
    product decomposition |G_Sigma| = prod over Sigma minus 2 Sigma of |U_alpha| is recorded in notes.
    @param subset: closed RootSubset of realization.relative
    @return: GroupSet
    """
    if not subsets.is_closed(subset):
        raise PreconditionError("subset " + str(subset) + " is not closed")
    gens = [realization.generators(alpha) for alpha in subset]
    label = ("L u " if with_L else "") + "U_a for a in " + str(subset)
    if with_L:
        gens.append(realization.L_points(cap=cap))
    if gens:
        batch = np.concatenate(gens)
    else:
        batch = realization.identity()[None][:0]
    out = generate(realization, batch, cap=cap, provenance=label)
    if not with_L and subsets.is_unipotent(subset):
        expected = 1
        for alpha in subset:
            if any(beta.scaled(2) == alpha for beta in subset):
                continue
            expected *= len(realization.module_elements(alpha))
        out.notes["product_decomposition"] = bool(out.complete and len(out) == expected)
    return out


def point_group(realization, cap=DEFAULT_CAP, verbose=False):
    """<U_a(K) for all relative roots a, L(K)>, which is G(K) over semi-local rings."""
    gens = np.concatenate([realization.all_generators(), realization.L_points(cap=cap)])
    return generate(realization, gens, cap=cap, provenance="root subgroups and L", verbose=verbose)


def elementary_group(realization, cap=DEFAULT_CAP):
    """E_G(K) = <U_a(K) for all relative roots a>"""
    return generate(realization, realization.all_generators(), cap=cap, provenance="root subgroups")


def filter_group(realization, cap=DEFAULT_CAP):
    """
    Oracle group: every N x N matrix over the ring, filtered by the determinant and form conditions.
    """
    ring = realization.ring
    size = realization.size
    total = ring.order ** (size * size)
    if total > cap:
        raise CapExceededError("filtering " + str(total) + " matrices exceeds the cap " + str(cap))
    kept = []
    for lo in range(0, total, CHUNK):
        batch = ring.decode(np.arange(lo, min(total, lo + CHUNK), dtype=np.int64), size)
        kept.append(ring.encode(batch[realization.in_group(batch)]))
    return GroupSet(realization, np.concatenate(kept), provenance="determinant and form filter")


def centralizer(group, elements):
    """
    Elements of a complete group commuting with every given matrix.
    @param group: complete GroupSet
    @param elements: batch of matrices
    @return: GroupSet
    """
    group.require_complete("centralizer")
    realization = group.realization
    ring = realization.ring
    kept = []
    for lo in range(0, len(group), CHUNK):
        block = ring.decode(group.codes[lo:lo + CHUNK], realization.size)
        mask = np.ones(len(block), dtype=bool)
        for s in elements:
            mask &= np.all(ring.mat_mul(block, s) == ring.mat_mul(s, block), axis=(1, 2, 3))
        kept.append(group.codes[lo:lo + CHUNK][mask])
    return GroupSet(realization, np.concatenate(kept) if kept else [],
                    provenance="centralizer in " + group.provenance)


def set_product(realization, first, second, cap=DEFAULT_CAP):
    """
    {a b : a in first, b in second}
    @param first: GroupSet or code array
    @param second: GroupSet or code array
    @return: sorted code array
    """
    a_codes, b_codes = _as_codes(first), _as_codes(second)
    if len(a_codes) * len(b_codes) > cap:
        raise CapExceededError("set product of " + str(len(a_codes)) + " x " + str(len(b_codes))
                               + " elements exceeds the cap " + str(cap))
    ring = realization.ring
    size = realization.size
    right = ring.decode(b_codes, size)
    step = max(1, CHUNK // max(len(b_codes), 1))
    out = []
    for lo in range(0, len(a_codes), step):
        left = ring.decode(a_codes[lo:lo + step], size)
        products = ring.mat_mul(left[:, None], right[None]).reshape((-1,) + right.shape[1:])
        out.append(np.unique(ring.encode(products)))
    return np.unique(np.concatenate(out)) if out else np.zeros(0, dtype=np.int64)


def product_of(realization, *factors, cap=DEFAULT_CAP):
    """Set product of several factors, left to right."""
    current = _as_codes(factors[0])
    for factor in factors[1:]:
        current = set_product(realization, current, factor, cap=cap)
    return current


def commutator_set(realization, first, g):
    """{[a, g] : a in first} as sorted codes"""
    ring = realization.ring
    matrices = ring.decode(_as_codes(first), realization.size)
    comms = realization.commutator(matrices, np.broadcast_to(g, matrices.shape))
    return np.unique(ring.encode(comms))


def intersect(first, second):
    return np.intersect1d(_as_codes(first), _as_codes(second))


def _signed_part(subset, sign):
    system = subset.system
    positive = set(system.positive_roots())
    return subsets.RootSubset(system, [r for r in subset if (r in positive) == (sign > 0)])


def gauss_check(realization, subset=None, cap=DEFAULT_CAP):
    """
    Gauss decomposition G(K) = G_{F+}(K) G_{F-}(K) G_{F+}(K) L(K); for a closed subset Sigma the refined form
    G0_Sigma(K) = G_{Sigma_r n F+}(K) G_{Sigma n F-}(K) G_{Sigma n F+}(K) L(K).
    @param subset: closed RootSubset, or None for the whole system
    @return: boolean
    """
    if not realization.ring.is_semilocal():
        raise PreconditionError(realization.ring.spec + " is not semi-local")
    rel = realization.relative
    if subset is None:
        subset = subsets.RootSubset(rel, rel.roots)
    reductive, _ = subsets.decompose(subset)
    plus = points_of(realization, _signed_part(subset, 1), cap=cap)
    minus = points_of(realization, _signed_part(subset, -1), cap=cap)
    reductive_plus = points_of(realization, _signed_part(reductive, 1), cap=cap)
    levi = realization.ring.encode(realization.L_points(cap=cap))
    whole = points_of(realization, subset, with_L=True, cap=cap)
    for part in (plus, minus, reductive_plus, whole):
        part.require_complete("Gauss decomposition")
    product = product_of(realization, reductive_plus, minus, plus, levi, cap=cap)
    return whole.equals(product)


def subgroup_intersection_check(realization, first, second, cap=DEFAULT_CAP):
    """
    G0_S n G0_S' = G0_{S n S'} when S' is saturated, and G0_S n G_S' = G_{S n S'} when S' is unipotent; every
    applicable clause is checked.
    @return: boolean
    """
    if not realization.ring.is_local():
        raise PreconditionError(realization.ring.spec + " is not local")
    kind = subsets.classify(second)
    subsets.classify(first)
    if not (kind.saturated or kind.unipotent):
        raise PreconditionError("second subset " + str(second) + " is neither saturated nor unipotent")
    common = first.intersection(second)
    left = points_of(realization, first, with_L=True, cap=cap)
    ok = True
    if kind.saturated:
        right = points_of(realization, second, with_L=True, cap=cap)
        target = points_of(realization, common, with_L=True, cap=cap)
        for part in (left, right, target):
            part.require_complete("subgroup intersection")
        ok = ok and target.equals(intersect(left, right))
    if kind.unipotent:
        right = points_of(realization, second, cap=cap)
        target = points_of(realization, common, cap=cap)
        for part in (left, right, target):
            part.require_complete("subgroup intersection")
        ok = ok and target.equals(intersect(left, right))
    return ok
