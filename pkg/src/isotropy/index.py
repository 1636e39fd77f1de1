"""
Tits indices (base system, Gamma, J), the folding map u and the relative root system.

FOLDING
=======

Gamma is a group of Dynkin diagram automorphisms of the base system and J a Gamma-invariant set of simple roots
(the circled nodes). A root b = sum c_i a_i is sent to the vector of orbit sums

    u(b) = ( sum_{i in O_1} c_i, ..., sum_{i in O_r} c_i )

over the Gamma-orbits O_1, ..., O_r on J, ordered by their smallest node. The non-zero images form the relative
system, whose inner product comes from averaging each simple root over Gamma and projecting away the span of the
simple roots outside J. Its type is BC when some image v has 2v among the images and is otherwise recognized from
its Cartan matrix.

NAMES
=====

Classical indices are written 2A(n=4,r=2,d=1) or 2A(4,2,1); B takes (n, r). Exceptional indices use the table
names of tables.py, e.g. E_{8,2}^{66}, with braces optional.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import re

import sympy

from . import roots
from . import tables
from .errors import ConstructionError, ParameterError, SearchBudgetError, WiringError
from .roots import Root, RootSet

DEFAULT_BUDGET = 10 ** 7
CLASSICAL_FAMILIES = ("1A", "2A", "B", "C", "1D", "2D")
GRID_LIMITS = {"1A": 11, "2A": 9, "B": 6, "C": 8, "1D": 8, "2D": 8}


# Permutations of the nodes 1..l, stored as tuples p with p[i-1] the image of i

def _identity(size):
    return tuple(range(1, size + 1))


def _compose(p, q):
    """(p o q)(i) = p(q(i))"""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def _inverse(p):
    out = [0] * len(p)
    for i, image in enumerate(p):
        out[image - 1] = i + 1
    return tuple(out)


def _from_mapping(size, mapping):
    return tuple(mapping.get(i, i) for i in range(1, size + 1))


def _group_closure(generators, size):
    group = {_identity(size)}
    frontier = list(group)
    while frontier:
        fresh = []
        for g in frontier:
            for h in generators:
                product = _compose(h, g)
                if product not in group:
                    group.add(product)
                    fresh.append(product)
        frontier = fresh
    return frozenset(group)


def _is_diagram_automorphism(cartan, perm):
    size = len(cartan)
    return all(cartan[perm[i] - 1][perm[j] - 1] == cartan[i][j] for i in range(size) for j in range(size))


class TitsIndex:
    """
    An irreducible Tits index over a split-adjoint base system.
    """

    def __init__(self, base, gamma, J, name, family=None, params=None):
        """
        @param base: RootSystem (reduced, irreducible)
        @param gamma: iterable of permutation tuples generating Gamma
        @param J: iterable of circled simple-root indices (1-based)
        @param name: display name
        @param family: classical family or None for exceptional indices
        @param params: (n, r, d) for classical indices
        """
        size = len(base.basis)
        cartan = base.cartan_matrix()
        generators = [tuple(g) for g in gamma]
        for g in generators:
            if sorted(g) != list(range(1, size + 1)) or not _is_diagram_automorphism(cartan, g):
                raise ConstructionError(str(g) + " is not a diagram automorphism of " + base.label())
        self._base = base
        self._generators = tuple(generators)
        self._group = _group_closure(generators, size)
        self._J = frozenset(J)
        if not self._J or not self._J <= set(range(1, size + 1)):
            raise ConstructionError("J = " + str(sorted(self._J)) + " is not a non-empty set of nodes of "
                                    + base.label())
        for g in self._group:
            if {g[i - 1] for i in self._J} != self._J:
                raise ConstructionError("J = " + str(sorted(self._J)) + " is not Gamma-invariant")
        self._name = name
        self._family = family
        self._params = params

    @property
    def base(self):
        return self._base

    @property
    def generators(self):
        return self._generators

    @property
    def group(self):
        """Gamma, as a frozenset of permutation tuples"""
        return self._group

    @property
    def J(self):
        return self._J

    @property
    def name(self):
        return self._name

    @property
    def family(self):
        return self._family

    @property
    def params(self):
        return self._params

    def orbits(self):
        """Gamma-orbits on J as sorted tuples, ordered by smallest node."""
        seen = set()
        out = []
        for i in sorted(self._J):
            if i in seen:
                continue
            orbit = tuple(sorted({g[i - 1] for g in self._group}))
            seen.update(orbit)
            out.append(orbit)
        return out

    def relative_rank(self):
        return len(self.orbits())

    def __eq__(self, other):
        return (isinstance(other, TitsIndex) and self._base.label() == other._base.label()
                and self._J == other._J and self._group == other._group)

    def __hash__(self):
        return hash((self._base.label(), self._J, self._group))

    def __str__(self):
        return (self._name + ": base " + self._base.label() + ", |Gamma| = " + str(len(self._group))
                + ", J = " + str(sorted(self._J)))


class RelativeSystem(RootSet):
    """
    The image of the folding map. Roots are vectors of orbit sums, which are also their coefficients in the
    relative basis.
    """

    def __init__(self, vectors, gram):
        """
        @param vectors: set of non-zero Roots (orbit-sum vectors)
        @param gram: r x r matrix of Fractions, the inner product on the relative basis
        """
        self._gram = gram
        rank = len(gram)
        present = set(vectors)
        doubled = any(v.scaled(2) in present for v in present)
        basis = [Root(tuple(1 if j == i else 0 for j in range(rank))) for i in range(rank)]
        super().__init__("BC" if doubled else "?", rank, present, basis)
        cartan = self.cartan_matrix()
        type_label, recognized_rank = roots.recognize(roots.dynkin_diagram(cartan))
        if doubled:
            if type_label not in ("A", "B") or recognized_rank != rank:
                raise WiringError("relative basis of a BC system has type " + type_label)
            expected = len(roots.build("BC", rank).roots)
        else:
            if type_label == "B" and rank == 2 and self.length_class[basis[0]] == "short":
                type_label = "C"
            self._type_label = type_label
            expected = len(roots.build(type_label, rank).roots)
        if expected != len(self.roots):
            raise WiringError("relative system of type " + self.label() + " has " + str(len(self.roots))
                              + " roots, expected " + str(expected))

    def inner(self, a, b):
        gram = self._gram
        return sum(a.coords[i] * gram[i][j] * b.coords[j]
                   for i in range(len(gram)) for j in range(len(gram))
                   if a.coords[i] and b.coords[j])

    def coefficients(self, root):
        return root.coords

    @property
    def gram(self):
        return self._gram

    def __str__(self):
        return "RelativeSystem " + self.label() + " (" + str(len(self.roots)) + " roots)"


def _relative_gram(index):
    """
    Inner products of the Gamma-averaged simple roots of each orbit after orthogonal projection away from the
    simple roots outside J, computed exactly in simple-root coordinates.
    """
    base = index.base
    size = len(base.basis)
    gram = sympy.Matrix(size, size, lambda i, j: base.inner(base.basis[i], base.basis[j]))
    outside = [k for k in range(size) if k + 1 not in index.J]
    projected = []
    for orbit in index.orbits():
        vector = sympy.Matrix(size, 1, lambda i, _: sympy.Rational(1, len(orbit)) if i + 1 in orbit else 0)
        if outside:
            block = gram.extract(outside, outside)
            rhs = (gram * vector).extract(outside, [0])
            solution = block.LUsolve(rhs)
            for pos, k in enumerate(outside):
                vector[k] -= solution[pos]
        projected.append(vector)
    out = []
    for p in projected:
        row = []
        for q in projected:
            value = sympy.Rational((p.T * gram * q)[0, 0])
            row.append(Fraction(int(value.p), int(value.q)))
        out.append(row)
    return out


class FoldingMap:
    """
    The map u from the base roots to the relative roots (or zero), with its fibers and kernel.
    """

    def __init__(self, index):
        self._index = index
        base = index.base
        orbits = index.orbits()
        self._image = {}
        for root in base.roots:
            coefficients = base.coefficients(root)
            self._image[root] = Root(tuple(sum(coefficients[i - 1] for i in orbit) for orbit in orbits))
        self._relative = RelativeSystem({v for v in self._image.values() if not v.is_zero()},
                                        _relative_gram(index))
        fibers = {}
        kernel = []
        for root, image in self._image.items():
            if image.is_zero():
                kernel.append(root)
            else:
                fibers.setdefault(image, []).append(root)
        self._fibers = {image: frozenset(members) for image, members in fibers.items()}
        self._kernel = frozenset(kernel)
        self.fiber_sizes()

    @property
    def index(self):
        return self._index

    @property
    def base(self):
        return self._index.base

    @property
    def relative(self):
        return self._relative

    @property
    def kernel(self):
        """u^-1(0), the roots of the anisotropic kernel"""
        return self._kernel

    def image(self, root):
        """u(root), the zero vector for kernel roots"""
        return self._image[root]

    def fiber(self, relative_root):
        return self._fibers[relative_root]

    def preimage(self, members):
        out = set()
        for alpha in members:
            out |= self._fibers[alpha]
        return frozenset(out)

    def fiber_sizes(self):
        """
        Fiber size of each relative length class, by increasing length.
        @return: tuple of integers
        """
        sizes = {}
        for alpha in self._relative.roots:
            sizes.setdefault(self._relative.length_class[alpha], set()).add(len(self._fibers[alpha]))
        out = []
        for name in self._relative.length_classes():
            if len(sizes[name]) != 1:
                raise WiringError("fiber sizes " + str(sorted(sizes[name])) + " vary on the " + name
                                  + " roots of " + self._index.name)
            out.append(next(iter(sizes[name])))
        return tuple(out)

    def relative_type(self):
        return self._relative.label()

    def __str__(self):
        return "FoldingMap " + self._index.name + " -> " + self.relative_type()


@lru_cache(maxsize=None)
def fold(index):
    """
    @param index: TitsIndex
    @return: FoldingMap
    """
    return FoldingMap(index)


def kernel_type(fm):
    """
    Dynkin type of u^-1(0): the subdiagram on the simple roots outside J.
    @param fm: FoldingMap (or TitsIndex)
    @return: type string such as 'A_1 + D_4', or '∅'
    """
    index = getattr(fm, "index", fm)
    diagram = roots.dynkin_diagram(index.base.cartan_matrix())
    outside = [i for i in diagram.nodes if i not in index.J]
    return roots.format_type(roots.decompose(diagram.subgraph(outside).copy()))


def _act(base, perm, root):
    """Image of a root under the linear map permuting simple roots by perm."""
    coefficients = base.coefficients(root)
    image = [0] * len(coefficients)
    for i, c in enumerate(coefficients):
        image[perm[i] - 1] = c
    return base.from_coefficients(image)


def outer_aut_order(index):
    """
    Counts diagram automorphisms f of the base system with u o f = u on every root.
    @param index: TitsIndex
    @return: integer
    """
    fm = fold(index)
    base = index.base
    size = len(base.basis)
    count = 0
    for mapping in roots.diagram_automorphisms(roots.dynkin_diagram(base.cartan_matrix())):
        perm = _from_mapping(size, mapping)
        if all(fm.image(_act(base, perm, root)) == fm.image(root) for root in base.roots):
            count += 1
    return count


def describe(index):
    """
    Summary of a folded index for reports.
    @return: dict
    """
    fm = fold(index)
    return {"index": index.name,
            "base": index.base.label(),
            "gamma_order": len(index.group),
            "J": sorted(index.J),
            "orbits": [list(o) for o in index.orbits()],
            "relative": fm.relative_type(),
            "relative_classes": fm.relative.length_classes(),
            "kernel": kernel_type(fm),
            "fibers": list(fm.fiber_sizes()),
            "kernel_size": len(fm.kernel),
            "out": outer_aut_order(index)}


# Constructors

def _power_of_two(d):
    return d >= 1 and d & (d - 1) == 0


def _require(condition, name, inequality):
    if not condition:
        raise ParameterError(name + " violates " + inequality)


def classical_name(family, n, r, d=1):
    if family == "B":
        return "B(n=%d,r=%d)" % (n, r)
    return "%s(n=%d,r=%d,d=%d)" % (family, n, r, d)


def make_classical(family, n, r, d=1):
    """
    Builds an index of one of the six classical families.
    @param family: 1A, 2A, B, C, 1D or 2D
    @param n: rank of the base system
    @param r: relative rank
    @param d: index of the division algebra (ignored for B)
    @return: TitsIndex
    """
    if family not in CLASSICAL_FAMILIES:
        raise ConstructionError("unknown classical family " + repr(family))
    name = classical_name(family, n, r, d)
    _require(n >= 1 and r >= 1 and d >= 1, name, "n, r, d >= 1")
    flip = None
    if family == "1A":
        _require(d * (r + 1) == n + 1, name, "d(r+1) = n+1")
        base = roots.build("A", n)
        J = [k * d for k in range(1, r + 1)]
    elif family == "2A":
        _require(n >= 2, name, "n >= 2")
        _require((n + 1) % d == 0, name, "d | n+1")
        _require(2 * r * d <= n + 1, name, "2rd <= n+1")
        base = roots.build("A", n)
        if 2 * r * d <= n:
            J = [k * d for k in range(1, r + 1)] + [n + 1 - k * d for k in range(1, r + 1)]
        else:
            J = [k * d for k in range(1, (n + 1) // d)]
        flip = {i: n + 1 - i for i in range(1, n + 1)}
    elif family == "B":
        _require(d == 1, name, "d = 1")
        _require(r <= n, name, "r <= n")
        base = roots.build("B", n)
        J = list(range(1, r + 1))
    elif family == "C":
        _require(_power_of_two(d) and (2 * n) % d == 0, name, "d = 2^k | 2n")
        _require(r * d <= n, name, "rd <= n")
        _require(d != 1 or r == n, name, "n = r in the case d = 1")
        base = roots.build("C", n)
        J = [k * d for k in range(1, r + 1)]
    else:
        _require(n >= 3, name, "n >= 3")
        _require(_power_of_two(d) and (2 * n) % d == 0, name, "d = 2^k | 2n")
        base = roots.build("D", n)
        if family == "1D":
            _require(r * d <= n, name, "rd <= n")
            _require(r * d != n - 1, name, "rd != n-1")
            J = [k * d for k in range(1, r + 1)]
        else:
            _require(r * d <= n - 1, name, "rd <= n-1")
            if r * d <= n - 2:
                J = [k * d for k in range(1, r + 1)]
            else:
                J = [k * d for k in range(1, r)] + [n - 1, n]
            flip = {n - 1: n, n: n - 1}
    gamma = [_from_mapping(n, flip)] if flip else []
    return TitsIndex(base, gamma, J, name, family=family, params=(n, r, d))


def _exceptional_generators(row, order):
    if order == 1:
        return []
    if row.base == "E" and row.rank == 6 and order == 2:
        return [_from_mapping(6, {1: 6, 6: 1, 3: 5, 5: 3})]
    if row.base == "D" and row.rank == 4:
        triality = _from_mapping(4, {1: 3, 3: 4, 4: 1})
        flip = _from_mapping(4, {3: 4, 4: 3})
        if order == 3:
            return [triality]
        if order == 6:
            return [triality, flip]
    raise ConstructionError("no group of order " + str(order) + " on " + row.base + "_" + str(row.rank))


def make_exceptional(name):
    """
    Builds an exceptional index from its table name.
    @param name: e.g. 'E_{8,2}^{66}' (braces optional)
    @return: TitsIndex
    """
    key = tables.name_key(name)
    row = tables.EXCEPTIONAL_BY_NAME.get(key)
    if row is None:
        raise ConstructionError("unknown exceptional index " + repr(name))
    canonical = next(n for n in row.names if tables.name_key(n) == key)
    base = roots.build(row.base, row.rank)
    gamma = _exceptional_generators(row, tables.gamma_kind(canonical))
    return TitsIndex(base, gamma, row.J, canonical)


_CLASSICAL = re.compile(r"^(1A|2A|B|C|1D|2D)\((.*)\)$")


def parse_index(text):
    """
    Builds an index from a classical or exceptional name.
    @param text: '2A(n=4,r=2,d=1)', '2A(4,2,1)', 'B(3,1)' or a table name
    @return: TitsIndex
    """
    text = text.strip()
    match = _CLASSICAL.match(text.replace(" ", ""))
    if not match:
        return make_exceptional(text)
    family, args = match.groups()
    values = {"d": 1}
    positional = ["n", "r", "d"]
    for pos, arg in enumerate(a for a in args.split(",") if a):
        key, sep, value = arg.partition("=")
        if not sep:
            key, value = (positional[pos] if pos < 3 else "?"), arg
        if key not in positional or not value.lstrip("-").isdigit():
            raise ConstructionError("cannot parse index name " + repr(text))
        values[key] = int(value)
    if "n" not in values or "r" not in values:
        raise ConstructionError("index name " + repr(text) + " needs n and r")
    return make_classical(family, values["n"], values["r"], values["d"])


def classical_grid(family, n_max):
    """
    All admissible parameters of a classical family with n <= n_max.
    @return: list of (n, r, d)
    """
    out = []
    for n in range(1, n_max + 1):
        for d in range(1, 2 * n + 1):
            for r in range(1, n + 1):
                try:
                    make_classical(family, n, r, d)
                except ParameterError:
                    continue
                out.append((n, r, d))
    return out


# Equivalence

@dataclass
class EquivalenceResult:
    status: str
    witness: dict = None
    nodes: int = 0
    strict: bool = False
    detail: str = ""

    @property
    def equivalent(self):
        return self.status == "equivalent"

    def as_dict(self):
        return {"status": self.status, "witness": self.witness, "nodes": self.nodes,
                "strict": self.strict, "detail": self.detail}


def _search_order(cartan):
    """Nodes in breadth-first order along the diagram, so each new node meets assigned neighbours."""
    size = len(cartan)
    order = []
    for start in range(1, size + 1):
        if start in order:
            continue
        queue = [start]
        order.append(start)
        while queue:
            i = queue.pop(0)
            for j in range(1, size + 1):
                if j not in order and cartan[i - 1][j - 1] != 0:
                    order.append(j)
                    queue.append(j)
    return order


def _orbit_lookup(index):
    return {i: k for k, orbit in enumerate(index.orbits()) for i in orbit}


def _check_assignment(first, second, phi, strict):
    """
    Verifies a simple-root bijection phi: u2 o phi = psi o u1 on all roots, where psi permutes the orbits.
    @return: witness dict, or None
    """
    orbits1 = first.orbits()
    lookup2 = _orbit_lookup(second)
    psi = [lookup2[phi[orbit[0]]] for orbit in orbits1]
    fm1 = fold(first)
    fm2 = fold(second)
    size = len(phi)
    by_coefficients = {second.base.coefficients(r): r for r in second.base.roots}
    for root in first.base.roots:
        coefficients = first.base.coefficients(root)
        mapped = [0] * size
        for i, c in enumerate(coefficients):
            mapped[phi[i + 1] - 1] = c
        target = by_coefficients.get(tuple(mapped))
        if target is None:
            return None
        image = fm1.image(root).coords
        moved = [0] * len(image)
        for k, c in enumerate(image):
            moved[psi[k]] = c
        if tuple(moved) != fm2.image(target).coords:
            return None
    rel1, rel2 = fm1.relative, fm2.relative
    for a in range(len(psi)):
        for b in range(len(psi)):
            if rel1.cartan_integer(rel1.basis[a], rel1.basis[b]) != \
                    rel2.cartan_integer(rel2.basis[psi[a]], rel2.basis[psi[b]]):
                return None
    if strict:
        perm = _from_mapping(size, phi)
        inverse = _inverse(perm)
        conjugated = {_compose(perm, _compose(g, inverse)) for g in first.group}
        if conjugated != set(second.group):
            return None
    return {"phi": {str(i): phi[i] for i in sorted(phi)},
            "psi": {str(k + 1): psi[k] + 1 for k in range(len(psi))}}


def equivalent(first, second, budget=DEFAULT_BUDGET, strict=False):
    """
    Searches for isomorphisms phi of the base systems and psi of the relative systems with u2 o phi = psi o u1,
    by backtracking over simple-root images that preserve Cartan integers, circled nodes and orbits.
    @param first: TitsIndex
    @param second: TitsIndex
    @param budget: maximal number of search nodes
    @param strict: also require phi Gamma1 phi^-1 = Gamma2 (isomorphism of indices)
    @return: EquivalenceResult with status equivalent, not_equivalent or inconclusive
    """
    cartan1 = first.base.cartan_matrix()
    cartan2 = second.base.cartan_matrix()
    size = len(cartan1)
    orbit_sizes = sorted(len(o) for o in first.orbits()) == sorted(len(o) for o in second.orbits())
    if (size != len(cartan2) or len(first.base.roots) != len(second.base.roots)
            or len(first.J) != len(second.J) or not orbit_sizes):
        return EquivalenceResult("not_equivalent", strict=strict, detail="invariants differ")
    J1, J2 = first.J, second.J
    orbit1, orbit2 = _orbit_lookup(first), _orbit_lookup(second)
    length1 = {i: len(o) for o in first.orbits() for i in o}
    length2 = {i: len(o) for o in second.orbits() for i in o}
    order = _search_order(cartan1)
    phi = {}
    used = set()
    counter = [0]

    def consistent(node, candidate):
        if (node in J1) != (candidate in J2):
            return False
        if node in J1 and length1[node] != length2[candidate]:
            return False
        for prev, image in phi.items():
            if cartan1[node - 1][prev - 1] != cartan2[candidate - 1][image - 1]:
                return False
            if cartan1[prev - 1][node - 1] != cartan2[image - 1][candidate - 1]:
                return False
            if node in J1 and prev in J1 and (orbit1[node] == orbit1[prev]) != (orbit2[candidate] == orbit2[image]):
                return False
        return True

    def search(position):
        counter[0] += 1
        if counter[0] > budget:
            raise SearchBudgetError("node budget " + str(budget) + " exhausted")
        if position == size:
            return _check_assignment(first, second, phi, strict)
        node = order[position]
        for candidate in range(1, size + 1):
            if candidate in used or not consistent(node, candidate):
                continue
            phi[node] = candidate
            used.add(candidate)
            witness = search(position + 1)
            if witness is not None:
                return witness
            del phi[node]
            used.discard(candidate)
        return None

    try:
        witness = search(0)
    except SearchBudgetError as error:
        return EquivalenceResult("inconclusive", nodes=counter[0], strict=strict, detail=str(error))
    status = "equivalent" if witness is not None else "not_equivalent"
    return EquivalenceResult(status, witness, counter[0], strict)


def isomorphic(first, second, budget=DEFAULT_BUDGET):
    """Equivalence whose base isomorphism also conjugates the *-actions onto each other."""
    return equivalent(first, second, budget, strict=True)


# Table verification

def _compare(expected, computed):
    mismatches = []
    if not roots.same_type(expected["relative"], computed["relative"]):
        mismatches.append("relative")
    if not roots.same_type(expected["kernel"], computed["kernel"]):
        mismatches.append("kernel")
    if tuple(expected["fibers"]) != tuple(computed["fibers"]):
        mismatches.append("fibers")
    return mismatches


def _partition_check(fm):
    total = sum(len(fm.fiber(a)) for a in fm.relative.roots) + len(fm.kernel)
    return total == len(fm.base.roots) and fm.relative.rank == fm.index.relative_rank()


def check_classical(family, n, r, d):
    """
    Recomputes one classical index and diffs it against the closed forms.
    @return: report record (dict)
    """
    index = make_classical(family, n, r, d)
    fm = fold(index)
    expected = tables.expected_classical(family, n, r, d)
    computed = {"relative": fm.relative_type(), "kernel": kernel_type(fm),
                "fibers": list(fm.fiber_sizes()), "out": outer_aut_order(index)}
    mismatches = _compare(expected, computed)
    record = {"index": index.name, "family": family,
              "expected": {k: list(v) if isinstance(v, tuple) else v for k, v in expected.items() if k != "branch"},
              "computed": computed}
    if family == "1D":
        record["out_matches_prose"] = expected["out"] == computed["out"]
    elif expected["out"] != computed["out"]:
        mismatches.append("out")
    if expected["branch"]:
        record["branch"] = expected["branch"]
    if not _partition_check(fm):
        mismatches.append("partition")
    record["mismatches"] = mismatches
    record["pass"] = not mismatches
    return record


def check_exceptional(name):
    """
    Recomputes one exceptional table row.
    @return: report record (dict)
    """
    index = make_exceptional(name)
    row = tables.EXCEPTIONAL_BY_NAME[tables.name_key(name)]
    fm = fold(index)
    expected = {"relative": row.relative, "kernel": row.kernel, "fibers": list(row.fibers), "out": row.out}
    computed = {"relative": fm.relative_type(), "kernel": kernel_type(fm),
                "fibers": list(fm.fiber_sizes()), "out": outer_aut_order(index)}
    mismatches = _compare(expected, computed)
    if expected["out"] != computed["out"]:
        mismatches.append("out")
    if not _partition_check(fm):
        mismatches.append("partition")
    return {"index": index.name, "family": "exceptional", "expected": expected, "computed": computed,
            "mismatches": mismatches, "pass": not mismatches}


def _run_job(job):
    if job[0] == "classical":
        return check_classical(*job[1:])
    return check_exceptional(job[1])


def verify_tables(limits=None, exceptional=True, workers=1):
    """
    Recomputes the relative type, kernel type, fibers and |Out| of every classical index on a parameter grid and
    of every exceptional row, and diffs them against the stored expectations.
    @param limits: dict family -> largest n (defaults to GRID_LIMITS)
    @param exceptional: include the exceptional table
    @param workers: number of worker processes (1 runs in-process)
    @return: list of report records
    """
    limits = dict(GRID_LIMITS if limits is None else limits)
    jobs = []
    for family in CLASSICAL_FAMILIES:
        for n, r, d in classical_grid(family, limits.get(family, 0)):
            jobs.append(("classical", family, n, r, d))
    if exceptional:
        for row in tables.EXCEPTIONAL_ROWS:
            for name in row.names:
                jobs.append(("exceptional", name))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_job, jobs))
    return [_run_job(job) for job in jobs]


def check_pair(first, second, relation, expected=True, budget=DEFAULT_BUDGET):
    """
    Tests one listed pair; 'iso' pairs are tested strictly and also as plain equivalences.
    @return: report record (dict)
    """
    i1, i2 = parse_index(first), parse_index(second)
    result = equivalent(i1, i2, budget, strict=(relation == "iso"))
    record = {"pair": [first, second], "relation": relation, "expected": expected, "result": result.as_dict()}
    passed = result.status == ("equivalent" if expected else "not_equivalent")
    if relation == "iso" and expected:
        loose = equivalent(i1, i2, budget)
        passed = passed and loose.equivalent
    backward = equivalent(i2, i1, budget, strict=(relation == "iso"))
    passed = passed and backward.status == result.status
    record["pass"] = passed
    record["inconclusive"] = "inconclusive" in (result.status, backward.status)
    return record


def _run_pair(job):
    return check_pair(*job)


def equivalence_list(n_max=6, budget=DEFAULT_BUDGET, workers=1):
    """
    Checks the listed isomorphisms and equivalences, the schematic D-family pairs and the negative controls.
    @return: list of report records
    """
    jobs = [(a, b, rel, True, budget) for a, b, rel in tables.EQUIVALENCE_LIST]
    jobs += [(a, b, rel, True, budget) for a, b, rel in tables.equivalence_schemata(n_max)]
    jobs += [(a, b, rel, False, budget) for a, b, rel in tables.NEGATIVE_CONTROLS]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_pair, jobs))
    return [_run_pair(job) for job in jobs]
