"""
This module builds crystallographic root systems, reduced or of type BC, with exact integer arithmetic.

COORDINATES
===========

A root is stored as twice its coordinate vector in the orthonormal basis used by Bourbaki's tables. Half-integral
E8 and F4 roots therefore have integer storage and all inner products are exact integers. The scaling never
matters: Cartan integers, angles and length ratios are invariant under it.

    A_l   : 2(e_i - e_j) in R^(l+1)
    B_l   : 2(+-e_i +- e_j), +-2e_i
    C_l   : 2(+-e_i +- e_j), +-4e_i
    BC_l  : union of B_l and C_l, basis of B_l (so e_l is ultrashort)
    D_l   : 2(+-e_i +- e_j)
    G2    : 2(e_i - e_j) short, +-(4e_i - 2e_j - 2e_k) long, in R^3
    F4    : +-2e_i, 2(+-e_i +- e_j), (+-1, +-1, +-1, +-1)
    E8    : 2(+-e_i +- e_j), (+-1, ..., +-1) with an even number of minus signs
    E7, E6: roots of E8 with zero coefficient on the last one (two) simple roots

DYNKIN DIAGRAMS
===============

A Dynkin diagram is a networkx DiGraph on the basis indices 1..l with an edge i -> j labelled `cartan`
= 2(a_i.a_j)/(a_j.a_j) whenever this integer is non-zero. Irreducible types are recognized by labelled graph
isomorphism against reference diagrams, so the numbering of an input diagram does not matter.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import itertools

import networkx as nx
from networkx.algorithms import isomorphism
import sympy

from .errors import ConstructionError, PreconditionError, WiringError

TYPE_ORDER = ("A", "B", "C", "D", "E", "F", "G", "BC")
LENGTH_NAMES = ("ultrashort", "short", "long")


@dataclass(frozen=True, order=True)
class Root:
    """An exact root vector. Equality and ordering are those of the coordinate tuple."""
    coords: tuple

    def __add__(self, other):
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Root(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Root(tuple(-a for a in self.coords))

    def scaled(self, k):
        return Root(tuple(k * a for a in self.coords))

    def dot(self, other):
        return sum(a * b for a, b in zip(self.coords, other.coords))

    def norm2(self):
        return self.dot(self)

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def zero_like(root):
    return Root((0,) * len(root.coords))


def cartan_integer(alpha, beta):
    """
    Returns 2(alpha.beta)/(beta.beta) for two roots of one system.
    @param alpha: root
    @param beta: non-zero root
    @return: the Cartan integer, exact
    """
    num = 2 * alpha.dot(beta)
    den = beta.norm2()
    if den == 0:
        raise PreconditionError("cartan_integer needs a non-zero second argument")
    if num % den:
        raise WiringError("non-integral Cartan number for " + str(alpha) + ", " + str(beta))
    return num // den


class RootSet:
    """
    Shared machinery of absolute and relative root systems. Subclasses provide `inner` and `coefficients`.
    """

    def __init__(self, type_label, rank, roots, basis):
        self._type_label = type_label
        self._rank = rank
        self._roots = tuple(sorted(roots))
        self._basis = tuple(basis)
        self._index = {root: i for i, root in enumerate(self._roots)}
        self._length_class = {}
        norms = sorted({self.inner(r, r) for r in self._roots})
        names = self._class_names(len(norms))
        self._class_norms = dict(zip(names, norms))
        for root in self._roots:
            self._length_class[root] = names[norms.index(self.inner(root, root))]

    def _class_names(self, count):
        if count == 0:
            return []
        if self._type_label == "BC":
            return ["ultrashort", "long"] if count == 2 else ["ultrashort", "short", "long"]
        if count == 1:
            return ["long"]
        if count == 2:
            return ["short", "long"]
        raise WiringError("more than two root lengths in a reduced system")

    @property
    def type_label(self):
        """One of A, B, C, D, E, F, G, BC"""
        return self._type_label

    @property
    def rank(self):
        return self._rank

    @property
    def roots(self):
        """Roots in canonical (sorted) order"""
        return self._roots

    @property
    def basis(self):
        """Simple roots in Bourbaki order"""
        return self._basis

    @property
    def length_class(self):
        """Map root -> 'long' | 'short' | 'ultrashort'"""
        return self._length_class

    def length_classes(self):
        """Names of the length classes present, by increasing length."""
        return list(self._class_norms)

    def index_of(self, root):
        return self._index[root]

    def __contains__(self, root):
        return root in self._index

    def __len__(self):
        return len(self._roots)

    def __iter__(self):
        return iter(self._roots)

    def label(self):
        return format_component(self._type_label, self._rank)

    def inner(self, a, b):
        raise NotImplementedError

    def coefficients(self, root):
        raise NotImplementedError

    def cartan_integer(self, alpha, beta):
        num = 2 * self.inner(alpha, beta)
        den = self.inner(beta, beta)
        value = Fraction(num) / Fraction(den)
        if value.denominator != 1:
            raise WiringError("non-integral Cartan number for " + str(alpha) + ", " + str(beta))
        return int(value)

    def reflect(self, alpha, beta):
        """
        Reflects beta in the hyperplane orthogonal to alpha.
        @param alpha: root
        @param beta: root
        @return: beta - <beta, alpha> alpha
        """
        image = beta - alpha.scaled(self.cartan_integer(beta, alpha))
        if image not in self._index:
            raise WiringError("reflection of " + str(beta) + " in " + str(alpha) + " left the root set")
        return image

    def weyl_orbit(self, seed):
        """
        Smallest set containing seed and closed under all simple reflections.
        @param seed: iterable of roots
        @return: frozenset of roots
        """
        orbit = set(seed)
        frontier = list(orbit)
        while frontier:
            nxt = []
            for beta in frontier:
                for alpha in self._basis:
                    image = self.reflect(alpha, beta)
                    if image not in orbit:
                        orbit.add(image)
                        nxt.append(image)
            frontier = nxt
        return frozenset(orbit)

    def positive_roots(self):
        return [r for r in self._roots if all(c >= 0 for c in self.coefficients(r))]

    def negative_roots(self):
        return [r for r in self._roots if all(c <= 0 for c in self.coefficients(r))]

    def height(self, root):
        return sum(self.coefficients(root))

    def highest_root(self):
        return max(self.positive_roots(), key=lambda r: (self.height(r), r))

    def cartan_matrix(self):
        """Cartan matrix a_ij = <a_i, a_j> as a tuple of tuples."""
        return tuple(tuple(self.cartan_integer(a, b) for b in self._basis) for a in self._basis)

    def is_root_or_zero(self, root):
        return root.is_zero() or root in self._index


class RootSystem(RootSet):
    """
    An absolute root system with roots in (doubled) orthonormal coordinates.
    """

    def __init__(self, type_label, rank, roots, basis):
        super().__init__(type_label, rank, roots, basis)
        self._coefficients = _solve_coefficients(self._roots, self._basis)

    def inner(self, a, b):
        return a.dot(b)

    def coefficients(self, root):
        """Coordinates of a root in the simple roots, as a tuple of integers."""
        return self._coefficients[root]

    def from_coefficients(self, coefficients):
        total = zero_like(self._basis[0])
        for c, alpha in zip(coefficients, self._basis):
            total = total + alpha.scaled(c)
        return total

    def to_json(self):
        return {"type": self._type_label,
                "rank": self._rank,
                "roots": [list(r.coords) for r in self._roots],
                "basis": [self._index[b] for b in self._basis]}

    def __str__(self):
        return "RootSystem " + self.label() + " (" + str(len(self._roots)) + " roots)"


def _solve_coefficients(roots, basis):
    """
    Expresses every root in the basis through the inverse Gram matrix.
    @param roots: tuple of roots
    @param basis: tuple of simple roots
    @return: dict root -> tuple of integer coefficients
    """
    if not basis:
        return {}
    gram = sympy.Matrix([[a.dot(b) for b in basis] for a in basis])
    inverse = gram.inv()
    inverse = [[Fraction(int(inverse[i, j].p), int(inverse[i, j].q)) for j in range(len(basis))]
               for i in range(len(basis))]
    coefficients = {}
    for root in roots:
        pairing = [root.dot(b) for b in basis]
        coeffs = []
        for row in inverse:
            value = sum(x * p for x, p in zip(row, pairing))
            if value.denominator != 1:
                raise WiringError("root " + str(root) + " is not an integral combination of the basis")
            coeffs.append(int(value))
        if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
            raise WiringError("root " + str(root) + " has mixed-sign coefficients")
        coefficients[root] = tuple(coeffs)
    return coefficients


def _unit(dim, i, value=2):
    v = [0] * dim
    v[i] = value
    return v


def _pairs(dim):
    """2(+-e_i +- e_j) for i < j."""
    roots = []
    for i, j in itertools.combinations(range(dim), 2):
        for si, sj in itertools.product((2, -2), repeat=2):
            v = [0] * dim
            v[i] = si
            v[j] = sj
            roots.append(Root(tuple(v)))
    return roots


def _singles(dim, value):
    roots = []
    for i in range(dim):
        roots.append(Root(tuple(_unit(dim, i, value))))
        roots.append(Root(tuple(_unit(dim, i, -value))))
    return roots


def _chain_basis(dim, count):
    """2(e_i - e_{i+1}) for i = 1..count."""
    basis = []
    for i in range(count):
        v = [0] * dim
        v[i] = 2
        v[i + 1] = -2
        basis.append(Root(tuple(v)))
    return basis


def _build_a(rank):
    dim = rank + 1
    roots = []
    for i, j in itertools.permutations(range(dim), 2):
        v = [0] * dim
        v[i] = 2
        v[j] = -2
        roots.append(Root(tuple(v)))
    return roots, _chain_basis(dim, rank)


def _build_bcd(type_label, rank):
    roots = _pairs(rank)
    basis = _chain_basis(rank, rank - 1)
    if type_label in ("B", "BC"):
        roots += _singles(rank, 2)
    if type_label in ("C", "BC"):
        roots += _singles(rank, 4)
    if type_label in ("B", "BC"):
        basis.append(Root(tuple(_unit(rank, rank - 1, 2))))
    elif type_label == "C":
        basis.append(Root(tuple(_unit(rank, rank - 1, 4))))
    elif rank >= 2:
        v = [0] * rank
        v[rank - 2] = 2
        v[rank - 1] = 2
        basis.append(Root(tuple(v)))
    else:
        basis = []
    return roots, basis


def _build_g2():
    roots = []
    for i, j in itertools.permutations(range(3), 2):
        v = [0, 0, 0]
        v[i] = 2
        v[j] = -2
        roots.append(Root(tuple(v)))
    for i in range(3):
        v = [-2, -2, -2]
        v[i] = 4
        roots.append(Root(tuple(v)))
        roots.append(Root(tuple(-c for c in v)))
    basis = [Root((2, -2, 0)), Root((-4, 2, 2))]
    return roots, basis


def _build_f4():
    roots = _pairs(4) + _singles(4, 2)
    for signs in itertools.product((1, -1), repeat=4):
        roots.append(Root(signs))
    basis = [Root((0, 2, -2, 0)), Root((0, 0, 2, -2)), Root((0, 0, 0, 2)), Root((1, -1, -1, -1))]
    return roots, basis


def _e8_data():
    roots = _pairs(8)
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(Root(signs))
    basis = [Root((1, -1, -1, -1, -1, -1, -1, 1)), Root((2, 2, 0, 0, 0, 0, 0, 0))]
    for i in range(6):
        v = [0] * 8
        v[i] = -2
        v[i + 1] = 2
        basis.append(Root(tuple(v)))
    return roots, basis


def _build_e(rank):
    roots, basis = _e8_data()
    if rank == 8:
        return roots, basis
    e8 = RootSystem("E", 8, roots, basis)
    kept = [r for r in e8.roots if not any(e8.coefficients(r)[rank:])]
    return kept, basis[:rank]


def _valid_rank(type_label, rank):
    if type_label == "E":
        return rank in (6, 7, 8)
    if type_label == "F":
        return rank == 4
    if type_label == "G":
        return rank == 2
    return type_label in ("A", "B", "C", "D", "BC") and rank >= 1


@lru_cache(maxsize=None)
def build(type_label, rank):
    """
    Builds the root system of the given type and rank with its Bourbaki basis.
    @param type_label: one of A, B, C, D, E, F, G, BC
    @param rank: positive integer
    @return: RootSystem
    """
    if not isinstance(rank, int) or not _valid_rank(type_label, rank):
        raise ConstructionError("invalid root system " + str(type_label) + "_" + str(rank))
    if type_label == "A":
        roots, basis = _build_a(rank)
    elif type_label in ("B", "C", "D", "BC"):
        roots, basis = _build_bcd(type_label, rank)
    elif type_label == "G":
        roots, basis = _build_g2()
    elif type_label == "F":
        roots, basis = _build_f4()
    else:
        roots, basis = _build_e(rank)
    return RootSystem(type_label, rank, set(roots), basis)


def reflect(alpha, beta):
    """
    Ambient reflection of beta in alpha (no membership check).
    @param alpha: root
    @param beta: root
    @return: beta - <beta, alpha> alpha
    """
    return beta - alpha.scaled(cartan_integer(beta, alpha))


# Dynkin diagrams and type recognition

def dynkin_diagram(cartan):
    """
    Builds the labelled Dynkin digraph of a Cartan matrix.
    @param cartan: square matrix (sequence of sequences), a_ij = <a_i, a_j>
    @return: networkx DiGraph on nodes 1..l
    """
    diagram = nx.DiGraph()
    size = len(cartan)
    diagram.add_nodes_from(range(1, size + 1))
    for i in range(size):
        for j in range(size):
            if i != j and cartan[i][j] != 0:
                diagram.add_edge(i + 1, j + 1, cartan=cartan[i][j])
    return diagram


def _cartan_match(a, b):
    return a["cartan"] == b["cartan"]


@lru_cache(maxsize=None)
def _reference_diagram(type_label, rank):
    return dynkin_diagram(build(type_label, rank).cartan_matrix())


def _candidates(rank):
    out = [("A", rank)]
    if rank >= 2:
        out.append(("B", rank))
    if rank >= 3:
        out.append(("C", rank))
    if rank >= 4:
        out.append(("D", rank))
    if rank in (6, 7, 8):
        out.append(("E", rank))
    if rank == 4:
        out.append(("F", 4))
    if rank == 2:
        out.append(("G", 2))
    return out


def recognize(diagram):
    """
    Names a connected Dynkin diagram.
    @param diagram: networkx DiGraph as built by dynkin_diagram
    @return: (type letter, rank)
    """
    rank = diagram.number_of_nodes()
    for type_label, r in _candidates(rank):
        reference = _reference_diagram(type_label, r)
        if reference.number_of_edges() != diagram.number_of_edges():
            continue
        if nx.is_isomorphic(reference, diagram, edge_match=_cartan_match):
            return type_label, r
    raise WiringError("Dynkin diagram matches no irreducible type")


def decompose(diagram):
    """
    Splits a Dynkin diagram into irreducible components and names each.
    @param diagram: networkx DiGraph
    @return: Counter of (type letter, rank)
    """
    components = Counter()
    for nodes in nx.weakly_connected_components(diagram):
        components[recognize(diagram.subgraph(nodes).copy())] += 1
    return components


def diagram_automorphisms(diagram):
    """
    Lists all automorphisms of a labelled Dynkin diagram.
    @param diagram: networkx DiGraph
    @return: list of dicts node -> node
    """
    matcher = isomorphism.DiGraphMatcher(diagram, diagram, edge_match=_cartan_match)
    return [dict(m) for m in matcher.isomorphisms_iter()]


# Dynkin type labels

def format_component(type_label, rank):
    return type_label + "_" + str(rank)


def normalize(components):
    """
    Applies the low-rank conventions A_1 = B_1 = C_1, B_2 = C_2, A_3 = D_3, D_2 = 2A_1 and drops the empty
    systems A_0, A_-1, B_0, C_0, D_0, D_1 (and BC_0).
    @param components: Counter of (type letter, rank)
    @return: normalized Counter
    """
    out = Counter()
    for (type_label, rank), count in components.items():
        if rank <= 0 or (type_label == "D" and rank == 1):
            continue
        if type_label in ("B", "C") and rank == 1:
            key = ("A", 1)
        elif type_label == "C" and rank == 2:
            key = ("B", 2)
        elif type_label == "D" and rank == 3:
            key = ("A", 3)
        elif type_label == "D" and rank == 2:
            out[("A", 1)] += 2 * count
            continue
        else:
            key = (type_label, rank)
        out[key] += count
    return out


def format_type(components):
    """
    Renders a Counter of components as e.g. '3A_1 + D_4'; the empty type is '∅'.
    """
    parts = []
    for (type_label, rank) in sorted(components, key=lambda k: (TYPE_ORDER.index(k[0]), k[1])):
        count = components[(type_label, rank)]
        if count <= 0:
            continue
        prefix = str(count) if count > 1 else ""
        parts.append(prefix + format_component(type_label, rank))
    return " + ".join(parts) if parts else "∅"


def parse_type(text):
    """
    Parses '3A_1 + D_4', 'BC_2' or '∅' into a Counter of components.
    """
    components = Counter()
    text = text.strip()
    if text in ("∅", "", "0"):
        return components
    for part in text.split("+"):
        part = part.strip()
        digits = ""
        while part and part[0].isdigit():
            digits += part[0]
            part = part[1:]
        type_label, _, rank = part.partition("_")
        if type_label not in TYPE_ORDER or not rank.lstrip("-").isdigit():
            raise ConstructionError("cannot parse Dynkin type " + repr(text))
        components[(type_label, int(rank))] += int(digits) if digits else 1
    return components


def same_type(a, b):
    """Compares two Dynkin types (strings or Counters) up to the low-rank conventions."""
    if isinstance(a, str):
        a = parse_type(a)
    if isinstance(b, str):
        b = parse_type(b)
    return normalize(a) == normalize(b)
