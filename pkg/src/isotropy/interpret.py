"""
Recovering the ring K from the root spaces of a realization.

K~ is the set of families k = (k_a : Y_a -> g_a) with

    [k_a(y_a), y_b] = [y_a, k_b(y_b)]           for y_a in Y_a, y_b in Y_b, a + b a root
    [k_a(x_a), x_b] = k_{a+b}([x_a, x_b])        for x_a in X_a, x_b in X_b, a + b a root

where X_a is the basis of g_a and Y_a = X_a together with the non-zero brackets [X_b, X_{a-b}]. Sums are
pointwise and the product m of k and l is read off one pair (a, b) with a long:
[k_a(x_a), l_b(x_b)] = m_{a+b}([x_a, x_b]).

SEARCH
======

The equations form a finite constraint problem: one variable per (a, y) with y in Y_a, ranging over the points
of g_a, with binary constraints from both equation schemas. It is solved by arc consistency (AC-3) and
backtracking on the smallest domain, branching first on one basis generator of a long root.
"""

from collections import deque
from dataclasses import dataclass
from datetime import timedelta
import itertools
import time

import numpy as np

from .errors import SearchBudgetError, UnsupportedError

DEFAULT_NODE_BUDGET = 10 ** 6


def _weights(ring, dim):
    radices = np.repeat(np.array(ring.moduli, dtype=np.int64), dim)
    weights = np.ones(len(radices), dtype=np.int64)
    for pos in range(1, len(radices)):
        weights[pos] = weights[pos - 1] * radices[pos - 1]
    return weights


def _codes(ring, coords):
    """Integer codes of coordinate arrays (k, f, dim)."""
    coords = np.asarray(coords, dtype=np.int64)
    return coords.reshape(coords.shape[0], -1) @ _weights(ring, coords.shape[-1])


def _label(ring, value):
    return str(value[0]) if ring.factors == 1 else "(" + ",".join(str(v) for v in value) + ")"


@dataclass(frozen=True)
class Variable:
    root: object
    position: int

    def __str__(self):
        return "k_" + str(self.root) + "(y" + str(self.position) + ")"


class KTilde:
    """
    The solution set of the K~ equations for one realization.
    """

    def __init__(self, realization, spaces, variables, domains, families, nodes):
        """
        @param spaces: dict root -> (X coords, Y coords), arrays (k, f, dim)
        @param variables: list of Variable
        @param domains: dict root -> all points of g_root, array (k, f, dim)
        @param families: list of tuples of domain indices, one per variable
        @param nodes: search nodes visited
        """
        self._realization = realization
        self._spaces = spaces
        self._variables = variables
        self._position = {v: i for i, v in enumerate(variables)}
        self._domains = domains
        self._families = families
        self._lookup = {family: i for i, family in enumerate(families)}
        self._nodes = nodes
        self._domain_codes = {alpha: {int(c): i for i, c in enumerate(_codes(realization.ring, points))}
                              for alpha, points in domains.items()}

    @property
    def realization(self):
        return self._realization

    @property
    def variables(self):
        return self._variables

    @property
    def families(self):
        return self._families

    @property
    def nodes(self):
        return self._nodes

    def __len__(self):
        return len(self._families)

    def generating_sets(self, alpha):
        """(X_alpha, Y_alpha) as coordinate arrays"""
        return self._spaces[alpha]

    def value(self, family, variable):
        """k_a(y) of a family (a tuple of domain indices) as coordinates (f, dim)."""
        return self._domains[variable.root][family[self._position[variable]]]

    def find(self, family):
        """Index of a family in K~, or None."""
        return self._lookup.get(tuple(family))

    def index_of_point(self, alpha, coords):
        return self._domain_codes[alpha].get(int(_codes(self._realization.ring, coords[None])[0]))

    def variable_of(self, alpha, y):
        """The variable (alpha, y) for a point y of Y_alpha, or None."""
        _, ys = self._spaces[alpha]
        matches = np.where(_codes(self._realization.ring, ys) == _codes(self._realization.ring, y[None])[0])[0]
        return Variable(alpha, int(matches[0])) if len(matches) else None

    def scalar_family(self, kappa):
        """The family y -> kappa y."""
        ring = self._realization.ring
        scale = np.array(ring.element(kappa), dtype=np.int64).reshape(-1, 1)
        mods = np.array(ring.moduli, dtype=np.int64).reshape(-1, 1)
        out = []
        for variable in self._variables:
            y = self._spaces[variable.root][1][variable.position]
            out.append(self.index_of_point(variable.root, np.mod(y * scale, mods)))
        return tuple(out)

    def add(self, first, second):
        """Pointwise sum of two families, as an index into K~ (None when the sum leaves K~)."""
        mods = np.array(self._realization.ring.moduli, dtype=np.int64).reshape(-1, 1)
        out = []
        for variable in self._variables:
            total = np.mod(self.value(self._families[first], variable)
                           + self.value(self._families[second], variable), mods)
            out.append(self.index_of_point(variable.root, total))
        return self.find(out)

    def product_pair(self):
        """(a, b, x_a, x_b) with a long, a + b a root and [x_a, x_b] != 0."""
        realization = self._realization
        rel = realization.relative
        for alpha in sorted(rel.roots, reverse=True):
            if rel.length_class[alpha] != "long":
                continue
            for beta in sorted(rel.roots, reverse=True):
                if (alpha + beta) not in rel:
                    continue
                for x, y in itertools.product(self._spaces[alpha][0], self._spaces[beta][0]):
                    z = realization.bracket(alpha, x, beta, y)
                    if z is not None and z.any():
                        return alpha, beta, x, y
        raise UnsupportedError("no bracket pair with a long root in " + rel.label())

    def multiply(self, first, second):
        """
        Families m with [k_a(x_a), l_b(x_b)] = m_{a+b}([x_a, x_b]) on the product pair.
        @return: list of indices into K~ (one element when the product is determined)
        """
        realization = self._realization
        alpha, beta, x, y = self.product_pair()
        k_x = self.value(self._families[first], self.variable_of(alpha, x))
        l_y = self.value(self._families[second], self.variable_of(beta, y))
        target = realization.bracket(alpha, k_x, beta, l_y)
        z_var = self.variable_of(alpha + beta, realization.bracket(alpha, x, beta, y))
        target_index = self.index_of_point(alpha + beta, target)
        return [i for i, family in enumerate(self._families)
                if family[self._position[z_var]] == target_index]

    def __str__(self):
        return ("K~ of " + self._realization.index.name + " over " + self._realization.ring.spec + ": "
                + str(len(self._families)) + " families, " + str(len(self._variables)) + " variables")


# Construction

def _generating_sets(realization):
    """X_a (basis) and Y_a = X_a u [X_b, X_{a-b}] for every relative root, deduplicated, zero removed."""
    rel = realization.relative
    ring = realization.ring
    out = {}
    for alpha in rel.roots:
        dim = realization.space(alpha).dim
        xs = np.zeros((dim, ring.factors, dim), dtype=np.int64)
        for k in range(dim):
            xs[k, :, k] = 1
        out[alpha] = xs
    spaces = {}
    for alpha in rel.roots:
        points = list(out[alpha])
        for beta in rel.roots:
            gamma = alpha - beta
            if gamma not in rel:
                continue
            for x, y in itertools.product(out[beta], out[gamma]):
                z = realization.bracket(beta, x, gamma, y)
                if z is not None and z.any():
                    points.append(z)
        points = np.stack(points)
        _, first = np.unique(_codes(ring, points), return_index=True)
        spaces[alpha] = (out[alpha], points[np.sort(first)])
    return spaces


def _images(realization, alpha, values, beta, fixed, fixed_on_left):
    """Codes of [v, fixed] (or [fixed, v]) for every v in values."""
    ring = realization.ring
    out = []
    for v in values:
        if fixed_on_left:
            out.append(realization.bracket(beta, fixed, alpha, v))
        else:
            out.append(realization.bracket(alpha, v, beta, fixed))
    return _codes(ring, np.stack(out))


class _Problem:

    def __init__(self, variables, domains):
        self.variables = variables
        self.index = {v: i for i, v in enumerate(variables)}
        self.masks = [np.ones(len(domains[v.root]), dtype=bool) for v in variables]
        self.arcs = {i: [] for i in range(len(variables))}

    def unary(self, variable, mask):
        i = self.index[variable]
        self.masks[i] &= mask

    def binary(self, first, second, allowed):
        i, j = self.index[first], self.index[second]
        if i == j:
            self.masks[i] &= np.diagonal(allowed)
            return
        self.arcs[i].append((j, allowed))
        self.arcs[j].append((i, allowed.T))


def _build_problem(realization, spaces, domains):
    rel = realization.relative
    variables = [Variable(alpha, p) for alpha in sorted(rel.roots, reverse=True)
                 for p in range(len(spaces[alpha][1]))]
    problem = _Problem(variables, domains)
    ring = realization.ring
    codes = {alpha: _codes(ring, points) for alpha, points in domains.items()}
    pairs = [(a, b) for a in rel.roots for b in rel.roots if (a + b) in rel]
    for alpha, beta in pairs:
        ys_a, ys_b = spaces[alpha][1], spaces[beta][1]
        for p, y_a in enumerate(ys_a):
            for q, y_b in enumerate(ys_b):
                left = _images(realization, alpha, domains[alpha], beta, y_b, False)
                right = _images(realization, beta, domains[beta], alpha, y_a, True)
                problem.binary(Variable(alpha, p), Variable(beta, q), left[:, None] == right[None, :])
        xs_b = spaces[beta][0]
        for p, x_a in enumerate(spaces[alpha][0]):
            for x_b in xs_b:
                left = _images(realization, alpha, domains[alpha], beta, x_b, False)
                z = realization.bracket(alpha, x_a, beta, x_b)
                if not z.any():
                    problem.unary(Variable(alpha, p), left == 0)
                    continue
                gamma = alpha + beta
                target = np.where(_codes(ring, spaces[gamma][1]) == _codes(ring, z[None])[0])[0][0]
                problem.binary(Variable(alpha, p), Variable(gamma, int(target)),
                               left[:, None] == codes[gamma][None, :])
    return problem


def _revise(masks, i, j, allowed):
    supported = allowed[:, masks[j]].any(axis=1)
    updated = masks[i] & supported
    if np.array_equal(updated, masks[i]):
        return False
    masks[i] = updated
    return True


def _propagate(problem, masks, queue):
    """AC-3 from the given arcs; False when a domain empties."""
    queue = deque(queue)
    while queue:
        i, j, allowed = queue.popleft()
        if _revise(masks, i, j, allowed):
            if not masks[i].any():
                return False
            for k, back in problem.arcs[i]:
                if k != j:
                    queue.append((k, i, back.T))
    return True


def _all_arcs(problem):
    return [(i, j, allowed) for i in problem.arcs for j, allowed in problem.arcs[i]]


def _solve(problem, seed, budget, verbose):
    masks = [mask.copy() for mask in problem.masks]
    solutions = []
    nodes = 0
    start = time.monotonic()
    if not all(mask.any() for mask in masks) or not _propagate(problem, masks, _all_arcs(problem)):
        return solutions, nodes
    stack = [masks]
    while stack:
        masks = stack.pop()
        nodes += 1
        if nodes > budget:
            raise SearchBudgetError("K~ search exceeded " + str(budget) + " nodes")
        open_vars = [i for i, mask in enumerate(masks) if mask.sum() > 1]
        if not open_vars:
            solutions.append(tuple(int(np.argmax(mask)) for mask in masks))
            continue
        i = seed if seed in open_vars else min(open_vars, key=lambda k: (masks[k].sum(), k))
        for value in reversed(np.flatnonzero(masks[i])):
            branch = [mask.copy() for mask in masks]
            branch[i][:] = False
            branch[i][value] = True
            if _propagate(problem, branch, [(k, i, back.T) for k, back in problem.arcs[i]]):
                stack.append(branch)
    if verbose:
        print("  K~ search: " + str(len(solutions)) + " families, " + str(nodes) + " nodes ("
              + str(timedelta(seconds=time.monotonic() - start)) + ")")
    return sorted(solutions), nodes


def build_ktilde(realization, budget=DEFAULT_NODE_BUDGET, verbose=False):
    """
    Solves the K~ equations.
    @param realization: Realization whose relative system is reduced and not G_2
    @param budget: largest number of search nodes
    @return: KTilde
    """
    rel = realization.relative
    if rel.type_label in ("BC", "G"):
        raise UnsupportedError("K~ for relative type " + rel.label() + " reduces to a subsystem; not built directly")
    if rel.rank < 2:
        raise UnsupportedError("K~ needs relative rank at least 2, " + realization.index.name + " has rank "
                               + str(rel.rank))
    spaces = _generating_sets(realization)
    domains = {alpha: realization.ring.vectors(realization.space(alpha).dim) for alpha in rel.roots}
    problem = _build_problem(realization, spaces, domains)
    long_roots = [v for v in problem.variables if rel.length_class[v.root] == "long"]
    seed = problem.index[long_roots[0]]
    families, nodes = _solve(problem, seed, budget, verbose)
    return KTilde(realization, spaces, problem.variables, domains, families, nodes)


# Certification

def certificate(kt):
    """
    Checks that kappa -> (y -> kappa y) is a ring isomorphism K -> K~.
    @return: dict check name -> boolean
    """
    ring = kt.realization.ring
    elements = ring.elements()
    image = [kt.find(kt.scalar_family(kappa)) for kappa in elements]
    out = {"size": len(kt) == ring.order,
           "scalar": None not in image and sorted(image) == list(range(len(kt)))}
    one = kt.find(kt.scalar_family(1))
    out["identity"] = one is not None
    if not out["scalar"]:
        out.update({"addition": False, "multiplication": False, "determined": False, "commutative": False,
                    "associative": False, "unit": False})
        return out
    table = ktilde_table(kt)
    add, mul = table["add"], table["mul"]
    out["addition"] = all(add[image[a]][image[b]] == image[elements.index(ring.add(elements[a], elements[b]))]
                          for a in range(len(elements)) for b in range(len(elements)))
    out["determined"] = None not in itertools.chain.from_iterable(mul)
    out["multiplication"] = out["determined"] and all(
        mul[image[a]][image[b]] == image[elements.index(ring.mul(elements[a], elements[b]))]
        for a in range(len(elements)) for b in range(len(elements)))
    size = len(kt)
    out["commutative"] = out["determined"] and all(mul[i][j] == mul[j][i] for i in range(size) for j in range(size))
    out["associative"] = out["determined"] and all(mul[mul[i][j]][k] == mul[i][mul[j][k]]
                                                   for i in range(size) for j in range(size) for k in range(size))
    out["unit"] = out["determined"] and all(mul[one][i] == i for i in range(size))
    return out


def certify_ring_iso(kt):
    """@return: True iff K~ with pointwise addition and the bracket product is isomorphic to K via scalars"""
    return all(certificate(kt).values())


def ktilde_table(kt):
    """
    Addition and multiplication tables of K~; a product that the single pair leaves undetermined is None.
    @return: dict with labels (the scalar each family acts by, when it is one), add and mul
    """
    ring = kt.realization.ring
    labels = ["k" + str(i) for i in range(len(kt))]
    for kappa in ring.elements():
        index = kt.find(kt.scalar_family(kappa))
        if index is not None:
            labels[index] = _label(ring, kappa)
    size = len(kt)
    add = [[kt.add(i, j) for j in range(size)] for i in range(size)]
    mul = []
    for i in range(size):
        row = []
        for j in range(size):
            found = kt.multiply(i, j)
            row.append(found[0] if len(found) == 1 else None)
        mul.append(row)
    return {"labels": labels, "add": add, "mul": mul}


def interpretation_record(kt):
    """JSON-ready record of a K~ construction."""
    table = ktilde_table(kt)
    checks = certificate(kt)
    return {"index": kt.realization.index.name,
            "ring": kt.realization.ring.spec,
            "families": len(kt),
            "variables": len(kt.variables),
            "nodes": kt.nodes,
            "labels": table["labels"],
            "add": table["add"],
            "mul": table["mul"],
            "checks": checks,
            "isomorphic": all(checks.values())}
