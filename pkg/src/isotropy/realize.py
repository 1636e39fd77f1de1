"""
Split matrix realizations of the classical isotropic structures.

MODEL
=====

Every classical family is realized inside the split group of its base system, acting on K^N:

    1A, 2A   SL_{n+1}                                    N = n+1
    B        SO of q = x_1 x_{2n+1} + ... + x_{n+1}^2     N = 2n+1
    C        Sp of x_1 y_{2n} + ... + x_n y_{n+1} - x_{n+1} y_n - ... - x_{2n} y_1
    1D, 2D   SO of q = x_1 x_{2n} + ... + x_n x_{n+1}      N = 2n

The form is stored as a monomial matrix F with F[p, s(p)] = f_p, s(p) = N+1-p (the B centre carries 2). The Lie
algebra has the Chevalley basis E_ab (SL) or E_ab - (f_a / f_b) E_{s(b), s(a)} (forms), and each basis element
carries an absolute root. Folding that root by u assigns it to a relative root space g_alpha, so g_alpha is spanned
by the basis elements in the blocks between strips of positions whose relative weights differ by alpha.

PARAMETRIZATIONS
================

For x in g_alpha and y in g_{2 alpha}

    t_alpha(x, y) = 1 + x + y                 (SL)
    t_alpha(x, y) = 1 + x + y + x^2 / 2       (forms; x^2 = 0 unless alpha is ultrashort or short in B)

The coordinates of a point are read back from the leading position of each basis element.
"""

from fractions import Fraction
import itertools

import numpy as np
import sympy

from . import groups
from .errors import CapExceededError, PreconditionError, UnsupportedError, WiringError
from .index import CLASSICAL_FAMILIES, fold
from .roots import Root

FORM_KINDS = {"1A": "sl", "2A": "sl", "B": "so", "C": "sp", "1D": "so", "2D": "so"}
WEYL_SEARCH_LIMIT = 20000
MODULE_SEARCH_LIMIT = 512


class RootSpace:
    """
    Chevalley basis elements spanning g_alpha: matrices of shape (dim, f, N, N) and their leading positions.
    """

    def __init__(self, alpha, leads, matrices):
        self.alpha = alpha
        self.leads = tuple(leads)
        self.matrices = matrices
        self.rows = np.array([a for a, _ in leads], dtype=np.int64)
        self.cols = np.array([b for _, b in leads], dtype=np.int64)

    @property
    def dim(self):
        return len(self.leads)


class Realization:
    """
    A classical Tits index realized over a finite ring.
    """

    def __init__(self, index, ring):
        """
        @param index: TitsIndex of a classical family
        @param ring: FiniteRing
        """
        family = index.family
        if family not in CLASSICAL_FAMILIES:
            raise UnsupportedError("no matrix model for " + index.name)
        if family in ("B", "1D", "2D") and not ring.two_is_unit():
            raise UnsupportedError(index.name + " needs 2 to be a unit, which fails in " + ring.spec)
        self._index = index
        self._ring = ring
        self._kind = FORM_KINDS[family]
        self._fm = fold(index)
        base = index.base
        n = base.rank
        if self._kind == "sl":
            size = n + 1
            weights = [tuple(1 if i == p else 0 for i in range(size)) for p in range(size)]
        else:
            size = 2 * n + 1 if family == "B" else 2 * n
            weights = []
            for p in range(size):
                if p < n:
                    weights.append(tuple(1 if i == p else 0 for i in range(n)))
                elif family == "B" and p == n:
                    weights.append((0,) * n)
                else:
                    weights.append(tuple(-1 if i == size - 1 - p else 0 for i in range(n)))
        self._size = size
        self._weights = weights
        self._sigma = [size - 1 - p for p in range(size)]
        self._form = None
        self._form_inverse = None
        self._f = None
        if self._kind != "sl":
            f = []
            for p in range(size):
                if family == "B" and p == n:
                    f.append(ring.element(2))
                elif self._kind == "sp" and p >= n:
                    f.append(ring.element(-1))
                else:
                    f.append(ring.one())
            self._f = f
            self._form = ring.zeros(size)
            for p in range(size):
                self._form[:, p, self._sigma[p]] = f[p]
            self._form_inverse = ring.mat_inv(self._form)
        self._half = ring.inverse(ring.element(2)) if ring.two_is_unit() else None
        self._lambda = self._relative_weights()
        self._spaces = self._wire()
        self._squares = {alpha: self._has_square(space) for alpha, space in self._spaces.items()}
        self._generator_cache = {}
        self._levi = None
        if self._kind != "sl" and self._half is None and any(self._squares.values()):
            raise UnsupportedError("ultrashort parametrizations of " + index.name + " need 2 to be a unit in "
                                   + ring.spec)

    # Wiring

    def _relative_weights(self):
        """Relative weight of every position: the folded simple-root coordinates of its projected weight."""
        base = self._index.base
        gram = sympy.Matrix([[a.dot(b) for b in base.basis] for a in base.basis])
        inverse = gram.inv()
        orbits = self._index.orbits()
        out = []
        for weight in self._weights:
            pairing = sympy.Matrix([2 * sum(w * c for w, c in zip(weight, alpha.coords)) for alpha in base.basis])
            coefficients = inverse * pairing
            values = [Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q)) for v in coefficients]
            out.append(tuple(sum(values[i - 1] for i in orbit) for orbit in orbits))
        return out

    def _wire(self):
        ring = self._ring
        base = self._index.base
        size = self._size
        collected = {}
        for a in range(size):
            for b in range(size):
                if a == b:
                    continue
                if self._kind == "sl":
                    matrix = ring.elementary(size, a, b, 1)
                else:
                    partner = (self._sigma[b], self._sigma[a])
                    if partner == (a, b):
                        if self._kind == "so":
                            continue
                        matrix = ring.elementary(size, a, b, 1)
                    elif partner < (a, b):
                        continue
                    else:
                        c = ring.neg(ring.mul(self._f[a], ring.inverse(self._f[b])))
                        matrix = ring.mat_add(ring.elementary(size, a, b, 1),
                                              ring.elementary(size, partner[0], partner[1], c))
                root = Root(tuple(2 * (x - y) for x, y in zip(self._weights[a], self._weights[b])))
                if root not in base:
                    raise WiringError("position " + str((a, b)) + " carries " + str(root) + ", not a root of "
                                      + base.label())
                alpha = self._fm.image(root)
                if alpha.is_zero():
                    continue
                collected.setdefault(alpha, []).append(((a, b), matrix))
        spaces = {}
        for alpha in self._fm.relative.roots:
            entries = sorted(collected.get(alpha, []), key=lambda e: e[0])
            if len(entries) != len(self._fm.fiber(alpha)):
                raise WiringError("g_" + str(alpha) + " has " + str(len(entries)) + " basis elements, fiber has "
                                  + str(len(self._fm.fiber(alpha))))
            spaces[alpha] = RootSpace(alpha, [e[0] for e in entries], np.stack([e[1] for e in entries]))
        return spaces

    def _has_square(self, space):
        m = space.matrices
        products = self._ring.reduce(np.einsum("kfij,lfjm->klfim", m, m))
        return bool(products.any())

    # Properties

    @property
    def index(self):
        return self._index

    @property
    def ring(self):
        return self._ring

    @property
    def size(self):
        return self._size

    @property
    def kind(self):
        """'sl', 'sp' or 'so'"""
        return self._kind

    @property
    def form(self):
        return self._form

    @property
    def folding(self):
        return self._fm

    @property
    def relative(self):
        return self._fm.relative

    def relative_type(self):
        return self._fm.relative_type()

    def space(self, alpha):
        if alpha not in self._spaces:
            raise PreconditionError(str(alpha) + " is not a relative root of " + self._index.name)
        return self._spaces[alpha]

    def double(self, alpha):
        """2 alpha when it is a relative root, else None."""
        doubled = alpha.scaled(2)
        return doubled if doubled in self._spaces else None

    def module_dims(self, alpha):
        """(dim g_alpha, dim g_2alpha)"""
        doubled = self.double(alpha)
        return self.space(alpha).dim, (self._spaces[doubled].dim if doubled else 0)

    def module_dim(self, alpha):
        return sum(self.module_dims(alpha))

    def strips(self):
        """Positions grouped by relative weight, highest weight first."""
        groups_by_weight = {}
        for p, weight in enumerate(self._lambda):
            groups_by_weight.setdefault(weight, []).append(p)
        return [(weight, groups_by_weight[weight]) for weight in sorted(groups_by_weight, reverse=True)]

    def strip_widths(self):
        return [len(positions) for _, positions in self.strips()]

    def has_shape(self, members, matrices):
        """
        True for the matrices whose non-zero entries (p, q) all have lambda(p) - lambda(q) zero or in members.
        @param members: set of relative roots
        @return: boolean array
        """
        allowed = np.array([[self._difference(p, q) is None or self._difference(p, q) in members
                             for q in range(self._size)] for p in range(self._size)])
        return ~np.any(matrices[:, :, ~allowed], axis=(1, 2))

    def _difference(self, p, q):
        diff = tuple(a - b for a, b in zip(self._lambda[p], self._lambda[q]))
        if not any(diff):
            return None
        return Root(tuple(int(v) for v in diff))

    # Group membership

    def identity(self):
        return self._ring.identity(self._size)

    def in_group(self, matrices):
        """
        Membership in G: determinant one, and preservation of the form for B, C, D.
        @param matrices: (f, N, N) or batch (k, f, N, N)
        @return: boolean or boolean array
        """
        single = matrices.ndim == 3
        batch = matrices[None] if single else matrices
        ring = self._ring
        dets = ring.det(batch)
        ok = np.all(dets == np.array(ring.one(), dtype=np.int64), axis=1)
        if self._form is not None:
            transposed = np.swapaxes(batch, -1, -2)
            image = ring.reduce(np.matmul(np.matmul(transposed, self._form), batch))
            ok &= np.all(image == self._form, axis=(1, 2, 3))
        return bool(ok[0]) if single else ok

    def inverse(self, matrices):
        """Inverse in G: F^-1 g^t F for the form families, the adjugate formula for SL."""
        if self._form is None:
            return self._ring.mat_inv(matrices)
        transposed = np.swapaxes(matrices, -1, -2)
        return self._ring.reduce(np.matmul(np.matmul(self._form_inverse, transposed), self._form))

    def multiply(self, a, b):
        return self._ring.mat_mul(a, b)

    def commutator(self, a, b):
        """a b a^-1 b^-1"""
        ring = self._ring
        return ring.mat_mul(ring.mat_mul(a, b), ring.mat_mul(self.inverse(a), self.inverse(b)))

    # Root subgroups

    def _coords(self, alpha, value):
        """Coerces coordinates into an array (f, dim)."""
        dim = self.module_dim(alpha)
        ring = self._ring
        if isinstance(value, np.ndarray):
            array = np.asarray(value, dtype=np.int64)
            if array.shape != (ring.factors, dim):
                raise PreconditionError("coordinates of shape " + str(array.shape) + " do not fit U_" + str(alpha))
            return np.mod(array, np.array(ring.moduli, dtype=np.int64).reshape(-1, 1))
        value = list(value)
        if len(value) != dim:
            raise PreconditionError(str(len(value)) + " coordinates given, U_" + str(alpha) + " has " + str(dim))
        return np.array([ring.element(v) for v in value], dtype=np.int64).T.reshape(ring.factors, dim)

    def _combine(self, space, coords):
        """sum_k coords[..., k] * basis_k over a batch of coordinates (K, f, d)."""
        return self._ring.reduce(np.einsum("kfd,dfij->kfij", coords, space.matrices))

    def t_batch(self, alpha, coords):
        """
        @param alpha: relative root
        @param coords: array (K, f, dim) of module coordinates
        @return: batch (K, f, N, N) of t_alpha(coords)
        """
        ring = self._ring
        space = self.space(alpha)
        d1, d2 = self.module_dims(alpha)
        x = self._combine(space, coords[..., :d1])
        out = self.identity()[None] + x
        if d2:
            out = out + self._combine(self._spaces[self.double(alpha)], coords[..., d1:])
        if self._kind != "sl" and self._squares[alpha]:
            out = out + ring.scale(self._half, ring.reduce(np.matmul(x, x)))
        return ring.reduce(out)

    def t(self, alpha, coords):
        """
        Root subgroup parametrization.
        @param alpha: relative root
        @param coords: coordinates in g_alpha (then g_2alpha): array (f, dim) or sequence of ring elements
        @return: matrix (f, N, N)
        """
        return self.t_batch(alpha, self._coords(alpha, coords)[None])[0]

    def decode_batch(self, alpha, matrices):
        """
        Reads module coordinates from leading positions and checks the reconstruction.
        @return: (coords (K, f, dim), boolean array of members of U_alpha)
        """
        ring = self._ring
        space = self.space(alpha)
        d1, d2 = self.module_dims(alpha)
        delta = ring.reduce(matrices - self.identity()[None])
        x = delta[:, :, space.rows, space.cols]
        coords = x
        if d2:
            rest = delta - self._combine(space, x)
            if self._kind != "sl" and self._squares[alpha]:
                rest = rest - ring.scale(self._half, ring.reduce(np.matmul(self._combine(space, x),
                                                                           self._combine(space, x))))
            rest = ring.reduce(rest)
            double = self._spaces[self.double(alpha)]
            coords = np.concatenate([x, rest[:, :, double.rows, double.cols]], axis=2)
        rebuilt = self.t_batch(alpha, coords)
        ok = np.all(rebuilt == matrices, axis=(1, 2, 3))
        return coords, ok

    def decode(self, alpha, matrix):
        """@return: coordinates (f, dim), or None when the matrix is not in U_alpha"""
        coords, ok = self.decode_batch(alpha, matrix[None])
        return coords[0] if ok[0] else None

    def in_root_subgroup(self, alpha, matrices):
        single = matrices.ndim == 3
        _, ok = self.decode_batch(alpha, matrices[None] if single else matrices)
        return bool(ok[0]) if single else ok

    def module_elements(self, alpha):
        """All coordinate vectors of the root space (or 2-step module) of alpha, as (K, f, dim)."""
        return self._ring.vectors(self.module_dim(alpha))

    def root_points(self, alpha):
        """U_alpha(K) as a batch."""
        return self.t_batch(alpha, self.module_elements(alpha))

    def generators(self, alpha):
        """Images of the basis of g_alpha (and g_2alpha): t_alpha at unit coordinate vectors."""
        if alpha in self._generator_cache:
            return self._generator_cache[alpha]
        dim = self.module_dim(alpha)
        coords = np.zeros((dim, self._ring.factors, dim), dtype=np.int64)
        for k in range(dim):
            coords[k, :, k] = 1
        self._generator_cache[alpha] = self.t_batch(alpha, coords)
        return self._generator_cache[alpha]

    def all_generators(self, alphas=None):
        alphas = self.relative.roots if alphas is None else alphas
        batches = [self.generators(alpha) for alpha in alphas]
        if not batches:
            return np.zeros((0, self._ring.factors, self._size, self._size), dtype=np.int64)
        return np.concatenate(batches)

    # Lie algebra

    def lie_element(self, alpha, coords):
        """Element of g_alpha with coordinates coords (f, dim g_alpha)."""
        space = self.space(alpha)
        array = np.asarray(coords, dtype=np.int64).reshape(self._ring.factors, space.dim)
        return self._combine(space, array[None])[0]

    def bracket(self, alpha, x, beta, y):
        """
        [x, y] for x in g_alpha, y in g_beta, in the coordinates of g_{alpha+beta}.
        @return: coordinates (f, dim), or None when alpha + beta is not a relative root and the bracket vanishes
        """
        ring = self._ring
        gamma = alpha + beta
        a = self.lie_element(alpha, x)
        b = self.lie_element(beta, y)
        product = ring.reduce(np.matmul(a, b) - np.matmul(b, a))
        if gamma not in self._spaces:
            if product.any():
                raise WiringError("bracket of g_" + str(alpha) + " and g_" + str(beta) + " is non-zero outside "
                                  "the relative roots")
            return None
        space = self._spaces[gamma]
        coords = product[:, space.rows, space.cols]
        if not np.array_equal(self.lie_element(gamma, coords), product):
            raise WiringError("bracket of g_" + str(alpha) + " and g_" + str(beta) + " leaves g_" + str(gamma))
        return coords

    def _degenerate_count(self, alpha, beta, side):
        """Non-zero elements v of one side whose bracket with every basis element of the other side vanishes."""
        ring = self._ring
        fixed, free = (alpha, beta) if side == "second" else (beta, alpha)
        fixed_basis = self.space(fixed).matrices
        values = self._combine(self.space(free), ring.vectors(self.space(free).dim))
        count = 0
        for v in values:
            if not v.any():
                continue
            if side == "second":
                brackets = np.matmul(fixed_basis, v) - np.matmul(v, fixed_basis)
            else:
                brackets = np.matmul(v, fixed_basis) - np.matmul(fixed_basis, v)
            if not ring.reduce(brackets).any():
                count += 1
        return count

    def nondegeneracy_configuration(self, alpha, beta):
        rel = self.relative
        if alpha not in rel or beta not in rel or (alpha + beta) not in rel:
            raise PreconditionError(str(alpha) + " + " + str(beta) + " is not a relative root")
        cls = rel.length_class
        product = rel.inner(alpha, beta)
        proportional = product * product == rel.inner(alpha, alpha) * rel.inner(beta, beta)
        if rel.type_label == "BC" and cls[alpha] == cls[beta] == "ultrashort" and product == 0:
            return "orthogonal-ultrashort"
        if cls[alpha] == "long" and product < 0 and not proportional:
            if rel.rank == 2 and rel.label() in ("B_2", "C_2") and cls[beta] == "short":
                return "c2"
            return "long-obtuse"
        raise PreconditionError("(" + str(alpha) + ", " + str(beta) + ") is outside the non-degeneracy lemmas")

    def nondegeneracy_check(self, alpha, beta):
        """
        Exhaustive injectivity of y -> [., y] (and of x -> [x, .] for the two-sided configurations).
        @return: (configuration, boolean)
        """
        configuration = self.nondegeneracy_configuration(alpha, beta)
        ok = self._degenerate_count(alpha, beta, "second") == 0
        if configuration != "long-obtuse":
            ok = ok and self._degenerate_count(alpha, beta, "first") == 0
        return configuration, ok

    # Weyl elements

    def _natural(self, alpha):
        """Coordinates pairing the i-th row with the i-th column in every block of g_alpha."""
        space = self.space(alpha)
        lookup = {lead: k for k, lead in enumerate(space.leads)}
        blocks = {}
        for a, b in space.leads:
            blocks.setdefault((self._lambda[a], self._lambda[b]), []).append((a, b))
        coords = np.zeros((self._ring.factors, self.module_dim(alpha)), dtype=np.int64)
        for members in blocks.values():
            rows = sorted({a for a, _ in members})
            cols = sorted({b for _, b in members})
            for k in range(min(len(rows), len(cols))):
                if (rows[k], cols[k]) in lookup:
                    coords[:, lookup[(rows[k], cols[k])]] = 1
        return coords

    def _candidates(self, alpha):
        ring = self._ring
        natural = self._natural(alpha)
        seen = set()
        out = []
        for unit in ring.units():
            scaled = np.mod(natural * np.array(unit, dtype=np.int64).reshape(-1, 1),
                            np.array(ring.moduli, dtype=np.int64).reshape(-1, 1))
            key = scaled.tobytes()
            if key not in seen:
                seen.add(key)
                out.append(scaled)
        if ring.order ** self.module_dim(alpha) <= MODULE_SEARCH_LIMIT:
            for coords in self.module_elements(alpha):
                key = coords.tobytes()
                if key not in seen:
                    seen.add(key)
                    out.append(coords)
        return out

    def reflects(self, w, alpha):
        """True iff w U_beta w^-1 lies in U_{s_alpha(beta)} for every relative root beta (checked on generators)."""
        inverse = self.inverse(w)
        for beta in self.relative.roots:
            image = self._ring.mat_mul(self._ring.mat_mul(w[None], self.generators(beta)), inverse[None])
            if not self.in_root_subgroup(self.relative.reflect(alpha, beta), image).all():
                return False
        return True

    def weyl_element(self, alpha, limit=WEYL_SEARCH_LIMIT):
        """
        Searches w = t_alpha(e) t_-alpha(e') t_alpha(e'') acting on root subgroups as the reflection in alpha.
        @return: matrix (f, N, N)
        """
        forward = self._candidates(alpha)
        backward = self._candidates(-alpha)
        tried = 0
        for e in forward:
            first = self.t(alpha, e)
            for e2 in backward:
                middle = self._ring.mat_mul(first, self.t(-alpha, e2))
                for e3 in [e] + forward:
                    tried += 1
                    if tried > limit:
                        raise WiringError("no Weyl element for " + str(alpha) + " within " + str(limit) + " trials")
                    w = self._ring.mat_mul(middle, self.t(alpha, e3))
                    if self.reflects(w, alpha):
                        return w
        raise WiringError("no Weyl element for " + str(alpha) + " in U_a U_-a U_a")

    # 2-step modules

    def two_step_module(self, alpha):
        if self.double(alpha) is None:
            raise PreconditionError(str(alpha) + " is not ultrashort")
        return TwoStepModule(self, alpha)

    # Levi subgroup and centre

    def in_L(self, matrices):
        """Block-diagonal points of G."""
        single = matrices.ndim == 3
        batch = matrices[None] if single else matrices
        mask = np.array([[self._lambda[p] != self._lambda[q] for q in range(self._size)]
                         for p in range(self._size)])
        ok = ~np.any(batch[:, :, mask], axis=(1, 2)) & self.in_group(batch)
        return bool(ok[0]) if single else ok

    def L_points(self, cap=groups.DEFAULT_CAP):
        """
        L(K), enumerated as products of invertible diagonal blocks filtered by membership in G. For the form
        families only the strips of non-negative weight are enumerated; the block on the mirror strip s(S) is
        read off F^-1 (g^-1)^t F.
        @return: batch (k, f, N, N)
        """
        if self._levi is not None:
            return self._levi
        ring = self._ring
        mods = np.array(ring.moduli, dtype=np.int64)
        blocks = []
        mirrored = []
        total = 1
        for weight, positions in self.strips():
            if self._kind != "sl" and weight < tuple(0 for _ in weight):
                mirrored.extend(positions)
                continue
            width = len(positions)
            if ring.order ** (width * width) > cap:
                raise CapExceededError("block of width " + str(width) + " exceeds the cap " + str(cap))
            mats = ring.all_matrices(width)
            dets = ring.det(mats)
            invertible = mats[np.all(np.gcd(dets, mods) == 1, axis=1)]
            blocks.append((positions, invertible, ring.mat_inv(invertible)))
            total *= len(invertible)
        if total > cap:
            raise CapExceededError("L candidates " + str(total) + " exceed the cap " + str(cap))
        grids = np.meshgrid(*[np.arange(len(b[1])) for b in blocks], indexing="ij")
        out = np.broadcast_to(self.identity(), (total,) + self.identity().shape).copy()
        inverse = out.copy()
        for (positions, mats, inverses), grid in zip(blocks, grids):
            chosen = mats[grid.ravel()]
            chosen_inverse = inverses[grid.ravel()]
            for i, p in enumerate(positions):
                for j, q in enumerate(positions):
                    out[:, :, p, q] = chosen[:, :, i, j]
                    inverse[:, :, p, q] = chosen_inverse[:, :, i, j]
        if mirrored:
            partner = self.inverse(inverse)
            for p in mirrored:
                for q in mirrored:
                    out[:, :, p, q] = partner[:, :, p, q]
        self._levi = out[self.in_group(out)]
        return self._levi

    def center_points(self):
        """Scalar matrices in G."""
        ring = self._ring
        scalars = np.stack([ring.scalar_matrix(value, self._size) for value in ring.elements()])
        return scalars[self.in_group(scalars)]

    # Properties of the realization

    def chevalley_commutator_check(self, alpha, beta, cap=groups.DEFAULT_CAP, limit=4096):
        """
        [t_alpha(x), t_beta(y)] lies in the group generated by U_{i alpha + j beta}, i, j >= 1.
        @return: boolean
        """
        rel = self.relative
        product = rel.inner(alpha, beta)
        if product * product == rel.inner(alpha, alpha) * rel.inner(beta, beta):
            raise PreconditionError(str(alpha) + " and " + str(beta) + " are proportional")
        span = [alpha.scaled(i) + beta.scaled(j) for i in range(1, 5) for j in range(1, 5)]
        span = [gamma for gamma in span if gamma in rel]
        target = groups.generate(self, self.all_generators(span), cap=cap, provenance="commutator span")
        left = self.root_points(alpha) if len(self.module_elements(alpha)) ** 2 <= limit else self.generators(alpha)
        right = self.root_points(beta) if len(self.module_elements(beta)) ** 2 <= limit else self.generators(beta)
        for g in left:
            comms = self.commutator(np.broadcast_to(g, right.shape), right)
            if not target.contains(comms).all():
                return False
        return True

    def descriptor(self):
        """JSON-ready description: index, ring, size, form and the block positions of every root space."""
        spaces = {}
        for alpha, space in sorted(self._spaces.items()):
            spaces[str(alpha)] = {"length": self.relative.length_class[alpha],
                                  "positions": [list(lead) for lead in space.leads],
                                  "double": self.double(alpha) is not None}
        return {"index": self._index.name,
                "ring": self._ring.spec,
                "N": self._size,
                "kind": self._kind,
                "relative": self.relative_type(),
                "strips": [{"weight": [str(w) for w in weight], "positions": positions}
                           for weight, positions in self.strips()],
                "form": self._ring.to_rows(self._form) if self._form is not None else None,
                "root_spaces": spaces}

    def __str__(self):
        return ("Realization " + self._index.name + " over " + self._ring.spec + ": N = " + str(self._size)
                + ", relative " + self.relative_type())


def realize(index, ring):
    """
    @param index: TitsIndex of a classical family
    @param ring: FiniteRing
    @return: Realization
    """
    return Realization(index, ring)


class TwoStepModule:
    """
    The 2-step module g_alpha + g_2alpha of an ultrashort root, with the group law transported from matrix
    multiplication. Elements are coordinate arrays (f, dim); M_0 is the set of elements with zero g_alpha part.
    """

    def __init__(self, realization, alpha):
        self._realization = realization
        self._alpha = alpha
        self._ring = realization.ring
        self._d1, self._d2 = realization.module_dims(alpha)
        self._mods = np.array(self._ring.moduli, dtype=np.int64).reshape(-1, 1)

    @property
    def alpha(self):
        return self._alpha

    @property
    def ring(self):
        return self._ring

    @property
    def dims(self):
        return self._d1, self._d2

    def elements(self):
        return self._realization.module_elements(self._alpha)

    def central_elements(self):
        out = self.elements()
        return out[~np.any(out[:, :, :self._d1], axis=(1, 2))]

    def zero(self, count=1):
        return np.zeros((count, self._ring.factors, self._d1 + self._d2), dtype=np.int64)

    def _decode(self, matrices):
        coords, ok = self._realization.decode_batch(self._alpha, matrices)
        if not ok.all():
            raise WiringError("product left U_" + str(self._alpha))
        return coords

    def add(self, m, other):
        """m + other, batched over the first axis"""
        r = self._realization
        return self._decode(self._ring.mat_mul(r.t_batch(self._alpha, m), r.t_batch(self._alpha, other)))

    def neg(self, m):
        r = self._realization
        return self._decode(r.inverse(r.t_batch(self._alpha, m)))

    def act(self, m, k):
        """m . k: the g_alpha part scaled by k, the g_2alpha part by k^2"""
        k = np.array(self._ring.element(k), dtype=np.int64).reshape(-1, 1)
        out = m.copy()
        out[:, :, :self._d1] = m[:, :, :self._d1] * k
        out[:, :, self._d1:] = m[:, :, self._d1:] * k * k
        return np.mod(out, self._mods)

    def scale0(self, k, m0):
        """k m0 for the K-module structure of M_0"""
        k = np.array(self._ring.element(k), dtype=np.int64).reshape(-1, 1)
        return np.mod(m0 * k, self._mods)

    def tau(self, m):
        """tau(m) = -m + m.2 - m"""
        minus = self.neg(m)
        return self.add(self.add(minus, self.act(m, 2)), minus)

    def commutator(self, m, other):
        """[m, m'] = -m - m' + m + m'"""
        return self.add(self.add(self.neg(m), self.neg(other)), self.add(m, other))

    def is_central(self, m):
        return ~np.any(m[:, :, :self._d1], axis=(1, 2))


def _same(a, b):
    return bool(np.array_equal(a, b))


def two_step_axioms(module, limit=4096, seed=0):
    """
    Checks the defining identities of a 2-step module and their derived consequences on all pairs of elements
    (a seeded sample of pairs when there are more than `limit`).
    @param module: TwoStepModule
    @return: dict identity name -> boolean
    """
    ring = module.ring
    elements = module.elements()
    count = len(elements)
    if count * count <= limit:
        first, second = np.repeat(elements, count, axis=0), np.tile(elements, (count, 1, 1))
    else:
        rng = np.random.default_rng(seed)
        first = elements[rng.integers(0, count, limit)]
        second = elements[rng.integers(0, count, limit)]
    central = module.central_elements()
    scalars = ring.elements()
    zero = module.zero(len(elements))
    results = {}
    m0_first = np.repeat(central, count, axis=0)
    m_for_central = np.tile(elements, (len(central), 1, 1))
    results["central"] = _same(module.add(m_for_central, m0_first), module.add(m0_first, m_for_central))
    results["commutator_central"] = bool(module.is_central(module.commutator(first, second)).all())
    results["tau_central"] = bool(module.is_central(module.tau(elements)).all())
    automorphism = commutator_scaling = action_sum = m0_action = minus = tau_action = True
    tau = module.tau(elements)
    commutators = module.commutator(first, second)
    for k in scalars:
        automorphism &= _same(module.act(module.add(first, second), k),
                              module.add(module.act(first, k), module.act(second, k)))
        m0_action &= _same(module.act(central, k), module.scale0(ring.mul(k, k), central))
        minus &= _same(module.act(elements, ring.neg(k)),
                       module.add(module.scale0(ring.mul(k, k), tau), module.neg(module.act(elements, k))))
        tau_action &= _same(module.tau(module.act(elements, k)), module.scale0(ring.mul(k, k), tau))
        for k2 in scalars:
            commutator_scaling &= _same(module.commutator(module.act(first, k), module.act(second, k2)),
                                        module.scale0(ring.mul(k, k2), commutators))
            action_sum &= _same(module.act(elements, ring.add(k, k2)),
                                module.add(module.add(module.act(elements, k),
                                                      module.scale0(ring.mul(k, k2), tau)),
                                           module.act(elements, k2)))
    results["action_automorphism"] = automorphism
    results["commutator_scaling"] = commutator_scaling
    results["action_sum"] = action_sum
    results["m0_action"] = m0_action
    results["m_times_zero"] = _same(module.act(elements, 0), zero)
    results["m_times_one"] = _same(module.act(elements, 1), elements)
    results["m_times_minus_k"] = minus
    results["tau_zero"] = _same(module.tau(module.zero()), module.zero())
    results["tau_sum"] = _same(module.tau(module.add(first, second)),
                               module.add(module.add(module.tau(first), commutators), module.tau(second)))
    results["tau_neg"] = _same(module.tau(module.neg(elements)), module.neg(tau))
    results["tau_action"] = tau_action
    results["tau_m0"] = _same(module.tau(central), module.scale0(2, central))
    return results
