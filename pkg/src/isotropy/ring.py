"""
Finite commutative rings Z/m_1 x ... x Z/m_k and exact matrix algebra over them.

A ring element is a tuple of residues, one per factor. A matrix over the ring is a numpy int64 array of shape
(f, N, N) holding one residue matrix per factor; a batch of matrices has shape (k, f, N, N). Every operation
reduces modulo the factor moduli, so values stay in 0..m_i - 1 and batches can be hashed to canonical int64
codes by mixed-radix encoding.

RING SPECS
==========

    Z4      Z/4
    F5      Z/5 (F_p needs p prime)
    Z2xZ3   Z/2 x Z/3
"""

from functools import reduce
import itertools
import math
import operator
import re

import numpy as np
import sympy

from .errors import ConstructionError, RingError

MAX_CODE = 2 ** 62


class FiniteRing:
    """
    A finite product of rings Z/m.
    """

    def __init__(self, moduli, spec=None):
        """
        @param moduli: sequence of integers >= 2
        @param spec: display string
        """
        moduli = tuple(int(m) for m in moduli)
        if not moduli or any(m < 2 for m in moduli):
            raise ConstructionError("ring moduli must be >= 2, got " + str(moduli))
        self._moduli = moduli
        self._spec = spec or "x".join("Z" + str(m) for m in moduli)
        self._column = np.array(moduli, dtype=np.int64).reshape(-1, 1, 1)

    @property
    def moduli(self):
        return self._moduli

    @property
    def spec(self):
        return self._spec

    @property
    def factors(self):
        return len(self._moduli)

    @property
    def order(self):
        return reduce(operator.mul, self._moduli, 1)

    @property
    def column(self):
        """Moduli shaped (f, 1, 1) for broadcasting against matrices"""
        return self._column

    def is_local(self):
        """True iff the ring is Z/p^k for a prime p."""
        return len(self._moduli) == 1 and len(sympy.factorint(self._moduli[0])) == 1

    def is_semilocal(self):
        return True

    def is_field(self):
        return len(self._moduli) == 1 and sympy.isprime(self._moduli[0])

    def characteristic(self):
        return reduce(lambda a, b: a * b // math.gcd(a, b), self._moduli, 1)

    # Elements

    def element(self, value):
        """
        Coerces an integer or a residue tuple into a ring element.
        @param value: int or tuple
        @return: tuple of residues
        """
        if isinstance(value, (int, np.integer)):
            return tuple(int(value) % m for m in self._moduli)
        value = tuple(int(v) for v in value)
        if len(value) != len(self._moduli) or any(not 0 <= v < m for v, m in zip(value, self._moduli)):
            raise RingError(str(value) + " is not an element of " + self._spec)
        return value

    def zero(self):
        return (0,) * len(self._moduli)

    def one(self):
        return (1,) * len(self._moduli)

    def elements(self):
        return [tuple(e) for e in itertools.product(*(range(m) for m in self._moduli))]

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self._moduli))

    def sub(self, a, b):
        return tuple((x - y) % m for x, y, m in zip(a, b, self._moduli))

    def neg(self, a):
        return tuple(-x % m for x, m in zip(a, self._moduli))

    def mul(self, a, b):
        return tuple(x * y % m for x, y, m in zip(a, b, self._moduli))

    def is_zero(self, a):
        return not any(a)

    def is_unit(self, a):
        return all(math.gcd(x, m) == 1 for x, m in zip(a, self._moduli))

    def inverse(self, a):
        if not self.is_unit(a):
            raise RingError(str(a) + " is not a unit of " + self._spec)
        return tuple(pow(x, -1, m) for x, m in zip(a, self._moduli))

    def units(self):
        return [a for a in self.elements() if self.is_unit(a)]

    def two_is_unit(self):
        return self.is_unit(self.element(2))

    def vectors(self, dim):
        """
        All vectors of R^dim.
        @param dim: length
        @return: array (order^dim, f, dim) of residues
        """
        per_factor = []
        for m in self._moduli:
            count = m ** dim
            rest = np.arange(count, dtype=np.int64)
            digits = np.zeros((count, dim), dtype=np.int64)
            for pos in range(dim):
                digits[:, pos] = rest % m
                rest //= m
            per_factor.append(digits)
        grids = np.meshgrid(*[np.arange(len(d)) for d in per_factor], indexing="ij")
        return np.stack([per_factor[f][grids[f].ravel()] for f in range(len(per_factor))], axis=1)

    def check_axioms(self, limit=64):
        """
        Exhaustive check of the commutative ring axioms.
        @param limit: largest order checked
        @return: True iff all axioms hold
        """
        if self.order > limit:
            raise RingError("exhaustive axiom check needs |R| <= " + str(limit))
        els = self.elements()
        zero, one = self.zero(), self.one()
        for a in els:
            if self.add(a, zero) != a or self.mul(a, one) != a or self.add(a, self.neg(a)) != zero:
                return False
            for b in els:
                if self.add(a, b) != self.add(b, a) or self.mul(a, b) != self.mul(b, a):
                    return False
                for c in els:
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                        return False
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        return False
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)):
                        return False
        return True

    # Matrices

    def reduce(self, array):
        """Reduces an array of shape (..., f, N, N) modulo the factor moduli."""
        return np.mod(array, self._column)

    def identity(self, size):
        return np.broadcast_to(np.eye(size, dtype=np.int64), (self.factors, size, size)).copy()

    def zeros(self, size):
        return np.zeros((self.factors, size, size), dtype=np.int64)

    def scalar_matrix(self, value, size):
        value = np.array(self.element(value), dtype=np.int64).reshape(-1, 1, 1)
        return self.reduce(self.identity(size) * value)

    def elementary(self, size, i, j, value):
        """value * E_ij (0-based positions)"""
        out = self.zeros(size)
        out[:, i, j] = self.element(value)
        return out

    def matrix(self, rows):
        """
        Builds a matrix from nested rows of ring elements (ints or residue tuples).
        @return: array (f, N, N)
        """
        size = len(rows)
        out = self.zeros(size)
        for i, row in enumerate(rows):
            if len(row) != size:
                raise RingError("matrix rows must form a square")
            for j, value in enumerate(row):
                out[:, i, j] = self.element(value)
        return out

    def to_rows(self, matrix):
        """Nested lists of residue tuples (plain ints over a single factor) for JSON."""
        size = matrix.shape[-1]
        if self.factors == 1:
            return [[int(matrix[0, i, j]) for j in range(size)] for i in range(size)]
        return [[[int(matrix[f, i, j]) for f in range(self.factors)] for j in range(size)] for i in range(size)]

    def mat_mul(self, a, b):
        return self.reduce(np.matmul(a, b))

    def mat_add(self, a, b):
        return self.reduce(a + b)

    def scale(self, value, matrix):
        """value * matrix for a ring element value"""
        value = np.array(self.element(value), dtype=np.int64).reshape(-1, 1, 1)
        return self.reduce(matrix * value)

    def det(self, matrices):
        """
        Determinants by dynamic programming over column subsets (Laplace expansion along rows).
        @param matrices: array (f, N, N) or batch (k, f, N, N)
        @return: ring element, or array (k, f) of residues for a batch
        """
        single = matrices.ndim == 3
        batch = matrices[None] if single else matrices
        size = batch.shape[-1]
        mods = np.array(self._moduli, dtype=np.int64)
        table = {0: np.ones(batch.shape[:2], dtype=np.int64)}
        for mask in range(1 << size):
            if mask not in table:
                continue
            row = bin(mask).count("1")
            if row == size:
                continue
            for col in range(size):
                if mask >> col & 1:
                    continue
                higher = bin(mask >> (col + 1)).count("1")
                term = table[mask] * batch[:, :, row, col]
                if higher % 2:
                    term = -term
                key = mask | 1 << col
                table[key] = np.mod(table.get(key, 0) + term, mods)
        result = np.mod(table[(1 << size) - 1], mods)
        if single:
            return tuple(int(v) for v in result[0])
        return result

    def _cofactor_matrix(self, batch):
        size = batch.shape[-1]
        adjugate = np.zeros_like(batch)
        mods = np.array(self._moduli, dtype=np.int64)
        if size == 1:
            adjugate[..., 0, 0] = 1
            return adjugate
        for i in range(size):
            for j in range(size):
                minor = np.delete(np.delete(batch, i, axis=-2), j, axis=-1)
                value = self.det(minor)
                if (i + j) % 2:
                    value = -value
                adjugate[:, :, j, i] = np.mod(value, mods)
        return adjugate

    def mat_inv(self, matrices):
        """
        Inverse through the adjugate.
        @param matrices: array (f, N, N) or batch (k, f, N, N)
        @return: inverse(s) of the same shape
        """
        single = matrices.ndim == 3
        batch = matrices[None] if single else matrices
        dets = self.det(batch)
        inverses = np.zeros_like(dets)
        for k in range(dets.shape[0]):
            element = tuple(int(v) for v in dets[k])
            if not self.is_unit(element):
                raise RingError("determinant " + str(element) + " is not a unit of " + self._spec)
            inverses[k] = self.inverse(element)
        out = self.reduce(self._cofactor_matrix(batch) * inverses[:, :, None, None])
        return out[0] if single else out

    def all_matrices(self, size):
        """Every size x size matrix, as a batch in code order."""
        count = self.order ** (size * size)
        self.code_weights(size)
        return self.decode(np.arange(count, dtype=np.int64), size)

    def is_identity(self, matrices):
        size = matrices.shape[-1]
        return np.all(matrices == np.eye(size, dtype=np.int64), axis=(-3, -2, -1))

    # Canonical codes

    def code_weights(self, size):
        """
        Mixed-radix weights for the f*N*N entries of a matrix.
        @return: int64 array of weights, one per flattened entry
        """
        radices = np.repeat(np.array(self._moduli, dtype=object), size * size)
        total = reduce(operator.mul, (int(r) for r in radices), 1)
        if total > MAX_CODE:
            raise RingError("matrices of size " + str(size) + " over " + self._spec
                            + " are too large for int64 codes")
        weights = np.ones(len(radices), dtype=np.int64)
        for pos in range(1, len(radices)):
            weights[pos] = weights[pos - 1] * int(radices[pos - 1])
        return weights

    def encode(self, matrices):
        """
        @param matrices: array (f, N, N) or batch (k, f, N, N)
        @return: int64 code, or array of codes for a batch
        """
        single = matrices.ndim == 3
        batch = matrices[None] if single else matrices
        weights = self.code_weights(batch.shape[-1])
        codes = batch.reshape(batch.shape[0], -1) @ weights
        return int(codes[0]) if single else codes

    def decode(self, codes, size):
        """
        @param codes: int64 array of codes
        @param size: matrix size N
        @return: batch (k, f, N, N)
        """
        codes = np.asarray(codes, dtype=np.int64).reshape(-1)
        radices = np.repeat(np.array(self._moduli, dtype=np.int64), size * size)
        digits = np.zeros((codes.shape[0], len(radices)), dtype=np.int64)
        rest = codes.copy()
        for pos, radix in enumerate(radices):
            digits[:, pos] = rest % radix
            rest //= radix
        return digits.reshape(codes.shape[0], self.factors, size, size)

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and self._moduli == other._moduli

    def __hash__(self):
        return hash(self._moduli)

    def __str__(self):
        kind = "field" if self.is_field() else ("local" if self.is_local() else "semi-local")
        return "FiniteRing " + self._spec + " (order " + str(self.order) + ", " + kind + ")"


def make_ring(moduli):
    """
    @param moduli: iterable of integers >= 2
    @return: FiniteRing
    """
    return FiniteRing(moduli)


_FACTOR = re.compile(r"^([ZF])(\d+)$")


def parse_ring(spec):
    """
    Parses a ring spec such as 'Z4', 'F5' or 'Z2xZ3'.
    @return: FiniteRing
    """
    moduli = []
    for part in spec.strip().split("x"):
        match = _FACTOR.match(part.strip())
        if not match:
            raise ConstructionError("cannot parse ring spec " + repr(spec))
        letter, value = match.group(1), int(match.group(2))
        if letter == "F" and not sympy.isprime(value):
            raise ConstructionError("F" + str(value) + " is not a prime field; use Z" + str(value))
        moduli.append(value)
    return FiniteRing(moduli, spec=spec.strip())
