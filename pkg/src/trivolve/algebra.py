"""Finite-dimensional complex associative algebras as structure-constant tensors.

An algebra of dimension ``n`` is the tensor ``c[i][j][k]`` with
``b_i . b_j = sum_k c[i][j][k] b_k`` over a labelled basis.  Everything
downstream (star maps, decompositions, duals) reduces to dense linear
algebra against this tensor.

All values are immutable after construction; operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AlgebraMismatch,
    AssociativityViolation,
    IdentityMismatch,
    NotAGroup,
    NotAnIdeal,
    NotASubalgebra,
    UsageError,
)
from .linalg import (
    EPS,
    EPS_RANK,
    as_complex,
    echelon_rows,
    freeze,
    max_abs,
    reduce_vector,
    solve_exact,
)

NORM_ELL1 = "ell1"
NORM_OPNORM = "left_regular_operator"


@dataclass(frozen=True)
class Algebra:
    """A complex associative algebra given by structure constants.

    ``structure[i, j, k]`` is the ``b_k`` coefficient of ``b_i . b_j``.
    ``identity_coords`` caches the (two-sided) identity when one exists.
    """

    dim: int
    basis_labels: tuple[str, ...]
    structure: np.ndarray
    identity_coords: np.ndarray | None = None
    norm_kind: str = NORM_ELL1

    @property
    def identity(self) -> "Element | None":
        if self.identity_coords is None:
            return None
        return Element(self.identity_coords, self)

    def element(self, coords) -> "Element":
        coords = as_complex(coords).reshape(-1)
        if coords.shape != (self.dim,):
            raise AlgebraMismatch(
                f"coordinate vector of length {coords.shape[0]} for algebra of dim {self.dim}")
        return Element(freeze(coords), self)

    def basis_element(self, i: int) -> "Element":
        coords = np.zeros(self.dim, dtype=complex)
        coords[i] = 1.0
        return Element(freeze(coords), self)

    def zero(self) -> "Element":
        return Element(freeze(np.zeros(self.dim, dtype=complex)), self)

    def basis(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def is_unital(self) -> bool:
        return self.identity_coords is not None

    def __repr__(self) -> str:  # keep reprs short; tensors are noisy
        return f"Algebra(dim={self.dim}, labels={list(self.basis_labels)!r})"


@dataclass(frozen=True)
class Element:
    """Coordinate vector of an algebra element in the canonical basis."""

    coords: np.ndarray
    algebra: Algebra

    def __post_init__(self):
        object.__setattr__(self, "coords", freeze(self.coords))

    def __add__(self, other: "Element") -> "Element":
        _require_same_algebra(self.algebra, other.algebra)
        return Element(self.coords + other.coords, self.algebra)

    def __sub__(self, other: "Element") -> "Element":
        _require_same_algebra(self.algebra, other.algebra)
        return Element(self.coords - other.coords, self.algebra)

    def __neg__(self) -> "Element":
        return Element(-self.coords, self.algebra)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self.algebra, self, other)
        return Element(complex(other) * self.coords, self.algebra)

    def __rmul__(self, scalar) -> "Element":
        return Element(complex(scalar) * self.coords, self.algebra)

    def norm(self) -> float:
        return element_norm(self)

    def allclose(self, other: "Element", tol: float = EPS) -> bool:
        return max_abs(self.coords - other.coords) <= tol

    def __repr__(self) -> str:
        return f"Element({np.array2string(self.coords, precision=6)})"


@dataclass(frozen=True)
class Subspace:
    """Subspace of an algebra's underlying vector space.

    Columns of ``basis`` span the subspace.  A reduced echelon spanning
    set is cached so membership tests are a single back-substitution.
    """

    basis: np.ndarray
    algebra: Algebra
    echelon: np.ndarray = field(init=False, repr=False)
    pivots: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        basis = as_complex(self.basis)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        if basis.shape[0] != self.algebra.dim:
            raise AlgebraMismatch(
                f"subspace basis has {basis.shape[0]} rows for algebra of dim {self.algebra.dim}")
        ech, piv = echelon_rows(basis.T)
        object.__setattr__(self, "basis", freeze(basis))
        object.__setattr__(self, "echelon", freeze(ech))
        object.__setattr__(self, "pivots", tuple(piv))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def canonical_columns(self) -> np.ndarray:
        """Echelon spanning vectors as columns (deterministic basis)."""
        return self.echelon.T.copy()

    def contains(self, vector, tol: float = EPS) -> bool:
        return self.residual(vector) <= tol

    def residual(self, vector) -> float:
        v = as_complex(vector).reshape(-1)
        return max_abs(reduce_vector(v, self.echelon, list(self.pivots)))

    def contains_subspace(self, other: "Subspace", tol: float = EPS) -> bool:
        return all(self.contains(col, tol) for col in other.basis.T)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} of {self.algebra.dim})"


def _require_same_algebra(a: Algebra, b: Algebra) -> None:
    if not algebras_compatible(a, b):
        raise AlgebraMismatch("operands belong to different algebras")


def algebras_compatible(a: Algebra, b: Algebra, tol: float = EPS) -> bool:
    """Same object, or structurally identical within tolerance."""
    if a is b:
        return True
    return a.dim == b.dim and max_abs(a.structure - b.structure) <= tol


def _associativity_check(structure: np.ndarray, eps: float) -> None:
    left = np.einsum("ijm,mkl->ijkl", structure, structure)
    right = np.einsum("jkm,iml->ijkl", structure, structure)
    gap = np.abs(left - right)
    worst = float(gap.max()) if gap.size else 0.0
    if worst > eps:
        i, j, k, l = np.unravel_index(int(np.argmax(gap)), gap.shape)
        raise AssociativityViolation(
            f"associativity fails at (i,j,k,l)=({i},{j},{k},{l}) with residual {worst:.3e}",
            law="(b_i b_j) b_k = b_i (b_j b_k)",
            residual=worst,
            details={"quadruple": [int(i), int(j), int(k), int(l)]},
        )


def _find_identity(structure: np.ndarray, eps: float) -> np.ndarray | None:
    # e . b_i = b_i and b_i . e = b_i: stack both families of linear systems
    n = structure.shape[0]
    if n == 0:
        return None
    rows = []
    rhs = []
    for i in range(n):
        rows.append(structure[:, i, :].T)  # (k, m): coeff of e_m in b_m b_i
        rhs.append(np.eye(n, dtype=complex)[:, i])
        rows.append(structure[i, :, :].transpose(1, 0))  # b_i . e
        rhs.append(np.eye(n, dtype=complex)[:, i])
    system = np.vstack(rows)
    target = np.concatenate(rhs)
    e, residual = solve_exact(system, target)
    if residual <= eps:
        return e
    return None


def make_algebra(dim: int, structure, labels: Sequence[str] | None = None,
                 declared_identity=None, *, norm_kind: str = NORM_ELL1,
                 eps: float = EPS) -> Algebra:
    """Build an algebra, verifying associativity and detecting the identity.

    ``structure`` is a dim^3 complex tensor.  If ``declared_identity`` is
    given it is verified (IdentityMismatch on failure); otherwise the
    identity is auto-detected by solving ``e . b_i = b_i = b_i . e``.
    """
    structure = as_complex(structure)
    if structure.shape != (dim, dim, dim):
        raise UsageError(f"structure tensor must have shape {(dim, dim, dim)}, got {structure.shape}")
    if labels is None:
        labels = tuple(f"b{i}" for i in range(dim))
    else:
        labels = tuple(str(s) for s in labels)
        if len(labels) != dim:
            raise UsageError(f"{len(labels)} labels for dim {dim}")
    if norm_kind not in (NORM_ELL1, NORM_OPNORM):
        raise UsageError(f"unknown norm kind {norm_kind!r}")
    _associativity_check(structure, eps)

    if declared_identity is not None:
        e = as_complex(declared_identity).reshape(-1)
        worst = 0.0
        for i in range(dim):
            basis_vec = np.zeros(dim, dtype=complex)
            basis_vec[i] = 1.0
            left = np.einsum("m,mk->k", e, structure[:, i, :])
            right = np.einsum("m,mk->k", e, structure[i, :, :])
            worst = max(worst, max_abs(left - basis_vec), max_abs(right - basis_vec))
        if worst > eps:
            raise IdentityMismatch(
                f"declared identity fails with residual {worst:.3e}",
                law="e b_i = b_i = b_i e", residual=worst)
        identity = freeze(e)
    else:
        found = _find_identity(structure, eps)
        identity = freeze(found) if found is not None else None

    return Algebra(dim=dim, basis_labels=labels, structure=freeze(structure),
                   identity_coords=identity, norm_kind=norm_kind)


def multiply(algebra: Algebra, x: Element, y: Element) -> Element:
    """Product ``x . y`` via the structure tensor."""
    if not (algebras_compatible(algebra, x.algebra) and algebras_compatible(algebra, y.algebra)):
        raise AlgebraMismatch("multiply: elements do not belong to the given algebra")
    coords = np.einsum("i,j,ijk->k", x.coords, y.coords, algebra.structure)
    return Element(coords, algebra)


def left_mult_matrix(algebra: Algebra, x) -> np.ndarray:
    """Matrix of ``y -> x . y`` (the left regular representation of x)."""
    coords = x.coords if isinstance(x, Element) else as_complex(x)
    return np.einsum("j,jik->ki", coords, algebra.structure)


def right_mult_matrix(algebra: Algebra, x) -> np.ndarray:
    """Matrix of ``y -> y . x``."""
    coords = x.coords if isinstance(x, Element) else as_complex(x)
    return np.einsum("j,ijk->ki", coords, algebra.structure)


def is_commutative(algebra: Algebra, tol: float = EPS) -> bool:
    return max_abs(algebra.structure - algebra.structure.transpose(1, 0, 2)) <= tol


def element_norm(x: Element) -> float:
    """Element norm under the owning algebra's convention."""
    if x.algebra.norm_kind == NORM_ELL1:
        return float(np.sum(np.abs(x.coords)))
    return float(np.linalg.norm(left_mult_matrix(x.algebra, x), ord=2))


# ---------------------------------------------------------------------------
# standard constructors
# ---------------------------------------------------------------------------

def function_algebra(n: int, *, norm_kind: str = NORM_ELL1) -> Algebra:
    """C^n with the pointwise product."""
    structure = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        structure[i, i, i] = 1.0
    labels = [f"e{i + 1}" for i in range(n)]
    return make_algebra(n, structure, labels, declared_identity=np.ones(n), norm_kind=norm_kind)


def matrix_algebra(n: int, *, norm_kind: str = NORM_ELL1) -> Algebra:
    """Full matrix algebra M_n in the matrix-unit basis E_ij (row-major)."""
    dim = n * n
    structure = np.zeros((dim, dim, dim), dtype=complex)
    def idx(i, j):
        return i * n + j
    for i, j, k, l in iter_product(range(n), repeat=4):
        if j == k:
            structure[idx(i, j), idx(k, l), idx(i, l)] = 1.0
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    identity = np.zeros(dim, dtype=complex)
    for i in range(n):
        identity[idx(i, i)] = 1.0
    return make_algebra(dim, structure, labels, declared_identity=identity, norm_kind=norm_kind)


def _verify_group_table(table: np.ndarray) -> int:
    """Check group axioms on a multiplication table; return identity index."""
    n = table.shape[0]
    if table.shape != (n, n):
        raise NotAGroup("group table must be square", law="group table shape")
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("table entries must index group elements", law="closure")
    identity = None
    for e in range(n):
        if all(table[e, i] == i and table[i, e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no identity element in table", law="identity axiom")
    for i in range(n):
        row = set(int(v) for v in table[i])
        col = set(int(table[j, i]) for j in range(n))
        if row != set(range(n)) or col != set(range(n)):
            raise NotAGroup(f"element {i} has no inverse (table not a Latin square)",
                            law="inverse axiom")
    for i, j, k in iter_product(range(n), repeat=3):
        if table[table[i, j], k] != table[i, table[j, k]]:
            raise NotAGroup(f"associativity fails at ({i},{j},{k})", law="associativity")
    return identity


def group_algebra(table, labels: Sequence[str] | None = None, *,
                  norm_kind: str = NORM_ELL1) -> Algebra:
    """Group algebra C[G] from a multiplication table of element indices."""
    table = np.asarray(table, dtype=int)
    identity_idx = _verify_group_table(table)
    n = table.shape[0]
    structure = np.zeros((n, n, n), dtype=complex)
    for i, j in iter_product(range(n), repeat=2):
        structure[i, j, table[i, j]] = 1.0
    if labels is None:
        labels = [f"g{i}" for i in range(n)]
        labels[identity_idx] = "e"
    identity = np.zeros(n, dtype=complex)
    identity[identity_idx] = 1.0
    return make_algebra(n, structure, labels, declared_identity=identity, norm_kind=norm_kind)


def cyclic_group_table(n: int) -> np.ndarray:
    return np.fromfunction(lambda i, j: (i + j) % n, (n, n), dtype=int)


def product_algebra(a: Algebra, b: Algebra) -> Algebra:
    """Direct product with coordinatewise operations."""
    n, m = a.dim, b.dim
    structure = np.zeros((n + m, n + m, n + m), dtype=complex)
    structure[:n, :n, :n] = a.structure
    structure[n:, n:, n:] = b.structure
    labels = [f"{s}.a" for s in a.basis_labels] + [f"{s}.b" for s in b.basis_labels]
    identity = None
    if a.is_unital() and b.is_unital():
        identity = np.concatenate([a.identity_coords, b.identity_coords])
    return make_algebra(n + m, structure, labels, declared_identity=identity,
                        norm_kind=a.norm_kind)


def opposite_algebra(a: Algebra) -> Algebra:
    """Opposite algebra: c_op[i][j][k] = c[j][i][k]."""
    return make_algebra(a.dim, a.structure.transpose(1, 0, 2), a.basis_labels,
                        declared_identity=a.identity_coords, norm_kind=a.norm_kind)


def construct_standard(kind: str, **params) -> Algebra:
    """Dispatcher over the named constructors (see the individual helpers)."""
    if kind == "function":
        return function_algebra(int(params["n"]))
    if kind == "matrix":
        return matrix_algebra(int(params["n"]))
    if kind == "group":
        return group_algebra(params["table"], params.get("labels"))
    if kind == "product":
        return product_algebra(params["a"], params["b"])
    if kind == "opposite":
        return opposite_algebra(params["a"])
    raise UsageError(f"unknown standard algebra kind {kind!r}")


# ---------------------------------------------------------------------------
# subspace analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceFlags:
    is_subalgebra: bool
    is_left_ideal: bool
    is_right_ideal: bool


def analyze_subspace(algebra: Algebra, s: Subspace, tol: float = EPS) -> SubspaceFlags:
    """Decide subalgebra / left ideal / right ideal by basis products."""
    cols = s.canonical_columns().T
    sub = True
    for u in cols:
        for v in cols:
            prod = np.einsum("i,j,ijk->k", u, v, algebra.structure)
            if not s.contains(prod, tol):
                sub = False
                break
        if not sub:
            break
    left = True   # A . S subset S
    right = True  # S . A subset S
    for i in range(algebra.dim):
        for v in cols:
            if left:
                prod = np.einsum("j,jk->k", v, algebra.structure[i])
                if not s.contains(prod, tol):
                    left = False
            if right:
                prod = np.einsum("a,ak->k", v, algebra.structure[:, i, :])
                if not s.contains(prod, tol):
                    right = False
        if not left and not right:
            break
    return SubspaceFlags(is_subalgebra=sub, is_left_ideal=left, is_right_ideal=right)


def subalgebra_closure(algebra: Algebra, generators: Iterable) -> Subspace:
    """Smallest multiplicatively closed subspace containing the generators.

    Span growth terminates because rank is bounded by the dimension.
    """
    vecs = []
    for g in generators:
        coords = g.coords if isinstance(g, Element) else as_complex(g).reshape(-1)
        vecs.append(coords)
    if not vecs:
        raise UsageError("subalgebra_closure requires at least one generator")
    current = Subspace(np.column_stack(vecs), algebra)
    while True:
        cols = current.canonical_columns()
        new_vecs = [cols]
        for u in cols.T:
            for v in cols.T:
                new_vecs.append(
                    np.einsum("i,j,ijk->k", u, v, algebra.structure).reshape(-1, 1))
        grown = Subspace(np.hstack(new_vecs), algebra)
        if grown.dim == current.dim:
            return current
        current = grown


def induced_subalgebra(algebra: Algebra, s: Subspace, *, eps: float = EPS,
                       labels: Sequence[str] | None = None) -> tuple[Algebra, np.ndarray]:
    """Algebra structure on a multiplicatively closed subspace.

    Returns the induced algebra on the canonical echelon basis of ``s``
    together with the embedding columns (dim x k).  Raises
    NotASubalgebra when a basis product escapes the span.
    """
    q = s.canonical_columns()
    k = q.shape[1]
    if k == 0:
        return make_algebra(0, np.zeros((0, 0, 0)), [], norm_kind=algebra.norm_kind), q
    # all pairwise products at once: columns indexed by the (i, j) pair
    products = np.einsum("ai,bj,abc->cij", q, q, algebra.structure).reshape(algebra.dim, k * k)
    coeffs, residual = solve_exact(q, products)
    if residual > eps:
        raise NotASubalgebra(
            f"a product of basis vectors escapes the subspace (residual {residual:.3e})",
            law="closure under multiplication", residual=residual)
    structure = coeffs.reshape(k, k, k).transpose(1, 2, 0)
    if labels is None:
        labels = [algebra.basis_labels[p] for p in s.pivots]
    sub = make_algebra(k, structure, labels, norm_kind=algebra.norm_kind, eps=eps)
    return sub, q


def quotient(algebra: Algebra, s: Subspace, tol: float = EPS):
    """Quotient by a two-sided ideal, with the certified quotient map.

    The complement is spanned by the coordinates that are not pivots of
    the ideal's echelon form, which makes the quotient basis labelling
    reproducible.  Returns ``(quotient_algebra, quotient_map)``.
    """
    from .starmap import AlgMap, make_map  # deferred: starmap imports algebra

    flags = analyze_subspace(algebra, s, tol)
    if not (flags.is_left_ideal and flags.is_right_ideal):
        witness = _ideal_escape_witness(algebra, s, tol)
        raise NotAnIdeal(
            f"subspace is not a two-sided ideal: {witness}",
            law="A.S and S.A contained in S")
    n = algebra.dim
    pivots = list(s.pivots)
    free = [i for i in range(n) if i not in pivots]
    k = len(free)
    if k == 0:
        raise UsageError("quotient by the whole algebra is trivial")

    def reduce_to_free(vec: np.ndarray) -> np.ndarray:
        reduced = reduce_vector(vec, s.echelon, pivots)
        return reduced[free]

    structure = np.zeros((k, k, k), dtype=complex)
    for a, i in enumerate(free):
        for b, j in enumerate(free):
            structure[a, b, :] = reduce_to_free(algebra.structure[i, j, :].copy())
    labels = [algebra.basis_labels[i] for i in free]
    quot = make_algebra(k, structure, labels, norm_kind=algebra.norm_kind)

    q_matrix = np.zeros((k, n), dtype=complex)
    for i in range(n):
        basis_vec = np.zeros(n, dtype=complex)
        basis_vec[i] = 1.0
        q_matrix[:, i] = reduce_to_free(basis_vec)
    qmap = make_map(q_matrix, conjugating=False, source=algebra, target=quot)

    # certify q(xy) = q(x)q(y) on all basis pairs
    worst = 0.0
    for i in range(n):
        for j in range(n):
            lhs = q_matrix @ algebra.structure[i, j, :]
            rhs = np.einsum("a,b,abk->k", q_matrix[:, i], q_matrix[:, j], structure)
            worst = max(worst, max_abs(lhs - rhs))
    if worst > tol:
        raise NotAnIdeal(f"quotient map fails multiplicativity (residual {worst:.3e})",
                         law="q(xy) = q(x) q(y)", residual=worst)
    return quot, qmap


def _ideal_escape_witness(algebra: Algebra, s: Subspace, tol: float) -> str:
    cols = s.canonical_columns()
    for i in range(algebra.dim):
        for j, v in enumerate(cols.T):
            left = np.einsum("j,jk->k", v, algebra.structure[i])
            if not s.contains(left, tol):
                return f"b_{i} . s_{j} escapes the subspace"
            right = np.einsum("a,ak->k", v, algebra.structure[:, i, :])
            if not s.contains(right, tol):
                return f"s_{j} . b_{i} escapes the subspace"
    return "escape witness not found at tolerance"


def unitize_algebra(algebra: Algebra) -> Algebra:
    """Adjoin a unit: product (l, x)(m, y) = (lm, ly + mx + xy)."""
    n = algebra.dim
    structure = np.zeros((n + 1, n + 1, n + 1), dtype=complex)
    structure[0, 0, 0] = 1.0
    for i in range(n):
        structure[0, i + 1, i + 1] = 1.0
        structure[i + 1, 0, i + 1] = 1.0
    structure[1:, 1:, 1:] = algebra.structure
    labels = ["1"] + [str(s) for s in algebra.basis_labels]
    identity = np.zeros(n + 1, dtype=complex)
    identity[0] = 1.0
    return make_algebra(n + 1, structure, labels, declared_identity=identity,
                        norm_kind=algebra.norm_kind)
