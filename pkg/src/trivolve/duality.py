"""Dual module actions, Arens products, involution extension, characters, TIMs.

Functionals live in the dual basis, paired bilinearly: ``<f, x> = sum f_i x_i``.
For an introverted subspace ``X`` of the dual, ``X*`` is realized as the
quotient of the second dual by the annihilator of ``X``, with the fixed
complement spanned by the non-pivot coordinates of the annihilator's
echelon form.  Both Arens products are computed by unwinding their
three-step definitions literally on dual bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .algebra import (
    Algebra,
    Element,
    Subspace,
    algebras_compatible,
    group_algebra,
    is_commutative,
    left_mult_matrix,
    make_algebra,
    right_mult_matrix,
)
from .errors import (
    AlgebraMismatch,
    CertificationFailure,
    CharacterNotInX,
    NotAnInvolution,
    NotArensRegular,
    NotCommutative,
    NotCompatibleInvolution,
    NotIntroverted,
    NotInvariant,
    UnsupportedFamily,
)
from .linalg import (
    EPS,
    EPS_RANK,
    as_complex,
    column_space_and_nullspace,
    echelon_rows,
    max_abs,
    reduce_vector,
    solve_exact,
)
from .starmap import AlgMap, apply, classify_multiplicativity, make_map
from .trivolution import KIND_INVOLUTION, classify_star_map


@dataclass(frozen=True)
class DualVector:
    """Functional in the dual basis of an algebra."""

    coords: np.ndarray
    algebra: Algebra

    def __post_init__(self):
        object.__setattr__(self, "coords", as_complex(self.coords).reshape(-1))

    def pair(self, x: Element) -> complex:
        return complex(self.coords @ x.coords)


@dataclass(frozen=True)
class Character(DualVector):
    """Nonzero multiplicative functional; certified at construction."""

    residual: float = 0.0


def dual_vector(algebra: Algebra, coords) -> DualVector:
    coords = as_complex(coords).reshape(-1)
    if coords.shape != (algebra.dim,):
        raise AlgebraMismatch("dual vector length does not match the algebra")
    return DualVector(coords=coords, algebra=algebra)


def pairing(f, x) -> complex:
    f_coords = getattr(f, "coords", f)
    x_coords = getattr(x, "coords", x)
    return complex(np.asarray(f_coords) @ np.asarray(x_coords))


def dual_action(algebra: Algebra, lam, a: Element, side: str) -> DualVector:
    """Module actions on the dual: ``<lam.a, b> = <lam, ab>``, ``<a.lam, b> = <lam, ba>``.

    ``side="right"`` computes ``lam . a``; ``side="left"`` computes ``a . lam``.
    """
    coords = getattr(lam, "coords", lam)
    if side == "right":
        return DualVector(left_mult_matrix(algebra, a).T @ coords, algebra)
    if side == "left":
        return DualVector(right_mult_matrix(algebra, a).T @ coords, algebra)
    raise AlgebraMismatch(f"unknown action side {side!r}")


def verify_character(algebra: Algebra, coords, eps: float = EPS) -> Character:
    """Certify multiplicativity on basis pairs and non-vanishing."""
    coords = as_complex(coords).reshape(-1)
    if max_abs(coords) <= eps:
        raise CertificationFailure("the zero functional is not a character",
                                   law="characters are non-zero")
    worst = 0.0
    vals = coords
    prods = np.einsum("ijk,k->ij", algebra.structure, coords)
    outer = np.outer(vals, vals)
    worst = max_abs(prods - outer)
    if worst > eps:
        raise CertificationFailure("functional is not multiplicative",
                                   law="phi(xy) = phi(x) phi(y)", residual=worst)
    return Character(coords=coords, algebra=algebra, residual=worst)


@dataclass(frozen=True)
class CharacterSearch:
    characters: list[Character]
    possibly_incomplete: bool


def find_characters(algebra: Algebra, eps: float = EPS, eps_rank: float = EPS_RANK,
                    seed: int = 0) -> CharacterSearch:
    """All characters of a commutative algebra, via the regular representation.

    Characters are common left eigenvectors of the transposed
    multiplication matrices; a generic element separates them when the
    algebra is semisimple.  The result is complete for commutative
    semisimple algebras and flagged ``possibly_incomplete`` otherwise.
    """
    if not is_commutative(algebra, eps):
        raise NotCommutative("character discovery is implemented for commutative algebras; "
                             "verify user-supplied candidates instead")
    found: list[Character] = []

    def try_generic(rng_seed: int) -> None:
        rng = np.random.default_rng(rng_seed)
        g = rng.standard_normal(algebra.dim) + 1j * rng.standard_normal(algebra.dim)
        l_g = left_mult_matrix(algebra, g)
        values, vectors = np.linalg.eig(l_g.T)
        for lam, vec in zip(values, vectors.T):
            scale_ref = complex(vec @ g)
            if abs(scale_ref) <= eps_rank or abs(lam) <= eps_rank:
                continue
            candidate = (lam / scale_ref) * vec
            try:
                char = verify_character(algebra, candidate, max(eps, 1e3 * EPS))
            except CertificationFailure:
                continue
            if all(max_abs(char.coords - c.coords) > 1e-6 for c in found):
                found.append(char)

    for attempt in range(3):
        try_generic(seed * 1000 + attempt + 1)
        if len(found) == algebra.dim:
            break
    found.sort(key=lambda c: tuple(np.round(
        np.stack([c.coords.real, c.coords.imag], axis=1).reshape(-1), 6)))
    return CharacterSearch(characters=found, possibly_incomplete=len(found) < algebra.dim)


# ---------------------------------------------------------------------------
# introverted subspaces and the quotient realization of X*
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntrovertedSpace:
    """A subspace of the dual with its module/introversion certificates."""

    algebra: Algebra
    basis: Subspace  # columns are dual-basis coordinate vectors
    submodule: bool
    left_introverted: bool
    right_introverted: bool
    faithful: bool
    diagnostic: str = ""

    @property
    def introverted(self) -> bool:
        return self.left_introverted and self.right_introverted


def full_dual(algebra: Algebra) -> IntrovertedSpace:
    """X = A*: always a faithful introverted submodule."""
    return check_introverted(algebra, np.eye(algebra.dim))


def check_introverted(algebra: Algebra, x_basis, eps: float = EPS) -> IntrovertedSpace:
    """Certify submodule, introversion and faithfulness flags for ``X``.

    Introversion is checked with functionals on ``X`` ranging over the
    restrictions of a full second-dual basis, which surject onto ``X*``
    in finite dimensions.  A failed submodule check reports all-false
    introversion flags with a diagnostic rather than raising.
    """
    x = Subspace(as_complex(x_basis), algebra)
    n = algebra.dim
    cols = x.canonical_columns()

    submodule = True
    diagnostic = ""
    for s, lam in enumerate(cols.T):
        for i in range(n):
            right = left_mult_matrix(algebra, algebra.basis_element(i)).T @ lam
            left = right_mult_matrix(algebra, algebra.basis_element(i)).T @ lam
            if not x.contains(right, eps):
                submodule = False
                diagnostic = f"lambda_{s} . b_{i} escapes X"
                break
            if not x.contains(left, eps):
                submodule = False
                diagnostic = f"b_{i} . lambda_{s} escapes X"
                break
        if not submodule:
            break

    left_intro = right_intro = False
    if submodule:
        left_intro = right_intro = True
        l_mats = [left_mult_matrix(algebra, algebra.basis_element(a)) for a in range(n)]
        r_mats = [right_mult_matrix(algebra, algebra.basis_element(a)) for a in range(n)]
        for lam in cols.T:
            w_left = np.stack([l.T @ lam for l in l_mats])   # row a: lam . b_a
            w_right = np.stack([r.T @ lam for r in r_mats])  # row a: b_a . lam
            for i in range(n):
                if left_intro and not x.contains(w_left[:, i], eps):
                    left_intro = False
                    diagnostic = diagnostic or f"Phi_{i} . lambda escapes X"
                if right_intro and not x.contains(w_right[:, i], eps):
                    right_intro = False
                    diagnostic = diagnostic or f"lambda . Phi_{i} escapes X"
            if not (left_intro or right_intro):
                break

    faithful = x.dim == n
    return IntrovertedSpace(algebra=algebra, basis=x, submodule=submodule,
                            left_introverted=left_intro, right_introverted=right_intro,
                            faithful=faithful, diagnostic=diagnostic)


@dataclass(frozen=True)
class DualQuotientRep:
    """Concrete model of ``X*`` as a complement of the annihilator.

    Classes of the second dual are represented by their unique member
    supported on the free (non-pivot) coordinates of the annihilator's
    echelon form; ``eval_matrix`` inverts evaluation against the basis
    of ``X``.
    """

    space: IntrovertedSpace
    annihilator_echelon: np.ndarray
    annihilator_pivots: tuple[int, ...]
    free: tuple[int, ...]
    eval_matrix: np.ndarray  # (k, k): rows over X basis, cols over free coords

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, vector) -> np.ndarray:
        """Canonical representative (full length, supported on free coords)."""
        return reduce_vector(as_complex(vector).reshape(-1),
                             self.annihilator_echelon, list(self.annihilator_pivots))

    def rep_coords(self, vector) -> np.ndarray:
        return self.reduce(vector)[list(self.free)]

    def embed_coords(self, coords) -> np.ndarray:
        out = np.zeros(self.space.algebra.dim, dtype=complex)
        out[list(self.free)] = as_complex(coords).reshape(-1)
        return out

    def from_values(self, values) -> np.ndarray:
        """Representative of the functional with given values on the X basis."""
        u = np.linalg.solve(self.eval_matrix, as_complex(values).reshape(-1))
        return self.embed_coords(u)


def dual_quotient_rep(space: IntrovertedSpace) -> DualQuotientRep:
    xb = space.basis.canonical_columns()
    n = space.algebra.dim
    _, annihilator = column_space_and_nullspace(xb.T)  # X deg = null of evaluation
    if annihilator.shape[1]:
        ech, pivots = echelon_rows(annihilator.T)
    else:
        ech, pivots = np.zeros((0, n), dtype=complex), []
    free = tuple(i for i in range(n) if i not in pivots)
    eval_matrix = xb.T[:, list(free)]
    return DualQuotientRep(space=space, annihilator_echelon=ech,
                           annihilator_pivots=tuple(pivots), free=free,
                           eval_matrix=eval_matrix)


@dataclass(frozen=True)
class ArensStructure:
    """Both Arens product tensors on ``X*`` and the regularity verdict."""

    box: np.ndarray
    diamond: np.ndarray
    regular: bool
    rep: DualQuotientRep
    box_algebra: Algebra
    residuals: dict = field(default_factory=dict, repr=False)


def arens_products(algebra: Algebra, space: IntrovertedSpace,
                   eps: float = EPS) -> ArensStructure:
    """Compute the left and right Arens products on ``X*`` literally.

    Left product: ``<Phi [] Psi, lam> = <Phi, Psi . lam>`` with
    ``<Psi . lam, a> = <Psi, lam . a>``.  Right product:
    ``<Phi <> Psi, lam> = <Psi, lam . Phi>`` with
    ``<lam . Phi, a> = <Phi, a . lam>``.  Intermediate functionals are
    certified to stay inside ``X`` on the way.
    """
    if not space.introverted:
        raise NotIntroverted("both Arens products need a two-sided introverted subspace",
                             law="X topologically introverted")
    rep = dual_quotient_rep(space)
    n = algebra.dim
    k = rep.dim
    xb = space.basis.canonical_columns()
    free = list(rep.free)

    l_mats = [left_mult_matrix(algebra, algebra.basis_element(a)) for a in range(n)]
    r_mats = [right_mult_matrix(algebra, algebra.basis_element(a)) for a in range(n)]

    box = np.zeros((k, k, k), dtype=complex)
    diamond = np.zeros((k, k, k), dtype=complex)
    escape = 0.0
    for j in range(k):
        for s in range(xb.shape[1]):
            lam = xb[:, s]
            # Psi_j . lam over the standard basis of A
            psi_lam = np.array([(l_mats[a].T @ lam)[free[j]] for a in range(n)])
            escape = max(escape, space.basis.residual(psi_lam))
            for i in range(k):
                box_val = psi_lam[free[i]]
                box[i, j, s] = box_val  # temporarily store values on the X basis
    for i in range(k):
        for s in range(xb.shape[1]):
            lam = xb[:, s]
            lam_phi = np.array([(r_mats[a].T @ lam)[free[i]] for a in range(n)])
            escape = max(escape, space.basis.residual(lam_phi))
            for j in range(k):
                diamond[i, j, s] = lam_phi[free[j]]
    if escape > eps:
        raise NotIntroverted(f"an intermediate action escaped X (residual {escape:.3e})",
                             law="Psi . lambda in X", residual=escape)
    # convert values-on-X-basis into representatives on the free coordinates
    for i in range(k):
        for j in range(k):
            box[i, j, :] = rep.from_values(box[i, j, :])[free]
            diamond[i, j, :] = rep.from_values(diamond[i, j, :])[free]

    gap = max_abs(box - diamond)
    labels = [algebra.basis_labels[f] for f in free]
    box_algebra = make_algebra(k, box, labels, norm_kind=algebra.norm_kind, eps=max(eps, 1e-12))
    return ArensStructure(box=box, diamond=diamond, regular=gap <= eps, rep=rep,
                          box_algebra=box_algebra,
                          residuals={"regularity_gap": gap, "introversion_escape": escape})


def extend_involution(algebra: Algebra, theta: AlgMap, space: IntrovertedSpace,
                      eps: float = EPS, eps_rank: float = EPS_RANK) -> AlgMap:
    """Extend an involution of ``A`` to ``X*`` by the double-adjoint recipe.

    Requires the conjugate-linear adjoint to leave ``X`` invariant and
    the two Arens products to coincide on ``X*``.  The extension is
    certified as an involution of the box product, and certified to
    agree with ``theta`` along the canonical embedding when ``X`` is
    faithful.
    """
    theta_verdict = classify_star_map(algebra, theta, eps, eps_rank)
    if theta_verdict.kind != KIND_INVOLUTION:
        raise NotAnInvolution("theta is not an involution on the algebra",
                              law="theta^2 = id, conjugate-linear anti-homomorphism")
    # theta*(f) = conj(theta_matrix^T f) on dual coordinates
    adj_matrix = np.conj(theta.matrix.T)
    for lam in space.basis.canonical_columns().T:
        moved = adj_matrix @ np.conj(lam)
        if not space.basis.contains(moved, eps):
            raise NotInvariant("the adjoint moves X off itself",
                               law="theta*(X) contained in X",
                               residual=space.basis.residual(moved))
    arens = arens_products(algebra, space, eps)
    if not arens.regular:
        raise NotArensRegular("the two Arens products differ on X*",
                              law="box = diamond on X*",
                              residual=arens.residuals["regularity_gap"])
    rep = arens.rep
    k = rep.dim
    matrix = np.zeros((k, k), dtype=complex)
    for i, f_idx in enumerate(rep.free):
        image = theta.matrix[:, f_idx]  # theta applied to the real basis vector b_f
        matrix[:, i] = rep.rep_coords(image)
    extension = AlgMap(matrix=matrix, conjugating=True,
                       source=arens.box_algebra, target=arens.box_algebra)
    verdict = classify_star_map(arens.box_algebra, extension, eps, eps_rank)
    if verdict.kind != KIND_INVOLUTION:
        raise CertificationFailure("the double adjoint failed to be an involution on X*",
                                   law="Theta is an involution on (X*, box)",
                                   residual=max(verdict.anti_residual, verdict.cube_residual))
    if space.faithful:
        worst = 0.0
        for a in range(algebra.dim):
            image_of_a = rep.rep_coords(np.eye(algebra.dim)[:, a])
            lhs = extension.matrix @ np.conj(image_of_a)
            rhs = rep.rep_coords(theta.matrix[:, a])
            worst = max(worst, max_abs(lhs - rhs))
        if worst > eps:
            raise CertificationFailure("extension does not restrict to theta",
                                       law="Theta extends theta along A -> X*",
                                       residual=worst)
    return extension


# ---------------------------------------------------------------------------
# topological invariant means
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TimSolutionSet:
    """Affine set of invariant means, as representatives in the second dual."""

    particular: np.ndarray | None
    homogeneous: np.ndarray  # columns; full-length representatives
    rep: DualQuotientRep

    @property
    def affine_dim(self) -> int | None:
        return None if self.particular is None else self.homogeneous.shape[1]

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    @property
    def is_unique(self) -> bool:
        return self.particular is not None and self.homogeneous.shape[1] == 0


def tim_set(algebra: Algebra, space: IntrovertedSpace, phi: Character,
            eps: float = EPS, eps_rank: float = EPS_RANK) -> TimSolutionSet:
    """Solve ``<m, phi> = 1`` and ``a.m = m.a = phi(a) m`` for ``m`` in ``X*``."""
    if not space.basis.contains(phi.coords, eps):
        raise CharacterNotInX("the character does not lie in X",
                              law="phi in X", residual=space.basis.residual(phi.coords))
    rep = dual_quotient_rep(space)
    k = rep.dim
    free = list(rep.free)
    rows = []
    rhs = []
    for a in range(algebra.dim):
        l_a = left_mult_matrix(algebra, algebra.basis_element(a))
        r_a = right_mult_matrix(algebra, algebra.basis_element(a))
        phi_a = complex(phi.coords[a])
        left_block = np.zeros((k, k), dtype=complex)
        right_block = np.zeros((k, k), dtype=complex)
        for t in range(k):
            left_block[:, t] = rep.rep_coords(l_a[:, free[t]])
            right_block[:, t] = rep.rep_coords(r_a[:, free[t]])
        rows.append(left_block - phi_a * np.eye(k))
        rhs.append(np.zeros(k, dtype=complex))
        rows.append(right_block - phi_a * np.eye(k))
        rhs.append(np.zeros(k, dtype=complex))
    rows.append(phi.coords[free].reshape(1, -1))
    rhs.append(np.array([1.0 + 0.0j]))
    system = np.vstack(rows)
    target = np.concatenate(rhs)

    u, residual = solve_exact(system, target)
    _, kernel = column_space_and_nullspace(system, eps_rank)
    if residual > eps:
        return TimSolutionSet(particular=None,
                              homogeneous=np.zeros((algebra.dim, 0), dtype=complex), rep=rep)
    particular = rep.embed_coords(u)
    homogeneous = (np.column_stack([rep.embed_coords(col) for col in kernel.T])
                   if kernel.shape[1] else np.zeros((algebra.dim, 0), dtype=complex))
    return TimSolutionSet(particular=particular, homogeneous=homogeneous, rep=rep)


@dataclass(frozen=True)
class TimObstructionReport:
    vacuous: bool
    unique: bool
    chain_residuals: dict = field(default_factory=dict)


def tim_obstruction_check(algebra: Algebra, space: IntrovertedSpace, phi: Character,
                          star: AlgMap, arens: ArensStructure | None = None,
                          eps: float = EPS, eps_rank: float = EPS_RANK) -> TimObstructionReport:
    """Certify the invariance/absorption/fixed-point chain for each mean.

    ``star`` must be an involution of ``(X*, box)`` compatible with the
    character (``<phi, a*> = conj <phi, a>`` on the embedded algebra).
    The chain forces any mean to be star-fixed and absorbing, hence
    unique; the solver's affine dimension is certified to agree.
    """
    if arens is None:
        arens = arens_products(algebra, space, eps)
    rep = arens.rep
    box = arens.box
    k = rep.dim

    star_verdict = classify_star_map(arens.box_algebra, star, eps, eps_rank)
    if star_verdict.kind != KIND_INVOLUTION:
        raise NotCompatibleInvolution("star is not an involution on (X*, box)",
                                      law="star^2 = id, anti-multiplicative",
                                      residual=max(star_verdict.anti_residual,
                                                   star_verdict.cube_residual))
    compat = 0.0
    for a in range(algebra.dim):
        a_rep = rep.rep_coords(np.eye(algebra.dim)[:, a])
        starred = rep.embed_coords(star.matrix @ np.conj(a_rep))
        lhs = pairing(phi.coords, starred)
        rhs = np.conj(pairing(phi.coords, rep.embed_coords(a_rep)))
        compat = max(compat, abs(lhs - rhs))
    if compat > eps:
        raise NotCompatibleInvolution("star is not compatible with the character",
                                      law="<phi, a*> = conj <phi, a>", residual=compat)

    solset = tim_set(algebra, space, phi, eps, eps_rank)
    if solset.is_empty:
        return TimObstructionReport(vacuous=True, unique=True, chain_residuals={})

    free = list(rep.free)
    m = solset.particular[free]
    m_star = star.matrix @ np.conj(m)
    residuals: dict[str, float] = {}

    # invariance transported through star: a . m* = m* . a = phi(a) m*
    worst_inv = 0.0
    for a in range(algebra.dim):
        l_a = left_mult_matrix(algebra, algebra.basis_element(a))
        r_a = right_mult_matrix(algebra, algebra.basis_element(a))
        left_action = rep.rep_coords(l_a @ rep.embed_coords(m_star))
        right_action = rep.rep_coords(r_a @ rep.embed_coords(m_star))
        phi_a = complex(phi.coords[a])
        worst_inv = max(worst_inv, max_abs(left_action - phi_a * m_star),
                        max_abs(right_action - phi_a * m_star))
    residuals["star_invariance"] = worst_inv

    # absorption: n box m* = <n, phi> m* over the X* basis
    worst_abs = 0.0
    for i in range(k):
        prod = np.einsum("j,jt->t", m_star, box[i])
        n_phi = pairing(phi.coords, rep.embed_coords(np.eye(k)[:, i]))
        worst_abs = max(worst_abs, max_abs(prod - n_phi * m_star))
    residuals["absorption"] = worst_abs

    # fixed-point chain m = (m*)* = (m box m*)* = m box m* = <m, phi> m* = m*
    m_star_star = star.matrix @ np.conj(m_star)
    residuals["double_star"] = max_abs(m_star_star - m)
    m_box_mstar = np.einsum("i,j,ijt->t", m, m_star, box)
    m_phi = pairing(phi.coords, rep.embed_coords(m))
    residuals["product_vs_scaling"] = max_abs(m_box_mstar - m_phi * m_star)
    residuals["normalization"] = abs(m_phi - 1.0)
    residuals["star_fixed"] = max_abs(m - m_star)

    worst = max(residuals.values())
    if worst > eps:
        raise CertificationFailure("the invariant-mean identity chain failed",
                                   law="a.m* = m*.a = phi(a) m*; n box m* = <n,phi> m*; m = m*",
                                   residual=worst, details=residuals)
    if not solset.is_unique:
        raise CertificationFailure(
            "multiple invariant means coexist with a compatible involution",
            law="at most one phi-TIM under a compatible involution",
            details={"affine_dim": solset.affine_dim})
    return TimObstructionReport(vacuous=False, unique=True, chain_residuals=residuals)


# ---------------------------------------------------------------------------
# structured trivolution search
# ---------------------------------------------------------------------------

def _involutive_permutations_canonical(k_sorted: tuple[int, ...]) -> list[dict[int, int]]:
    """Canonical involutive permutations of a coordinate set, one per cycle type.

    For ``t`` transpositions the first ``2t`` coordinates (in sorted
    order) are paired consecutively; remaining coordinates are fixed.
    """
    out = []
    size = len(k_sorted)
    for t in range(size // 2 + 1):
        perm = {c: c for c in k_sorted}
        for pair in range(t):
            a, b = k_sorted[2 * pair], k_sorted[2 * pair + 1]
            perm[a], perm[b] = b, a
        out.append(perm)
    return out


def _is_pointwise(algebra: Algebra, eps: float) -> bool:
    expected = np.zeros_like(algebra.structure)
    for i in range(algebra.dim):
        expected[i, i, i] = 1.0
    return max_abs(algebra.structure - expected) <= eps


def search_trivolutions(algebra: Algebra, family_spec: dict,
                        eps: float = EPS, eps_rank: float = EPS_RANK) -> list[AlgMap]:
    """Enumerate a structured family of star-map candidates.

    Families: ``function_indicator`` (indicator projection composed with
    conjugation and a canonical involutive permutation of the selected
    coordinates), ``group_quotient`` (standard group-algebra involution
    composed with averaging over supplied normal subgroups), and
    ``pairs`` (explicit projection/involution pairs).  Only candidates
    passing classification are returned; the enumeration is exhaustive
    within the declared family only.
    """
    family = family_spec.get("family")
    results: list[AlgMap] = []

    if family == "function_indicator":
        if not _is_pointwise(algebra, eps):
            raise UnsupportedFamily("function_indicator requires a pointwise function algebra")
        n = algebra.dim
        for size in range(1, n + 1):
            for k_set in combinations(range(n), size):
                for perm in _involutive_permutations_canonical(k_set):
                    matrix = np.zeros((n, n), dtype=complex)
                    for j in k_set:
                        matrix[j, perm[j]] = 1.0
                    candidate = AlgMap(matrix=matrix, conjugating=True,
                                       source=algebra, target=algebra)
                    if classify_star_map(algebra, candidate, eps, eps_rank).is_trivolution:
                        results.append(candidate)
        return results

    if family == "group_quotient":
        table = np.asarray(family_spec["table"], dtype=int)
        reference = group_algebra(table)
        if not algebras_compatible(reference, algebra, eps):
            raise UnsupportedFamily("algebra does not match the supplied group table")
        n = algebra.dim
        inverse = np.zeros(n, dtype=int)
        identity = next(e for e in range(n)
                        if all(table[e, i] == i == table[i, e] for i in range(n)))
        for g in range(n):
            inverse[g] = next(h for h in range(n) if table[g, h] == identity)
        standard = np.zeros((n, n), dtype=complex)
        for g in range(n):
            standard[inverse[g], g] = 1.0
        for subgroup in family_spec.get("normal_subgroups", [[identity]]):
            members = [int(s) for s in subgroup]
            averaging = np.zeros((n, n), dtype=complex)
            for g in range(n):
                for s in members:
                    averaging[table[g, s], g] += 1.0 / len(members)
            matrix = standard @ np.conj(averaging)
            candidate = AlgMap(matrix=matrix, conjugating=True, source=algebra, target=algebra)
            if classify_star_map(algebra, candidate, eps, eps_rank).is_trivolution:
                results.append(candidate)
        return results

    if family == "pairs":
        from .trivolution import make_trivolution

        for p, rho in family_spec.get("pairs", []):
            try:
                candidate = make_trivolution(algebra, p, rho, eps, eps_rank)
            except CertificationFailure:
                continue
            if classify_star_map(algebra, candidate, eps, eps_rank).is_trivolution:
                results.append(candidate)
        return results

    raise UnsupportedFamily(f"unknown family {family!r}")
