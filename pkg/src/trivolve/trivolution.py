"""Star-map classification and the canonical splitting machinery.

A trivolution is a non-zero conjugate-linear anti-homomorphism ``t``
with ``t^3 = t``.  Every such map splits the algebra as ``A = I + B``
with ``I = ker t``, ``B = t(A)``, ``p = t^2`` a homomorphic projection
onto ``B`` and ``r = t|_B`` an involution on ``B``, and conversely any
such pair ``(p, r)`` produces a trivolution ``r o p``.  This module
computes both directions and certifies every claimed identity, plus the
derived element theory (hermitian/normal/unitary/positive classes and
hermitian functionals).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Algebra,
    Element,
    Subspace,
    algebras_compatible,
    induced_subalgebra,
    left_mult_matrix,
    make_algebra,
    multiply,
    product_algebra,
    right_mult_matrix,
)
from .errors import (
    AlgebraMismatch,
    CertificationFailure,
    JNotInvolution,
    KernelTrivial,
    NotAHomomorphism,
    NotAnInvolution,
    NotAProjection,
    NotATrivolution,
    NotInRange,
    NotIntertwining,
    NotRightIdentity,
    SubalgebraMismatch,
    UsageError,
)
from .linalg import (
    EPS,
    EPS_RANK,
    as_complex,
    max_abs,
    realify_conjugation_fixed_points,
    solve_exact,
    svd_rank,
)
from .starmap import (
    AlgMap,
    apply,
    classify_multiplicativity,
    compose,
    identity_map,
    kernel_image,
    make_map,
    map_norm,
    maps_equal,
    power,
)

KIND_NOT_STAR = "not_star"
KIND_INVOLUTION = "involution"
KIND_TRIVOLUTION_PROPER = "trivolution_proper"


@dataclass(frozen=True)
class StarClass:
    """Verdict of the star-map classifier, with audit residuals."""

    kind: str
    is_conjugate_linear: bool
    is_anti_hom: bool
    cubes_to_self: bool
    is_injective: bool
    norm_of_map: float
    anti_residual: float
    cube_residual: float

    @property
    def is_trivolution(self) -> bool:
        return self.kind != KIND_NOT_STAR


def classify_star_map(algebra: Algebra, f: AlgMap, eps: float = EPS,
                      eps_rank: float = EPS_RANK) -> StarClass:
    """Classify an endomorphism as involution / proper trivolution / neither.

    The zero map is excluded by definition; a map with all the axioms
    is an involution exactly when it is injective.
    """
    if not (algebras_compatible(f.source, algebra) and algebras_compatible(f.target, algebra)):
        raise AlgebraMismatch("classify_star_map expects an endomorphism of the given algebra")
    nonzero = max_abs(f.matrix) > eps
    mult = classify_multiplicativity(f, eps)
    cubed = power(f, 3)
    cube_residual = max_abs(cubed.matrix - f.matrix)
    cubes = cubed.conjugating == f.conjugating and cube_residual <= eps
    injective = svd_rank(f.matrix, eps_rank) == algebra.dim
    ok = nonzero and f.conjugating and mult.anti_homomorphism and cubes
    if not ok:
        kind = KIND_NOT_STAR
    elif injective:
        kind = KIND_INVOLUTION
    else:
        kind = KIND_TRIVOLUTION_PROPER
    return StarClass(
        kind=kind,
        is_conjugate_linear=f.conjugating,
        is_anti_hom=mult.anti_homomorphism,
        cubes_to_self=cubes,
        is_injective=injective,
        norm_of_map=map_norm(f),
        anti_residual=mult.anti_residual,
        cube_residual=cube_residual,
    )


@dataclass(frozen=True)
class Decomposition:
    """Canonical data ``A = I + B``, ``tau = rho o p``.

    ``involution_rho`` acts on the coordinates of the induced algebra on
    ``B`` (available as ``subalgebra``); ``embedding`` holds the basis
    columns realizing ``B`` inside the ambient algebra.
    """

    ideal_I: Subspace
    subalg_B: Subspace
    projection_p: AlgMap
    involution_rho: AlgMap
    subalgebra: Algebra
    embedding: np.ndarray
    residuals: dict = field(repr=False)


def canonical_decomposition(algebra: Algebra, tau: AlgMap, eps: float = EPS,
                            eps_rank: float = EPS_RANK) -> Decomposition:
    """Split a trivolution into ``(I, B, p, rho)`` and certify the laws."""
    verdict = classify_star_map(algebra, tau, eps, eps_rank)
    if not verdict.is_trivolution:
        raise NotATrivolution(
            "map is not a trivolution "
            f"(anti residual {verdict.anti_residual:.3e}, cube residual {verdict.cube_residual:.3e})",
            law="conjugate-linear anti-homomorphism with t^3 = t",
            residual=max(verdict.anti_residual, verdict.cube_residual))

    p = compose(tau, tau)
    ideal, image = kernel_image(tau, eps_rank)
    residuals: dict[str, float] = {}

    if ideal.dim + image.dim != algebra.dim:
        raise CertificationFailure("rank-nullity failed in decomposition",
                                   law="dim I + dim B = dim A")
    joint = Subspace(np.hstack([ideal.basis, image.basis]), algebra)
    if joint.dim != algebra.dim:
        raise CertificationFailure("kernel and image do not span the algebra",
                                   law="A = I (+) B direct sum")

    p_mult = classify_multiplicativity(p, eps)
    residuals["p_homomorphism"] = p_mult.hom_residual
    if not p_mult.homomorphism:
        raise CertificationFailure("t^2 is not multiplicative", law="p = t^2 is a homomorphism",
                                   residual=p_mult.hom_residual)
    residuals["p_idempotent"] = max_abs(compose(p, p).matrix - p.matrix)
    if residuals["p_idempotent"] > eps:
        raise CertificationFailure("t^2 is not idempotent", law="p o p = p",
                                   residual=residuals["p_idempotent"])

    p_kernel, p_image = kernel_image(p, eps_rank)
    if not (p_image.contains_subspace(image, eps) and image.contains_subspace(p_image, eps)):
        raise CertificationFailure("image of p differs from image of t", law="p(A) = t(A)")
    if not (p_kernel.contains_subspace(ideal, eps) and ideal.contains_subspace(p_kernel, eps)):
        raise CertificationFailure("kernel of p differs from kernel of t", law="ker p = ker t")

    subalg, embedding = induced_subalgebra(algebra, image, eps=eps)
    rho_matrix, restrict_residual = solve_exact(embedding, tau.matrix @ np.conj(embedding))
    residuals["rho_restriction"] = restrict_residual
    if restrict_residual > eps:
        raise CertificationFailure("t does not restrict to its image",
                                   law="t(B) contained in B", residual=restrict_residual)
    rho = AlgMap(matrix=rho_matrix, conjugating=True, source=subalg, target=subalg)
    rho_verdict = classify_star_map(subalg, rho, eps, eps_rank)
    if rho_verdict.kind != KIND_INVOLUTION:
        raise CertificationFailure("restriction of t to its image is not an involution",
                                   law="rho = t|_B is an involution",
                                   residual=max(rho_verdict.anti_residual, rho_verdict.cube_residual))
    residuals["rho_squared"] = max_abs(compose(rho, rho).matrix - np.eye(subalg.dim))

    dec = Decomposition(ideal_I=ideal, subalg_B=image, projection_p=p,
                        involution_rho=rho, subalgebra=subalg, embedding=embedding,
                        residuals=residuals)
    rebuilt = make_trivolution(algebra, p, rho, eps=eps, eps_rank=eps_rank)
    residuals["reconstruction"] = max_abs(rebuilt.matrix - tau.matrix)
    if residuals["reconstruction"] > eps:
        raise CertificationFailure("rho o p does not reproduce the original map",
                                   law="tau = rho o p", residual=residuals["reconstruction"])
    return dec


def make_trivolution(algebra: Algebra, p: AlgMap, rho: AlgMap, eps: float = EPS,
                     eps_rank: float = EPS_RANK) -> AlgMap:
    """Assemble ``tau = rho o p`` from a homomorphic projection and an involution.

    ``p`` is an endomorphism of the algebra; ``rho`` acts on the induced
    coordinates of ``B = p(A)`` (as produced by ``induced_subalgebra``).
    """
    if p.conjugating:
        raise NotAProjection("projection must be linear", law="p linear")
    if not (algebras_compatible(p.source, algebra) and algebras_compatible(p.target, algebra)):
        raise AlgebraMismatch("projection is not an endomorphism of the given algebra")
    p_mult = classify_multiplicativity(p, eps)
    if not p_mult.homomorphism:
        raise NotAHomomorphism("p is not multiplicative", law="p(xy) = p(x) p(y)",
                               residual=p_mult.hom_residual)
    idem_residual = max_abs(compose(p, p).matrix - p.matrix)
    if idem_residual > eps:
        raise NotAProjection("p is not idempotent", law="p o p = p", residual=idem_residual)
    _, image = kernel_image(p, eps_rank)
    subalg, embedding = induced_subalgebra(algebra, image, eps=eps)
    if rho.source.dim != subalg.dim or max_abs(rho.source.structure - subalg.structure) > eps:
        raise AlgebraMismatch(
            "rho is not defined on the induced algebra of the projection's image")
    if not rho.conjugating:
        raise NotAnInvolution("rho must be conjugate-linear", law="rho conjugate-linear")
    rho_verdict = classify_star_map(subalg, rho, eps, eps_rank)
    if rho_verdict.kind != KIND_INVOLUTION:
        raise NotAnInvolution("rho is not an involution on the image subalgebra",
                              law="rho^2 = id, rho anti-multiplicative",
                              residual=max(rho_verdict.anti_residual, rho_verdict.cube_residual))
    coords_of = np.linalg.pinv(embedding)
    matrix = embedding @ rho.matrix @ np.conj(coords_of @ p.matrix)
    return AlgMap(matrix=matrix, conjugating=True, source=algebra, target=algebra)


# ---------------------------------------------------------------------------
# factorization through an involutive algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Data of ``tau = mu o sigma o lambda`` through an involutive algebra C."""

    c: Algebra
    lam: AlgMap
    sigma: AlgMap
    mu: AlgMap
    residuals: dict = field(repr=False)


def factor_through_involution(algebra: Algebra, tau: AlgMap, j: AlgMap,
                              eps: float = EPS, eps_rank: float = EPS_RANK) -> Factorization:
    """Factor a proper trivolution through an involutive algebra.

    ``j`` is an ambient conjugate-linear endomorphism whose restriction
    to the ideal ``I = ker tau`` is an involution of ``I``.  The
    construction doubles the coordinatewise algebra on ``I + B`` and
    produces ``lam``, ``sigma``, ``mu`` with ``sigma`` an involution and
    ``mu o sigma o lam = tau``; all three claims are certified.
    """
    dec = canonical_decomposition(algebra, tau, eps, eps_rank)
    if dec.ideal_I.dim == 0:
        raise KernelTrivial("kernel is trivial, the map is an involution and the "
                            "factorization degenerates", law="ker tau != 0")
    if not j.conjugating:
        raise JNotInvolution("j must be conjugate-linear", law="j conjugate-linear")

    ideal_alg, ideal_cols = induced_subalgebra(algebra, dec.ideal_I, eps=eps)
    j_restricted, escape = solve_exact(ideal_cols, j.matrix @ np.conj(ideal_cols))
    if escape > eps:
        raise JNotInvolution("j does not preserve the ideal", law="j(I) contained in I",
                             residual=escape)
    j_on_ideal = AlgMap(matrix=j_restricted, conjugating=True, source=ideal_alg, target=ideal_alg)
    j_verdict = classify_star_map(ideal_alg, j_on_ideal, eps, eps_rank)
    if j_verdict.kind != KIND_INVOLUTION:
        raise JNotInvolution("j restricted to the ideal is not an involution",
                             law="j|_I is an involution",
                             residual=max(j_verdict.anti_residual, j_verdict.cube_residual))

    n = algebra.dim
    p_b = dec.projection_p.matrix
    p_i = np.eye(n, dtype=complex) - p_b

    # coordinatewise product on I (+) B: drop the cross terms of the ambient product
    split_structure = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        for jdx in range(n):
            split_structure[i, jdx, :] = (
                np.einsum("a,b,abk->k", p_i[:, i], p_i[:, jdx], algebra.structure)
                + np.einsum("a,b,abk->k", p_b[:, i], p_b[:, jdx], algebra.structure))
    split_alg = make_algebra(n, split_structure, algebra.basis_labels,
                             norm_kind=algebra.norm_kind, eps=eps)
    c = product_algebra(split_alg, split_alg)

    zero = np.zeros((n, n), dtype=complex)
    lam = make_map(np.vstack([p_b, zero]), conjugating=False, source=algebra, target=c)
    mu = make_map(np.hstack([p_b, zero]), conjugating=False, source=c, target=algebra)
    j_pr1 = j.matrix @ np.conj(p_i)
    sigma = make_map(np.block([[tau.matrix, j_pr1], [j_pr1, tau.matrix]]),
                     conjugating=True, source=c, target=c)

    residuals: dict[str, float] = {}
    lam_mult = classify_multiplicativity(lam, eps)
    mu_mult = classify_multiplicativity(mu, eps)
    residuals["lambda_homomorphism"] = lam_mult.hom_residual
    residuals["mu_homomorphism"] = mu_mult.hom_residual
    if not (lam_mult.homomorphism and mu_mult.homomorphism):
        raise CertificationFailure("factorization legs are not homomorphisms",
                                   law="lambda, mu multiplicative",
                                   residual=max(lam_mult.hom_residual, mu_mult.hom_residual))
    sigma_mult = classify_multiplicativity(sigma, eps)
    residuals["sigma_anti"] = sigma_mult.anti_residual
    residuals["sigma_squared"] = max_abs(compose(sigma, sigma).matrix - np.eye(2 * n))
    if not sigma_mult.anti_homomorphism or residuals["sigma_squared"] > eps:
        raise CertificationFailure("sigma is not an involution on C",
                                   law="sigma^2 = id, sigma anti-multiplicative",
                                   residual=max(sigma_mult.anti_residual, residuals["sigma_squared"]))
    rebuilt = compose(mu, compose(sigma, lam))
    residuals["factorization"] = max_abs(rebuilt.matrix - tau.matrix)
    if residuals["factorization"] > eps or rebuilt.conjugating != tau.conjugating:
        raise CertificationFailure("mu o sigma o lambda does not reproduce tau",
                                   law="tau = mu o sigma o lambda",
                                   residual=residuals["factorization"])
    return Factorization(c=c, lam=lam, sigma=sigma, mu=mu, residuals=residuals)


# ---------------------------------------------------------------------------
# trivolutive homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomBlocks:
    """Block decomposition of an intertwining homomorphism."""

    pi11: AlgMap
    pi22: AlgMap
    source_decomposition: Decomposition
    target_decomposition: Decomposition
    residuals: dict = field(repr=False)


def check_trivolutive_hom(a1: Algebra, tau1: AlgMap, a2: Algebra, tau2: AlgMap,
                          pi: AlgMap, eps: float = EPS,
                          eps_rank: float = EPS_RANK) -> HomBlocks:
    """Verify the block structure of an intertwining homomorphism.

    Relative to the canonical splittings of both sides the map must be
    block diagonal, with ``pi11: I1 -> I2`` and ``pi22: B1 -> B2`` both
    homomorphisms and ``pi22`` intertwining the restricted involutions.
    """
    if pi.conjugating:
        raise UsageError("pi must be a linear map")
    lhs = compose(pi, tau1)
    rhs = compose(tau2, pi)
    intertwine = max_abs(lhs.matrix - rhs.matrix)
    if intertwine > eps:
        raise NotIntertwining(f"pi o tau1 != tau2 o pi (residual {intertwine:.3e})",
                              law="pi o tau1 = tau2 o pi", residual=intertwine)
    pi_mult = classify_multiplicativity(pi, eps)
    if not pi_mult.homomorphism:
        raise NotAHomomorphism("pi is not multiplicative", law="pi(xy) = pi(x) pi(y)",
                               residual=pi_mult.hom_residual)

    dec1 = canonical_decomposition(a1, tau1, eps, eps_rank)
    dec2 = canonical_decomposition(a2, tau2, eps, eps_rank)
    qi1, qb1 = dec1.ideal_I.canonical_columns(), dec1.embedding
    qi2, qb2 = dec2.ideal_I.canonical_columns(), dec2.embedding
    t1 = np.hstack([qi1, qb1])
    t2 = np.hstack([qi2, qb2])
    blocks = np.linalg.solve(t2, pi.matrix @ t1)
    k1, k2 = qi1.shape[1], qi2.shape[1]
    pi11_m = blocks[:k2, :k1]
    pi12_m = blocks[:k2, k1:]
    pi21_m = blocks[k2:, :k1]
    pi22_m = blocks[k2:, k1:]

    residuals = {
        "intertwine": intertwine,
        "off_diagonal": max(max_abs(pi12_m), max_abs(pi21_m)),
    }
    if residuals["off_diagonal"] > eps:
        raise CertificationFailure("off-diagonal blocks do not vanish",
                                   law="pi12 = 0 and pi21 = 0",
                                   residual=residuals["off_diagonal"])

    ideal1_alg, _ = induced_subalgebra(a1, dec1.ideal_I, eps=eps)
    ideal2_alg, _ = induced_subalgebra(a2, dec2.ideal_I, eps=eps)
    pi11 = make_map(pi11_m, conjugating=False, source=ideal1_alg, target=ideal2_alg)
    pi22 = make_map(pi22_m, conjugating=False, source=dec1.subalgebra, target=dec2.subalgebra)

    if ideal1_alg.dim and ideal2_alg.dim:
        m11 = classify_multiplicativity(pi11, eps)
        residuals["pi11_homomorphism"] = m11.hom_residual
        if not m11.homomorphism:
            raise NotAHomomorphism("ideal block is not a homomorphism",
                                   law="pi11 multiplicative", residual=m11.hom_residual)
    m22 = classify_multiplicativity(pi22, eps)
    residuals["pi22_homomorphism"] = m22.hom_residual
    if not m22.homomorphism:
        raise NotAHomomorphism("subalgebra block is not a homomorphism",
                               law="pi22 multiplicative", residual=m22.hom_residual)
    involutive = max_abs(compose(pi22, dec1.involution_rho).matrix
                         - compose(dec2.involution_rho, pi22).matrix)
    residuals["pi22_involutive"] = involutive
    if involutive > eps:
        raise CertificationFailure("subalgebra block does not intertwine the involutions",
                                   law="pi22 o rho1 = rho2 o pi22", residual=involutive)
    return HomBlocks(pi11=pi11, pi22=pi22, source_decomposition=dec1,
                     target_decomposition=dec2, residuals=residuals)


# ---------------------------------------------------------------------------
# right identities
# ---------------------------------------------------------------------------

def right_identity_trivolution(c: Algebra, e: Element, a_sub: Subspace,
                               tau_on_a: AlgMap, eps: float = EPS,
                               eps_rank: float = EPS_RANK) -> AlgMap:
    """Extend a trivolution on ``eC`` to all of ``C`` via left multiplication.

    ``e`` must be a right identity of ``C`` and ``a_sub`` must equal the
    subalgebra ``eC``; ``tau_on_a`` acts on the induced coordinates of
    that subalgebra.  Returns ``tau1 = tau o ell_e`` with the trivolution
    axioms and the range identity certified.
    """
    r_e = right_mult_matrix(c, e)
    right_residual = max_abs(r_e - np.eye(c.dim))
    if right_residual > eps:
        raise NotRightIdentity(f"e is not a right identity (residual {right_residual:.3e})",
                               law="x e = x", residual=right_residual)
    l_e = left_mult_matrix(c, e)
    e_c = Subspace(l_e, c)
    if not (e_c.contains_subspace(a_sub, eps) and a_sub.contains_subspace(e_c, eps)):
        raise SubalgebraMismatch("a_sub differs from eC", law="A = eC")
    sub_alg, embedding = induced_subalgebra(c, a_sub, eps=eps)
    if tau_on_a.source.dim != sub_alg.dim or max_abs(tau_on_a.source.structure - sub_alg.structure) > eps:
        raise AlgebraMismatch("tau_on_a is not defined on the induced algebra of a_sub")
    inner_verdict = classify_star_map(sub_alg, tau_on_a, eps, eps_rank)
    if not inner_verdict.is_trivolution:
        raise NotATrivolution("tau_on_a is not a trivolution on eC",
                              law="trivolution axioms on the subalgebra")

    coords_of = np.linalg.pinv(embedding)
    matrix = embedding @ tau_on_a.matrix @ np.conj(coords_of @ l_e)
    tau1 = AlgMap(matrix=matrix, conjugating=True, source=c, target=c)
    verdict = classify_star_map(c, tau1, eps, eps_rank)
    if not verdict.is_trivolution:
        raise CertificationFailure("tau o ell_e failed the trivolution axioms",
                                   law="tau1 = tau o ell_e is a trivolution",
                                   residual=max(verdict.anti_residual, verdict.cube_residual))
    _, tau1_image = kernel_image(tau1, eps_rank)
    _, inner_image = kernel_image(tau_on_a, eps_rank)
    embedded = Subspace(embedding @ inner_image.basis if inner_image.dim else
                        np.zeros((c.dim, 0)), c)
    if not (tau1_image.contains_subspace(embedded, eps)
            and embedded.contains_subspace(tau1_image, eps)):
        raise CertificationFailure("range of the extension differs from the range of tau",
                                   law="tau1(C) = tau(A)")
    return tau1


# ---------------------------------------------------------------------------
# element classes and hermitian theory
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementFlags:
    hermitian: bool
    normal: bool
    projection: bool
    unitary: bool
    positive_witness: Element | None = None


def element_classes(algebra: Algebra, tau: AlgMap, x: Element,
                    positive_witness: Element | None = None,
                    eps: float = EPS) -> ElementFlags:
    """Hermitian / normal / projection / unitary flags for an element.

    The unitary flag needs an identity; it is reported False on
    non-unital algebras.  ``positive_witness`` is stored only when the
    witness actually certifies positivity.
    """
    tx = apply(tau, x)
    t2x = apply(tau, tx)
    hermitian = max_abs(tx.coords - x.coords) <= eps
    xt = multiply(algebra, x, tx)
    tx_x = multiply(algebra, tx, x)
    xt2 = multiply(algebra, x, t2x)
    t2x_x = multiply(algebra, t2x, x)
    normal = (max_abs(xt.coords - tx_x.coords) <= eps
              and max_abs(xt2.coords - t2x_x.coords) <= eps)
    x_squared = multiply(algebra, x, x)
    projection = hermitian and max_abs(x_squared.coords - x.coords) <= eps
    unitary = False
    if algebra.is_unital():
        e = algebra.identity_coords
        unitary = (max_abs(xt.coords - e) <= eps and max_abs(tx_x.coords - e) <= eps)
    witness = None
    if positive_witness is not None and check_positive(algebra, tau, x, positive_witness, eps):
        witness = positive_witness
    return ElementFlags(hermitian=hermitian, normal=normal, projection=projection,
                        unitary=unitary, positive_witness=witness)


def check_positive(algebra: Algebra, tau: AlgMap, x: Element, y: Element,
                   eps: float = EPS) -> bool:
    """True iff ``x`` is hermitian and ``x = tau(y) y`` for the witness ``y``."""
    tx = apply(tau, x)
    if max_abs(tx.coords - x.coords) > eps:
        return False
    ty_y = multiply(algebra, apply(tau, y), y)
    return max_abs(x.coords - ty_y.coords) <= eps


def hermitian_real_basis(algebra: Algebra, tau: AlgMap,
                         tol: float = EPS_RANK) -> np.ndarray:
    """Columns spanning the real subspace of hermitian elements."""
    return realify_conjugation_fixed_points(tau.matrix, tol)


def hermitian_decomposition(algebra: Algebra, tau: AlgMap, x: Element,
                            eps: float = EPS,
                            eps_rank: float = EPS_RANK) -> tuple[Element, Element]:
    """Write ``x = x1 + i x2`` with both parts hermitian.

    Possible exactly when ``x`` lies in the range of the map; uniqueness
    is certified by solving for every hermitian pair summing to ``x``
    and checking the solution set is a single point.
    """
    kernel, image = kernel_image(tau, eps_rank)
    if not image.contains(x.coords, eps):
        raise NotInRange(f"element is outside the range (residual {image.residual(x.coords):.3e})",
                         law="x in tau(A)", residual=image.residual(x.coords))
    tx = apply(tau, x)
    x1 = Element((x.coords + tx.coords) / 2.0, algebra)
    x2 = Element((x.coords - tx.coords) / 2.0j, algebra)
    for part in (x1, x2):
        res = max_abs(apply(tau, part).coords - part.coords)
        if res > eps:
            raise CertificationFailure("computed part is not hermitian",
                                       law="tau(x1) = x1, tau(x2) = x2", residual=res)
    recon = max_abs(x1.coords + 1j * x2.coords - x.coords)
    if recon > eps:
        raise CertificationFailure("parts do not sum back to the element",
                                   law="x = x1 + i x2", residual=recon)

    # uniqueness: solve H a + i H b = x over real coefficients and compare
    h = hermitian_real_basis(algebra, tau, eps_rank)
    if h.shape[1]:
        top = np.hstack([h.real, -h.imag])
        bot = np.hstack([h.imag, h.real])
        system = np.vstack([top, bot]).astype(float)
        target = np.concatenate([x.coords.real, x.coords.imag])
        coeffs, residual = solve_exact(system, target)
        null_dim = system.shape[1] - svd_rank(system, eps_rank)
        if residual > 1e3 * eps or null_dim != 0:
            raise CertificationFailure("hermitian pair is not unique",
                                       law="uniqueness of x = x1 + i x2",
                                       residual=float(residual),
                                       details={"null_dim": int(null_dim)})
        half = h.shape[1]
        alt1 = h @ coeffs[:half]
        alt2 = h @ coeffs[half:]
        gap = max(max_abs(alt1 - x1.coords), max_abs(alt2 - x2.coords))
        if gap > 1e3 * eps:
            raise CertificationFailure("alternative hermitian pair differs",
                                       law="uniqueness of x = x1 + i x2", residual=gap)
    return x1, x2


@dataclass(frozen=True)
class HermitianFunctionalReport:
    is_hermitian: bool
    adjoint_residual: float
    max_imag_on_hermitians: float
    max_on_kernel: float


def hermitian_functional_check(algebra: Algebra, tau: AlgMap, f_coords,
                               eps: float = EPS,
                               eps_rank: float = EPS_RANK) -> HermitianFunctionalReport:
    """Decide whether a functional is hermitian, two independent ways.

    Primary test: the conjugate-linear adjoint fixes ``f``.  Cross-check:
    ``f`` is real on the hermitian real subspace and vanishes on the
    kernel.  The two verdicts must agree; disagreement is an internal
    consistency failure.
    """
    f = as_complex(getattr(f_coords, "coords", f_coords)).reshape(-1)
    if f.shape != (algebra.dim,):
        raise AlgebraMismatch("functional has wrong length for the algebra")
    f_tau = np.conj(tau.matrix.T @ f)
    adjoint_residual = max_abs(f_tau - f)
    primary = adjoint_residual <= eps

    h = hermitian_real_basis(algebra, tau, eps_rank)
    max_imag = max((abs(float((f @ col).imag)) for col in h.T), default=0.0)
    kernel, _ = kernel_image(tau, eps_rank)
    max_kernel = max((abs(complex(f @ col)) for col in kernel.basis.T), default=0.0)
    secondary = max_imag <= eps and max_kernel <= eps

    if primary != secondary:
        raise CertificationFailure(
            "hermitian-functional criteria disagree",
            law="f^tau = f iff f real on hermitians and zero on ker tau",
            residual=max(adjoint_residual, max_imag, max_kernel),
            details={"primary": primary, "secondary": secondary})
    return HermitianFunctionalReport(is_hermitian=primary,
                                     adjoint_residual=adjoint_residual,
                                     max_imag_on_hermitians=max_imag,
                                     max_on_kernel=max_kernel)
