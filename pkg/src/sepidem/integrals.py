"""Integrals, modular automorphisms, and the trace correspondence.

The left integral is the unique functional phi on C with
(id (x) phi) E = 1 in B; the right integral psi satisfies
(psi (x) id) E = 1 in C.  Both are derived by a linear solve on the
covector rather than through any closed form, so the closed forms of the
matrix families stay available as independent oracles.  Existence,
uniqueness and faithfulness are asserted during the solve.

Integral derivation refuses elements that do not certify as separability
idempotents; in particular nilpotent-mode elements (E^2 = 0) are rejected
by precondition, with the error pointing at the certificate mode.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .algebra import AlgebraElement, LinearFunctional, LinearMap
from .engine import derive_antipode, derive_reverse_antipode, verify_idempotent
from .errors import (
    KMSViolation,
    NotATrace,
    NotFaithful,
    NotInvertible,
    RefusedForMode,
    RelativeCommutationFails,
    SepidemError,
)
from .tensor import TensorElement, is_full, slice_left


def _require_integrable(e: TensorElement, mode):
    if mode is None:
        kind = verify_idempotent(e).kind
        if kind != "idempotent":
            raise RefusedForMode(
                f"integrals are only defined in separability mode; this element "
                f"classifies as {kind} (see the certificate mode)"
            )
        if not is_full(e):
            raise RefusedForMode("integrals need a full element (certificate mode: rejected)")
    elif mode != "separability_idempotent":
        raise RefusedForMode(
            f"integrals are only defined in separability mode, not {mode!r} "
            "(see the certificate mode)"
        )


def derive_left_integral(e: TensorElement, mode=None) -> LinearFunctional:
    """The unique phi on C with (id (x) phi) E = 1; faithful (asserted)."""
    _require_integrable(e, mode)
    f = e.field
    rhs = [[c] for c in e.left.unit]
    try:
        sol = linalg.solve_unique([list(r) for r in e.rows], rhs, f)
    except linalg.RankDeficient as exc:
        raise SepidemError(f"left integral solution space is not a point: {exc}") from None
    except linalg.InconsistentSystem:
        raise SepidemError(
            "no left integral on a certified element; internal inconsistency"
        ) from None
    phi = LinearFunctional(e.right, [row[0] for row in sol])
    w = phi.faithfulness_witness()
    if w is not None:
        raise NotFaithful(w)
    return phi


def derive_right_integral(e: TensorElement, mode=None) -> LinearFunctional:
    """The unique psi on B with (psi (x) id) E = 1; faithful (asserted)."""
    _require_integrable(e, mode)
    f = e.field
    rhs = [[c] for c in e.right.unit]
    cols = linalg.transpose([list(r) for r in e.rows])
    try:
        sol = linalg.solve_unique(cols, rhs, f)
    except linalg.RankDeficient as exc:
        raise SepidemError(f"right integral solution space is not a point: {exc}") from None
    except linalg.InconsistentSystem:
        raise SepidemError(
            "no right integral on a certified element; internal inconsistency"
        ) from None
    psi = LinearFunctional(e.left, [row[0] for row in sol])
    w = psi.faithfulness_witness()
    if w is not None:
        raise NotFaithful(w)
    return psi


def modular_automorphisms(s: LinearMap, sp: LinearMap, phi=None, psi=None, element=None):
    """sigma = S . S' on C and sigma' = S^-1 . S'^-1 on B.

    Both are multiplicative bijections (asserted; bijectivity is inherited
    from the factors).  When the integrals are supplied, the weak KMS laws
    phi(c c') = phi(c' sigma(c)) and psi(b b') = psi(b' sigma'(b)) are
    checked on all basis pairs.

    In float mode the inverse anti-isomorphisms entering sigma' are
    re-derived from the element by fresh absorption solves when it is
    supplied: inverting the derived matrices would square their condition
    numbers, while the fresh solves stay at the conditioning of the
    original data.
    """
    sigma = s.compose(sp)
    if element is not None and not element.field.is_exact:
        from .engine import _absorption_solve

        s_inv = _absorption_solve(element, "right_inv")
        sp_inv = _absorption_solve(element, "left_inv")
        sigma_prime = s_inv.compose(sp_inv)
    else:
        sigma_prime = s.inverse().compose(sp.inverse())
    for m in (sigma, sigma_prime):
        m.assert_multiplicative()
    if phi is not None:
        _check_kms(phi, sigma)
    if psi is not None:
        _check_kms(psi, sigma_prime)
    return sigma, sigma_prime


def _check_kms(fun: LinearFunctional, auto: LinearMap):
    a = fun.algebra
    f = a.field
    form = fun.form_matrix()
    rows = [list(r) for r in auto.rows]
    rhs = linalg.mat_mul(form, rows, f)
    scale = max(1, linalg.matrix_scale(form, f)) * max(1, linalg.matrix_scale(rows, f))
    for j in range(a.dim):
        for l in range(a.dim):
            if not f.negligible(form[j][l] - rhs[l][j], scale):
                raise KMSViolation((a.labels[j], a.labels[l]))


@dataclass(frozen=True)
class TransportReport:
    ok: bool
    failures: tuple = ()


def check_integral_transport(phi, psi, s, sp) -> TransportReport:
    """psi . S' = phi and phi . S = psi, plus invariance of each integral
    under its composite automorphism (no scaling constant)."""
    failures = []
    if psi.compose(sp) != phi:
        failures.append("psi.S' != phi")
    if phi.compose(s) != psi:
        failures.append("phi.S != psi")
    if phi.compose(s.compose(sp)) != phi:
        failures.append("phi not invariant under S.S'")
    if psi.compose(sp.compose(s)) != psi:
        failures.append("psi not invariant under S'.S")
    return TransportReport(not failures, tuple(failures))


@dataclass(frozen=True)
class DerivedData:
    """Everything the later layers need, derived once from one element."""

    element: TensorElement
    antipode: LinearMap
    reverse_antipode: LinearMap
    left_integral: LinearFunctional
    right_integral: LinearFunctional
    modular: LinearMap
    reverse_modular: LinearMap


def derive_all(e: TensorElement, mode=None) -> DerivedData:
    s = derive_antipode(e)
    sp = derive_reverse_antipode(e)
    phi = derive_left_integral(e, mode)
    psi = derive_right_integral(e, mode)
    sigma, sigma_prime = modular_automorphisms(s, sp, phi, psi, element=e)
    return DerivedData(e, s, sp, phi, psi, sigma, sigma_prime)


def implementing_element_from_trace(e: TensorElement, tau: LinearFunctional,
                                    data: DerivedData = None, side: str = "B") -> AlgebraElement:
    """The element of the other algebra implementing a trace.

    side="B": q = (tau (x) id) E for a trace tau on B; q satisfies the
    relative commutation c q = q sigma(c) for all c, and tau is recovered
    as psi(S'(q) . ); both are asserted.

    side="C" is the symmetric extrapolation (obtained by flipping the two
    tensor legs, which exchanges S with S' and phi with psi): for a trace
    tau on C, p = (id (x) tau) E lies in B, satisfies b p = p sigma'(b),
    and tau = phi(S(p) . ).
    """
    w = tau.traciality_witness()
    if w is not None:
        raise NotATrace(w)
    if data is None:
        data = derive_all(e)
    if side == "B":
        q = slice_left(tau, e)
        _assert_relative_commutation(q, data.modular)
    elif side == "C":
        from .tensor import slice_right

        q = slice_right(e, tau)
        _assert_relative_commutation(q, data.reverse_modular)
    else:
        raise SepidemError(f"unknown side {side!r}")
    if trace_functional_of(q, data, side) != tau:
        raise SepidemError("trace round-trip through the implementing element fails")
    return q


def trace_functional_of(q: AlgebraElement, data: DerivedData, side: str = "B") -> LinearFunctional:
    """psi(S'(q) . ) on B for side="B"; phi(S(q) . ) on C for side="C"."""
    if side == "B":
        t = data.reverse_antipode(q)
        integral = data.right_integral
    else:
        t = data.antipode(q)
        integral = data.left_integral
    alg = t.algebra
    cov = linalg.vec_mat(list(integral.covector), alg.left_mult_matrix(t.coeffs), alg.field)
    return LinearFunctional(alg, cov)


def _assert_relative_commutation(q: AlgebraElement, auto: LinearMap):
    alg = q.algebra
    for l in range(alg.dim):
        x = alg.basis_element(l)
        if x * q != q * auto(x):
            raise RelativeCommutationFails(alg.labels[l])


def trace_from_implementing_element(e: TensorElement, q: AlgebraElement,
                                    data: DerivedData = None, side: str = "B"):
    """The trace implemented by q (see implementing_element_from_trace for
    the two sides; side="C" is the symmetric extrapolation).

    Returns (tau, faithful).  tau is tracial (asserted), and it is
    faithful exactly when q is invertible; both directions of that
    equivalence are asserted.
    """
    if data is None:
        data = derive_all(e)
    if side == "B":
        _assert_relative_commutation(q, data.modular)
    elif side == "C":
        _assert_relative_commutation(q, data.reverse_modular)
    else:
        raise SepidemError(f"unknown side {side!r}")
    tau = trace_functional_of(q, data, side)
    w = tau.traciality_witness()
    if w is not None:
        raise NotATrace(w)
    faithful = tau.is_faithful()
    try:
        q.inverse()
        invertible = True
    except NotInvertible:
        invertible = False
    if faithful != invertible:
        raise SepidemError(
            "faithfulness of the trace must match invertibility of the implementing element"
        )
    return tau, faithful
