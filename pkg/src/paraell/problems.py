"""Model problems on the periodic strip.

Operators use ``D = i d/dx``, so ``Delta = -(D1^2 + D2^2)`` and the normal
derivative is ``d/dnu = -i (nu . D)``.
"""

from __future__ import annotations

from .symbols import BoundaryComponent, BoundaryOperator, BVProblem, DiffExpression, Term

__all__ = ["helmholtz_robin", "helmholtz_dirichlet", "bilaplace_dirichlet", "LIBRARY"]

_NORMALS = {"bottom": (0.0, 1.0), "top": (0.0, -1.0)}


def _helmholtz():
    # Delta u + lam^2 u
    return DiffExpression(2, (Term(2, (2, 0), -1.0), Term(2, (0, 2), -1.0), Term(0, (0, 0), 1.0)))


def _dirichlet():
    return BoundaryOperator(0, DiffExpression(0, (Term(0, (0, 0), 1.0),)))


def _normal_derivative(nu, extra=()):
    terms = [Term(1, tuple(int(i == k) for i in range(2)), -1j * nu[k]) for k in range(2) if nu[k]]
    return BoundaryOperator(1, DiffExpression(1, tuple(terms) + tuple(extra)))


def helmholtz_robin() -> BVProblem:
    """``Delta u + lam^2 u = f``, ``du/dnu - lam u = g`` on both edges."""
    comps = tuple(
        BoundaryComponent(name, (_normal_derivative(nu, (Term(0, (0, 0), -1.0),)),), nu)
        for name, nu in _NORMALS.items()
    )
    return BVProblem(1, _helmholtz(), comps, name="helmholtz_robin")


def helmholtz_dirichlet() -> BVProblem:
    comps = tuple(BoundaryComponent(name, (_dirichlet(),), nu) for name, nu in _NORMALS.items())
    return BVProblem(1, _helmholtz(), comps, name="helmholtz_dirichlet")


def bilaplace_dirichlet() -> BVProblem:
    """``Delta^2 u + lam^4 u = f`` with ``u`` and ``du/dnu`` prescribed."""
    interior = DiffExpression(
        4,
        (Term(4, (4, 0), 1.0), Term(4, (2, 2), 2.0), Term(4, (0, 4), 1.0), Term(0, (0, 0), 1.0)),
    )
    comps = tuple(
        BoundaryComponent(name, (_dirichlet(), _normal_derivative(nu)), nu) for name, nu in _NORMALS.items()
    )
    return BVProblem(2, interior, comps, name="bilaplace_dirichlet")


LIBRARY = {
    "helmholtz_robin": helmholtz_robin,
    "helmholtz_dirichlet": helmholtz_dirichlet,
    "bilaplace_dirichlet": bilaplace_dirichlet,
}
