"""Closed-form block updates of the dictionary pair objective.

For class i with features X (n x k), complement X_bar, labels H (Q x k),
codes A (m x k), analysis dictionary P (m x n), synthesis dictionary D (n x m)
and classifier W (Q x m), the per-class objective is

    ||X - D A||^2 + l1 ||P X_bar||^2 + l2 ||H - W A||^2 + l3 ||P X - A||^2

with every column of D constrained to the unit l2 ball. Each update below is
the exact minimizer of that objective in one block with the others fixed,
except D, which is solved by ADMM.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import structlog

from src.dictionary.linalg import (
    SpdFactor,
    project_columns_to_unit_ball,
    solve_right_spd,
    solve_spd,
)
from src.models import Hyperparameters

logger = structlog.get_logger()

# Residual balancing constants for the adaptive ADMM penalty
RHO_BALANCE_RATIO = 10.0
RHO_SCALE = 2.0


@dataclass
class AdmmState:
    """Warm-start state of the D sub-problem.

    S is the feasible (column-projected) dictionary, T the scaled dual, r the
    total number of ADMM iterations run so far and rho the current penalty.
    """

    S: np.ndarray
    T: np.ndarray
    r: int = 0
    rho: float = 1.0

    @classmethod
    def start(cls, D: np.ndarray, rho: float) -> "AdmmState":
        """State seeded from a feasible dictionary with a zero dual."""
        return cls(S=project_columns_to_unit_ball(D.copy()), T=np.zeros_like(D), r=0, rho=rho)


def update_A(
    X: np.ndarray,
    D: np.ndarray,
    W: np.ndarray,
    P: np.ndarray,
    H: np.ndarray,
    hp: Hyperparameters,
) -> np.ndarray:
    """Sparse codes given the dictionaries and classifier.

    A = (D^T D + l2 W^T W + l3 I)^-1 (D^T X + l2 W^T H + l3 P X).
    With ``hp.compat_eq7`` the W^T W term is added without l2.

    Raises:
        SingularSystem: If the m x m system cannot be factored
    """
    m = D.shape[1]
    ww_weight = 1.0 if hp.compat_eq7 else hp.lambda2
    system = D.T @ D + ww_weight * (W.T @ W) + hp.lambda3 * np.eye(m)
    rhs = D.T @ X + hp.lambda2 * (W.T @ H) + hp.lambda3 * (P @ X)
    return solve_spd(system, rhs, context="A update")


def analysis_gram(
    X: np.ndarray,
    X_bar: np.ndarray,
    hp: Hyperparameters,
    complement_gram: Optional[np.ndarray] = None,
) -> SpdFactor:
    """Factor of l3 X X^T + l1 X_bar X_bar^T + gamma I.

    The matrix does not depend on A, so trainers factor it once per class.
    """
    n = X.shape[0]
    if complement_gram is None:
        complement_gram = X_bar @ X_bar.T
    system = hp.lambda3 * (X @ X.T) + hp.lambda1 * complement_gram + hp.gamma * np.eye(n)
    return SpdFactor(system, context="P update")


def update_P(
    X: np.ndarray,
    X_bar: np.ndarray,
    A: np.ndarray,
    hp: Hyperparameters,
    gram: Optional[SpdFactor] = None,
) -> np.ndarray:
    """Analysis dictionary given the codes.

    P = l3 A X^T (l3 X X^T + l1 X_bar X_bar^T + gamma I)^-1.
    """
    if gram is None:
        gram = analysis_gram(X, X_bar, hp)
    # The system is symmetric, so P^T = G^-1 (l3 X A^T)
    return gram.solve(hp.lambda3 * (X @ A.T)).T


def update_W(A: np.ndarray, H: np.ndarray, hp: Hyperparameters) -> np.ndarray:
    """Linear classifier given the codes.

    W = H A^T (A A^T + gamma I)^-1.
    """
    m = A.shape[0]
    return solve_right_spd(H @ A.T, A @ A.T + hp.gamma * np.eye(m), context="W update")


def _below_tol(residual: float, scale: float, tol: float) -> bool:
    if residual == 0.0:
        return True
    return scale > 0 and residual / scale < tol


def update_D(
    X: np.ndarray,
    A: np.ndarray,
    hp: Hyperparameters,
    state: AdmmState,
) -> Tuple[np.ndarray, AdmmState]:
    """Synthesis dictionary by ADMM on min ||X - D A||^2 s.t. ||d_j|| <= 1.

    Iterates
        D = (X A^T + rho (S - T)) (A A^T + rho I)^-1
        S = column projection of (D + T) onto the unit ball
        T = T + D - S
    until both the primal residual ||D - S||_F / ||D||_F and the dual residual
    rho ||S - S_prev||_F / (rho max(||T||_F, ||S||_F)) fall below admm_tol, or
    admm_iters steps have run, and returns S.

    Args:
        X: Class features (n x k)
        A: Codes (m x k)
        hp: Hyperparameters (rho, admm_iters, admm_tol, adaptive_rho)
        state: Warm-start state; not modified

    Returns:
        (feasible dictionary S, updated state)
    """
    m = A.shape[0]
    S, T, rho = state.S.copy(), state.T.copy(), state.rho
    XAt = X @ A.T
    AAt = A @ A.T
    factor = SpdFactor(AAt + rho * np.eye(m), context="D update")

    steps = 0
    converged = False
    for _ in range(hp.admm_iters):
        D = factor.solve((XAt + rho * (S - T)).T).T
        S_prev = S
        S = project_columns_to_unit_ball(D + T)
        T = T + D - S
        steps += 1

        primal = np.linalg.norm(D - S)
        dual = rho * np.linalg.norm(S - S_prev)
        if _below_tol(primal, np.linalg.norm(D), hp.admm_tol) and _below_tol(
            dual, rho * max(np.linalg.norm(T), np.linalg.norm(S)), hp.admm_tol
        ):
            converged = True
            break

        if hp.adaptive_rho:
            new_rho = rho
            if primal > RHO_BALANCE_RATIO * dual:
                new_rho = rho * RHO_SCALE
            elif dual > RHO_BALANCE_RATIO * primal:
                new_rho = rho / RHO_SCALE
            if new_rho != rho:
                # Scaled dual is y / rho
                T = T * (rho / new_rho)
                rho = new_rho
                factor = SpdFactor(AAt + rho * np.eye(m), context="D update")

    logger.debug("admm_d_update", steps=steps, converged=converged, rho=rho)
    return S, AdmmState(S=S, T=T, r=state.r + steps, rho=rho)
