"""Dense symmetric positive-definite solves and column projections."""

import numpy as np
import structlog
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from src.errors import SingularSystem

logger = structlog.get_logger()


class SpdFactor:
    """Cholesky factor of a symmetric positive-definite matrix, reusable
    across right-hand sides."""

    def __init__(self, matrix: np.ndarray, context: str = "system"):
        """Factor ``matrix``.

        Args:
            matrix: Square SPD matrix
            context: Name of the system, used in error messages

        Raises:
            SingularSystem: If the factorization fails
        """
        self.context = context
        self.size = matrix.shape[0]
        try:
            self._factor = cho_factor(matrix, lower=True, check_finite=True)
        except (LinAlgError, ValueError) as e:
            logger.error("spd_factorization_failed", context=context, size=self.size, error=str(e))
            raise SingularSystem(f"{context}: {self.size}x{self.size} system is singular ({e})") from e

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """Return M^-1 rhs."""
        solution = cho_solve(self._factor, rhs, check_finite=False)
        if not np.isfinite(solution).all():
            raise SingularSystem(f"{self.context}: solve produced non-finite values")
        return solution


def solve_spd(matrix: np.ndarray, rhs: np.ndarray, context: str = "system") -> np.ndarray:
    """Solve M Y = rhs for SPD M."""
    return SpdFactor(matrix, context).solve(rhs)


def solve_right_spd(lhs: np.ndarray, matrix: np.ndarray, context: str = "system") -> np.ndarray:
    """Solve Y M = lhs for SPD M, i.e. Y = lhs M^-1."""
    return solve_spd(matrix, lhs.T, context).T


def project_columns_to_unit_ball(matrix: np.ndarray) -> np.ndarray:
    """Scale every column with l2 norm above 1 back onto the unit sphere."""
    norms = np.linalg.norm(matrix, axis=0)
    scale = np.where(norms > 1.0, 1.0 / np.maximum(norms, 1.0), 1.0)
    return matrix * scale


def normalize_columns(matrix: np.ndarray) -> np.ndarray:
    """Scale every nonzero column to unit l2 norm."""
    norms = np.linalg.norm(matrix, axis=0)
    return matrix / np.where(norms > 0, norms, 1.0)
