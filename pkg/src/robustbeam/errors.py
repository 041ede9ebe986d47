"""Exception types shared across the package."""


class OutOfDomainError(ValueError):
    """An evaluation point falls outside the supported domain."""


class RankDeficiencyError(ValueError):
    """A least-squares system lost full column rank.

    Carries the numerical rank detected by the solver.
    """

    def __init__(self, message, rank):
        super().__init__(message)
        self.rank = int(rank)


class NumericFailureError(RuntimeError):
    """A numerical routine (eigensolver, SVD) failed or produced non-finite data."""


class DegenerateSolutionError(ValueError):
    """A solver output collapsed to an unusable value (e.g. all-zero weights)."""


class DisambiguationError(RuntimeError):
    """Scale/angle disambiguation against the codebook failed."""
