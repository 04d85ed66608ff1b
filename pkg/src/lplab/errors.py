"""Exception hierarchy shared by every lplab module."""


class LpError(Exception):
    """Base class for all lplab errors."""


class RationalParseError(LpError, ValueError):
    pass


class LpFormatError(LpError, ValueError):
    """An LP file or JSON document does not follow the expected schema."""


class DimensionMismatch(LpError, ValueError):
    pass


class RankDeficient(LpError, ValueError):
    def __init__(self, rank: int, m: int):
        super().__init__(f"constraint matrix has rank {rank}, expected {m}")
        self.rank = rank
        self.m = m


class SingularBasis(LpError, ValueError):
    def __init__(self, indices):
        super().__init__(f"basis {list(indices)} is singular")
        self.indices = tuple(indices)


class InfeasibleInitialBasis(LpError, ValueError):
    pass


class Infeasible(LpError):
    """The LP has no feasible point."""


class BudgetExceeded(LpError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"work of {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class NoFeasibleBasis(LpError):
    pass


class NoOptimalBasisFound(LpError):
    pass


class NotApplicable(LpError):
    pass


class GenerationFailed(LpError):
    pass


class UnboundedLP(LpError):
    """The objective is unbounded below on the feasible region."""
