"""
Domain errors of the engine.

Every error carries the process exit code the management commands use, so
that a failing run can be told apart from an incomplete one by its status.
"""

# Exit status of a search that hit its depth or time budget on a live branch.
EXIT_INCOMPLETE = 20


class HypsysError(Exception):
    """Base class for all engine errors"""
    exit_code = 2
    default_message = "engine error"

    def __init__(self, message=None, **context):
        self.context = context
        super().__init__(message or self.default_message)


class InvalidSizeError(HypsysError, ValueError):
    exit_code = 3
    default_message = "invalid alphabet size"


class InvalidPermutationError(HypsysError, ValueError):
    exit_code = 3
    default_message = "rows are not permutations of the same alphabet"


class InvalidWordError(HypsysError, ValueError):
    exit_code = 3
    default_message = "malformed move word"


class UndefinedMoveError(HypsysError):
    exit_code = 4
    default_message = "Rauzy move undefined: top and bottom end with the same letter"


class MembershipError(HypsysError):
    exit_code = 5
    default_message = "permutation is not a vertex of the diagram"


class InvalidTransvectionError(HypsysError, ValueError):
    exit_code = 6
    default_message = "winner and loser must differ"


class NotCandidatePathError(HypsysError):
    exit_code = 7
    default_message = "path ends neither at its start nor at the symmetric of its start"


class NotARomeError(HypsysError):
    exit_code = 8
    default_message = "vertex set misses a cycle of the support graph"


class MustReduceError(HypsysError):
    """gcd(n-1, k) > 1: the family value is the one of a smaller pair"""
    exit_code = 9
    default_message = "gcd(n-1, k) > 1, reduce first"

    def __init__(self, n_prime, k_prime, message=None):
        self.n_prime = n_prime
        self.k_prime = k_prime
        super().__init__(
            message or f"gcd(n-1, k) > 1: reduce to (n', k') = ({n_prime}, {k_prime})",
            n_prime=n_prime, k_prime=k_prime,
        )


class ReducibleCaseError(HypsysError):
    """Even l for n = 3 mod 4: the matrix is reducible"""
    exit_code = 10
    default_message = "reducible case"

    def __init__(self, n_prime, l_prime, message=None):
        self.n_prime = n_prime
        self.l_prime = l_prime
        super().__init__(
            message or f"reducible case: same root as (n', l') = ({n_prime}, {l_prime})",
            n_prime=n_prime, l_prime=l_prime,
        )


class InternalInconsistencyError(HypsysError):
    exit_code = 11
    default_message = "internal inconsistency"


class OutOfRangeError(HypsysError, ValueError):
    exit_code = 12
    default_message = "argument outside the proven range"


class NoDominantRootError(HypsysError):
    exit_code = 13
    default_message = "polynomial has no real root greater than 1"


class NotPrimitiveError(HypsysError):
    exit_code = 14
    default_message = "matrix is not primitive"


class ConstructionError(HypsysError):
    exit_code = 15
    default_message = "symmetric construction violated"


class AmbiguousComparisonError(HypsysError):
    exit_code = 16
    default_message = "comparison undecided at the precision ceiling"

    def __init__(self, message=None, branches=None):
        self.branches = branches
        super().__init__(message, branches=branches)


class NotPureError(HypsysError):
    exit_code = 17
    default_message = "path visits the central permutation"


class BudgetExceededError(HypsysError):
    exit_code = 18
    default_message = "iteration budget exceeded"
