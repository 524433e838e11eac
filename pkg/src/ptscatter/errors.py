"""Exception types shared across the solvers and closed-form evaluators."""


class SolverError(Exception):
    """Base class for failures of the scattering solvers."""


class SingularSystem(SolverError):
    """The matching system is numerically singular or the chain is severed.

    Raised when a scaled pivot drops below the singularity threshold, or when
    a total nearest-neighbour coupling (-1 + W off-diagonal) vanishes so that
    the scattering problem degenerates (e.g. coupling |x| = 1 in the
    delta-pair family).
    """


class ZeroHopping(SingularSystem):
    """A total sub-diagonal coupling vanishes; the transfer recursion would divide by zero."""


class NotTridiagonal(SolverError):
    """The interaction window has entries beyond nearest neighbours; the transfer recursion does not apply."""


class SingularCoupling(SolverError):
    """A closed-form denominator vanishes at this (coupling, phi) point."""
