"""Exception hierarchy shared by every module."""


class NHCalcError(Exception):
    """Base class for all errors raised by :mod:`nhcalc`."""


class DomainError(NHCalcError, ValueError):
    """A function is evaluated outside its smoothness domain, or an input
    violates a mathematical precondition (singular matrix, eigenvalue on a
    forbidden set, insufficient derivative order)."""


class NumericalError(NHCalcError, ArithmeticError):
    """A numerical procedure broke down: non-convergence, a singular
    Sylvester system, a quadrature node hitting an eigenvalue."""


class NotDiagonalizableError(NumericalError):
    """An operation that needs an eigenvector basis met a cluster with
    more than one member."""


class InadmissibleOrderError(NHCalcError, ValueError):
    """Equal nodes of a divided-difference list are not adjacent."""


class InputError(NHCalcError, ValueError):
    """A matrix file or function spec could not be read or parsed."""
