"""Exception types shared across the package."""


class VarminError(Exception):
    """Base class for package-specific errors."""


class DomainError(VarminError, ValueError):
    """An abscissa or parameter lies outside the valid domain."""


class SamplerDomainError(DomainError):
    """A continuous-curve sampler was evaluated outside its domain."""


class StallError(VarminError):
    """A particle cannot traverse a segment (insufficient kinetic energy)."""


class QuadratureError(VarminError):
    """Adaptive quadrature failed to converge within its depth budget."""
