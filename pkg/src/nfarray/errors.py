"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the physical domain of the requested quantity.

    Messages name the violated constraint with its numeric boundary so CLI
    users can see exactly which inequality failed.
    """


class DivergedBeamError(DomainError):
    """A numerical -3 dB edge search found no crossing inside its bracket.

    Raised when the focal point sits too close to (or beyond) the outer
    near-field limit, where the beam no longer closes at the half-power
    level on one side.
    """
