"""Exception types shared across the package.

The CLI maps these to exit codes: configuration problems (bad JSON, bad
flags, invalid lattice files) exit with 2, mathematically meaningful
failures (no class with the requested slope, empty support, ...) with 3,
and violations of internal invariants with 4.
"""


class K3LaxError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(K3LaxError):
    """Malformed input file or inconsistent run configuration."""


class LatticeError(ConfigError):
    """Lattice data fails a structural check (symmetry, signature, parity)."""


class DimensionError(K3LaxError):
    """Vector length does not match the rank of the lattice."""


class RadicandMismatch(K3LaxError):
    """Arithmetic attempted between quadratic numbers over different radicands."""


class DomainError(K3LaxError):
    """Operand outside the domain of the operation (e.g. sqrt of a negative)."""


class BasisError(K3LaxError):
    """A proposed basis fails rank or pairing requirements."""


class BoxTooSmall(K3LaxError):
    """The search box cannot contain the vectors the construction needs."""


class NoSphericalClass(K3LaxError):
    """No spherical class with the requested slope exists in the search box."""


class EmptySupport(K3LaxError):
    """No class in the box carries nonzero central charge."""


class DegenerateCharge(K3LaxError):
    """Mass data is consistent only with a charge of real rank one."""


class InconsistentMasses(K3LaxError):
    """Mass data cannot come from any additive complex-valued charge."""


class ExactSqrtUnavailable(K3LaxError):
    """A square root required by exact reconstruction leaves the working field."""


class NoOrientation(K3LaxError):
    """Neither sign branch of a reconstructed charge lands in the positive cone."""


class SearchLimitExceeded(K3LaxError):
    """A bounded search ran out of budget before finding a witness."""


class InternalInvariantError(K3LaxError):
    """A cross-check that should hold identically failed; indicates a bug."""
