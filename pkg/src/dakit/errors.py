"""Exception types shared across the toolkit.

Everything derives from DakitError so the CLI can map domain failures
to a single exit code without catching bare ValueError from user code.
"""


class DakitError(ValueError):
    """Base class for all domain errors raised by this package."""


class CatalogError(DakitError):
    """Catalog file could not be parsed or violates the schema."""


class GeometryError(DakitError):
    """Requested microstrip geometry is not realizable."""


class DesignError(DakitError):
    """Design request is infeasible or inconsistent."""


class SimulationError(DakitError):
    """Nodal system could not be solved."""
