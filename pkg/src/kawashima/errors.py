class DomainError(ValueError):
    """Argument outside the domain of an operation (empty index, bad N, z off the half-plane)."""


class DivergenceError(DomainError):
    """The requested series diverges (non-admissible index, last exponent 1)."""
