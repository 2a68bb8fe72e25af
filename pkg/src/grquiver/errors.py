class CapExceeded(RuntimeError):
    """A configured feasibility cap would be exceeded."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
