class InputError(ValueError):
    """Malformed or inconsistent input (bad ids, probabilities, universes, files)."""


class CapacityError(ValueError):
    """Instance exceeds a hard size limit of an exhaustive routine."""
