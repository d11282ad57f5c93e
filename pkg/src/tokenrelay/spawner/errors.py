class SpawnerError(Exception):
    pass


class NoMatchingSystem(SpawnerError):
    """Hostname matched no configured system profile."""


class TemplateError(SpawnerError):
    def __init__(self, placeholder: str):
        self.placeholder = placeholder
        super().__init__(f"unresolved template placeholder: {{{{{placeholder}}}}}")


class ValidationError(SpawnerError):
    """Launch options violate the selected profile's limits."""


class NoFreePort(SpawnerError):
    pass


class SubmitFailed(SpawnerError):
    def __init__(self, message: str, output: str = ""):
        self.output = output
        super().__init__(f"{message}\n{output}" if output else message)


class CommsError(SpawnerError):
    """Could not talk to the proxy service's management endpoint."""


class StageError(SpawnerError):
    """Wraps a failure with the launch stage it occurred in."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage}: {cause}")
