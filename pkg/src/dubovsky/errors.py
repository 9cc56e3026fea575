"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid parameters, grid, or configuration file content."""


class UnknownPresetError(ConfigError):
    pass


class SimulationBlowUp(RuntimeError):
    """The explicit scheme produced a non-finite or runaway state.

    Attributes:
        step: index j of the first offending node.
        last_state: the last finite (x, y) pair, at node ``step - 1``.
    """

    def __init__(self, step: int, last_state: tuple[float, float], value=None):
        self.step = step
        self.last_state = last_state
        self.value = value
        super().__init__(
            f"state left the finite range at step {step} "
            f"(last finite state x={last_state[0]!r}, y={last_state[1]!r})"
        )
