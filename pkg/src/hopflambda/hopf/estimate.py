from dataclasses import dataclass, field


@dataclass
class HopfEstimate:
    """Integer Hopf invariant with the floating-point value it was rounded from."""

    value: int
    raw: float
    residual: float
    method: str  # "linking" | "whitehead"
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.residual < 0.5:
            raise ValueError(f"residual {self.residual} does not determine an integer")

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "raw": self.raw,
            "residual": self.residual,
            "method": self.method,
            "diagnostics": self.diagnostics,
        }
