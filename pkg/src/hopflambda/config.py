from dataclasses import dataclass, field

METHODS = ("linking", "whitehead", "both")


@dataclass(frozen=True)
class RunConfig:
    """Knobs for one enhancement computation.  ``radius`` is the working sphere radius."""

    method: str = "linking"
    radius: float = 1.0
    seed: int = 0
    budget: int = 10_000_000
    step: float = 0.02
    output: str = "text"
    curve_export_path: str | None = None
    threads: int = 1
    cutoff: float = 1e-2
    grid_density: int = 20_000
    retries: int = 8
    isolation_samples: int = 100_000
    isolation_threshold: float = 1e-12
    mirror_check: bool = True
    check_radii: tuple = field(default_factory=tuple)
    timings: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if not self.radius > 0:
            raise ValueError("radius must be > 0")
        if self.budget < 10_000:
            raise ValueError("budget must be at least 10^4 pairs")
        if not 0 < self.step <= 0.2:
            raise ValueError("step must lie in (0, 0.2]")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.output not in ("text", "json"):
            raise ValueError("output must be 'text' or 'json'")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def methods(self) -> tuple:
        return ("linking", "whitehead") if self.method == "both" else (self.method,)

    @property
    def primary_method(self) -> str:
        return "linking" if self.method in ("linking", "both") else "whitehead"
