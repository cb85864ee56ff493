"""lambda(F), rho(F) and mu = lambda + rho, with cross-checks collected in a report."""

from __future__ import annotations

import datetime as _dt
import time
from dataclasses import dataclass, field

from .config import RunConfig
from .dsl import brieskorn_exponents
from .errors import NotIsolated
from .hopf.estimate import HopfEstimate
from .hopf.linking import hopf_via_linking
from .hopf.sphere import SphereMap, normalized_map
from .hopf.whitehead import hopf_via_whitehead
from .mapcore import MapR4R2, gauss_components, mirror, verify_isolated

LINKING_RESIDUAL_MAX = 0.1
METHOD_AGREEMENT_MAX = 0.25


def sphere_map(F: MapR4R2, which: str, radius: float = 1.0) -> SphereMap:
    return normalized_map(gauss_components(F), which, radius=radius)


def ensure_isolated(F: MapR4R2, config: RunConfig, radius: float | None = None) -> float:
    radius = config.radius if radius is None else radius
    min_sq = verify_isolated(F, radius, config.isolation_samples)
    if not min_sq > config.isolation_threshold:
        raise NotIsolated(f"isolated critical point check failed: min sum of squared "
                          f"minors on the radius-{radius:g} sphere is {min_sq:.3e}")
    return min_sq


def estimate_triple(F: MapR4R2, which: str, config: RunConfig, methods=None,
                    radius: float | None = None, curves_out: list | None = None) -> dict:
    """Hopf invariant of one normalized Gauss triple by each requested method.

    ``curves_out`` collects the traced preimage sets of the linking method.
    """
    p = sphere_map(F, which, config.radius if radius is None else radius)
    out = {}
    for method in methods or config.methods:
        if method == "linking":
            out[method] = hopf_via_linking(p, step=config.step, seed=config.seed,
                                           grid_density=config.grid_density,
                                           retries=config.retries, threads=config.threads,
                                           curves_out=curves_out)
        elif method == "whitehead":
            out[method] = hopf_via_whitehead(p, budget=config.budget, seed=config.seed,
                                             cutoff=config.cutoff, threads=config.threads)
        else:
            raise ValueError(f"unknown method {method!r}")
    return out


def lambda_of(F: MapR4R2, config: RunConfig | None = None) -> HopfEstimate:
    config = config or RunConfig()
    ensure_isolated(F, config)
    return estimate_triple(F, "+", config, (config.primary_method,))[config.primary_method]


def rho_of(F: MapR4R2, config: RunConfig | None = None) -> HopfEstimate:
    config = config or RunConfig()
    ensure_isolated(F, config)
    return estimate_triple(F, "-", config, (config.primary_method,))[config.primary_method]


def mu_of(F: MapR4R2, config: RunConfig | None = None) -> int:
    return lambda_of(F, config).value + rho_of(F, config).value


def brieskorn_mu(p: int, q: int) -> int:
    """Milnor number of z^p - w^q, counted as monomials z^i w^j outside (z^(p-1), w^(q-1))."""
    if p < 1 or q < 1:
        raise ValueError("exponents must be >= 1")
    count = 0
    for i in range(p + 1):
        for j in range(q + 1):
            in_ideal = i >= p - 1 or j >= q - 1
            if not in_ideal:
                count += 1
    return count


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "pass": bool(self.passed), "detail": self.detail}


@dataclass
class EnhancementReport:
    map_source: str
    radius: float
    seed: int
    method: str
    lambda_: int | None = None
    rho: int | None = None
    mu: int | None = None
    lambda_estimate: HopfEstimate | None = None
    rho_estimate: HopfEstimate | None = None
    estimates: dict = field(default_factory=dict)
    mirror_lambda: int | None = None
    checks: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    timestamp: str = ""

    def __post_init__(self):
        if self.lambda_ is not None and self.mu != self.lambda_ + self.rho:
            raise ValueError("mu must equal lambda + rho")

    @property
    def computed(self) -> bool:
        return self.lambda_ is not None

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        def est(e):
            return None if e is None else e.to_dict()

        return {
            "map_source": self.map_source,
            "radius": self.radius,
            "seed": self.seed,
            "method": self.method,
            "lambda": self.lambda_,
            "rho": self.rho,
            "mu": self.mu,
            "mirror_lambda": self.mirror_lambda,
            "lambda_estimate": est(self.lambda_estimate),
            "rho_estimate": est(self.rho_estimate),
            "estimates": {k: {m: e.to_dict() for m, e in v.items()}
                          for k, v in self.estimates.items()},
            "checks": [c.to_dict() for c in self.checks],
            "all_checks_pass": self.all_passed,
            "timings": self.timings,
            "timestamp": self.timestamp,
        }


def full_report(F: MapR4R2, config: RunConfig | None = None,
                curves: dict | None = None) -> EnhancementReport:
    """Compute lambda, rho, mu and run every applicable cross-check.

    A failed check is recorded in the report, never raised.  When the
    isolation check fails no invariants are computed.  Passing a dict as
    ``curves`` collects the preimage curves traced for each triple ('+', '-').
    """
    config = config or RunConfig()
    timings = {}
    clock = time.perf_counter

    report = EnhancementReport(
        map_source=F.source_text or str(F), radius=config.radius, seed=config.seed,
        method=config.method,
        timestamp=_dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
    )

    t0 = clock()
    try:
        min_sq = ensure_isolated(F, config)
    except NotIsolated as exc:
        report.checks.append(Check("isolated_critical_point", False, str(exc)))
        return report
    report.checks.append(Check("isolated_critical_point", True,
                               f"min sum p_ij^2 on radius-{config.radius:g} sphere = {min_sq:.3e}"))
    timings["isolation"] = clock() - t0

    t0 = clock()
    if curves is not None:
        curves.setdefault("+", [])
        curves.setdefault("-", [])
    est = {"lambda": estimate_triple(F, "+", config, curves_out=curves and curves["+"]),
           "rho": estimate_triple(F, "-", config, curves_out=curves and curves["-"])}
    timings["invariants"] = clock() - t0
    primary = config.primary_method
    lam, rho = est["lambda"][primary], est["rho"][primary]
    report.estimates = est
    report.lambda_estimate, report.rho_estimate = lam, rho
    report.lambda_, report.rho = lam.value, rho.value
    report.mu = lam.value + rho.value

    if "linking" in config.methods:
        worst = max(est[k]["linking"].diagnostics["max_pair_residual"] for k in est)
        report.checks.append(Check("linking_residual", worst < LINKING_RESIDUAL_MAX,
                                   f"max per-pair residual {worst:.2e} (limit {LINKING_RESIDUAL_MAX})"))

    if config.method == "both":
        ok, parts = True, []
        for k in est:
            lk, wh = est[k]["linking"], est[k]["whitehead"]
            dev = abs(wh.raw - lk.value)
            ok &= wh.value == lk.value and dev < METHOD_AGREEMENT_MAX
            parts.append(f"{k}: linking {lk.value}, whitehead {wh.raw:.4f} "
                         f"(stderr {wh.diagnostics['stderr']:.3f}, "
                         f"half-cutoff {wh.diagnostics['raw_half_cutoff']:.4f})")
        report.checks.append(Check("method_agreement", ok, "; ".join(parts)))

    if config.mirror_check:
        t0 = clock()
        mir = mirror(F)
        mir_lam = estimate_triple(mir, "+", config, (primary,))[primary].value
        report.mirror_lambda = mir_lam
        report.checks.append(Check(
            "mirror_relation", mir_lam + report.lambda_ == report.mu,
            f"lambda(mirror) + lambda = {mir_lam} + {report.lambda_}, mu = {report.mu}"))
        report.checks.append(Check(
            "mirror_swap", mir_lam == report.rho,
            f"lambda(mirror) = {mir_lam}, rho = {report.rho}"))
        timings["mirror"] = clock() - t0

    for r in config.check_radii:
        t0 = clock()
        try:
            ensure_isolated(F, config, radius=r)
            lam_r = estimate_triple(F, "+", config, (primary,), radius=r)[primary].value
            rho_r = estimate_triple(F, "-", config, (primary,), radius=r)[primary].value
        except NotIsolated as exc:
            report.checks.append(Check(f"radius_invariance_{r:g}", False, str(exc)))
            continue
        report.checks.append(Check(
            f"radius_invariance_{r:g}", (lam_r, rho_r) == (report.lambda_, report.rho),
            f"radius {r:g}: lambda={lam_r}, rho={rho_r}"))
        timings[f"radius_{r:g}"] = clock() - t0

    exps = brieskorn_exponents(F.source_text)
    if exps is not None:
        mu_b = brieskorn_mu(*exps)
        report.checks.append(Check("brieskorn_mu", mu_b == report.mu,
                                   f"mu(z^{exps[0]} - w^{exps[1]}) = {mu_b}, computed {report.mu}"))

    if config.timings:
        report.timings = {k: round(v, 4) for k, v in timings.items()}
    return report
