"""Verdict records produced by the theorem harnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerdictRecord:
    theorem: str
    instance: str
    lhs: object
    rhs: object
    holds: bool
    detail: dict = field(default_factory=dict)
    runtime: float | None = None

    def to_json(self, stable: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "instance": self.instance,
            "lhs": _plain(self.lhs),
            "rhs": _plain(self.rhs),
            "holds": bool(self.holds),
        }
        if self.detail:
            out["detail"] = _plain(self.detail)
        if self.runtime is not None and not stable:
            out["runtime"] = round(self.runtime, 4)
        return out


def _plain(x):
    from fractions import Fraction

    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class BoundReport:
    """Combined bounds for one instance: beta, eta, the per-degree
    generator counts, and the verdicts of the per-instance checks."""

    instance: str
    field: str
    group_order: int
    beta: int
    eta: int | None
    generator_counts: dict[int, int]
    verdicts: list[VerdictRecord]

    def to_json(self, stable: bool = False) -> dict:
        return {
            "instance": self.instance,
            "field": self.field,
            "group_order": self.group_order,
            "beta": self.beta,
            "eta": self.eta,
            "generator_counts": {str(d): c for d, c in self.generator_counts.items()},
            "verdicts": [v.to_json(stable=stable) for v in self.verdicts],
            "all_hold": all(v.holds for v in self.verdicts),
        }
