"""Structured verdicts emitted by the verifier."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class ExceptionVerdict:
    """Certificate that an exhaustive sweep found no witness."""

    group_label: str
    m: int
    enumerated_count: int
    all_failed: bool = True
    max_aut_order_seen: int = 0

    def to_dict(self) -> dict:
        return {
            "group": self.group_label,
            "m": self.m,
            "enumerated_count": self.enumerated_count,
            "all_failed": self.all_failed,
            "max_aut_order_seen": self.max_aut_order_seen,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class VerificationReport:
    """Verdict for one (group, m) instance.

    When a digraph was checked, omsr must equal
    oriented and regular2 and (aut_order == group_order);
    the constructor enforces this.  Exception rows carry a certificate
    instead of digraph facts.
    """

    group_label: str
    m: int
    group_order: int
    construction_kind: str
    omsr: bool
    oriented: Optional[bool] = None
    regular2: Optional[bool] = None
    connected: Optional[bool] = None
    aut_order: Optional[int] = None
    stabilizer_order: Optional[int] = None
    orbit_count: Optional[int] = None
    translations_embed: Optional[bool] = None
    runtime_ms: float = 0.0
    certificate: Optional[ExceptionVerdict] = None

    def __post_init__(self):
        if self.aut_order is not None:
            expected = bool(self.oriented and self.regular2
                            and self.aut_order == self.group_order)
            if self.omsr != expected:
                raise ValueError("omsr flag inconsistent with its defining conjunction")
            if self.aut_order % self.group_order != 0:
                raise ValueError("aut_order must be a multiple of the group order")

    def to_dict(self) -> dict:
        out = {
            "group_label": self.group_label,
            "m": self.m,
            "group_order": self.group_order,
            "construction_kind": self.construction_kind,
            "omsr": self.omsr,
            "oriented": self.oriented,
            "regular2": self.regular2,
            "connected": self.connected,
            "aut_order": self.aut_order,
            "stabilizer_order": self.stabilizer_order,
            "orbit_count": self.orbit_count,
            "translations_embed": self.translations_embed,
            "runtime_ms": round(self.runtime_ms, 3),
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        if self.certificate is not None:
            return (f"{self.group_label} m={self.m}: certified exception "
                    f"(no witness among {self.certificate.enumerated_count} tables, "
                    f"max |Aut| seen {self.certificate.max_aut_order_seen})")
        return (f"{self.group_label} m={self.m} [{self.construction_kind}]: "
                f"omsr={self.omsr} oriented={self.oriented} regular2={self.regular2} "
                f"connected={self.connected} |Aut|={self.aut_order} "
                f"|G|={self.group_order} stab={self.stabilizer_order}")
