"""Packet-level simulator for proactive MANET routing protocols."""

from ._manetsim import (
    AnalyticInputs,
    Scenario,
    ce_dsdv,
    ce_fsr,
    ce_olsr,
    load_config,
    parse_config,
    run,
    sweep,
)

__all__ = [
    "AnalyticInputs",
    "Scenario",
    "ce_dsdv",
    "ce_fsr",
    "ce_olsr",
    "load_config",
    "parse_config",
    "run",
    "sweep",
]
