"""The three demonstration networks used across the tests, docs and CLI.

All variables are binary with states ("false", "true") except SEASON,
whose states are ("summer", "winter").  The numeric parameters are fixture
choices; anything asserted about posteriors over these networks is
recomputed from the enumeration oracle, never quoted.
"""

from __future__ import annotations

from .dag import build_dag
from .network import Cpt, Network, Variable

__all__ = ["chain_network", "sprinkler_network", "burglary_network"]

_BOOL = ("false", "true")


def chain_network() -> Network:
    """Z -> X -> Y, a noisy three-step relay (string, hood, toy)."""
    dag = build_dag(["Z", "X", "Y"], [("Z", "X"), ("X", "Y")])
    variables = [Variable(name, _BOOL) for name in ("Z", "X", "Y")]
    cpts = [
        Cpt("Z", [], [[0.5, 0.5]]),
        Cpt("X", ["Z"], [[0.9, 0.1], [0.1, 0.9]]),
        Cpt("Y", ["X"], [[0.9, 0.1], [0.1, 0.9]]),
    ]
    return Network(dag, variables, cpts)


def sprinkler_network() -> Network:
    """The wet-pavement network: season drives sprinkler and rain, both wet
    the pavement, wet pavement turns slippery.  Multiply connected."""
    dag = build_dag(
        ["SEASON", "SPRINKLER", "RAIN", "WET", "SLIPPERY"],
        [
            ("SEASON", "SPRINKLER"),
            ("SEASON", "RAIN"),
            ("SPRINKLER", "WET"),
            ("RAIN", "WET"),
            ("WET", "SLIPPERY"),
        ],
    )
    variables = [
        Variable("SEASON", ("summer", "winter")),
        Variable("SPRINKLER", _BOOL),
        Variable("RAIN", _BOOL),
        Variable("WET", _BOOL),
        Variable("SLIPPERY", _BOOL),
    ]
    cpts = [
        Cpt("SEASON", [], [[0.5, 0.5]]),
        Cpt("SPRINKLER", ["SEASON"], [[0.3, 0.7], [0.9, 0.1]]),
        Cpt("RAIN", ["SEASON"], [[0.8, 0.2], [0.4, 0.6]]),
        Cpt(
            "WET",
            ["SPRINKLER", "RAIN"],
            [[0.9, 0.1], [0.2, 0.8], [0.1, 0.9], [0.01, 0.99]],
        ),
        Cpt("SLIPPERY", ["WET"], [[0.95, 0.05], [0.2, 0.8]]),
    ]
    return Network(dag, variables, cpts)


def burglary_network() -> Network:
    """Burglar or earthquake trip the alarm; a burglar also leaves
    footprints.  A polytree with one collider."""
    dag = build_dag(
        ["BURGLAR", "EARTHQUAKE", "ALARM", "FOOTPRINTS"],
        [
            ("BURGLAR", "ALARM"),
            ("EARTHQUAKE", "ALARM"),
            ("BURGLAR", "FOOTPRINTS"),
        ],
    )
    variables = [Variable(name, _BOOL) for name in dag.names]
    cpts = [
        Cpt("BURGLAR", [], [[0.99, 0.01]]),
        Cpt("EARTHQUAKE", [], [[0.98, 0.02]]),
        Cpt(
            "ALARM",
            ["BURGLAR", "EARTHQUAKE"],
            [[0.999, 0.001], [0.70, 0.30], [0.05, 0.95], [0.02, 0.98]],
        ),
        Cpt("FOOTPRINTS", ["BURGLAR"], [[0.95, 0.05], [0.1, 0.9]]),
    ]
    return Network(dag, variables, cpts)
