"""Distributed spectrum access simulator for cognitive small cell networks.

The compiled core exposes interference-graph topologies, finite-rate channel
models, the graphical access game with its equilibrium oracles, the
stochastic-learning-automata access algorithm and the genie-aided baselines.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
