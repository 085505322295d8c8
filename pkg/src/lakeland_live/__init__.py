"""Live classroom telemetry for the Lakeland farming game.

Ingests per-student gameplay event streams, folds them into per-session
model values, and serves a polling dashboard API keyed by class codes.
Ships with a headless bot simulator for demo traffic and detector tests.
"""

__version__ = "0.1.0"
