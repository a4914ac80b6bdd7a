"""Relation linking for KBQA over AMR parses.

Pipeline pieces: PENMAN parsing (:mod:`amrlink.amr`), binary triple
decomposition (:mod:`amrlink.triples`), a flat-file KB index
(:mod:`amrlink.kb`), question grounding (:mod:`amrlink.metadata`),
distant-supervision data generation (:mod:`amrlink.ds`), statistical
predicate alignment (:mod:`amrlink.alignment`), candidate scorers
(:mod:`amrlink.scorers`), score aggregation and evaluation
(:mod:`amrlink.aggregate`), and the CLI (:mod:`amrlink.cli`).
"""

__version__ = "0.1.0"
