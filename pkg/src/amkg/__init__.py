"""amkg: decision-support engine for metal additive manufacturing.

An embedded knowledge graph of materials, processes, feedstocks, and
post-processing steps, queried through a read-only Cypher subset and a
natural-language answer pipeline.
"""

__version__ = "0.1.0"
