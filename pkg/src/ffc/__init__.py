"""Flow-graph based fault classification for faulty/fixed program pairs.

The toolkit parses a small Java-flavored language, builds combined
control-/data-flow graphs, aligns the faulty and fixed graphs of a bug,
assigns flow-graph fault classes to the difference, and aggregates
dataset-level statistics.
"""

from ffc.minij import LexError, ParseError, parse, to_source, tokenize
from ffc.flowgraph import (
    CfgEdge,
    DfgEdge,
    FlowGraph,
    FlowNode,
    build_cfg,
    build_dfg,
    reaching_definitions,
)
from ffc.graphio import FormatError, export_graph, import_graph
from ffc.align import Alignment, align, edge_diff
from ffc.classifier import (
    FaultClass,
    FaultClassSet,
    UnclassifiedDiff,
    classify,
    fault_type,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "CfgEdge",
    "DfgEdge",
    "FaultClass",
    "FaultClassSet",
    "FlowGraph",
    "FlowNode",
    "FormatError",
    "LexError",
    "ParseError",
    "UnclassifiedDiff",
    "align",
    "build_cfg",
    "build_dfg",
    "classify",
    "edge_diff",
    "export_graph",
    "fault_type",
    "import_graph",
    "parse",
    "reaching_definitions",
    "to_source",
    "tokenize",
]
