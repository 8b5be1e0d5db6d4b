import re

import pydot

from uageo.lattice.model import ClosedSetLattice


def hasse_graph(lattice: ClosedSetLattice) -> pydot.Dot:
    """Covering relation as a bottom-to-top digraph, one node per element."""
    name = re.sub(r"\W", "_", f"{lattice.algebra.name}_{lattice.var_count}")
    graph = pydot.Dot(name, graph_type="digraph", rankdir="BT")
    for i, element in enumerate(lattice.elements):
        graph.add_node(pydot.Node(str(i), label=f'"{i}: {len(element)}"'))
    for i, j in lattice.cover_edges():
        graph.add_edge(pydot.Edge(str(i), str(j)))
    return graph


def export_hasse_dot(lattice: ClosedSetLattice) -> str:
    return hasse_graph(lattice).to_string()
