#! /usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Custom functions to ease processing of vertex enumeration results in Apollo kernel.
"""

import csv
import io
from typing import List

import networkx as nx  # Incidence graph of generators and vertices

from models import query_models
from utilities.enumeration import Vertex
from utilities.reports import dumps_report


class VertexDataProcessing:
    """
    Output data processing allowing to serialize enumerated vertices in the requested format
    together with the cell statistics derived from the generator/vertex incidence graph.

    :param type: Output format of the vertex report (should be "json" or "csv").
    :param ids: Generator ids in input order.
    :ivar __type: Requested output format.
    :ivar __ids: Generator ids.
    :ivar __graph: Structure to store the incidence graph as NetworkX graph.
    """
    __type: str = ""
    __ids: List[str] = []
    __graph: object = None


    def __init__(self, type: str, ids: List[str]) -> None:
        self.__type = type if type else "json"
        self.__ids = list(ids)


    def __build_graph(self, vertices: List[Vertex]) -> None:
        """
        Create bipartite incidence graph with generator nodes ("g", i) and vertex nodes ("v", k).

        :param vertices: Enumerated vertices.
        """
        self.__graph = nx.Graph()
        self.__graph.add_nodes_from((("g", index) for index in range(len(self.__ids))), kind="generator")
        for number, vertex in enumerate(vertices):
            self.__graph.add_node(("v", number), kind="vertex", twin_id=vertex.twin_id)
            for member in vertex.members:
                self.__graph.add_edge(("g", member), ("v", number))


    def disconnected_generators(self) -> List[str]:
        """
        Generators incident to no vertex (trivial balls or disconnected cells).

        :return: Generator ids in input order.
        """
        return [self.__ids[index] for index in range(len(self.__ids)) if self.__graph.degree[("g", index)] == 0]


    def twin_bound_generators(self) -> List[str]:
        """
        Generators whose cell is bounded by exactly one twin pair, i.e. both incident vertices
        are the two roots of one quadratic.

        :return: Generator ids in input order.
        """
        result = []
        for index in range(len(self.__ids)):
            neighbors = list(self.__graph.neighbors(("g", index)))
            if len(neighbors) != 2:
                continue
            twin_ids = {self.__graph.nodes[node]["twin_id"] for node in neighbors}
            if len(twin_ids) == 1 and None not in twin_ids:
                result.append(self.__ids[index])
        return result


    def __record(self, vertex: Vertex) -> dict:
        return query_models.VertexRecord(
            generator_ids=[self.__ids[index] for index in vertex.members],
            root=vertex.root,
            center=[float(value) for value in vertex.center],
            radius=float(vertex.radius),
            klass=vertex.klass,
            twin_id=vertex.twin_id,
            residual=float(vertex.residual),
        ).model_dump()


    def process_response(self, vertices: List[Vertex], dimension: int) -> dict:
        """
        Transform enumerated vertices to the vertex report dictionary.

        :param vertices: Enumerated vertices in canonical order.
        :param dimension: Space dimension.
        :return: Vertex report with records and incidence statistics.
        """
        self.__build_graph(vertices)
        return {
            "dimension": dimension,
            "generator_count": len(self.__ids),
            "vertex_count": len(vertices),
            "vertices": [self.__record(vertex) for vertex in vertices],
            "disconnected_generators": self.disconnected_generators(),
            "twin_bound_generators": self.twin_bound_generators(),
        }


    def serialize(self, report: dict) -> str:
        """
        Serialize a vertex report. JSON keeps the whole report, CSV lists one vertex per row
        with floats printed to 17 significant digits.

        :param report: Report returned by process_response.
        :return: Serialized report ending with a newline.
        """
        if self.__type == "json":
            return dumps_report(report)

        output = io.StringIO()
        writer = csv.writer(output, lineterminator="\n")
        dimension = report["dimension"]
        writer.writerow(["generator_ids", "root"] + [f"x{k + 1}" for k in range(dimension)]
                        + ["radius", "klass", "twin_id", "residual"])
        for record in report["vertices"]:
            writer.writerow(
                [";".join(record["generator_ids"]), record["root"]]
                + [format(value, ".17g") for value in record["center"]]
                + [format(record["radius"], ".17g"), record["klass"],
                   "" if record["twin_id"] is None else record["twin_id"], format(record["residual"], ".17g")]
            )
        return output.getvalue()
