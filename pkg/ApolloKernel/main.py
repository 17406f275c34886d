#! /usr/bin/env python3
# -*- coding: utf-8 -*-

#
# Apollo -- tangent-ball geometry kernel
# Copyright (C) 2026  Apollo kernel authors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published
# by the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#


"""Apollo kernel command line and API: tangent balls (Apollonius vertices) of d+1 balls in R^d.

Subcommands solve one set of d+1 balls, enumerate the vertices of a larger generator set,
render 2-d sets as SVG, time the solution recipes, or serve the same functionality over HTTP
(default 0.0.0.0:7000, Swagger documentation at /docs).

Exit codes: 0 success (also when no real solution exists), 2 parse error, 3 invalid input or
numerical failure, 4 too many subsets, 5 unsupported dimension or rank.

Examples:
    $ python3 main.py solve balls.json --recipe auto
    $ python3 main.py vertices structure.csv --format csv --prune 2.0 --min-radius 1.2
    $ python3 main.py plot2d balls.json -o balls.svg
    $ python3 main.py bench --dims 2,3,4 --trials 1000
    $ python3 main.py serve --ip 127.0.0.1
"""

import argparse             # Arguments parser
import logging, coloredlogs                 # Standard logging functionality with colors functionality
import sys
from typing import List, Optional

# Modules required to run FastAPI
import uvicorn  # Python web server
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware

# Custom modules of Apollo kernel
from kernel.errors import ApolloError, InputParseError
from kernel.geometry_types import SignSet
from routers import solve_queries, vertex_queries
from utilities.bench import run_bench
from utilities.data_processing import VertexDataProcessing
from utilities.enumeration import enumerate_vertices
from utilities.generator_files import integerize, load_generator_file, to_ball_set, to_balls
from utilities.plotting import plot_generators
from utilities.reports import dumps_report, solve_ball_set
from utilities.settings import KernelSettings


logger = logging.getLogger("apollo-kernel")

# Application definition ("description" key may be added too).
app = FastAPI(
    title="Apollo API",
    version="1.0.0",
)

# Load API routers
app.include_router(solve_queries.router, tags=["Solve queries"])
app.include_router(vertex_queries.router, tags=["Vertex queries"])


@app.get("/", summary="Get API information", tags=["General"])
def get_root(request: Request) -> dict:
    """
    Default function to show Apollo API name, version, and Swagger URL when root path is requested.
    """
    swagger_path = "http://{hostname}:{port}/docs".format(hostname=request.url.hostname, port=request.url.port)
    return {"name": app.title, "version": app.version, "swagger": swagger_path}


def cmd_solve(args: argparse.Namespace) -> str:
    _, ball_set = to_ball_set(load_generator_file(args.input))
    signs = SignSet.parse(args.signs) if args.signs else None
    report = solve_ball_set(ball_set, recipe=args.recipe, signs=signs, all_signs=args.all_signs,
                            preprocess=args.preprocess, tol=KernelSettings().tolerances)
    return dumps_report(report)


def cmd_vertices(args: argparse.Namespace) -> str:
    generator_file = load_generator_file(args.input)
    ids, balls = to_balls(generator_file)
    exact_balls = integerize(balls, generator_file.scale_exponent) if args.exact else None
    found = enumerate_vertices(
        balls,
        generator_file.dimension,
        KernelSettings().tolerances,
        prune=args.prune,
        min_radius=args.min_radius,
        exact=args.exact,
        exact_balls=exact_balls,
        max_combinations=args.max_combinations,
        workers=KernelSettings().workers,
    )
    data_processing = VertexDataProcessing(args.format, ids)
    return data_processing.serialize(data_processing.process_response(found, generator_file.dimension))


def cmd_plot2d(args: argparse.Namespace) -> str:
    generator_file = load_generator_file(args.input)
    _, balls = to_balls(generator_file)
    return plot_generators(balls, generator_file.dimension, args.vertices, KernelSettings().tolerances,
                           KernelSettings().workers)


def cmd_bench(args: argparse.Namespace) -> str:
    try:
        dims = [int(value) for value in args.dims.split(",") if value.strip()]
    except ValueError:
        raise InputParseError(f"Given dimensions '{args.dims}' are not a comma separated list of integers.")
    if any(d < 1 for d in dims):
        raise InputParseError(f"Given dimensions '{args.dims}' must be positive.")
    return run_bench(dims, args.trials, args.seed, KernelSettings().tolerances)


def cmd_serve(args: argparse.Namespace) -> None:
    # Set HTTP headers and allow all connection
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # Start API web server using Uvicorn server
    uvicorn.run(app, host=args.ip, port=int(args.port))


def build_parser() -> argparse.ArgumentParser:
    # Argument parser automatically creates -h argument
    parser = argparse.ArgumentParser(description="Tangent balls of d+1 balls in R^d.")
    parser.add_argument("-l", "--log", choices=["debug", "info", "warning", "error", "critical"], help="Log level", required=False, default="INFO")
    commands = parser.add_subparsers(dest="command", required=True)

    # Options shared by the subcommands
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", help="Relative tangency residual tolerance.", type=float, default=None)
    common.add_argument("--workers", help="Worker processes (default APOLLO_THREADS or CPU count).", type=int, default=None)

    solve = commands.add_parser("solve", parents=[common], help="Solve one set of d+1 balls.")
    solve.add_argument("input", help="Generator file (JSON or CSV).")
    solve.add_argument("--recipe", choices=["1", "2", "3", "4", "auto"], default="auto", help="Solution recipe.")
    solve.add_argument("--signs", help="Tangency signs, e.g. \"+,-,+\".", default=None)
    solve.add_argument("--all-signs", help="Solve every sign set.", action="store_true")
    solve.add_argument("--preprocess", help="Translate the smallest ball to the origin first.", action="store_true")
    solve.set_defaults(handler=cmd_solve)

    vertices = commands.add_parser("vertices", parents=[common], help="Enumerate diagram vertices of a generator set.")
    vertices.add_argument("input", help="Generator file (JSON or CSV).")
    vertices.add_argument("--format", choices=["json", "csv"], default="json", help="Output format.")
    vertices.add_argument("--exact", help="Decide conflicts with exact predicates (integer input).", action="store_true")
    vertices.add_argument("--prune", help="Only solve subsets of generators within this gap.", type=float, default=None)
    vertices.add_argument("--min-radius", help="Drop vertices with a smaller radius.", type=float, default=None)
    vertices.add_argument("--max-combinations", help="Limit on the number of solved subsets.", type=int, default=200000)
    vertices.set_defaults(handler=cmd_vertices)

    plot2d = commands.add_parser("plot2d", parents=[common], help="Render a 2-d generator set as SVG.")
    plot2d.add_argument("input", help="Generator file (JSON or CSV).")
    plot2d.add_argument("--vertices", help="Vertex report written by the vertices command.", default=None)
    plot2d.add_argument("-o", "--output", help="Output file (default standard output).", default=None)
    plot2d.set_defaults(handler=cmd_plot2d)

    bench = commands.add_parser("bench", parents=[common], help="Time the solution recipes.")
    bench.add_argument("--dims", help="Comma separated dimensions.", default="2,3")
    bench.add_argument("--trials", help="Random sets per dimension.", type=int, default=1000)
    bench.add_argument("--seed", help="Seed of the first random set.", type=int, default=0)
    bench.set_defaults(handler=cmd_bench)

    serve = commands.add_parser("serve", parents=[common], help="Start the HTTP API.")
    serve.add_argument("-ip", "--ip", help="IP address to bind the API web server.", type=str, default="0.0.0.0")
    serve.add_argument("-p", "--port", help="Port to bind the API web server.", type=int, default=7000)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    # Set logging
    coloredlogs.install(level=getattr(logging, args.log.upper()), fmt="%(asctime)s %(name)s [%(levelname)s]: %(message)s")

    try:
        KernelSettings().reset()
        KernelSettings().configure(residual_rel=args.tolerance, workers=args.workers)
        output = args.handler(args)
    except ApolloError as e:
        logger.error(e.message)
        return e.exit_code

    if output is not None:
        if getattr(args, "output", None):
            with open(args.output, "w") as output_file:
                output_file.write(output)
        else:
            sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
