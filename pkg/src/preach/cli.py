"""Command-line interface for building indices and running benchmarks."""

from __future__ import annotations

import sys
import time
from pathlib import Path

import click

from .bench import (ALL_ALGORITHMS, BenchConfig, ScalingFamily, run_bench,
                    run_distribution, run_scaling)
from .generate import (GRAPH500_SKEW, WorkloadKind, gen_kronecker_dag,
                       gen_random_dag, gen_workload)
from .graph import GraphFormat, load_graph, write_graph
from .index import build_index, index_footprint, load_index, save_index
from .search import SearchScratch, query
from .stats import graph_stats

_FORMATS = {"edge_list": GraphFormat.EDGE_LIST, "gra": GraphFormat.GRA}


def _kind(name: str) -> WorkloadKind:
    return WorkloadKind(name)


@click.group()
def main():
    """Reachability index and benchmark harness."""


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="edge_list", type=click.Choice(sorted(_FORMATS)))
@click.option("--index-out", required=True, type=click.Path())
def build(graph_path, fmt, index_out):
    """Build an index from a graph file and persist it."""
    graph = load_graph(graph_path, _FORMATS[fmt])
    start = time.perf_counter()
    index = build_index(graph)
    elapsed_ms = (time.perf_counter() - start) * 1000
    save_index(index, index_out)
    click.echo(f"built index: n={index.dag.dag.n} m={index.dag.dag.m} "
               f"footprint={index_footprint(index)}B construction={elapsed_ms:.1f}ms")


@main.command(name="query")
@click.argument("s", type=int)
@click.argument("t", type=int)
@click.option("--graph", "graph_path", type=click.Path(exists=True))
@click.option("--format", "fmt", default="edge_list", type=click.Choice(sorted(_FORMATS)))
@click.option("--index-in", type=click.Path(exists=True))
def query_cmd(s, t, graph_path, fmt, index_in):
    """Answer one s t reachability query."""
    if index_in:
        index = load_index(index_in)
    elif graph_path:
        index = build_index(load_graph(graph_path, _FORMATS[fmt]))
    else:
        raise click.UsageError("need --graph or --index-in")
    scratch = SearchScratch.for_index(index)
    result, stats = query(index, scratch, s, t)
    click.echo(f"{'true' if result else 'false'} settled_by={stats.settled_by.value} "
               f"visited={stats.visited_fwd + stats.visited_bwd}")


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="edge_list", type=click.Choice(sorted(_FORMATS)))
@click.option("--algo", "algos", multiple=True,
              type=click.Choice(ALL_ALGORITHMS), default=("preach", "bidir_bfs"))
@click.option("--workload-kind", default="random",
              type=click.Choice([k.value for k in WorkloadKind]))
@click.option("--count", default=10_000, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--reps", default=1, type=int)
@click.option("--csv", "csv_path", type=click.Path())
@click.option("--threads", default=1, type=int)
def bench(graph_path, fmt, algos, workload_kind, count, seed, reps, csv_path, threads):
    """Benchmark a query batch; prints one CSV row per algorithm."""
    graph = load_graph(graph_path, _FORMATS[fmt])
    config = BenchConfig(graph=graph, algorithms=list(algos),
                         kind=_kind(workload_kind), count=count, seed=seed,
                         repetitions=reps, output=csv_path, threads=threads,
                         name=Path(graph_path).stem)
    records = run_bench(config)
    from .bench import CSV_HEADER
    click.echo(CSV_HEADER)
    for record in records:
        click.echo(record.csv_row(config.name))


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="edge_list", type=click.Choice(sorted(_FORMATS)))
@click.option("--algo", default="preach", type=click.Choice(ALL_ALGORITHMS))
@click.option("--workload-kind", default="random",
              type=click.Choice([k.value for k in WorkloadKind]))
@click.option("--count", default=10_000, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--csv", "csv_path", required=True, type=click.Path())
def dist(graph_path, fmt, algo, workload_kind, count, seed, csv_path):
    """Write the per-query time distribution of one algorithm."""
    graph = load_graph(graph_path, _FORMATS[fmt])
    config = BenchConfig(graph=graph, algorithms=[algo], kind=_kind(workload_kind),
                         count=count, seed=seed, output=csv_path,
                         name=Path(graph_path).stem)
    run_distribution(config)


@main.command()
@click.option("--family", required=True, type=click.Choice(["density", "size"]))
@click.option("--nodes", default=100_000, type=int, help="fixed n for the density sweep")
@click.option("--sizes", default="10000,100000,1000000", help="n grid for the size sweep")
@click.option("--density", default=8, type=int, help="fixed m/n for the size sweep")
@click.option("--count", default=1000, type=int, help="random queries per point")
@click.option("--seed", default=0, type=int)
@click.option("--csv", "csv_path", required=True, type=click.Path())
def scale(family, nodes, sizes, density, count, seed, csv_path):
    """Construction and query scaling over random DAGs."""
    size_grid = tuple(int(x) for x in sizes.split(","))
    points = run_scaling(ScalingFamily(family), seed, n=nodes, sizes=size_grid,
                         density=density, query_count=count, output=csv_path)
    for point in points:
        click.echo(point.csv_row())


@main.command(name="stats")
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="edge_list", type=click.Choice(sorted(_FORMATS)))
@click.option("--count", default=100_000, type=int, help="sampled pairs for the positive rate")
@click.option("--seed", default=0, type=int)
def stats_cmd(graph_path, fmt, count, seed):
    """Print one CSV row: name,n,m,density,d,positive_rate."""
    graph = load_graph(graph_path, _FORMATS[fmt])
    result = graph_stats(graph, sample_pairs=count, seed=seed)
    click.echo("name,n,m,density,d,positive_rate")
    click.echo(result.csv_row(Path(graph_path).stem))


@main.group()
def gen():
    """Instance and workload generators."""


@gen.command(name="random")
@click.option("--nodes", required=True, type=int)
@click.option("--edges", required=True, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--out", required=True, type=click.Path())
def gen_random(nodes, edges, seed, out):
    """Random DAG with edges oriented from lower to higher id."""
    graph = gen_random_dag(nodes, edges, seed)
    write_graph(graph, out)
    click.echo(f"wrote {out}: n={graph.n} m={graph.m}")


@gen.command(name="kron")
@click.option("--scale", "scale_", required=True, type=int)
@click.option("--edge-factor", default=16, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--skew", default=",".join(str(p) for p in GRAPH500_SKEW))
@click.option("--out", required=True, type=click.Path())
def gen_kron(scale_, edge_factor, seed, skew, out):
    """Kronecker (RMAT) DAG with Graph500 default skew."""
    probs = tuple(float(x) for x in skew.split(","))
    if len(probs) != 4:
        raise click.UsageError("--skew needs four comma-separated probabilities")
    graph = gen_kronecker_dag(scale_, edge_factor, seed, probs)
    write_graph(graph, out)
    click.echo(f"wrote {out}: n={graph.n} m={graph.m}")


@gen.command(name="workload")
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", default="edge_list", type=click.Choice(sorted(_FORMATS)))
@click.option("--kind", required=True, type=click.Choice([k.value for k in WorkloadKind]))
@click.option("--count", required=True, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--out", required=True, type=click.Path())
def gen_workload_cmd(graph_path, fmt, kind, count, seed, out):
    """Query-pair workload; one '<s> <t>' line per pair."""
    graph = load_graph(graph_path, _FORMATS[fmt])
    workload = gen_workload(graph, _kind(kind), count, seed)
    with open(out, "w", encoding="ascii") as fh:
        for s, t in workload.pairs:
            fh.write(f"{s} {t}\n")
    click.echo(f"wrote {out}: {len(workload.pairs)} {kind} pairs")


if __name__ == "__main__":
    sys.exit(main())
