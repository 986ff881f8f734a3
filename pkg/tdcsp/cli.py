"""
Command-line interface for tdcsp.

Exit codes: 0 on success (SAT, witness found, campaign passed), 1 on a
negative answer (UNSAT, no witness, mismatches), 2 on errors.
"""

import os
import sys
import time
from dataclasses import asdict
from typing import Any, Dict, List, Optional, Tuple

import click
import yaml

from .config import CampaignConfig, get_caps, get_config, load_config, save_config_to_file
from .core import (
    BinCspInstance,
    ListColoringInstance,
    PrecoloringInstance,
    make_rng,
    random_graph,
    random_instance,
    random_listcoloring,
    random_precoloring,
)
from .data.defaults import get_default_config
from .errors import TdcspError
from .formats import (
    format_bcsp,
    format_bits,
    format_circ,
    format_fat_tree,
    format_fo,
    format_forest,
    format_graph,
    format_lcol,
    format_pcol,
    format_set,
    format_struct,
    format_wsat,
    parse_fat_tree,
    parse_forest,
    parse_set,
    read_file,
    write_file,
)
from .formulas import WeightedSatInstance, random_normalized_formula
from .machine import TreedepthCspMachine, load_toy_machines
from .reductions import ColoringKernel
from .registry import CHECKS, RULES, Rule, apply_rule, get_rule
from .solvers import SOLVERS, solve, solve_listcoloring_bruteforce, solve_precoloring_bruteforce
from .structure import (
    Graph,
    d_fold_vc_number,
    fat_elimination_tree,
    feedback_vertex_set_exact,
    modulator_to_treedepth,
    treedepth_exact,
    vertex_cover_exact,
)
from .verify import run_campaign

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


def _fail(message: str, error: Exception) -> None:
    click.echo(f"❌ {message}: {error}", err=True)
    sys.exit(EXIT_ERROR)


def _load(config: Optional[str]) -> None:
    if config:
        load_config(config)


@click.group()
@click.version_option(version="0.1.0")
def cli():
    """tdcsp - Binary CSP under treedepth-like parameters: solvers, reductions and checks."""
    pass


@cli.command()
@click.option("--out", type=click.Path(), default="tdcsp.yaml", help="Output configuration file path.")
def init(out: str):
    """
    Write the built-in configuration (caps and campaign defaults) to a file.

    Examples:
        tdcsp init --out tdcsp.yaml
    """
    try:
        save_config_to_file(get_default_config(), out)
        click.echo(f"✅ Configuration saved to {out}")
    except Exception as e:
        _fail("Failed to save configuration", e)


@cli.command("list")
@click.argument("kind", type=click.Choice(["rules", "methods", "machines"]))
def list_cmd(kind: str):
    """
    List reduction rules, solver methods or bundled toy machines.

    Examples:
        tdcsp list rules
    """
    if kind == "rules":
        for name, rule in RULES.items():
            click.echo(f"  • {name} ({rule.source} -> {rule.target}): {rule.description}")
        for name, description in CHECKS.items():
            click.echo(f"  • {name} (campaign only): {description}")
    elif kind == "methods":
        for name, description in SOLVERS.items():
            click.echo(f"  • {name}: {description}")
    else:
        for toy in load_toy_machines():
            verdict = "accepts" if toy.accepts else "rejects"
            click.echo(f"  • {toy.machine.name}: K={toy.K} A={toy.A} B={toy.B} ({verdict})")


@cli.command("solve")
@click.argument("file", type=click.Path(exists=True))
@click.option("--method", type=click.Choice(list(SOLVERS)), default="brute", help="Solver method.")
@click.option("--tree", type=click.Path(exists=True), help="Elimination forest (.tree).")
@click.option("--cover", type=click.Path(exists=True), help="Vertex cover or modulator (.set).")
@click.option("--witness/--no-witness", default=False, help="Print the satisfying assignment.")
@click.option("--config", type=click.Path(exists=True), help="Path to configuration file.")
def solve_cmd(
    file: str,
    method: str,
    tree: Optional[str],
    cover: Optional[str],
    witness: bool,
    config: Optional[str],
):
    """
    Decide a .bcsp, .lcol or .pcol instance.

    Examples:
        tdcsp solve --method brute x.bcsp
        tdcsp solve --method dp --tree t.tree x.bcsp
    """
    try:
        _load(config)
        source = read_file(file)
        counters: Dict[str, int] = {}
        start = time.perf_counter()
        if isinstance(source, BinCspInstance):
            forest = read_file(tree, parse_forest) if tree else None
            W = read_file(cover, parse_set) if cover else None
            result = solve(source, method, forest=forest, cover=W, caps=get_caps(), stats=counters)
            size = f"n={source.n} domain product={source.domain_product()}"
        elif isinstance(source, ListColoringInstance):
            result = solve_listcoloring_bruteforce(source, counters)
            size = f"n={source.graph.n} colors={len(source.colors)}"
        elif isinstance(source, PrecoloringInstance):
            result = solve_precoloring_bruteforce(source, counters)
            size = f"n={source.graph.n} colors={len(source.colors)}"
        else:
            raise TdcspError(f"Cannot solve a {type(source).__name__}")
        elapsed = time.perf_counter() - start
    except (TdcspError, OSError, ValueError) as e:
        _fail(f"Failed to solve {file}", e)
    click.echo("SAT" if result is not None else "UNSAT")
    if witness and result is not None:
        for v, a in sorted(result.items()):
            click.echo(f"  {v} = {a}")
    usage = " ".join(f"{key}={value}" for key, value in sorted(counters.items()))
    click.echo(f"  {size} {usage} time={elapsed:.4f}s")
    sys.exit(EXIT_OK if result is not None else EXIT_NEGATIVE)


def _toy(name: str):
    stem = os.path.splitext(os.path.basename(name))[0]
    for toy in load_toy_machines():
        if toy.machine.name == stem:
            return toy
    raise TdcspError(f"No bundled toy machine named '{stem}'")


# rule target kind -> artifact extension, where the two differ
_TARGET_EXTENSIONS = {"bincsp": ".bcsp"}


def _check_out(out: str, rule: Rule) -> None:
    ext = _TARGET_EXTENSIONS.get(rule.target, "." + rule.target)
    if os.path.splitext(out)[1].lower() != ext:
        raise TdcspError(f"Rule '{rule.name}' writes a {ext} artifact; --out must end in {ext}")


def _write_output(out: str, output: Any) -> None:
    stem = os.path.splitext(out)[0]
    if isinstance(output, BinCspInstance):
        write_file(out, format_bcsp(output))
    elif isinstance(output, WeightedSatInstance):
        write_file(out, format_wsat(output))
    elif isinstance(output, ListColoringInstance):
        write_file(out, format_lcol(output))
    elif isinstance(output, PrecoloringInstance):
        write_file(out, format_pcol(output))
    elif isinstance(output, ColoringKernel):
        if output.kernel is not None:
            write_file(out, format_lcol(output.kernel))
    elif isinstance(output, tuple) and isinstance(output[0], TreedepthCspMachine):
        write_file(out, format_bits(output[1]))
    elif isinstance(output, tuple) and hasattr(output[0], "gates"):
        write_file(out, format_circ(output[0]))
    elif isinstance(output, tuple) and hasattr(output[0], "relations"):
        write_file(out, format_struct(output[0]))
        write_file(stem + ".fo", format_fo(output[1]))
    else:
        raise TdcspError(f"No text format for a {type(output).__name__}")


@cli.command()
@click.option("--rule", required=True, help="Registered rule name (see 'tdcsp list rules').")
@click.argument("source")
@click.option("--cover", type=click.Path(exists=True), help="Cover, feedback vertex set or modulator (.set).")
@click.option("--tree", type=click.Path(exists=True), help="Elimination forest or fat tree (.tree).")
@click.option("--d", "depth", type=int, help="Depth for rules that take a level.")
@click.option("--out", type=click.Path(), required=True, help="Output artifact path; its extension must match the rule target.")
@click.option("--config", type=click.Path(exists=True), help="Path to configuration file.")
def reduce(
    rule: str,
    source: str,
    cover: Optional[str],
    tree: Optional[str],
    depth: Optional[int],
    out: str,
    config: Optional[str],
):
    """
    Apply a reduction rule and write the output plus a report sidecar.

    SOURCE is an artifact file, or a bundled toy machine name for
    ``regular-arosm``.

    Examples:
        tdcsp reduce --rule w3hard f.wsat --out x.bcsp
        tdcsp reduce --rule vc-to-wsat3 x.bcsp --cover w.set --out f.wsat
    """
    try:
        _load(config)
        spec = get_rule(rule)
        _check_out(out, spec)
        artifact = _toy(source) if spec.source == "toy" else read_file(source)
        kwargs = {"cover": read_file(cover, parse_set) if cover else None, "d": depth}
        if tree and rule == "dfold-to-prenex":
            kwargs["tree"] = read_file(tree, parse_fat_tree)
        elif tree:
            kwargs["forest"] = read_file(tree, parse_forest)
        report = apply_rule(rule, artifact, caps=get_caps(), **kwargs)
        _write_output(out, report.output)
        sidecar = os.path.splitext(out)[0] + ".report.yaml"
        data = report.to_dict()
        with open(sidecar, "w", encoding="utf-8") as f:
            yaml.dump(data, f, default_flow_style=False, sort_keys=False)
    except (TdcspError, OSError, ValueError) as e:
        _fail(f"Failed to apply rule '{rule}'", e)
    if isinstance(report.output, ColoringKernel) and report.output.verdict is not None:
        click.echo(f"✅ Decided outright: {'YES' if report.output.verdict else 'NO'}")
    else:
        click.echo(f"✅ Wrote {out} and {sidecar}")
    for name, value in report.parameters.items():
        click.echo(f"  {name} = {value}")
    failed = [name for name, ok in data["checks"].items() if not ok]
    if failed:
        click.echo(f"❌ Parameter checks failed: {', '.join(failed)}", err=True)
        sys.exit(EXIT_NEGATIVE)


@cli.command()
@click.option("--rule", help="Rule or check name.")
@click.option("--trials", type=int, help="Number of trials.")
@click.option("--seed", type=int, help="Campaign seed.")
@click.option("--max-n", type=int, help="Largest instance size.")
@click.option("--max-dom", type=int, help="Largest domain size.")
@click.option("--max-d", type=int, help="Largest depth.")
@click.option("--max-k", type=int, help="Largest weight.")
@click.option("--out", type=click.Path(), help="Directory for the YAML campaign report.")
@click.option("--config", type=click.Path(exists=True), help="Path to configuration file.")
def verify(
    rule: Optional[str],
    trials: Optional[int],
    seed: Optional[int],
    max_n: Optional[int],
    max_dom: Optional[int],
    max_d: Optional[int],
    max_k: Optional[int],
    out: Optional[str],
    config: Optional[str],
):
    """
    Run a seeded generate, reduce and compare campaign.

    Flags override the campaign section of the configuration.

    Examples:
        tdcsp verify --rule w3hard --trials 200 --seed 7
        tdcsp verify --rule regular-arosm --trials 5
    """
    try:
        _load(config)
        base = get_config().campaign
        overrides = {
            "rule": rule, "trials": trials, "seed": seed, "max_n": max_n,
            "max_dom": max_dom, "max_d": max_d, "max_k": max_k, "out_dir": out,
        }
        settings = {**asdict(base), **{k: v for k, v in overrides.items() if v is not None}}
        result = run_campaign(CampaignConfig(**settings), get_caps())
    except (TdcspError, OSError, ValueError) as e:
        _fail("Campaign failed", e)
    s = result.summary
    click.echo(f"Campaign '{s['rule']}' (seed {s['seed']}):")
    for key in ("trials", "matches", "mismatches", "skipped", "parameter_failures"):
        click.echo(f"  {key:<20}{s[key]}")
    t = s["timing"]
    click.echo(f"  {'timing':<20}p50={t['p50']:.4f}s p90={t['p90']:.4f}s max={t['max']:.4f}s")
    if result.path:
        click.echo(f"📄 Report saved to {result.path}")
    if not result.passed:
        click.echo("❌ Campaign found mismatches or parameter failures", err=True)
        sys.exit(EXIT_NEGATIVE)
    click.echo("✅ No mismatches")


def _graph_of(artifact: Any) -> Graph:
    if isinstance(artifact, Graph):
        return artifact
    if isinstance(artifact, (BinCspInstance, ListColoringInstance, PrecoloringInstance)):
        return artifact.graph
    raise TdcspError(f"No graph in a {type(artifact).__name__}")


@cli.command()
@click.argument("file", type=click.Path(exists=True))
@click.option(
    "--parameter",
    type=click.Choice(["td", "vc", "fvs", "mod-td", "dfold", "fat-tree"]),
    required=True,
    help="Structural parameter to compute.",
)
@click.option("--d", "depth", type=int, help="Depth bound (mod-td, dfold, fat-tree).")
@click.option("--k", "size", type=int, help="Size bound (vc, fvs, mod-td, fat-tree).")
@click.option("--out", type=click.Path(), help="Witness output path (.tree or .set); mod-td writes <stem>.set and <stem>.tree.")
@click.option("--config", type=click.Path(exists=True), help="Path to configuration file.")
def decompose(
    file: str,
    parameter: str,
    depth: Optional[int],
    size: Optional[int],
    out: Optional[str],
    config: Optional[str],
):
    """
    Compute an exact structural witness for a graph or instance.

    Examples:
        tdcsp decompose --parameter td p7.graph --out p7.tree
        tdcsp decompose --parameter dfold --d 2 star6.graph
        tdcsp decompose --parameter vc --k 0 edge.graph
    """
    try:
        _load(config)
        caps = get_caps()
        G = _graph_of(read_file(file))
        k = size if size is not None else G.n
        text: Optional[str] = None
        saved: List[Tuple[str, str]] = []
        if parameter == "td":
            value, forest = treedepth_exact(G, caps)
            summary, text = f"treedepth = {value}", format_forest(forest)
        elif parameter == "vc":
            found = vertex_cover_exact(G, k)
            summary = f"vertex cover size = {len(found)}" if found is not None else None
            text = format_set(found) if found is not None else None
        elif parameter == "fvs":
            found = feedback_vertex_set_exact(G, k, caps)
            summary = f"feedback vertex set size = {len(found)}" if found is not None else None
            text = format_set(found) if found is not None else None
        elif parameter == "mod-td":
            found = modulator_to_treedepth(G, depth if depth is not None else 1, k, caps)
            summary = f"modulator size = {len(found[0])}" if found is not None else None
            if found is not None and out:
                # the modulator and the forest of G - W share the stem of --out
                stem = os.path.splitext(out)[0]
                saved = [(stem + ".set", format_set(found[0])), (stem + ".tree", format_forest(found[1]))]
        elif parameter == "dfold":
            d = depth if depth is not None else 1
            summary = f"d-fold vertex cover number (d={d}) = {d_fold_vc_number(G, d, caps)}"
        else:
            d = depth if depth is not None else 1
            k = size if size is not None else d_fold_vc_number(G, d, caps)
            fat = fat_elimination_tree(G, d, k, caps)
            summary = f"fat elimination tree width = {fat.width}" if fat is not None else None
            text = format_fat_tree(fat) if fat is not None else None
        if out and text is not None:
            saved = [(out, text)]
        for path, content in saved:
            write_file(path, content)
    except (TdcspError, OSError, ValueError) as e:
        _fail(f"Failed to decompose {file}", e)
    if summary is None:
        click.echo(f"No {parameter} witness within the given bounds")
        sys.exit(EXIT_NEGATIVE)
    click.echo(summary)
    for path, _ in saved:
        click.echo(f"✅ Witness saved to {path}")


@cli.command()
@click.option(
    "--kind",
    type=click.Choice(["bincsp", "listcol", "precol", "wsat", "graph"]),
    required=True,
    help="Artifact kind.",
)
@click.option("--n", "size", type=int, default=6, help="Vertex or variable count.")
@click.option("--seed", type=int, default=0, help="Generator seed.")
@click.option("--max-dom", type=int, default=3, help="Largest domain (bincsp).")
@click.option("--colors", type=int, default=3, help="Color count (listcol, precol).")
@click.option("--edge-prob", type=float, default=0.5, help="Edge probability.")
@click.option("--level", type=int, default=3, help="Normalization level (wsat).")
@click.option("--k", "weight", type=int, default=2, help="Weight (wsat).")
@click.option("--out", type=click.Path(), help="Output path; stdout if omitted.")
def gen(
    kind: str,
    size: int,
    seed: int,
    max_dom: int,
    colors: int,
    edge_prob: float,
    level: int,
    weight: int,
    out: Optional[str],
):
    """
    Generate a seeded random artifact.

    Examples:
        tdcsp gen --kind bincsp --n 5 --seed 3 --out x.bcsp
        tdcsp gen --kind wsat --n 6 --level 3 --k 2
    """
    try:
        if kind == "bincsp":
            text = format_bcsp(random_instance(size, max_dom, edge_prob, 0.6, seed))
        elif kind == "listcol":
            text = format_lcol(random_listcoloring(size, colors, edge_prob, 0.6, seed))
        elif kind == "precol":
            text = format_pcol(random_precoloring(size, colors, edge_prob, 0.3, seed))
        elif kind == "wsat":
            F = random_normalized_formula(make_rng(seed), size, level)
            text = format_wsat(WeightedSatInstance(F, weight))
        else:
            text = format_graph(random_graph(size, edge_prob, seed))
    except (TdcspError, ValueError) as e:
        _fail(f"Failed to generate {kind}", e)
    if out:
        write_file(out, text)
        click.echo(f"✅ Wrote {out}")
    else:
        click.echo(text, nl=False)


def main():
    """Main entry point for CLI."""
    cli()


if __name__ == "__main__":
    main()
