"""Command line entry point ``omp``.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or input error,
3 internal assertion.
"""
from __future__ import annotations

import functools
import itertools
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import matroid
from .catalog import NAMES, CatalogError, catalog_get, catalog_list, data_text
from .digraph import node_label
from .dot import export_dot
from .extension import ExtensionError, LexRule, lift_extension, localization_from_lex
from .formats import FormatError, load, serialize_digraph, serialize_om, program_file_from
from .holtklee import BudgetExhausted, check_holt_klee, search_avoiding_extension
from .matroid import OMError
from .signs import to_str
from .program import OMProgram, ProgramError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class Failed(Exception):
    """Raised to leave with exit code 1 after output was written."""


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Failed:
            sys.exit(EXIT_FAIL)
        except (FormatError, CatalogError, ExtensionError, OMError, OSError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            if isinstance(exc, ProgramError) and "degenerate" in str(exc):
                click.echo("hint: pass a lexicographic perturbation of f", err=True)
            sys.exit(EXIT_USAGE)
        except AssertionError as exc:
            click.echo(f"internal assertion failed: {exc}", err=True)
            sys.exit(EXIT_INTERNAL)
    return wrapper


def _load(ref: str):
    """``catalog:<name>`` or a file path -> (kind, object)."""
    if ref.startswith("catalog:"):
        entry = catalog_get(ref.split(":", 1)[1])
        kind = "digraph" if entry.kind == "digraph-only" else entry.kind
        return kind, entry.payload
    return load(ref)


def _require_program(kind, obj, what):
    if kind == "pomcp":
        raise CatalogError(f"{what} needs an oriented matroid program, got a complementarity problem")
    if kind != "program":
        raise CatalogError(f"{what} needs an oriented matroid program; a bare digraph has no oriented matroid")
    return obj


def _emit(ctx, payload: dict, lines: list):
    if ctx.obj["json"]:
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--cap", type=int, default=None, envvar="OMP_CAP",
              help="Largest ground set for brute-force enumeration (env OMP_CAP).")
@click.option("--seed", type=int, default=None, help="Seed for randomized choices.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output (one JSON object per line).")
@click.version_option(package_name="artifact")
@click.pass_context
def main(ctx, cap, seed, as_json):
    """Oriented matroid programs, monotone paths and Holt-Klee checks."""
    if cap is not None:
        matroid.set_cap(cap)
    ctx.obj = {"seed": seed, "json": as_json}


# validate ---------------------------------------------------------------

@main.command()
@click.argument("source")
@click.pass_context
@_guard
def validate(ctx, source):
    """Check the covector axioms and, for programs, boundedness, acyclicity and nondegeneracy."""
    kind, obj = _load(source)
    if kind == "digraph":
        raise CatalogError("validate needs an oriented matroid; this is a bare digraph")
    if kind == "pomcp":
        obj = obj.N
    m = obj.M if isinstance(obj, OMProgram) else obj
    axioms = m.verify_axioms()
    payload = {"axioms": axioms.ok, "violations": [str(axioms)] if not axioms.ok else []}
    lines = [f"rank {m.rank} on {m.size} elements, {len(m.cocircuits)} cocircuit pairs",
             f"axioms: {'ok' if axioms.ok else 'VIOLATED'}"]
    if not axioms.ok:
        lines.append(str(axioms))
    ok = axioms.ok
    if isinstance(obj, OMProgram):
        rep = obj.validate()
        payload.update(rep.as_dict())
        lines.append(str(rep))
        ok = ok and rep.ok
        if rep.bounded and rep.acyclic:
            counts = obj.face_counts()
            payload["faces"] = {str(k): v for k, v in counts.items()}
            lines.append("faces by rank: " + " ".join(f"{k}:{v}" for k, v in counts.items()))
    payload["ok"] = ok
    _emit(ctx, payload, lines)
    if not ok:
        raise Failed


# graph ------------------------------------------------------------------

@main.command()
@click.argument("source")
@click.option("--format", "fmt", type=click.Choice(["arcs", "dot"]), default="arcs", show_default=True)
@click.pass_context
@_guard
def graph(ctx, source, fmt):
    """Print the oriented program digraph K_f."""
    kind, obj = _load(source)
    dg = obj if kind == "digraph" else _require_program(kind, obj, "graph").digraph
    if ctx.obj["json"]:
        click.echo(json.dumps({"nodes": [node_label(v) for v in dg.nodes],
                               "arcs": [[node_label(u), node_label(v)] for u, v in dg.arcs],
                               "source": node_label(dg.source), "sink": node_label(dg.sink)}, sort_keys=True))
    elif fmt == "dot":
        click.echo(export_dot(dg), nl=False)
    else:
        click.echo(serialize_digraph(dg), nl=False)


# holt-klee --------------------------------------------------------------

def _verdict_for(ref: str, dim):
    kind, obj = _load(ref)
    if kind == "pomcp":
        from .pomcp import check_pomcp_holt_klee

        return check_pomcp_holt_klee(obj), obj.digraph
    if kind == "program":
        return check_holt_klee(obj), obj.digraph
    if kind != "digraph":
        raise CatalogError("holt-klee needs a program or a digraph")
    return check_holt_klee(obj, dim=dim), obj


def _batch_specs(path: str) -> list:
    refs = []
    for no, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            item = json.loads(line)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON: {exc.msg}", no, exc.colno) from None
        if isinstance(item, str):
            refs.append((item, None))
        elif isinstance(item, dict) and "path" in item:
            refs.append((item["path"], item.get("dim")))
        else:
            raise FormatError('expected a path string or {"path": ..., "dim": ...}', no, 1)
    return refs


@main.command("holt-klee")
@click.argument("sources", nargs=-1)
@click.option("--dim", type=int, default=None, help="Dimension d for bare digraphs.")
@click.option("--cut", "show_cut", is_flag=True, help="Print the minimum vertex cut.")
@click.option("--paths", "show_paths", is_flag=True, help="Print the disjoint path system.")
@click.option("--batch", type=click.Path(exists=True, dir_okay=False),
              help="JSON-lines file of inputs; one report line per input.")
@click.option("--figure", type=click.Path(dir_okay=False), default=None,
              help="Write a PNG of the digraph with paths and cut highlighted.")
@click.option("--certify", is_flag=True,
              help="For programs: search avoidance certificates for every (r-2)-tuple of internal nodes.")
@click.option("--budget", type=int, default=10_000, show_default=True, help="Localizations per certificate search.")
@click.pass_context
@_guard
def holt_klee(ctx, sources, dim, show_cut, show_paths, batch, figure, certify, budget):
    """Count independent monotone paths (exit 0 iff at least d)."""
    refs = [(s, dim) for s in sources]
    if batch:
        refs += _batch_specs(batch)
    if not refs:
        raise click.UsageError("give at least one input (file path or catalog:<name>)")
    if len(refs) > 1:
        if figure or certify:
            raise click.UsageError("--figure and --certify take a single input")
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda sd: _batch_one(*sd), refs))
        for line in results:
            click.echo(json.dumps(line, sort_keys=True))
        if any(r.get("error") for r in results):
            sys.exit(EXIT_USAGE)
        if not all(r["holds"] for r in results):
            raise Failed
        return
    ref, d = refs[0]
    verdict, dg = _verdict_for(ref, d)
    payload = verdict.as_dict()
    payload["input"] = ref
    lines = [f"k = {verdict.k} independent monotone paths, d = {verdict.d}: "
             f"{'holds' if verdict.holds else 'FAILS'}"]
    if verdict.anomaly:
        lines.append("ANOMALY: a program of rank <= 5 failed the Holt-Klee check")
    if show_paths:
        lines += ["path: " + " -> ".join(node_label(v) for v in p) for p in verdict.paths.paths]
    if show_cut:
        lines.append("cut: " + " | ".join(verdict.cut.labels())
                     + (" (+ direct source-sink arc)" if verdict.cut.direct_arc else ""))
    if certify:
        kind, obj = _load(ref)
        prog = _require_program(kind, obj, "--certify")
        certs = _certify(prog, budget, ctx.obj["seed"])
        payload["certificates"] = certs
        for c in certs:
            lines.append(f"avoid {' ; '.join(c['nodes'])}: {c['status']}" + (f" {c['rule']}" if c.get("rule") else ""))
        if any(c["status"] != "certified" for c in certs):
            verdict.holds = False
    if figure:
        from .plotting import draw_digraph

        draw_digraph(dg, figure, paths=verdict.paths.paths, cut=verdict.cut.nodes,
                     title=f"{dg.name or ref}: k = {verdict.k}")
        lines.append(f"figure written to {figure}")
        payload["figure"] = figure
    _emit(ctx, payload, lines)
    if not verdict.holds:
        raise Failed


def _batch_one(ref, dim):
    try:
        verdict, _ = _verdict_for(ref, dim)
        out = verdict.as_dict()
        out["input"] = ref
        return out
    except (FormatError, OMError, OSError, ValueError) as exc:
        return {"input": ref, "error": str(exc), "holds": False}


def _certify(program, budget, seed) -> list:
    src, snk = program.source_sink()
    inner = [v for v in program.nodes if v not in (src, snk)]
    out = []
    for combo in itertools.combinations(inner, program.r - 2):
        rec = {"nodes": [node_label(v) for v in combo]}
        try:
            cert = search_avoiding_extension(program, combo, budget=budget, seed=seed)
        except BudgetExhausted:
            rec["status"] = "budget exhausted"
        else:
            if cert is None:
                rec["status"] = "no lexicographic certificate"
            else:
                rec.update(cert.as_dict())
                rec["status"] = "certified"
        out.append(rec)
    return out


# trace ------------------------------------------------------------------

def program_localization(program, rule: LexRule):
    """A rule over M/{f,g} is lifted; a rule mentioning f is applied to M/g directly."""
    if any(e == program.f for e, _ in rule.items):
        return localization_from_lex(program.Mg, rule)
    return lift_extension(program, localization_from_lex(program.Mfg, rule))


@main.command()
@click.argument("source")
@click.option("--ext", "ext", default=None, help="Lexicographic extension, e.g. lex:e1+,e4-.")
@click.option("--random-ext", is_flag=True, help="Random lexicographic extension (see --seed).")
@click.option("--avoid-facet", default=None, help="Trace a path whose internal nodes avoid this facet.")
@click.pass_context
@_guard
def trace(ctx, source, ext, random_ext, avoid_facet):
    """Trace a monotone source-sink path through an extension element h."""
    from .tracer import default_localization, random_lex_rule, trace_facet_avoiding, trace_path

    kind, obj = _load(source)
    program = _require_program(kind, obj, "trace")
    if sum(bool(x) for x in (ext, random_ext, avoid_facet)) > 1:
        raise click.UsageError("--ext, --random-ext and --avoid-facet are exclusive")
    rule = None
    if avoid_facet:
        path = trace_facet_avoiding(program, avoid_facet)
    else:
        if ext:
            rule = LexRule.parse(ext)
        elif random_ext:
            rule = random_lex_rule(program, random.Random(ctx.obj["seed"]))
        sigma = program_localization(program, rule) if rule else default_localization(program)
        path = trace_path(program, sigma)
    payload = {"nodes": [node_label(v) for v in path.nodes], "segments": path.segments(),
               "joint": node_label(path.joint), "rule": str(rule) if rule else None}
    lines = ([f"extension: {rule}"] if rule else []) + path.lines()
    _emit(ctx, payload, lines)


# pomcp ------------------------------------------------------------------

def _read_matrix(path: str) -> list:
    from .formats import _lines, _rational

    rows = [[_rational(t, ln.no, c) for t, c in ln.tokens()] for ln in _lines(Path(path).read_text())]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise FormatError(f"expected {len(rows)} rows of {len(rows)} rationals (a square matrix)")
    return rows


@main.command()
@click.option("--matrix", "matrix_file", required=True, type=click.Path(exists=True, dir_okay=False),
              help="n lines of n rationals p/q.")
@click.option("--ext", "ext", default=None, help="Lexicographic extension for f over the labels 1..2n.")
@click.option("--figure", type=click.Path(dir_okay=False), default=None, help="Write a PNG of the cube digraph.")
@click.pass_context
@_guard
def pomcp(ctx, matrix_file, ext, figure):
    """P-matrix complementarity problem on the cube: property (P), digraph and Holt-Klee."""
    from .pomcp import (PomcpInstance, check_pomcp_holt_klee, check_property_p, om_from_pmatrix,
                        p_matrix_check)

    m = _read_matrix(matrix_file)
    n_om = om_from_pmatrix(m)
    is_p = p_matrix_check(m)
    has_p, witness = check_property_p(n_om)
    payload = {"n": len(m), "p_matrix": is_p, "property_p": has_p}
    lines = [f"n = {len(m)}", f"P-matrix: {'yes' if is_p else 'no'}",
             f"property (P): {'yes' if has_p else 'no'}" + ("" if has_p else f" (circuit {to_str(witness)})")]
    if is_p != has_p:
        lines.append("WARNING: P-matrix test and property (P) disagree")
        payload["disagreement"] = True
    if not has_p:
        _emit(ctx, payload, lines)
        raise Failed
    inst = PomcpInstance.from_matrix(m, LexRule.parse(ext) if ext else None)
    dg = inst.digraph
    bad = inst.faces_without_unique_sink()
    verdict = check_pomcp_holt_klee(inst)
    payload.update({"source": node_label(dg.source), "sink": node_label(dg.sink),
                    "faces_without_unique_sink": len(bad), "k": verdict.k, "holds": verdict.holds,
                    "paths": verdict.as_dict()["paths"]})
    lines += [f"source {{{node_label(dg.source)}}}, sink {{{node_label(dg.sink)}}}",
              f"cube faces without a unique sink: {len(bad)}",
              f"k = {verdict.k} independent monotone paths, n = {inst.n}: {'holds' if verdict.holds else 'FAILS'}"]
    if figure:
        from .plotting import draw_digraph

        draw_digraph(dg, figure, paths=verdict.paths.paths, cut=verdict.cut.nodes, title=f"P-cube n = {inst.n}")
        lines.append(f"figure written to {figure}")
    _emit(ctx, payload, lines)
    if bad or not verdict.holds:
        raise Failed


# catalog / export-dot ---------------------------------------------------

@main.command()
@click.argument("name", required=False)
@click.pass_context
@_guard
def catalog(ctx, name):
    """List the built-in examples, or print one in its file format."""
    if name is None:
        rows = catalog_list()
        if ctx.obj["json"]:
            for n, kind, prov in rows:
                click.echo(json.dumps({"name": n, "kind": kind, "provenance": prov}, sort_keys=True))
        else:
            width = max(len(n) for n in NAMES)
            for n, kind, prov in rows:
                click.echo(f"{n:<{width}}  {kind:<12}  {prov}")
        return
    entry = catalog_get(name)
    if entry.kind == "digraph-only":
        click.echo(serialize_digraph(entry.payload), nl=False)
    elif entry.kind == "program":
        click.echo(serialize_om(program_file_from(entry.payload)), nl=False)
    else:
        click.echo(data_text(f"{name}.mat"), nl=False)


@main.command("export-dot")
@click.argument("source")
@click.option("--paths", "with_paths", is_flag=True, help="Colour a maximum disjoint path system.")
@click.option("--cut", "with_cut", is_flag=True, help="Fill the nodes of a minimum cut.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
@_guard
def export_dot_cmd(ctx, source, with_paths, with_cut, output):
    """Write the digraph in DOT with source and sink marked."""
    from .holtklee import max_independent_paths

    kind, obj = _load(source)
    if kind == "digraph":
        dg = obj
    elif kind == "pomcp":
        dg = obj.digraph
    else:
        dg = _require_program(kind, obj, "export-dot").digraph
    paths, cut = (), ()
    if with_paths or with_cut:
        _, system, cert = max_independent_paths(dg)
        paths = system.paths if with_paths else ()
        cut = cert.nodes if with_cut else ()
    text = export_dot(dg, paths=paths, cut=cut)
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":  # pragma: no cover
    main()
