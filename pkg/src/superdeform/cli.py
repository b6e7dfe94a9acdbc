"""Batch verification front end.

Grammar: superdeform <verify|nontrivial|deform|catalog|serve> [subcommand]
[flags].  Exit codes: 0 verified, 1 verification failed, 2 input or
configuration error.  All rationals on the wire are exact "p/q" strings.

Every command runs in-process by default; with --server URL the command is
executed by a running service instead and the same payload is rendered
locally (the CLI then acts as a thin HTTP client).
"""
from __future__ import annotations

import json
import sys

import click

from . import runner
from .reports import canonical_json

_SERVER_ROUTES = {
    "structure": "/verify/structure",
    "algebra": "/verify/algebra",
    "cocycles": "/verify/cocycles",
    "cup": "/verify/cup-relations",
    "nontrivial": "/nontrivial",
    "deform_check": "/deform/check",
    "deform_verify": "/deform/verify",
    "catalog": "/catalog/dump",
}


def _via_server(server: str, route: str, body: dict) -> tuple:
    import httpx

    resp = httpx.post(server.rstrip("/") + _SERVER_ROUTES[route],
                      json=body, timeout=None)
    if resp.status_code >= 400:
        raise runner.InputError(f"server rejected request: {resp.text}")
    doc = resp.json()
    return doc["exit_code"], doc["payload"]


def _emit(ctx, code: int, payload: dict, as_json: bool, summary=None):
    if as_json:
        click.echo(canonical_json(payload), nl=False)
    else:
        text = summary(payload) if summary else canonical_json(payload)
        click.echo(text)
    ctx.exit(code)


def _run(ctx, route, local, body, as_json, summary=None):
    server = ctx.obj.get("server")
    try:
        code, payload = _via_server(server, route, body) if server else local()
    except runner.InputError as exc:
        raise click.UsageError(str(exc))
    _emit(ctx, code, payload, as_json, summary)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Run commands through a superdeform service at URL.")
@click.pass_context
def main(ctx, server):
    """Exact verification of the osp(2|2) density-module calculus."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.group()
@click.pass_context
def verify(ctx):
    """Structure constants, algebra laws, cocycles, cup relations."""


@verify.command("structure")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@click.option("--table-file", default=None, type=click.Path(exists=True, dir_okay=False),
              help="Cross-check against an alternative bracket table.")
@click.pass_context
def verify_structure(ctx, as_json, table_file):
    def summary(p):
        sc = p["structure_constants"]
        jc = p["jacobi"]
        lines = [f"structure constants: {sc['checked']} pairs, "
                 f"{sc['failed']} mismatches"]
        for chk in sc["checks"]:
            if not chk["ok"]:
                lines.append(f"  MISMATCH {chk['name']}: expected "
                             f"{chk['expected']}, computed {chk['computed']}")
        lines.append(f"graded Jacobi: {jc['checked']} triples, "
                     f"{jc['failed']} failures")
        lines.append("OK" if p["ok"] else "FAILED")
        return "\n".join(lines)
    _run(ctx, "structure", lambda: runner.run_structure(table_file),
         {}, as_json, summary)


@verify.command("algebra")
@click.option("--seed", default=0, show_default=True)
@click.option("--cases", default=1000, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_algebra(ctx, seed, cases, as_json):
    def summary(p):
        lines = [f"{c['name']}: {'ok' if c['ok'] else 'FAILED'}"
                 for c in p["checks"]]
        lines.append("OK" if p["ok"] else "FAILED")
        return "\n".join(lines)
    _run(ctx, "algebra", lambda: runner.run_algebra(seed, cases),
         {"seed": seed, "cases": cases}, as_json, summary)


@verify.command("cocycles")
@click.option("--d", default=None, help="Weight for the generic families, as p/q.")
@click.option("--m", default=None, type=int, help="Resonant case 2d = m.")
@click.option("--k", "k_range", default="0..5", show_default=True,
              help="Index or range N..M.")
@click.option("--family", "families", multiple=True,
              help="Restrict to specific families.")
@click.option("--workers", default=None, type=int)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_cocycles(ctx, d, m, k_range, families, workers, as_json):
    def summary(p):
        lines = []
        for r in p["results"]:
            tag = f"{r['family']}(k={r['k']}" + \
                  (f", d={r['d']})" if r["d"] else ")")
            lines.append(f"{tag}: {'cocycle' if r['is_cocycle'] else 'NOT A COCYCLE'}")
        lines.append("OK" if p["ok"] else "FAILED")
        return "\n".join(lines)
    _run(ctx, "cocycles",
         lambda: runner.run_cocycles(d, m, k_range, list(families), workers),
         {"d": d, "m": m, "k_range": k_range, "families": list(families)},
         as_json, summary)


@verify.command("cup-relations")
@click.option("--k", "k_range", default="1..3", show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_cup(ctx, k_range, as_json):
    def summary(p):
        lines = []
        for k, rep in p["per_k"].items():
            for chk in rep["checks"]:
                lines.append(f"k={k} {chk['name']}: {'ok' if chk['ok'] else 'FAILED'}")
        lines.append("OK" if p["ok"] else "FAILED")
        return "\n".join(lines)
    _run(ctx, "cup", lambda: runner.run_cup_relations(k_range),
         {"k_range": k_range}, as_json, summary)


@main.command("nontrivial")
@click.option("--case", type=click.Choice(["generic", "resonant"]), required=True)
@click.option("--d", default=None, help="Weight, as p/q (generic case).")
@click.option("--m", default=None, type=int, help="Resonant 2d = m.")
@click.option("--k", default=1, show_default=True, type=int)
@click.option("--bounds", default=None, type=int,
              help="Ansatz order and degree (default |k|+3).")
@click.option("--weight-prune", is_flag=True,
              help="Restrict the ansatz by the diagonal grading (optimization).")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def nontrivial(ctx, case, d, m, k, bounds, weight_prune, as_json):
    """Coboundary-solvability certificate for a block of cup classes."""
    def summary(p):
        cert = p["certificate"]
        lines = [f"case {p['case']}, k={p['k']}"
                 + (f", d={p['d']}" if p["d"] else "")
                 + f": {cert['num_unknowns']} unknowns, "
                 f"{cert['num_equations']} equations"]
        lines.append(f"forced zero: {cert['forced_zero'] or 'none'}")
        for rel in cert["scalar_relations"]:
            lhs = " + ".join(f"{c}*{n}" for n, c in sorted(rel["lhs"].items()))
            lines.append(f"relation: {lhs} = {rel['rhs']}")
        lines.append("ALL SCALARS FORCED TO ZERO" if p["all_forced_zero"]
                     else "SOLVABLE DIRECTIONS REMAIN")
        return "\n".join(lines)
    _run(ctx, "nontrivial",
         lambda: runner.run_nontrivial(case, k, d, m, bounds, weight_prune),
         {"case": case, "d": d, "m": m, "k": k, "bounds": bounds,
          "weight_prune": weight_prune}, as_json, summary)


def _read_params(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read parameter file {path}: {exc}")


@main.group()
@click.pass_context
def deform(ctx):
    """Integrability and flatness of parametrized deformations."""


@deform.command("check")
@click.argument("params_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def deform_check(ctx, params_file, as_json):
    doc = _read_params(params_file)
    def summary(p):
        v = p["integrability"]
        lines = [f"integrability: {v['verdict']}"]
        for viol in v.get("violations", []):
            lines.append(f"  violated: {viol}")
        s = p["obstruction_coboundary"]
        lines.append(f"obstruction coboundary-solvable: {s['solvable']}")
        lines.append(f"condition set agrees with solvability: {p['agreement']}")
        return "\n".join(lines)
    _run(ctx, "deform_check", lambda: runner.run_deform_check(doc),
         {"params": doc}, as_json, summary)


@deform.command("verify")
@click.argument("params_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--K", "K", default=None, type=int,
              help="Truncation (default 2m+2 resonant, 6 generic).")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def deform_verify(ctx, params_file, K, as_json):
    doc = _read_params(params_file)
    def summary(p):
        if p["flat"] is None:
            return "obstructed parameters; flatness not applicable"
        rep = p["flat"]
        lines = [f"{rep['title']}: {rep['checked']} identities, "
                 f"{rep['failed']} failures"]
        lines.append("OK" if rep["ok"] else "FAILED")
        return "\n".join(lines)
    _run(ctx, "deform_verify", lambda: runner.run_deform_verify(doc, K),
         {"params": doc, "K": K}, as_json, summary)


@main.group()
@click.pass_context
def catalog(ctx):
    """Inspect the cocycle catalog."""


@catalog.command("dump")
@click.option("--family", required=True)
@click.option("--k", default=0, show_default=True, type=int)
@click.option("--d", default=None, help="Weight, as p/q (omega families).")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def catalog_dump(ctx, family, k, d, as_json):
    def summary(p):
        lines = [f"{p['family']} k={p['k']}"
                 + (f" d={p['d']}" if p["d"] else "")
                 + f"  ({p['source_weight']} -> {p['target_weight']})"]
        for label, text in p["values"].items():
            lines.append(f"  {label}: {text}")
        lines.append("cocycle: " + ("yes" if p["is_cocycle"] else "NO"))
        return "\n".join(lines)
    _run(ctx, "catalog", lambda: runner.run_catalog_dump(family, k, d),
         {"family": family, "k": k, "d": d}, as_json, summary)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8423, show_default=True, type=int)
def serve(host, port):
    """Run the HTTP verification service."""
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
