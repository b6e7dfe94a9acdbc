"""Command implementations shared by the CLI and the HTTP service.

Every runner returns (exit_code, payload): 0 = verified, 1 = verification
failed, 2 = input or configuration error.  Payloads are JSON-ready dicts
rendered canonically by both front ends.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .catalog import (CocycleId, FAMILIES, build, phi, verify_cup_relations,
                      weights_of)
from .cohomology import is_cocycle
from .contact import jacobi_check, verify_structure_constants, basis_element, BASIS_ORDER
from .deformation import (DeformationParams, check_integrability,
                          obstruction_solvability, obstruction2, verify_flat)
from .linsolve import AnsatzSpec, default_bounds, solve_coboundary
from .operators import render_operator
from .reports import canonical_json
from .sampling import run_algebra_suite
from .scalars import format_rational, parse_rational

__all__ = [
    "worker_count", "run_structure", "run_algebra", "run_cocycles",
    "run_cup_relations", "run_nontrivial", "run_deform_check",
    "run_deform_verify", "run_catalog_dump", "InputError",
]


class InputError(ValueError):
    """Bad request parameters; maps to exit code 2."""


def worker_count(requested=None) -> int:
    if requested:
        return max(1, int(requested))
    env = os.environ.get("SUPERDEFORM_WORKERS")
    return max(1, int(env)) if env else 1


def _parse_weight(d):
    """Exact rational from CLI/API input; malformed input is a user error."""
    if d is None:
        return None
    if isinstance(d, Fraction):
        return d
    try:
        return parse_rational(str(d))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _parallel_map(fn, items, workers: int):
    """Map preserving input order; results are merged deterministically."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def run_structure(table_path=None) -> tuple:
    table = None
    if table_path is not None:
        import json
        from .scalars import parse_rational as _pr
        try:
            with open(table_path) as fh:
                raw = json.load(fh)
            table = {tuple(e["pair"]): {k: _pr(v) for k, v in e["result"].items()}
                     for e in raw["brackets"]}
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"cannot read bracket table {table_path}: {exc}")
    table_report = verify_structure_constants(table)
    triples = [(basis_element(a), basis_element(b), basis_element(c))
               for a in BASIS_ORDER for b in BASIS_ORDER for c in BASIS_ORDER]
    jac = jacobi_check(triples)
    ok = table_report.ok and jac.ok
    payload = {
        "structure_constants": table_report.to_json_dict(),
        "jacobi": {"title": jac.title, "ok": jac.ok,
                   "checked": len(jac.entries),
                   "failed": len(jac.failures()),
                   "failures": [e.details for e in jac.failures()]},
        "ok": ok,
    }
    return (0 if ok else 1), payload


def run_algebra(seed: int = 0, cases: int = 1000) -> tuple:
    if cases < 1:
        raise InputError("cases must be positive")
    report = run_algebra_suite(seed, cases)
    return (0 if report.ok else 1), report.to_json_dict()


def parse_k_range(spec: str) -> list:
    """Parse '0..5' or '3' into a list of ints."""
    try:
        if ".." in spec:
            lo, hi = spec.split("..")
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(spec)]
    except ValueError as exc:
        raise InputError(f"bad k range {spec!r} (expected N or N..M)") from exc


def _cocycle_ids(d, m, ks, families) -> list:
    ids = []
    for fam in families:
        if fam not in FAMILIES:
            raise InputError(f"unknown family {fam!r} (choose from {FAMILIES})")
        for k in ks:
            if fam.startswith("omega"):
                if d is None:
                    raise InputError(f"family {fam} requires --d")
                try:
                    ids.append(CocycleId(fam, k, Fraction(d)))
                except ValueError as exc:
                    raise InputError(str(exc)) from exc
            elif fam.startswith("gamma"):
                if m is not None and k > m:
                    continue  # diagonal index exceeds m in the resonant grading
                ids.append(CocycleId(fam, k))
            else:
                if k < 1:
                    raise InputError(f"family {fam} requires k >= 1")
                ids.append(CocycleId(fam, k))
    return ids


def _check_one_cocycle(cid: CocycleId) -> dict:
    ok = is_cocycle(build(cid))
    sw, tw = weights_of(cid)
    return {"family": cid.family, "k": cid.k,
            "d": format_rational(cid.d) if cid.d is not None else None,
            "weights": [format_rational(sw), format_rational(tw)],
            "is_cocycle": ok}


def run_cocycles(d=None, m=None, k_range="0..5", families=None,
                 workers=None) -> tuple:
    if d is not None and m is not None:
        raise InputError("give either --d (generic) or --m (resonant), not both")
    ks = parse_k_range(k_range)
    if families is None or not families:
        if d is not None:
            families = ["omega", "omega_tilde"]
        elif m is not None:
            families = ["gamma", "gamma_tilde", "Gamma", "Gamma_tilde", "Gamma_bar"]
        else:
            raise InputError("need --d or --m (or explicit --family)")
    dq = _parse_weight(d)
    ids = _cocycle_ids(dq, m, ks, families)
    if not ids:
        raise InputError("no cocycles selected")
    results = _parallel_map(_check_one_cocycle, ids, worker_count(workers))
    ok = all(r["is_cocycle"] for r in results)
    return (0 if ok else 1), {"ok": ok, "checked": len(results), "results": results}


def run_cup_relations(k_range="1..3", workers=None) -> tuple:
    ks = parse_k_range(k_range)
    if any(k < 1 for k in ks):
        raise InputError("cup relations need k >= 1")
    reports = _parallel_map(lambda k: verify_cup_relations(k).to_json_dict(),
                            ks, 1)
    ok = all(r["ok"] for r in reports)
    return (0 if ok else 1), {"ok": ok, "per_k": dict(zip(map(str, ks), reports))}


def run_nontrivial(case: str, k: int, d=None, m=None, bounds=None,
                   weight_prune: bool = False) -> tuple:
    """Nontriviality certificate for one block of cup classes.

    Exit 0 when every named scalar is forced to zero (the published claim);
    exit 1 when the computed certificate leaves solvable directions -- the
    certificate payload then carries the exact scalar relations.
    """
    if bounds is not None and bounds < 1:
        raise InputError("ansatz bounds below 1 leave an empty ansatz")
    spec = AnsatzSpec(bounds, bounds, weight_prune) if bounds \
        else default_bounds(k, weight_prune)
    dq = _parse_weight(d)
    if case == "generic":
        if dq is None:
            raise InputError("generic case requires --d")
        try:
            from .catalog import omega_pair
            o1, o2 = omega_pair(dq, k)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        combo = {"a": o1, "b": o2}
    elif case == "resonant":
        if k < 1:
            raise InputError("resonant case requires k >= 1")
        if m is not None and k > m:
            raise InputError(f"k = {k} exceeds m = {m}")
        combo = {f"a{i}": phi(i, k) for i in range(1, 7)}
    else:
        raise InputError(f"unknown case {case!r} (generic or resonant)")
    cert = solve_coboundary(None, spec, sorted(combo), combo)
    payload = {
        "case": case, "k": k,
        "d": format_rational(dq) if dq is not None else None,
        "m": m,
        "certificate": cert.to_json_dict(),
        "all_forced_zero": set(cert.forced_zero) == set(combo),
    }
    return (0 if payload["all_forced_zero"] else 1), payload


def _load_params(doc: dict) -> tuple:
    try:
        return DeformationParams.from_json_dict(doc)
    except (ValueError, TypeError, AttributeError) as exc:
        raise InputError(f"bad parameter document: {exc}") from exc


def run_deform_check(doc: dict) -> tuple:
    params, d = _load_params(doc)
    verdict = check_integrability(params, d)
    try:
        solv = obstruction_solvability(params, d)
        solv_payload = {"solvable": solv["solvable"],
                        "blocks": {f"{kind} k={k}": ok
                                   for (kind, k), ok in solv["blocks"].items()}}
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    payload = {
        "integrability": verdict.to_json_dict(),
        "obstruction_coboundary": solv_payload,
        "agreement": verdict.ok == solv["solvable"],
    }
    return (0 if verdict.ok else 1), payload


def run_deform_verify(doc: dict, K=None) -> tuple:
    params, d = _load_params(doc)
    if K is None:
        K = int(doc.get("K", 0)) or None
    if K is None:
        from .deformation import TruncatedSymbolModule
        K = TruncatedSymbolModule.default(d).K
    verdict = check_integrability(params, d)
    if not verdict.ok:
        return 1, {"integrability": verdict.to_json_dict(),
                   "flat": None,
                   "note": "parameters are obstructed; nothing to verify"}
    try:
        report = verify_flat(params, d, int(K))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return (0 if report.ok else 1), {
        "integrability": verdict.to_json_dict(),
        "flat": report.to_json_dict(),
    }


def run_catalog_dump(family: str, k: int, d=None) -> tuple:
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r} (choose from {FAMILIES})")
    dq = _parse_weight(d)
    try:
        cid = CocycleId(family, k, dq)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    cochain = build(cid)
    sw, tw = weights_of(cid)
    payload = {
        "family": family, "k": k,
        "d": format_rational(dq) if dq is not None else None,
        "source_weight": format_rational(sw),
        "target_weight": format_rational(tw),
        "values": {label: render_operator(cochain.value(label))
                   for label in cochain.values},
        "is_cocycle": is_cocycle(cochain),
    }
    return (0 if payload["is_cocycle"] else 1), payload
