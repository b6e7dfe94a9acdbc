"""Exact coboundary equations over the rationals.

``solve_coboundary`` decides whether a 2-cochain target (a concrete cochain,
a linear combination of named scalars times spanning cochains, or both) is
the coboundary of some 1-cochain within a finite ansatz:

    B(g) = sum over multi-indices a, theta slots e, x-powers p <= bounds
           of unknown * x^p * theta_e * D^a           for each basis g.

Each unknown is an independent rational; the ansatz therefore contains every
operator-valued 1-cochain whose values have d/dx-order and coefficient
degree within the bounds (only the parity matching the target contributes,
so opposite-parity slots are omitted).  Assembly matches, for every ordered
basis pair, multi-index, theta monomial and x-power, the coefficient of
delta(B) against the target; elimination is division-controlled integer
Gaussian elimination with a deterministic pivot order, followed by full back
substitution.

Certificates report:

* ``solved`` / ``solved_underdetermined`` with a witness (free unknowns set
  to zero) that is re-verified exactly against the target before returning;
* ``inconsistent`` when a row reduces to 0 = c with c nonzero;
* ``forced_zero``: the named scalars that vanish in *every* solution --
  the mechanized form of a nontriviality statement.

The optional weight pruning restricts the ansatz to the grading induced by
the diagonal basis element H; the coboundary map preserves that grading, so
pruning never changes the answer (checked in the test suite).  Default off.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cohomology import Cochain1, Cochain2, delta1
from .contact import BASIS_ORDER, BASIS_PARITY, H_EIGENVALUE
from .grassmann import SLOT_PARITY, SuperFunction, XPoly
from .operators import DiffOperator, op_equals
from .scalars import LinForm, format_rational

__all__ = [
    "AnsatzSpec", "LinearCertificate", "EmptyAnsatzError", "solve_coboundary",
    "default_bounds",
]


class EmptyAnsatzError(ValueError):
    """Ansatz restrictions left no unknowns at all."""


@dataclass(frozen=True)
class AnsatzSpec:
    max_dx_order: int
    max_coeff_degree: int
    weight_prune: bool = False

    def __post_init__(self):
        if self.max_dx_order < 0 or self.max_coeff_degree < 0:
            raise ValueError("ansatz bounds must be non-negative")

    def grown(self, step: int = 2) -> "AnsatzSpec":
        return AnsatzSpec(self.max_dx_order + step,
                          self.max_coeff_degree + step, self.weight_prune)


def default_bounds(k: int, weight_prune: bool = False) -> AnsatzSpec:
    """Default ansatz for family parameter k: order and degree |k| + 3."""
    n = abs(int(k)) + 3
    return AnsatzSpec(n, n, weight_prune)


@dataclass
class LinearCertificate:
    status: str                      # solved | solved_underdetermined | inconsistent
    bounds: AnsatzSpec
    escalated: bool
    num_unknowns: int
    num_equations: int
    free_scalars: tuple
    forced_zero: tuple
    scalar_relations: list           # rows over the named scalars, rhs included
    witness: Cochain1 | None
    inconsistency: dict | None

    @property
    def solved(self) -> bool:
        return self.status in ("solved", "solved_underdetermined")

    def scalars_solvable(self, assignment: dict) -> bool:
        """Would the target with these scalar values admit a coboundary?"""
        for rel in self.scalar_relations:
            total = -rel["rhs"]
            for name, coeff in rel["lhs"].items():
                total += coeff * assignment.get(name, Fraction(0))
            if total:
                return False
        return self.status != "inconsistent"

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "bounds": {"max_dx_order": self.bounds.max_dx_order,
                       "max_coeff_degree": self.bounds.max_coeff_degree,
                       "weight_prune": self.bounds.weight_prune},
            "escalated": self.escalated,
            "num_unknowns": self.num_unknowns,
            "num_equations": self.num_equations,
            "free_scalars": list(self.free_scalars),
            "forced_zero": list(self.forced_zero),
            "scalar_relations": [
                {"lhs": {n: format_rational(c) for n, c in rel["lhs"].items()},
                 "rhs": format_rational(rel["rhs"])}
                for rel in self.scalar_relations
            ],
            "witness": _render_witness(self.witness),
            "inconsistency": self.inconsistency,
        }


def _render_witness(w: Cochain1 | None):
    if w is None:
        return None
    from .operators import render_operator
    return {label: render_operator(w.value(label)) for label in BASIS_ORDER}


# -- grading ------------------------------------------------------------------

def _operator_grade(midx, slot, power, sw, tw) -> Fraction:
    """H-action eigenvalue of the elementary operator x^p*theta_slot*D^midx."""
    i, j, k = midx
    theta_deg = (0, 1, 1, 2)[slot]
    return sw - tw - (power - i) - Fraction(theta_deg - j - k, 2)


# -- elimination --------------------------------------------------------------

class _Echelon:
    """Online integer row echelon with smallest-column pivoting."""

    def __init__(self):
        self.pivots = {}          # col -> (row dict, rhs)
        self.inconsistent = None  # first impossible row, as (row_index, rhs)

    @staticmethod
    def _normalize(row: dict, rhs: int):
        g = 0
        for v in row.values():
            g = gcd(g, v)
        g = gcd(g, rhs)
        if g > 1:
            row = {c: v // g for c, v in row.items()}
            rhs //= g
        return row, rhs

    def reduce(self, row: dict, rhs: int):
        """Reduce a row against current pivots; returns remainder or None."""
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                row, rhs = self._normalize(row, rhs)
                return row, rhs
            prow, prhs = piv
            a = row[lead]
            b = prow[lead]
            g = gcd(a, b)
            mr, mp = b // g, a // g
            new = {}
            for c, v in row.items():
                new[c] = v * mr
            for c, v in prow.items():
                nv = new.get(c, 0) - v * mp
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            rhs = rhs * mr - prhs * mp
            row = new
        return (None, rhs)

    def insert(self, row: dict, rhs: int, index: int) -> None:
        red = self.reduce(row, rhs)
        rrow, rrhs = red
        if rrow is None:
            if rrhs and self.inconsistent is None:
                self.inconsistent = {"row_index": index, "reduced_rhs": rrhs}
            return
        self.pivots[min(rrow)] = (rrow, rrhs)

    def back_substitute(self) -> dict:
        """Full reduction: each pivot row cleared of later pivot columns.

        A pivot row's non-pivot columns are all larger than its pivot, so
        processing pivots in descending order substitutes only rows that are
        already fully reduced; one pass converges.
        """
        for col in sorted(self.pivots, reverse=True):
            row, rhs = self.pivots[col]
            for c in sorted(k for k in row if k != col and k in self.pivots):
                if c not in row:
                    continue  # canceled by an earlier substitution
                prow, prhs = self.pivots[c]
                a, b = row[c], prow[c]
                g = gcd(a, b)
                mr, mp = b // g, a // g
                new = {cc: v * mr for cc, v in row.items()}
                for cc, v in prow.items():
                    nv = new.get(cc, 0) - v * mp
                    if nv:
                        new[cc] = nv
                    else:
                        new.pop(cc, None)
                rhs = rhs * mr - prhs * mp
                row, rhs = self._normalize(new, rhs)
            self.pivots[col] = (row, rhs)
        return self.pivots


# -- assembly -----------------------------------------------------------------

def _target_spec(targets) -> tuple:
    specs = {(t.source_weight, t.target_weight, t.parity) for _, t in targets}
    if len(specs) != 1:
        raise ValueError("targets live on different blocks or parities")
    return specs.pop()


def _enumerate_unknowns(ansatz: AnsatzSpec, parity, sw, tw, grades=None) -> list:
    unknowns = []
    for gi, label in enumerate(BASIS_ORDER):
        want = (parity + BASIS_PARITY[label]) % 2
        for i in range(ansatz.max_dx_order + 1):
            for j, k in ((0, 0), (1, 0), (0, 1), (1, 1)):
                for slot in range(4):
                    if (SLOT_PARITY[slot] + j + k) % 2 != want:
                        continue
                    for p in range(ansatz.max_coeff_degree + 1):
                        if grades is not None:
                            g = (_operator_grade((i, j, k), slot, p, sw, tw)
                                 - H_EIGENVALUE[label])
                            if g not in grades:
                                continue
                        unknowns.append((gi, (i, j, k), slot, p))
    return unknowns


def _generic_cochain(unknowns, sw, tw, parity) -> Cochain1:
    per_label = {label: {} for label in BASIS_ORDER}
    for col, (gi, midx, slot, p) in enumerate(unknowns):
        label = BASIS_ORDER[gi]
        terms = per_label[label]
        comps = terms.setdefault(midx, [[], [], [], []])
        comp = comps[slot]
        while len(comp) <= p:
            comp.append(Fraction(0))
        comp[p] = LinForm.unknown(col)
    values = {}
    for label, terms in per_label.items():
        ops = {}
        for midx, comps in terms.items():
            ops[midx] = SuperFunction(*(XPoly(tuple(c)) for c in comps))
        values[label] = DiffOperator(sw, tw, ops)
    return Cochain1(sw, tw, parity, values)


def _iter_positions(op: DiffOperator):
    for midx, coeff in op.terms.items():
        for slot, poly in enumerate(coeff.components()):
            for p, c in enumerate(poly.coeffs):
                if c:
                    yield (midx, slot, p), c


def _collect_rows(delta_b: Cochain2, targets, scalar_col: dict) -> list:
    """One row per (pair, multi-index, slot, power) with any nonzero entry."""
    rows = []
    for pair in itertools.product(BASIS_ORDER, repeat=2):
        lhs = delta_b.value(*pair)
        entries = {}
        for pos, c in _iter_positions(lhs):
            entries[pos] = [c, Fraction(0)]
        for name, t in targets:
            for pos, c in _iter_positions(t.value(*pair)):
                e = entries.setdefault(pos, [LinForm(), Fraction(0)])
                if name is None:
                    e[1] += c
                else:
                    e[0] = e[0] - LinForm({scalar_col[name]: c})
        for pos in sorted(entries):
            lf, rhs = entries[pos]
            if not isinstance(lf, LinForm):
                lf = LinForm({}, lf)
            rows.append((lf, rhs))
    return rows


def _scale_to_int(lf: LinForm, rhs: Fraction):
    den = rhs.denominator
    for v in lf.coeffs.values():
        den = den * v.denominator // gcd(den, v.denominator)
    const = lf.const + 0
    den = den * const.denominator // gcd(den, const.denominator)
    row = {}
    for c, v in lf.coeffs.items():
        row[c] = int(v * den)
    rhs_i = int((rhs - const) * den)
    return row, rhs_i


def solve_coboundary(target: Cochain2 | None, ansatz: AnsatzSpec,
                     free_scalars=(), combination=None,
                     escalate: bool = True,
                     reverse_columns: bool = False) -> LinearCertificate:
    """Decide delta(B) = target + sum_s s * combination[s] within the ansatz.

    ``free_scalars`` orders the named scalars; ``combination`` maps each name
    to its spanning 2-cochain.  With no scalars this is a plain concrete
    coboundary solve; on an inconsistent concrete solve the ansatz is grown
    once before reporting (disable with escalate=False).

    ``reverse_columns`` reverses the deterministic unknown ordering, which
    drives the elimination through a different pivot sequence; agreement of
    the two runs is the independent re-verification used for certificates
    that carry no witness.
    """
    combination = dict(combination or {})
    if set(combination) != set(free_scalars):
        raise ValueError("combination keys must match free_scalars")
    targets = [(None, target)] if target is not None else []
    targets += [(name, combination[name]) for name in free_scalars]
    if not targets:
        raise ValueError("nothing to solve")
    sw, tw, parity = _target_spec(targets)

    grades = None
    if ansatz.weight_prune:
        grades = set()
        for _, t in targets:
            for (l1, l2) in itertools.product(BASIS_ORDER, repeat=2):
                for (midx, slot, p), _c in _iter_positions(t.value(l1, l2)):
                    grades.add(_operator_grade(midx, slot, p, sw, tw)
                               - H_EIGENVALUE[l1] - H_EIGENVALUE[l2])

    unknowns = _enumerate_unknowns(ansatz, parity, sw, tw, grades)
    if not unknowns:
        raise EmptyAnsatzError("ansatz restrictions removed every unknown")
    if reverse_columns:
        unknowns = list(reversed(unknowns))

    # Scalar columns sort after every operator unknown, so relations among
    # the named scalars surface as scalar-pivot rows after elimination.
    scalar_col = {name: len(unknowns) + i for i, name in enumerate(free_scalars)}
    generic = _generic_cochain(unknowns, sw, tw, parity)
    rows = _collect_rows(delta1(generic), targets, scalar_col)

    ech = _Echelon()
    n_rows = 0
    for idx, (lf, rhs) in enumerate(rows):
        row, rhs_i = _scale_to_int(lf, rhs)
        if not row and not rhs_i:
            continue
        n_rows += 1
        ech.insert(row, rhs_i, idx)

    scalar_cols = {col: name for name, col in scalar_col.items()}
    num_unknowns = len(unknowns) + len(free_scalars)

    if ech.inconsistent is not None:
        if escalate and not free_scalars:
            deeper = solve_coboundary(target, ansatz.grown(), free_scalars,
                                      combination, escalate=False,
                                      reverse_columns=reverse_columns)
            deeper.escalated = True
            return deeper
        return LinearCertificate(
            "inconsistent", ansatz, False, num_unknowns, n_rows,
            tuple(free_scalars), (), [], None, ech.inconsistent)

    pivots = ech.back_substitute()

    # Relations purely among the named scalars (scalar columns sort after the
    # integer unknown columns, so they surface as scalar-pivot rows).
    scalar_relations = []
    forced = []
    for col, (row, rhs) in sorted(pivots.items()):
        if col in scalar_cols:
            lhs = {}
            for c, v in row.items():
                if c not in scalar_cols:
                    raise AssertionError("scalar pivot row touches operator unknowns")
                lhs[scalar_cols[c]] = Fraction(v)
            scalar_relations.append({"lhs": lhs, "rhs": Fraction(rhs)})
            if len(row) == 1 and rhs == 0:
                forced.append(scalar_cols[col])

    # Witness with all free unknowns (and scalars) set to zero; only
    # meaningful when that assignment satisfies the scalar relations.
    witness = None
    if all(rel["rhs"] == 0 for rel in scalar_relations):
        assignment = {}
        for col, (row, rhs) in pivots.items():
            if col in scalar_cols:
                continue
            assignment[col] = Fraction(rhs, row[col])
        witness = _witness_from(assignment, unknowns, sw, tw, parity)
        if target is not None:
            _verify_witness(witness, target)

    free_cols = num_unknowns - len(pivots)
    status = "solved" if free_cols == 0 else "solved_underdetermined"
    return LinearCertificate(
        status, ansatz, False, num_unknowns, n_rows, tuple(free_scalars),
        tuple(sorted(forced)), scalar_relations, witness, None)


def _witness_from(assignment: dict, unknowns, sw, tw, parity) -> Cochain1:
    per_label = {label: {} for label in BASIS_ORDER}
    for col, value in assignment.items():
        if not value:
            continue
        gi, midx, slot, p = unknowns[col]
        terms = per_label[BASIS_ORDER[gi]]
        comps = terms.setdefault(midx, [[], [], [], []])
        comp = comps[slot]
        while len(comp) <= p:
            comp.append(Fraction(0))
        comp[p] = value
    values = {}
    for label, terms in per_label.items():
        ops = {m: SuperFunction(*(XPoly(tuple(c)) for c in comps))
               for m, comps in terms.items()}
        values[label] = DiffOperator(sw, tw, ops)
    return Cochain1(sw, tw, parity, values)


def _verify_witness(witness: Cochain1, target: Cochain2) -> None:
    db = delta1(witness)
    for pair, op in db.values.items():
        if not op_equals(op, target.value(*pair)):
            raise AssertionError(f"witness verification failed at {pair}")
