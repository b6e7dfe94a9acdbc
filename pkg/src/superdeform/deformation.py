"""Deformations of the osp(2|2) action on truncated symbol modules.

The symbol module of weight d truncated at K has components j = 0..K of
density weight d - j/2.  An infinitesimal deformation is a sum of catalog
cocycles weighted by rational parameters:

* generic case (2d not a natural number): a_k, b_k multiply the omega
  families on the diagonal component k;
* resonant case (2d = m natural): a_k, b_k multiply the gamma families on
  the diagonal component j = m - k (so k ranges over m-K..m), and c_k, d_k,
  e_k (k = 1..m) multiply the off-diagonal families mapping component m+k
  to component m-k.

``check_integrability`` evaluates the published second-order condition set;
``obstruction2`` computes the honest obstruction (1/2) L1 v L1 blockwise;
``obstruction_solvability`` decides blockwise coboundary-solvability through
cached symbolic certificates.  The two notions provably differ here (see the
project notes): the published conditions were derived with a misprinted
bracket table, while the computed solvability conditions per off-diagonal
block are  c2 = 0,  c1 = c5,  c4 + c6 = c5  in the six coefficient combos,
and every diagonal-block obstruction is exact.  Both are reported.

``verify_flat`` checks the homomorphism identity for the deformed action
with all higher-order terms set to zero; that is an exact operator identity
precisely when the obstruction vanishes identically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .catalog import CocycleId, build, diagonal_pair, phi
from .cohomology import Cochain1, Cochain2
from .contact import BASIS_ORDER, BASIS_PARITY, basis_element, poisson, expand_in_osp_span
from .grassmann import Parity
from .linsolve import AnsatzSpec, default_bounds, solve_coboundary
from .operators import DiffOperator, compose, lie_operator
from .reports import VerificationReport
from .scalars import Dual, format_rational, parse_rational

__all__ = [
    "TruncatedSymbolModule", "DeformationParams", "BlockMap",
    "build_L1", "obstruction2", "obstruction_coefficients",
    "check_integrability", "obstruction_solvability", "verify_flat",
    "first_order_deformation_check", "Integrable", "Obstructed",
]


def _is_natural(q: Fraction) -> bool:
    return q.denominator == 1 and q.numerator >= 0


@dataclass(frozen=True)
class TruncatedSymbolModule:
    d: Fraction
    K: int

    def __post_init__(self):
        object.__setattr__(self, "d", Fraction(self.d))
        if self.K < 0:
            raise ValueError("K must be non-negative")
        if self.resonant and self.K < 2 * self.m:
            raise ValueError(
                f"K = {self.K} too small: need K >= 2m = {2 * self.m} so every "
                f"off-diagonal source component is present")

    @property
    def resonant(self) -> bool:
        return _is_natural(2 * self.d)

    @property
    def m(self) -> int:
        if not self.resonant:
            raise ValueError("m is defined only when 2d is a natural number")
        return int(2 * self.d)

    @staticmethod
    def default(d, m_hint=None) -> "TruncatedSymbolModule":
        d = Fraction(d)
        if _is_natural(2 * d):
            return TruncatedSymbolModule(d, 2 * int(2 * d) + 2)
        return TruncatedSymbolModule(d, 6)

    def component_weight(self, j: int) -> Fraction:
        return self.d - Fraction(j, 2)

    def diagonal_component(self, k: int) -> int:
        """Component index carrying the diagonal family of index k."""
        return self.m - k if self.resonant else k

    def diagonal_index_range(self):
        if self.resonant:
            return range(self.m - self.K, self.m + 1)
        return range(0, self.K + 1)


_FAMILY_KEYS = ("a", "b", "c", "d_", "e")


@dataclass(frozen=True)
class DeformationParams:
    """Coefficient families; unspecified entries are zero."""

    a: dict = field(default_factory=dict)
    b: dict = field(default_factory=dict)
    c: dict = field(default_factory=dict)
    d_: dict = field(default_factory=dict)
    e: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in _FAMILY_KEYS:
            fam = getattr(self, name)
            clean = {int(k): Fraction(v) for k, v in fam.items() if Fraction(v)}
            object.__setattr__(self, name, clean)

    def family(self, name: str) -> dict:
        return getattr(self, name)

    def coeff(self, name: str, k: int) -> Fraction:
        return self.family(name).get(k, Fraction(0))

    def validate_for(self, module: TruncatedSymbolModule) -> None:
        if module.resonant:
            m = module.m
            bad = [k for fam in ("c", "d_", "e") for k in self.family(fam)
                   if not 1 <= k <= m]
            if bad:
                raise ValueError(f"off-diagonal indices outside 1..{m}: {sorted(set(bad))}")
        else:
            if self.c or self.d_ or self.e:
                raise ValueError("off-diagonal families require 2d to be a natural number")
            bad = [k for fam in ("a", "b") for k in self.family(fam) if k < 0]
            if bad:
                raise ValueError(f"negative diagonal indices in the generic case: {sorted(set(bad))}")

    @staticmethod
    def from_json_dict(doc: dict) -> tuple:
        """Parse {"d": "p/q", "a": {...}, ..., "d_": {...}}; returns (params, d).

        All scalars must be exact rational strings.
        """
        if "d" not in doc:
            raise ValueError('missing weight key "d"')
        d = parse_rational(str(doc["d"]))
        fams = {}
        for name in _FAMILY_KEYS:
            raw = doc.get(name, {})
            if not isinstance(raw, dict):
                raise ValueError(f"family {name!r} must be an object")
            fams[name] = {int(k): parse_rational(str(v)) for k, v in raw.items()}
        return DeformationParams(**fams), d

    def to_json_dict(self, d) -> dict:
        doc = {"d": format_rational(Fraction(d))}
        for name in _FAMILY_KEYS:
            doc[name] = {str(k): format_rational(v)
                         for k, v in sorted(self.family(name).items())}
        return doc


class BlockMap:
    """Finite family of operators between components of the symbol module."""

    __slots__ = ("blocks",)

    def __init__(self, blocks=None):
        self.blocks = {}
        for key, op in (blocks or {}).items():
            if not op.is_zero():
                self.blocks[key] = op

    def add(self, key, op) -> None:
        if op.is_zero():
            return
        cur = self.blocks.get(key)
        total = op if cur is None else cur + op
        if total.is_zero():
            self.blocks.pop(key, None)
        else:
            self.blocks[key] = total

    def is_zero(self) -> bool:
        return not self.blocks

    def __add__(self, other: "BlockMap") -> "BlockMap":
        out = BlockMap(dict(self.blocks))
        for key, op in other.blocks.items():
            out.add(key, op)
        return out

    def __sub__(self, other: "BlockMap") -> "BlockMap":
        return self + other.scale(-1)

    def scale(self, cst) -> "BlockMap":
        return BlockMap({k: op.scale(cst) for k, op in self.blocks.items()})

    def __eq__(self, other):
        if not isinstance(other, BlockMap):
            return NotImplemented
        return (self - other).is_zero()


def block_compose(p: BlockMap, q: BlockMap) -> BlockMap:
    out = BlockMap()
    for (s1, t1), op1 in p.blocks.items():
        for (s2, t2), op2 in q.blocks.items():
            if t2 == s1:
                out.add((s2, t1), compose(op1, op2))
    return out


def block_scomm(p: BlockMap, q: BlockMap, p_parity, q_parity) -> BlockMap:
    sign = -1 if (p_parity and q_parity) else 1
    return block_compose(p, q) - block_compose(q, p).scale(sign)


def build_L1(params: DeformationParams, d, K: int | None = None):
    """Assemble the infinitesimal deformation as basis-label -> BlockMap.

    Returns (values, losses); a loss records a parameter whose block does
    not fit the truncation window.
    """
    d = Fraction(d)
    module = TruncatedSymbolModule(d, K) if K is not None \
        else TruncatedSymbolModule.default(d)
    params.validate_for(module)
    values = {label: BlockMap() for label in BASIS_ORDER}
    losses = []

    def add_cochain(cid: CocycleId, coeff: Fraction, src_comp: int, tgt_comp: int):
        if not coeff:
            return
        if not (0 <= src_comp <= module.K and 0 <= tgt_comp <= module.K):
            losses.append({
                "family": cid.family, "k": cid.k,
                "source_component": src_comp, "target_component": tgt_comp,
                "min_K": max(src_comp, tgt_comp),
            })
            return
        cochain = build(cid)
        for label in BASIS_ORDER:
            values[label].add((src_comp, tgt_comp),
                              cochain.value(label).scale(coeff))

    if module.resonant:
        m = module.m
        for k in sorted(set(params.a) | set(params.b)):
            if k > m:
                raise ValueError(f"diagonal index {k} exceeds m = {m}")
            j = module.diagonal_component(k)
            add_cochain(CocycleId("gamma", k), params.coeff("a", k), j, j)
            add_cochain(CocycleId("gamma_tilde", k), params.coeff("b", k), j, j)
        for k in sorted(set(params.c) | set(params.d_) | set(params.e)):
            src, tgt = m + k, m - k
            add_cochain(CocycleId("Gamma", k), params.coeff("c", k), src, tgt)
            add_cochain(CocycleId("Gamma_tilde", k), params.coeff("d_", k), src, tgt)
            add_cochain(CocycleId("Gamma_bar", k), params.coeff("e", k), src, tgt)
    else:
        for k in sorted(set(params.a) | set(params.b)):
            add_cochain(CocycleId("omega", k, d), params.coeff("a", k), k, k)
            add_cochain(CocycleId("omega_tilde", k, d), params.coeff("b", k), k, k)
    return values, losses


def obstruction2(params: DeformationParams, d, K: int | None = None):
    """(1/2) L1 v L1 blockwise; returns ({(src,tgt): Cochain2}, losses)."""
    d = Fraction(d)
    module = TruncatedSymbolModule(d, K) if K is not None \
        else TruncatedSymbolModule.default(d)
    values, losses = build_L1(params, d, module.K)
    per_block: dict = {}
    for l1, l2 in itertools.product(BASIS_ORDER, repeat=2):
        # L1 is an even cochain, so (1/2)(L1 v L1)(x, y) = [L1(x), L1(y)].
        comm = block_scomm(values[l1], values[l2],
                           BASIS_PARITY[l1], BASIS_PARITY[l2])
        for key, op in comm.blocks.items():
            per_block.setdefault(key, {})[(l1, l2)] = op
    out = {}
    for key, vals in per_block.items():
        sw = module.component_weight(key[0])
        tw = module.component_weight(key[1])
        c2 = Cochain2(sw, tw, Parity.EVEN, vals, check=False)
        if not c2.is_zero():
            out[key] = c2
    return out, losses


def obstruction_coefficients(params: DeformationParams, d) -> dict:
    """Coefficients of the obstruction in the catalog cup basis.

    Off-diagonal block k: coefficients (c1..c6) of Phi_1..Phi_6; diagonal
    block k: coefficients of (gamma_k v gamma~_k, gamma~_k v gamma~_k),
    namely (a_k b_k, b_k^2 / 2).  Validated exhaustively against
    ``obstruction2`` in the test suite.
    """
    d = Fraction(d)
    out = {"diagonal": {}, "off_diagonal": {}}
    for k in sorted(set(params.a) | set(params.b)):
        ak, bk = params.coeff("a", k), params.coeff("b", k)
        if ak * bk or bk:
            out["diagonal"][k] = (ak * bk, bk * bk / 2)
    if _is_natural(2 * d):
        m = int(2 * d)
        for k in range(1, m + 1):
            ak, bk = params.coeff("a", k), params.coeff("b", k)
            am, bm = params.coeff("a", -k), params.coeff("b", -k)
            ck, dk, ek = (params.coeff("c", k), params.coeff("d_", k),
                          params.coeff("e", k))
            coeffs = (
                ak * dk - ck * bm,
                ak * ek - ck * am - ek * am,
                bk * dk - dk * bm,
                bk * ck + bk * ek,
                bk * ck + dk * am,
                ek * bm,
            )
            if any(coeffs):
                out["off_diagonal"][k] = coeffs
    return out


@dataclass
class Integrable:
    ok: bool = True
    conditions_checked: int = 0

    def to_json_dict(self):
        return {"verdict": "integrable",
                "conditions_checked": self.conditions_checked}


@dataclass
class Obstructed:
    violations: list
    ok: bool = False

    def to_json_dict(self):
        return {"verdict": "obstructed", "violations": list(self.violations)}


def check_integrability(params: DeformationParams, d):
    """Evaluate the published second-order condition set exactly.

    Generic case: b_k = 0 for all k.  Resonant case, for k = 1..m:
    a_k d_k - c_k b_{-k} = 0,  a_k e_k - c_k a_{-k} - e_k a_{-k} = 0,
    b_k d_k - d_k b_{-k} = 0,  b_k c_k = -b_k e_k = -d_k a_{-k},
    e_k b_{-k} = 0.
    """
    d = Fraction(d)
    violations = []
    checked = 0
    if not _is_natural(2 * d):
        for k in sorted(params.b):
            checked += 1
            violations.append(f"b[{k}] = {format_rational(params.coeff('b', k))} != 0")
        return Integrable(conditions_checked=checked) if not violations \
            else Obstructed(violations)
    m = int(2 * d)
    for k in range(1, m + 1):
        ak, bk = params.coeff("a", k), params.coeff("b", k)
        am, bm = params.coeff("a", -k), params.coeff("b", -k)
        ck, dk, ek = (params.coeff("c", k), params.coeff("d_", k),
                      params.coeff("e", k))
        exprs = [
            (f"a_{k}*d_{k} - c_{k}*b_{-k}", ak * dk - ck * bm),
            (f"a_{k}*e_{k} - c_{k}*a_{-k} - e_{k}*a_{-k}", ak * ek - ck * am - ek * am),
            (f"b_{k}*d_{k} - d_{k}*b_{-k}", bk * dk - dk * bm),
            (f"b_{k}*c_{k} + b_{k}*e_{k}", bk * ck + bk * ek),
            (f"b_{k}*c_{k} + d_{k}*a_{-k}", bk * ck + dk * am),
            (f"e_{k}*b_{-k}", ek * bm),
        ]
        for name, value in exprs:
            checked += 1
            if value:
                violations.append(f"{name} = {format_rational(value)} != 0")
    if violations:
        return Obstructed(violations)
    return Integrable(conditions_checked=checked)


@lru_cache(maxsize=None)
def _block_certificate(kind: str, k: int, d: Fraction, bounds: AnsatzSpec):
    """Symbolic solvability certificate for one obstruction block shape."""
    if kind == "diagonal":
        c1, c2 = diagonal_pair(k) if d is None else _omega_block(d, k)
        combo = {"s1": c1, "s2": c2}
    else:
        combo = {f"s{i}": phi(i, k) for i in range(1, 7)}
    return solve_coboundary(None, bounds, sorted(combo), combo)


def _omega_block(d: Fraction, k: int):
    from .catalog import omega_pair
    return omega_pair(d, k)


def obstruction_solvability(params: DeformationParams, d,
                            bounds: AnsatzSpec | None = None,
                            weight_prune: bool = False) -> dict:
    """Blockwise coboundary-solvability of the honest obstruction.

    Uses one cached symbolic certificate per block shape; the expansion of
    the obstruction in the catalog cup basis is exact (validated against
    ``obstruction2``), so evaluating the certificate's scalar relations on
    the expansion coefficients decides solvability for any parameter vector.
    """
    d = Fraction(d)
    coeffs = obstruction_coefficients(params, d)
    blocks = {}
    solvable = True
    resonant = _is_natural(2 * d)
    for k, (u, v) in coeffs["diagonal"].items():
        b = bounds or default_bounds(k)
        cert = _block_certificate("diagonal", k, None if resonant else d,
                                  AnsatzSpec(b.max_dx_order, b.max_coeff_degree,
                                             weight_prune))
        ok = cert.scalars_solvable({"s1": u, "s2": v})
        blocks[("diagonal", k)] = ok
        solvable = solvable and ok
    for k, cs in coeffs["off_diagonal"].items():
        b = bounds or default_bounds(k)
        cert = _block_certificate("off_diagonal", k, None,
                                  AnsatzSpec(b.max_dx_order, b.max_coeff_degree,
                                             weight_prune))
        ok = cert.scalars_solvable({f"s{i}": c for i, c in enumerate(cs, start=1)})
        blocks[("off_diagonal", k)] = ok
        solvable = solvable and ok
    return {"solvable": solvable, "blocks": blocks}


def _diagonal_action(label: str, module: TruncatedSymbolModule) -> BlockMap:
    out = BlockMap()
    g = basis_element(label)
    for j in range(module.K + 1):
        w = module.component_weight(j)
        out.add((j, j), lie_operator(g, w))
    return out


def verify_flat(params: DeformationParams, d, K: int) -> VerificationReport:
    """Homomorphism identity for the deformed action with no higher terms.

    Requires check_integrability to accept the parameters; reports an exact
    operator identity per ordered basis pair, plus any truncation losses
    with the minimal K that would retain them.
    """
    d = Fraction(d)
    verdict = check_integrability(params, d)
    if not verdict.ok:
        raise ValueError("verify_flat called on obstructed parameters: "
                         + "; ".join(verdict.violations))
    module = TruncatedSymbolModule(d, K)
    l1, losses = build_L1(params, d, K)
    report = VerificationReport(f"flat deformation at d={format_rational(d)}, K={K}")
    deformed = {}
    for label in BASIS_ORDER:
        deformed[label] = _diagonal_action(label, module) + l1[label]
    for la, lb in itertools.product(BASIS_ORDER, repeat=2):
        lhs = BlockMap()
        coords = expand_in_osp_span(
            poisson(basis_element(la), basis_element(lb)).f)
        for label, cst in coords.items():
            lhs = lhs + deformed[label].scale(cst)
        rhs = block_scomm(deformed[la], deformed[lb],
                          BASIS_PARITY[la], BASIS_PARITY[lb])
        diff = lhs - rhs
        report.add(f"[{la},{lb}]", diff.is_zero(),
                   nonzero_blocks=sorted(diff.blocks))
    for loss in losses:
        report.add(f"truncation loss {loss['family']}[{loss['k']}]", False, **loss)
    return report


def first_order_deformation_check(cochain: Cochain1,
                                  module: TruncatedSymbolModule,
                                  src_comp: int, tgt_comp: int) -> bool:
    """Homomorphism identity for L + eps*cochain over square-zero eps.

    An independent route to the cocycle property for even cochains: the
    eps-linear part of [rho_f, rho_g] - rho_{[f,g]} is exactly the degree-1
    coboundary.  Valid for even cochains only (a commutative eps does not
    carry the Koszul sign an odd parameter would need).
    """
    if cochain.parity != Parity.EVEN:
        raise ValueError("dual-number route applies to even cochains")
    eps = Dual(0, 1)
    deformed = {}
    for label in BASIS_ORDER:
        bm = _diagonal_action(label, module)
        bm = bm + BlockMap({(src_comp, tgt_comp): cochain.value(label).scale(eps)})
        deformed[label] = bm
    for la, lb in itertools.product(BASIS_ORDER, repeat=2):
        lhs = BlockMap()
        coords = expand_in_osp_span(
            poisson(basis_element(la), basis_element(lb)).f)
        for label, cst in coords.items():
            lhs = lhs + deformed[label].scale(cst)
        rhs = block_scomm(deformed[la], deformed[lb],
                          BASIS_PARITY[la], BASIS_PARITY[lb])
        if not (lhs - rhs).is_zero():
            return False
    return True
