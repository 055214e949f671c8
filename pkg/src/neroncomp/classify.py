"""Which finite abelian groups occur as component groups with given ranks.

A group ``G`` with ``p`` not dividing its order occurs for an abelian
variety of dimension ``d = t + a + u`` with toric rank ``t``, abelian rank
``a`` and unipotent rank ``u`` exactly when

    u >= sum_{l != p} f_l(shift_d(m_l, t)),

where ``m_l`` is the type of the l-part of ``G``.  ``plan`` turns a
realizable query into explicit building blocks whose product has the right
ranks and component group, and ``end_to_end_check`` builds the lattice model
of every block and recomputes its component group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

from .abgroups import AbGroup
from .errors import ModelError
from .models import (
    GaloisLatticeModel,
    compute_phi,
    model_example51,
    model_example52,
    model_example53,
    model_example54,
    model_example55,
    model_unipotent_elliptic,
)
from .partitions import Partition, f_l, shift_d

__all__ = [
    "RealizabilityQuery",
    "BlockSpec",
    "ConstructionPlan",
    "BLOCK_KINDS",
    "rhs_bound",
    "is_realizable",
    "plan",
    "plan_problems",
    "verify_plan",
    "block_models",
    "end_to_end_check",
]

BLOCK_KINDS = (
    "tate_product",
    "ex52",
    "ex53",
    "ex54",
    "ex55",
    "klein_pair",
    "cyclic2_single",
    "abelian_pad",
    "unipotent_pad",
)


def _check_p(p: int) -> None:
    if isinstance(p, bool) or not isinstance(p, int) or (p != 0 and not isprime(p)):
        raise ValueError(f"residue characteristic must be 0 or a prime, got {p!r}")


@dataclass(frozen=True)
class RealizabilityQuery:
    G: AbGroup
    d: int
    t: int
    a: int
    u: int
    p: int = 0

    def __post_init__(self):
        for name in ("d", "t", "a", "u"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer")
        if self.d != self.t + self.a + self.u:
            raise ValueError("d must equal t + a + u")
        _check_p(self.p)
        if self.p and self.p in self.G.primes():
            raise ValueError(f"the order of G is divisible by the residue characteristic {self.p}")

    @classmethod
    def make(cls, G: AbGroup, t: int, a: int, u: int, p: int = 0) -> "RealizabilityQuery":
        return cls(G, t + a + u, t, a, u, p)

    def to_json(self) -> dict:
        return {"G": self.G.to_json(), "d": self.d, "t": self.t, "a": self.a, "u": self.u, "p": self.p}

    @classmethod
    def from_json(cls, data) -> "RealizabilityQuery":
        if not isinstance(data, dict):
            raise ValueError("query JSON must be an object")
        try:
            G = AbGroup.from_json(data["G"])
            t, a, u = data["t"], data["a"], data["u"]
        except KeyError as exc:
            raise ValueError(f"query JSON is missing {exc}") from None
        p = data.get("p", 0)
        d = data.get("d", None)
        if d is None and all(isinstance(x, int) for x in (t, a, u)):
            d = t + a + u
        return cls(G, d, t, a, u, p)


@dataclass(frozen=True)
class BlockSpec:
    """One factor of the witness variety.

    ``params`` holds the constructor arguments: ``ns`` for the Tate-curve
    product, ``l`` with ``r``, ``s`` or ``i`` for the twisted lattices, and
    ``dim`` for the pads.
    """

    kind: str
    params: dict = field(hash=False)
    dim: int
    t: int
    a: int
    u: int
    predicted_phi: AbGroup

    def key(self) -> tuple:
        return (self.kind,) + tuple(
            (k, tuple(v) if isinstance(v, list) else v) for k, v in sorted(self.params.items())
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "dim": self.dim,
            "ranks": {"t": self.t, "a": self.a, "u": self.u},
            "predicted_phi": self.predicted_phi.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "BlockSpec":
        if not isinstance(data, dict) or data.get("kind") not in BLOCK_KINDS:
            raise ValueError(f"unknown or missing block kind in {data!r}")
        try:
            ranks = data["ranks"]
            return cls(
                kind=str(data["kind"]),
                params=dict(data["params"]),
                dim=int(data["dim"]),
                t=int(ranks["t"]),
                a=int(ranks["a"]),
                u=int(ranks["u"]),
                predicted_phi=AbGroup.from_json(data["predicted_phi"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed block JSON: {exc}") from None


@dataclass(frozen=True)
class ConstructionPlan:
    blocks: tuple[BlockSpec, ...]
    query: RealizabilityQuery | None = None

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def predicted_phi(self) -> AbGroup:
        out = AbGroup.trivial()
        for b in self.blocks:
            out = out.direct_sum(b.predicted_phi)
        return out

    def to_json(self) -> dict:
        out = {"blocks": [b.to_json() for b in self.blocks]}
        if self.query is not None:
            out["query"] = self.query.to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "ConstructionPlan":
        if not isinstance(data, dict) or not isinstance(data.get("blocks"), list):
            raise ValueError("plan JSON must be an object with a list of blocks")
        query = data.get("query")
        return cls(
            tuple(BlockSpec.from_json(b) for b in data["blocks"]),
            None if query is None else RealizabilityQuery.from_json(query),
        )


def rhs_bound(G: AbGroup, t: int, p: int = 0) -> Fraction:
    """Least unipotent rank allowed for ``G`` and toric rank ``t``, as an exact rational."""
    _check_p(p)
    if p and p in G.primes():
        raise ValueError(f"G has a {p}-part")
    return sum((f_l(l, shift_d(G.part(l), t)) for l in G.primes()), Fraction(0))


def is_realizable(q: RealizabilityQuery) -> bool:
    return q.u >= rhs_bound(q.G, q.t, q.p)


# canonical blocks


def _tate_block(ns: list[int]) -> BlockSpec:
    return BlockSpec(
        "tate_product", {"ns": list(ns)}, len(ns), len(ns), 0, 0, AbGroup.from_invariant_factors(ns)
    )


def _unipotent(kind: str, params: dict, dim: int, phi: AbGroup) -> BlockSpec:
    return BlockSpec(kind, params, dim, 0, 0, dim, phi)


def _ex54_block(l: int, r: int, s: int) -> BlockSpec:
    dim = (l**r + l ** (r + s)) // 2 - 1
    return _unipotent("ex54", {"l": l, "r": r, "s": s}, dim, AbGroup({l: [2 * r + s]}))


def _ex55_block(l: int, r: int) -> BlockSpec:
    return _unipotent("ex55", {"l": l, "r": r}, l**r - 1, AbGroup({l: [2 * r]}))


def _ex53_block(l: int, i: int) -> BlockSpec:
    return _unipotent("ex53", {"l": l, "i": i}, (l**i - 1) // 2, AbGroup({l: [i]}))


def _ex52_block(l: int, i: int) -> BlockSpec:
    phi = AbGroup({2: [i + 1, i - 1]}) if l == 2 else AbGroup({l: [i, i]})
    return _unipotent("ex52", {"l": l, "i": i}, l**i - 1, phi)


def _klein_block() -> BlockSpec:
    return _unipotent("klein_pair", {}, 1, AbGroup({2: [1, 1]}))


def _cyclic2_block() -> BlockSpec:
    return _unipotent("cyclic2_single", {}, 1, AbGroup({2: [1]}))


def _abelian_pad(dim: int) -> BlockSpec:
    return BlockSpec("abelian_pad", {"dim": dim}, dim, 0, dim, 0, AbGroup.trivial())


def _unipotent_pad(dim: int) -> BlockSpec:
    return _unipotent("unipotent_pad", {"dim": dim}, dim, AbGroup.trivial())


def _canonical_block(kind: str, params: dict) -> BlockSpec:
    """The block determined by ``kind`` and ``params``; raises ``ValueError`` on bad parameters."""

    def get(name, minimum=1):
        v = params.get(name)
        if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
            raise ValueError(f"{kind} needs an integer parameter {name} >= {minimum}")
        return v

    def prime():
        l = get("l", 2)
        if not isprime(l):
            raise ValueError(f"{kind} needs a prime l")
        return l

    if kind == "tate_product":
        ns = params.get("ns")
        if not isinstance(ns, list) or any(isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in ns):
            raise ValueError("tate_product needs a list ns of positive integers")
        return _tate_block(ns)
    if kind == "ex52":
        return _ex52_block(prime(), get("i"))
    if kind == "ex53":
        l = prime()
        if l == 2:
            raise ValueError("ex53 needs an odd prime")
        return _ex53_block(l, get("i"))
    if kind == "ex54":
        return _ex54_block(prime(), get("r"), get("s"))
    if kind == "ex55":
        return _ex55_block(prime(), get("r"))
    if kind == "klein_pair":
        return _klein_block()
    if kind == "cyclic2_single":
        return _cyclic2_block()
    if kind == "abelian_pad":
        return _abelian_pad(get("dim", 0))
    if kind == "unipotent_pad":
        return _unipotent_pad(get("dim", 0))
    raise ValueError(f"unknown block kind {kind!r}")


def plan(q: RealizabilityQuery) -> ConstructionPlan:
    """Witness construction for a realizable query.

    Toric part: Tate curves for the ``t`` largest invariant factors.  For
    each prime ``l`` and each remaining exponent ``m`` of the l-part: the
    twisted lattice with cyclic group ``Z/l^m`` of least dimension, with
    exponents ``m = 1`` at ``l = 2`` paired into Klein-four elliptic curves.
    Good-reduction and trivial-group unipotent factors fill up the ranks.
    """
    if not is_realizable(q):
        raise ValueError("query is not realizable: u is below the required bound")
    G = q.G
    factors = G.to_invariant_factors()
    ns = (factors + [1] * q.t)[: q.t]
    blocks: list[BlockSpec] = []
    if q.t:
        blocks.append(_tate_block(ns))
    for l in G.primes():
        rest = shift_d(G.part(l), q.t)
        ones = 0
        for m in rest:
            if m == 1 and l == 2:
                ones += 1
            elif m == 1:
                blocks.append(_ex53_block(l, 1))
            elif m % 2:
                blocks.append(_ex54_block(l, (m - 1) // 2, 1))
            else:
                blocks.append(_ex55_block(l, m // 2))
        blocks.extend(_klein_block() for _ in range(ones // 2))
        if ones % 2:
            blocks.append(_cyclic2_block())
    if q.a:
        blocks.append(_abelian_pad(q.a))
    used = sum(b.u for b in blocks)
    assert used <= q.u, "block dimensions exceed the unipotent rank of a realizable query"
    if q.u - used:
        blocks.append(_unipotent_pad(q.u - used))
    result = ConstructionPlan(tuple(blocks), q)
    problems = plan_problems(result, q)
    assert not problems, problems
    return result


def plan_problems(p: ConstructionPlan, q: RealizabilityQuery) -> list[str]:
    """Every way in which ``p`` fails to witness ``q``; empty when it does."""
    problems = []
    for n, b in enumerate(p.blocks):
        if b.dim != b.t + b.a + b.u:
            problems.append(f"block {n} ({b.kind}): dim {b.dim} != t + a + u")
        try:
            ref = _canonical_block(b.kind, b.params)
        except ValueError as exc:
            problems.append(f"block {n}: {exc}")
            continue
        if (b.dim, b.t, b.a, b.u) != (ref.dim, ref.t, ref.a, ref.u):
            problems.append(f"block {n} ({b.kind}): ranks do not match its parameters")
        if b.predicted_phi != ref.predicted_phi:
            problems.append(f"block {n} ({b.kind}): predicted group does not match its parameters")
    totals = tuple(sum(getattr(b, k) for b in p.blocks) for k in ("dim", "t", "a", "u"))
    if totals != (q.d, q.t, q.a, q.u):
        problems.append(f"dimension/ranks (d, t, a, u) = {totals}, wanted {(q.d, q.t, q.a, q.u)}")
    if p.predicted_phi != q.G:
        problems.append(f"component group {p.predicted_phi.to_json()} != {q.G.to_json()}")
    return problems


def verify_plan(p: ConstructionPlan, q: RealizabilityQuery) -> bool:
    return not plan_problems(p, q)


@lru_cache(maxsize=None)
def _cached_phi(key: tuple, l: int):
    kind = key[0]
    params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in key[1:]}
    model = _build_model(kind, params, l)
    return compute_phi(model).phi


def _build_model(kind: str, params: dict, l: int) -> GaloisLatticeModel:
    if kind == "tate_product":
        return model_example51(params["ns"], l)
    if kind == "ex52":
        return model_example52(params["l"], params["i"])
    if kind == "ex53":
        return model_example53(params["l"], params["i"])
    if kind == "ex54":
        r, s = params["r"], params["s"]
        return model_example54(params["l"], r, s, 2 * r + s + 2)
    if kind == "ex55":
        r = params["r"]
        return model_example55(params["l"], r, 2 * r + 2)
    if kind == "klein_pair":
        return model_unipotent_elliptic("klein", l)
    if kind == "cyclic2_single":
        return model_unipotent_elliptic("cyclic2", l)
    raise ModelError(f"no lattice model for block kind {kind!r}")


def block_models(b: BlockSpec) -> dict[int, GaloisLatticeModel]:
    """Models of ``b`` at every prime dividing its predicted group; pads give none."""
    if b.kind in ("abelian_pad", "unipotent_pad"):
        return {}
    return {l: _build_model(b.kind, b.params, l) for l in b.predicted_phi.primes()}


def end_to_end_check(p: ConstructionPlan) -> bool:
    """Rebuild each block as a lattice model and compare its component group with the prediction.

    Pads have trivial component groups by construction and are skipped.
    """
    for b in p.blocks:
        if b.kind in ("abelian_pad", "unipotent_pad"):
            if not b.predicted_phi.is_trivial():
                return False
            continue
        for l in b.predicted_phi.primes():
            if _cached_phi(b.key(), l) != b.predicted_phi.part(l):
                return False
    return True
