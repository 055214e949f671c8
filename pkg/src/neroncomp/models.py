"""Galois-lattice models of abelian varieties and their component groups.

A model is a lattice ``U = Z^n`` (standing in for the l-adic Tate module),
the matrix of a topological generator ``tau`` of the tame inertia quotient,
and the filtration ``V^0 > V^1 > V^2 > V^3 > 0`` of the orthogonal of the
invariant part, where successive quotients have ranks ``t~-t``,
``2(a~-a)``, ``t~-t`` and ``t``.  The l-part of the component group is

    Phi = V^0 / (tau - 1)U,

filtered by ``Phi^i = (V^i + N) / N`` with ``N = (tau - 1)U``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import ModelError, NonUnitError, PrecisionError
from .exactlinalg.automorphisms import CycloMultiplicities, conjugate_counts, multiplicities_of_poly, totient_l
from .exactlinalg.intmatrix import IntMatrix
from .exactlinalg.lattices import independent_columns, lattice_coordinates, solve_mod
from .exactlinalg.modular import LadicPoly, ladic_inverse
from .exactlinalg.normalforms import hnf_columns, smith_form, smith_l_part, solve_echelon, valuation
from .exactlinalg.polys import (
    companion,
    cyclo_product,
    lambda_mult_matrix,
    poly_derivative,
    poly_divmod,
    poly_mul,
    poly_rem,
    resultant,
)
from .partitions import Partition, delta_l, merge, require_prime

__all__ = [
    "Ranks",
    "GaloisLatticeModel",
    "PhiReport",
    "compute_phi",
    "model_example51",
    "model_example52",
    "model_example53",
    "model_example54",
    "model_example55",
    "model_unipotent_elliptic",
    "trivial_model",
    "abelian_pad_model",
    "unipotent_pad_model",
    "direct_sum",
    "with_prime",
    "with_primes",
    "derived_multiplicities",
    "InequalityLine",
    "Verdict",
    "check_thm33",
    "check_cor34",
]

LAYER_NAMES = {(0, 1): "Phi/Phi1", (1, 2): "Phi1/Phi2", (2, 3): "Phi2/Phi3", (3, 4): "Phi3"}


@dataclass(frozen=True)
class Ranks:
    t: int
    a: int
    u: int
    t_tilde: int
    a_tilde: int

    @property
    def dim(self) -> int:
        return self.t + self.a + self.u

    def __add__(self, other: "Ranks") -> "Ranks":
        return Ranks(
            self.t + other.t,
            self.a + other.a,
            self.u + other.u,
            self.t_tilde + other.t_tilde,
            self.a_tilde + other.a_tilde,
        )

    def to_json(self) -> dict:
        return {"t": self.t, "a": self.a, "u": self.u, "t_tilde": self.t_tilde, "a_tilde": self.a_tilde}

    @classmethod
    def from_json(cls, data) -> "Ranks":
        try:
            values = {k: data[k] for k in ("t", "a", "u", "t_tilde", "a_tilde")}
        except (KeyError, TypeError):
            raise ValueError("ranks need keys t, a, u, t_tilde, a_tilde") from None
        for k, v in values.items():
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise ValueError(f"rank {k} must be a non-negative integer")
        return cls(**values)


@dataclass(frozen=True)
class GaloisLatticeModel:
    """Lattice with inertia generator and filtration, at a fixed prime ``l``.

    In ``"mod"`` mode ``tau`` holds residues modulo ``l^N`` of an l-adic
    matrix; the filtration generators are always exact integer columns.
    """

    l: int
    tau: IntMatrix
    filtration: tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]
    ranks: Ranks | None = None
    m_t: CycloMultiplicities | None = None
    m_a: CycloMultiplicities | None = None
    mode: str = "exact"
    N: int | None = None
    name: str = ""

    @property
    def rank(self) -> int:
        return self.tau.rows

    def validate(self) -> "GaloisLatticeModel":
        """Check every structural invariant; returns ``self`` for chaining."""
        require_prime(self.l)
        n = self.rank
        if not self.tau.is_square():
            raise ModelError("tau must be square")
        if self.mode not in ("exact", "mod"):
            raise ModelError(f"unknown arithmetic mode {self.mode!r}")
        if self.mode == "mod" and (not isinstance(self.N, int) or self.N < 1):
            raise ModelError("mod mode needs a precision N >= 1")
        if self.mode == "exact" and self.N is not None:
            raise ModelError("exact models carry no precision")
        if len(self.filtration) != 4:
            raise ModelError("filtration must have four steps V^0..V^3")
        for i, v in enumerate(self.filtration):
            if v.rows != n:
                raise ModelError(f"V^{i} generators live in the wrong ambient rank")
        bases = [hnf_columns(v)[0] for v in self.filtration]
        dims = [b.cols for b in bases]
        for i, b in enumerate(bases):
            if b.cols and any(d != 1 for d in smith_form(b)):
                raise ModelError(f"V^{i} is not saturated, so U/V^{i} has torsion")
        for i in range(3):
            try:
                lattice_coordinates(bases[i], bases[i + 1])
            except ValueError:
                raise ModelError(f"V^{i + 1} is not contained in V^{i}") from None
        for i, b in enumerate(bases):
            if b.cols and not self._stable(b):
                raise ModelError(f"V^{i} is not stable under tau")
        if self.ranks is not None:
            r = self.ranks
            want = [r.t_tilde - r.t, 2 * (r.a_tilde - r.a), r.t_tilde - r.t, r.t]
            got = [dims[0] - dims[1], dims[1] - dims[2], dims[2] - dims[3], dims[3]]
            if want != got:
                raise ModelError(f"filtration quotient ranks {got} do not match {want}")
            if n % 2 or r.dim != n // 2 or r.t_tilde + r.a_tilde != n // 2:
                raise ModelError("ranks violate t + a + u = t~ + a~ = rank/2")
            if n - dims[0] != r.t + 2 * r.a:
                raise ModelError("rank of U / V^0 must equal t + 2a")
        for m in (self.m_t, self.m_a):
            if m is not None and m.l != self.l:
                raise ModelError("multiplicities declared for another prime")
        if self.mode == "mod" and self.tau.mod(self.l**self.N) != self.tau:
            raise ModelError("tau entries must be residues modulo l^N")
        return self

    def _stable(self, basis: IntMatrix) -> bool:
        image = self.tau @ basis
        if self.mode == "exact":
            try:
                lattice_coordinates(basis, image)
            except ValueError:
                return False
            return True
        try:
            solve_mod(basis, image, self.l, self.N)
        except ValueError:
            return False
        return True

    def to_json(self) -> dict:
        out = {
            "l": self.l,
            "mode": self.mode,
            "rank": self.rank,
            "tau": self.tau.to_json(),
            "filtration": [v.to_json() for v in self.filtration],
            "ranks": None if self.ranks is None else self.ranks.to_json(),
            "m_t": None if self.m_t is None else self.m_t.to_json(),
            "m_a": None if self.m_a is None else self.m_a.to_json(),
            "name": self.name,
        }
        if self.mode == "mod":
            out["N"] = self.N
        return out

    @classmethod
    def from_json(cls, data) -> "GaloisLatticeModel":
        if not isinstance(data, dict):
            raise ValueError("model JSON must be an object")
        try:
            l = data["l"]
            mode = data.get("mode", "exact")
            tau = IntMatrix.from_json(data["tau"])
            filt = tuple(IntMatrix.from_json(v) for v in data["filtration"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed model JSON: missing {exc}") from None
        if isinstance(l, bool) or not isinstance(l, int):
            raise ValueError("l must be an integer")
        if "rank" in data and data["rank"] != tau.rows:
            raise ValueError("declared rank does not match tau")
        ranks = None if data.get("ranks") is None else Ranks.from_json(data["ranks"])

        def mult(key):
            v = data.get(key)
            if v is None:
                return None
            if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
                raise ValueError(f"{key} must be a list of integers")
            return CycloMultiplicities(l, tuple(v))

        model = cls(
            l=l,
            tau=tau,
            filtration=filt,
            ranks=ranks,
            m_t=mult("m_t"),
            m_a=mult("m_a"),
            mode=mode,
            N=data.get("N") if mode == "mod" else None,
            name=str(data.get("name", "")),
        )
        try:
            return model.validate()
        except ModelError:
            raise
        except ValueError as exc:
            raise ModelError(str(exc)) from None


@dataclass(frozen=True)
class PhiReport:
    """l-part of the component group and the pieces of its filtration.

    ``layers[(i, j)]`` is the type of ``Phi^i / Phi^j`` for ``0 <= i < j <= 4``
    with ``Phi^4 = 0``.
    """

    l: int
    layers: dict = field(compare=True)
    corank: int = 0

    @property
    def phi(self) -> Partition:
        return self.layers[(0, 4)]

    @property
    def graded(self) -> tuple[Partition, Partition, Partition, Partition]:
        return tuple(self.layers[(i, i + 1)] for i in range(4))

    def layer(self, i: int, j: int) -> Partition:
        return self.layers[(i, j)]

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "phi": list(self.phi),
            "graded": [list(g) for g in self.graded],
            "corank": self.corank,
            "order": str(self.l ** self.phi.size),
            "layers": {f"{i}/{j}": list(p) for (i, j), p in sorted(self.layers.items())},
        }


def _quotient_type(big: IntMatrix, small: IntMatrix, l: int) -> Partition:
    h, piv = big, list(range(big.cols))
    coords = []
    for j in range(small.cols):
        c = solve_echelon(h, piv, small.col(j))
        if c is None:
            raise AssertionError("lattice step is not nested")
        coords.append(c)
    if not coords:
        return Partition()
    return smith_l_part(smith_form(IntMatrix.from_columns(coords)), l)


def compute_phi(model: GaloisLatticeModel) -> PhiReport:
    """Type of ``Phi_l`` and of every ``Phi^i / Phi^j``.

    Everything is computed inside ``V^0`` in the coordinates of its Hermite
    basis.  Only the l-part matters, so all lattices are enlarged by
    ``l^v Z^k`` for a ``v`` large enough not to change that l-part: the
    valuation of a nonzero maximal minor of ``N`` in exact mode, and the
    working precision ``N`` in mod mode (where a part reaching ``N`` means
    the answer is not determined and raises ``PrecisionError``).
    """
    l = model.l
    n = model.rank
    basis0, _ = hnf_columns(model.filtration[0])
    k = basis0.cols
    empty = {(i, j): Partition() for i in range(5) for j in range(i + 1, 5)}
    if k == 0:
        return PhiReport(l, empty, 0)
    tau_minus = model.tau - IntMatrix.identity(n)
    gens = list(model.filtration) + [IntMatrix.zeros(n, 0)]
    if model.mode == "exact":
        try:
            ncoords = lattice_coordinates(basis0, tau_minus)
            vcoords = [lattice_coordinates(basis0, g) for g in gens]
        except ValueError:
            raise ModelError("(tau - 1)U or a filtration step is not inside V^0") from None
        cols = independent_columns(ncoords)
        if len(cols) < k:
            raise ModelError(f"Phi is infinite: corank {k - len(cols)}")
        det = abs(ncoords.submatrix(range(k), cols).det())
        v = valuation(det, l)
        if v == 0:
            return PhiReport(l, empty, 0)
        modulus = l**v
    else:
        try:
            ncoords = solve_mod(basis0, tau_minus.mod(l**model.N), l, model.N)
            vcoords = [
                solve_mod(basis0, g, l, model.N) if g.cols else IntMatrix.zeros(k, 0) for g in gens
            ]
        except ValueError:
            raise ModelError("(tau - 1)U or a filtration step is not inside V^0") from None
        modulus = l**model.N
    lattices = [hnf_columns(IntMatrix.hstack([vc, ncoords]), modulus=modulus)[0] for vc in vcoords]
    layers = {}
    for i in range(5):
        for j in range(i + 1, 5):
            layers[(i, j)] = _quotient_type(lattices[i], lattices[j], l)
    if model.mode == "mod" and layers[(0, 4)] and layers[(0, 4)][0] >= model.N:
        raise PrecisionError(
            f"a divisor of Phi reaches {l}^{model.N}; rebuild the model with more precision"
        )
    return PhiReport(l, layers, 0)


# model constructors


def _span(n: int, columns: Iterable[Sequence[int]]) -> IntMatrix:
    cols = [list(c) for c in columns]
    return IntMatrix.from_columns(cols) if cols else IntMatrix.zeros(n, 0)


def _unit(n: int, i: int) -> list[int]:
    return [int(j == i) for j in range(n)]


def model_example51(ns: Sequence[int], l: int) -> GaloisLatticeModel:
    """Product of Tate curves ``E_n``: ``tau = [[1, n], [0, 1]]`` per factor."""
    require_prime(l)
    ns = list(ns)
    if any(not isinstance(x, int) or x < 1 for x in ns):
        raise ValueError("Tate curve parameters must be positive integers")
    blocks = [IntMatrix([[1, x], [0, 1]]) for x in ns]
    n = 2 * len(ns)
    tau = IntMatrix.block_diag(blocks) if blocks else IntMatrix.zeros(0, 0)
    w = _span(n, [_unit(n, 2 * i) for i in range(len(ns))])
    t = len(ns)
    return GaloisLatticeModel(
        l=l,
        tau=tau,
        filtration=(w, w, w, w),
        ranks=Ranks(t=t, a=0, u=0, t_tilde=t, a_tilde=0),
        m_t=CycloMultiplicities(l),
        m_a=CycloMultiplicities(l),
        name=f"ex51(ns={ns})",
    ).validate()


def model_example52(l: int, i: int) -> GaloisLatticeModel:
    """Twist of ``E_1 (x) Lambda_{l,i}``: ``tau = [[X, X], [0, X]]``."""
    x = lambda_mult_matrix(l, 1, i)
    d = x.rows
    zero = IntMatrix.zeros(d, d)
    tau = IntMatrix.vstack([IntMatrix.hstack([x, x]), IntMatrix.hstack([zero, x])])
    n = 2 * d
    full = IntMatrix.identity(n)
    first = _span(n, [_unit(n, j) for j in range(d)])
    return GaloisLatticeModel(
        l=l,
        tau=tau,
        filtration=(full, first, first, IntMatrix.zeros(n, 0)),
        ranks=Ranks(t=0, a=0, u=d, t_tilde=d, a_tilde=0),
        m_t=CycloMultiplicities(l, (1,) * i),
        m_a=CycloMultiplicities(l),
        name=f"ex52(l={l},i={i})",
    ).validate()


def model_example53(l: int, i: int) -> GaloisLatticeModel:
    """Twist of ``(Lambda_{l,i} (x) R) / Lambda_{l,i}`` by multiplication by ``x``.

    For ``l = 2`` the lattice has odd rank, so it is not the Tate module of
    any abelian variety; the model is still built (with a warning) but
    carries no ranks.
    """
    x = lambda_mult_matrix(l, 1, i)
    d = x.rows
    full = IntMatrix.identity(d)
    zero = IntMatrix.zeros(d, 0)
    ranks = None
    if l == 2:
        warnings.warn("this twisted model needs l > 2; at l = 2 it has no abelian-variety ranks", stacklevel=2)
    else:
        ranks = Ranks(t=0, a=0, u=d // 2, t_tilde=0, a_tilde=d // 2)
    return GaloisLatticeModel(
        l=l,
        tau=x,
        filtration=(full, full, zero, zero),
        ranks=ranks,
        m_t=CycloMultiplicities(l),
        m_a=CycloMultiplicities(l, (1,) * i),
        name=f"ex53(l={l},i={i})",
    ).validate()


def model_unipotent_elliptic(kind: str, l: int = 2) -> GaloisLatticeModel:
    """Rank-2 potentially good elliptic blocks with component group ``(Z/2)^2`` or ``Z/2``."""
    if kind == "klein":
        tau = IntMatrix([[-1, 0], [0, -1]])
    elif kind == "cyclic2":
        tau = IntMatrix([[0, -1], [1, 0]])
    else:
        raise ValueError(f"unknown elliptic block {kind!r}")
    require_prime(l)
    full = IntMatrix.identity(2)
    zero = IntMatrix.zeros(2, 0)
    m_a, _ = multiplicities_of_poly(tau.charpoly(), l)
    return GaloisLatticeModel(
        l=l,
        tau=tau,
        filtration=(full, full, zero, zero),
        ranks=Ranks(t=0, a=0, u=1, t_tilde=0, a_tilde=1),
        m_t=CycloMultiplicities(l),
        m_a=m_a,
        name=kind,
    ).validate()


def trivial_model(l: int) -> GaloisLatticeModel:
    z = IntMatrix.zeros(0, 0)
    return GaloisLatticeModel(
        l=l,
        tau=z,
        filtration=(z, z, z, z),
        ranks=Ranks(0, 0, 0, 0, 0),
        m_t=CycloMultiplicities(l),
        m_a=CycloMultiplicities(l),
        name="trivial",
    ).validate()


def abelian_pad_model(a: int, l: int) -> GaloisLatticeModel:
    """Good reduction of dimension ``a``: inertia acts trivially, ``V^0 = 0``."""
    n = 2 * a
    zero = IntMatrix.zeros(n, 0)
    return GaloisLatticeModel(
        l=l,
        tau=IntMatrix.identity(n),
        filtration=(zero, zero, zero, zero),
        ranks=Ranks(t=0, a=a, u=0, t_tilde=0, a_tilde=a),
        m_t=CycloMultiplicities(l),
        m_a=CycloMultiplicities(l),
        name=f"abelian_pad({a})",
    ).validate()


# x^2 - x + 1: order 6 and tau - 1 is invertible over Z, so no components
_SIXTH_ROOT = companion([1, -1, 1])


def unipotent_pad_model(u: int, l: int) -> GaloisLatticeModel:
    """``u`` potentially good elliptic factors with trivial component group."""
    n = 2 * u
    tau = IntMatrix.block_diag([_SIXTH_ROOT] * u) if u else IntMatrix.zeros(0, 0)
    full = IntMatrix.identity(n)
    zero = IntMatrix.zeros(n, 0)
    return GaloisLatticeModel(
        l=l,
        tau=tau,
        filtration=(full, full, zero, zero),
        ranks=Ranks(t=0, a=0, u=u, t_tilde=0, a_tilde=u),
        m_t=CycloMultiplicities(l),
        m_a=CycloMultiplicities(l),
        name=f"unipotent_pad({u})",
    ).validate()


# twisted lattices built l-adically


def _pad(v: Sequence[int], n: int) -> list[int]:
    return list(v) + [0] * (n - len(v))


def _crt_column(c1: LadicPoly, c2: LadicPoly, idem: LadicPoly) -> LadicPoly:
    """The element of ``Q_l[x]/(g h)`` that is ``c1`` mod ``g`` and ``c2`` mod ``h``."""
    big = idem.f
    one = LadicPoly.exact(idem.l, big, [1])
    return c1.lift_to(big) * idem + c2.lift_to(big) * (one - idem)


def _corank_mod_l(m: IntMatrix, l: int) -> int:
    from .exactlinalg.lattices import _rank_mod

    return m.rows - len(_rank_mod(m.tolist(), l))


def _twisted_block(l: int, r: int, s: int, N: int):
    """Correction block ``C`` and the self-check data for the three-step twisted lattice.

    ``s = 0`` gives the two-step variant.  Returns
    ``(C, g, h, working_precision)`` with ``C`` a list of integer columns
    modulo ``l^N``.
    """
    g = cyclo_product(l, 1, r)
    h = cyclo_product(l, r + 1, r + s)
    big = poly_mul(g, h)
    d0 = len(g) - 1
    res = resultant(g, h) if s else 1
    v = valuation(res, l) if res else 0
    nw = N + v + 2
    while True:
        try:
            cols = _correction_columns(l, g, h, big, d0, s, nw, N)
            return cols, g, h, nw
        except PrecisionError:
            # tracked precision fell short; retry with more digits
            nw += N
            if nw > 50 * (N + v + 2):
                raise


def _correction_columns(l, g, h, big, d0, s, nw, N):
    x = [0, 1]
    z = ladic_inverse(x, g, l, nw) * ladic_inverse(poly_derivative(g), g, l, nw)
    if s:
        y2 = ladic_inverse(g, h, l, nw)
        idem = LadicPoly.exact(l, big, h) * ladic_inverse(h, g, l, nw).lift_to(big)
    xr = LadicPoly.exact(l, g, x)

    def mono(f, i):
        return LadicPoly.exact(l, f, [0] * i + [1])

    def phi_tilde(b: Sequence[int]):
        """Lift of the cocycle on an integral element ``b`` of ``Lambda_r``."""
        first = LadicPoly.exact(l, g, [0])
        second = LadicPoly.exact(l, h, [0]) if s else None
        for i, c in enumerate(b):
            if not c:
                continue
            xi = mono(g, i)
            first = first + (xi * z).scale(i * c)
            if s:
                second = second + (mono(h, i) * y2).scale(c)
        return first, second

    cols = []
    for i in range(d0):
        b = _pad([0] * i + [1], d0)
        xb = _pad(poly_rem([0] + b, g), d0)
        f1, f2 = phi_tilde(b)
        g1, g2 = phi_tilde(xb)
        bpoly = LadicPoly.exact(l, g, b)
        part1 = xr * z * bpoly + xr * f1 - g1
        if s:
            xh = LadicPoly.exact(l, h, x)
            part2 = xh * f2 - g2
            c = _crt_column(part1, part2, idem)
        else:
            c = part1
        if c.prec is not None and c.prec < N:
            raise PrecisionError("working precision too small for the correction term")
        if not c.is_integral():
            raise ModelError("twisted lattice is not tau-stable: correction term is not integral")
        cols.append(_pad(c.residues(N), len(c.f) - 1))
    return cols


def _assemble_twisted(l: int, r: int, s: int, N: int):
    cols, g, h, nw = _twisted_block(l, r, s, N)
    big = poly_mul(g, h)
    d0 = len(g) - 1
    d1 = len(big) - 1
    q = l**N
    top = companion(big)
    low = companion(g)
    c = IntMatrix.from_columns(cols)
    tau = IntMatrix.vstack(
        [IntMatrix.hstack([top, c]), IntMatrix.hstack([IntMatrix.zeros(d0, d1), low])]
    ).mod(q)
    # self-checks on the assembled matrix
    if tau.submatrix(range(d1), range(d1)) != top.mod(q):
        raise ModelError("first block is not multiplication by x on Lambda_{r+s}")
    if tau.submatrix(range(d1, d1 + d0), range(d1, d1 + d0)) != low.mod(q):
        raise ModelError("quotient action is not multiplication by x on Lambda_r")
    if not tau.submatrix(range(d1, d1 + d0), range(d1)).is_zero():
        raise ModelError("first block is not tau-stable")
    return tau, c, g, h, nw


def model_example54(l: int, r: int, s: int, N: int) -> GaloisLatticeModel:
    """Lattice in ``Lambda_r + Lambda_{r,s} + Lambda_r`` (over ``Q_l``) with cyclic ``Phi`` of order ``l^(2r+s)``.

    The lattice has basis ``Lambda_{r+s} + Lambda_r`` and ``tau`` acts as
    ``[[X_{r+s}, C], [0, X_r]]`` where ``C`` comes from the cocycle with
    ``y = (0, g_r^-1)`` and ``z = x^-1 g_r'^-1``; the CRT idempotent of
    ``Lambda_{r+s} (x) Q_l = Lambda_r x Lambda_{r,s}`` converts back to
    lattice coordinates.  Precision ``N >= 2r + s + 2`` is recommended; with
    less, ``compute_phi`` reports a precision failure.
    """
    require_prime(l)
    for name, val in (("r", r), ("s", s), ("N", N)):
        if not isinstance(val, int) or val < 1:
            raise ValueError(f"{name} must be a positive integer")
    tau, c, g, h, _ = _assemble_twisted(l, r, s, N)
    d0 = len(g) - 1
    d1 = d0 + len(h) - 1
    n = d0 + d1
    # (tau - 1) mod l on M/M^2 = Lambda_{r,s} + Lambda_r must have corank 1
    ch = [_pad(poly_rem(list(col), h), d1 - d0) for col in c.columns()]
    quot = IntMatrix.vstack(
        [
            IntMatrix.hstack([companion(h) - IntMatrix.identity(d1 - d0), IntMatrix.from_columns(ch)]),
            IntMatrix.hstack([IntMatrix.zeros(d0, d1 - d0), companion(g) - IntMatrix.identity(d0)]),
        ]
    )
    if _corank_mod_l(quot, l) != 1:
        raise ModelError("tau - 1 on M/M^2 does not have corank 1 modulo l")
    full = IntMatrix.identity(n)
    v1 = _span(n, [_unit(n, j) for j in range(d1)])
    v2 = _span(n, [_pad([0] * j + h, n) for j in range(d0)])
    t_tilde = d0
    a_tilde = (l ** (r + s) - l**r) // 2
    return GaloisLatticeModel(
        l=l,
        tau=tau,
        filtration=(full, v1, v2, IntMatrix.zeros(n, 0)),
        ranks=Ranks(t=0, a=0, u=t_tilde + a_tilde, t_tilde=t_tilde, a_tilde=a_tilde),
        m_t=CycloMultiplicities(l, (1,) * r),
        m_a=CycloMultiplicities(l, (0,) * r + (1,) * s),
        mode="mod",
        N=N,
        name=f"ex54(l={l},r={r},s={s})",
    ).validate()


def model_example55(l: int, r: int, N: int) -> GaloisLatticeModel:
    """Lattice in ``Lambda_r + Lambda_r`` (over ``Q_l``) with cyclic ``Phi`` of order ``l^(2r)``.

    Same construction as ``model_example54`` with the middle term removed:
    ``tau = [[X_r, C], [0, X_r]]`` with ``C`` from the cocycle
    ``b -> x z b + x phi(b) - phi(x b)``, ``z = x^-1 g_r'^-1``.
    """
    require_prime(l)
    for name, val in (("r", r), ("N", N)):
        if not isinstance(val, int) or val < 1:
            raise ValueError(f"{name} must be a positive integer")
    tau, c, g, _, _ = _assemble_twisted(l, r, 0, N)
    d0 = len(g) - 1
    n = 2 * d0
    if _corank_mod_l(tau - IntMatrix.identity(n), l) != 1:
        raise ModelError("tau - 1 on M does not have corank 1 modulo l")
    full = IntMatrix.identity(n)
    v1 = _span(n, [_unit(n, j) for j in range(d0)])
    return GaloisLatticeModel(
        l=l,
        tau=tau,
        filtration=(full, v1, v1, IntMatrix.zeros(n, 0)),
        ranks=Ranks(t=0, a=0, u=d0, t_tilde=d0, a_tilde=0),
        m_t=CycloMultiplicities(l, (1,) * r),
        m_a=CycloMultiplicities(l),
        mode="mod",
        N=N,
        name=f"ex55(l={l},r={r})",
    ).validate()


# combining models


def direct_sum(models: Sequence[GaloisLatticeModel]) -> GaloisLatticeModel:
    """Block-diagonal sum; exact summands are reduced when mixed with mod-``l^N`` ones."""
    models = list(models)
    if not models:
        raise ValueError("direct sum of nothing; use trivial_model")
    l = models[0].l
    if any(m.l != l for m in models):
        raise ModelError("summands are models at different primes")
    precisions = {m.N for m in models if m.mode == "mod"}
    if len(precisions) > 1:
        raise ModelError(f"summands use different precisions {sorted(precisions)}")
    mode = "mod" if precisions else "exact"
    N = precisions.pop() if precisions else None
    tau = IntMatrix.block_diag([m.tau for m in models])
    if mode == "mod":
        tau = tau.mod(l**N)
    filtration = tuple(
        IntMatrix.block_diag([m.filtration[i] for m in models]) for i in range(4)
    )
    ranks = None
    if all(m.ranks is not None for m in models):
        ranks = models[0].ranks
        for m in models[1:]:
            ranks = ranks + m.ranks

    def total(attr):
        vals = [getattr(m, attr) for m in models]
        if any(v is None for v in vals):
            return None
        out = vals[0]
        for v in vals[1:]:
            out = out + v
        return out

    return GaloisLatticeModel(
        l=l,
        tau=tau,
        filtration=filtration,
        ranks=ranks,
        m_t=total("m_t"),
        m_a=total("m_a"),
        mode=mode,
        N=N,
        name=" + ".join(m.name for m in models),
    ).validate()


def _restricted_charpoly(model: GaloisLatticeModel, gens: IntMatrix) -> list[int]:
    basis, _ = hnf_columns(gens)
    if basis.cols == 0:
        return [1]
    action = lattice_coordinates(basis, model.tau @ basis)
    return action.charpoly()


def _quotient_charpolys(model: GaloisLatticeModel) -> tuple[list[int], list[int]]:
    """Characteristic polynomials of ``tau`` on ``V^2/V^3`` and on ``V^1/V^2``."""
    if model.mode != "exact":
        raise ModelError("multiplicities can only be derived from an exact model")
    polys = [_restricted_charpoly(model, v) for v in model.filtration]

    def quotient(i):
        q, r = poly_divmod(polys[i], polys[i + 1])
        assert not r
        return q

    return quotient(2), quotient(1)


def derived_multiplicities(model: GaloisLatticeModel, l: int | None = None):
    """``(m_t, m_a)`` read off ``tau`` on ``V^2/V^3`` and on ``V^1/V^2``.

    Only defined for exact models.
    """
    l = model.l if l is None else l
    toric, abelian = _quotient_charpolys(model)
    return multiplicities_of_poly(toric, l)[0], multiplicities_of_poly(abelian, l)[0]


def with_prime(model: GaloisLatticeModel, l: int) -> GaloisLatticeModel:
    """The same exact model viewed at another prime, multiplicities recomputed."""
    return with_primes(model, [l])[0]


def with_primes(model: GaloisLatticeModel, primes: Sequence[int]) -> list[GaloisLatticeModel]:
    """``with_prime`` for several primes, sharing the characteristic polynomials."""
    for l in primes:
        require_prime(l)
    toric, abelian = _quotient_charpolys(model)
    out = []
    for l in primes:
        m_t = multiplicities_of_poly(toric, l)[0]
        m_a = multiplicities_of_poly(abelian, l)[0]
        out.append(replace(model, l=l, m_t=m_t, m_a=m_a).validate())
    return out


# Theorem-level inequalities


@dataclass(frozen=True)
class InequalityLine:
    part: int
    statement: str
    values: tuple
    ok: bool

    def __str__(self) -> str:
        mark = "ok " if self.ok else "FAIL"
        return f"[{mark}] part {self.part}: {self.statement} with values {self.values}"


@dataclass(frozen=True)
class Verdict:
    lines: tuple[InequalityLine, ...]

    @property
    def ok(self) -> bool:
        return all(x.ok for x in self.lines)

    def __str__(self) -> str:
        return "\n".join(str(x) for x in self.lines)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "parts": [
                {"part": x.part, "statement": x.statement, "values": [str(v) for v in x.values], "ok": x.ok}
                for x in self.lines
            ],
        }


def _chain(values) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def check_thm33(model: GaloisLatticeModel, report: PhiReport) -> Verdict:
    """The six bounds on the filtration of ``Phi_l`` in terms of multiplicities.

    ``t_l - t`` is taken as ``sum_i m_t,i phi(l^i)`` and ``2(a_l - a)`` as
    ``sum_i m_a,i phi(l^i)``.
    """
    if model.m_t is None or model.m_a is None:
        raise ModelError("model declares no multiplicities")
    if model.ranks is None:
        raise ModelError("model declares no ranks")
    if report.l != model.l:
        raise ValueError("report computed at a different prime")
    l = model.l
    t = model.ranks.t
    tl = model.m_t.rank()
    al2 = model.m_a.rank()
    p_t = conjugate_counts(model.m_t)
    p_a = conjugate_counts(model.m_a)
    p = conjugate_counts(model.m_t + model.m_a)
    d = lambda part: delta_l(l, part)  # noqa: E731
    lay = report.layers
    lines = [
        InequalityLine(1, "len(Phi3) <= t", (len(lay[(3, 4)]), t), len(lay[(3, 4)]) <= t),
    ]
    specs = [
        (2, "d(Phi2/Phi3) <= d(p_t) <= t_l-t", lay[(2, 3)], p_t, tl),
        (3, "d(Phi1/Phi2) <= d(p_a) <= 2(a_l-a)", lay[(1, 2)], p_a, al2),
        (4, "d(Phi/Phi1) <= d(p_t) <= t_l-t", lay[(0, 1)], p_t, tl),
        (5, "d(Phi/Phi2) <= d(p) <= (t_l-t)+2(a_l-a)", lay[(0, 2)], p, tl + al2),
        (6, "d(Phi1/Phi3) <= d(p) <= (t_l-t)+2(a_l-a)", lay[(1, 3)], p, tl + al2),
    ]
    for part, text, piece, pp, rhs in specs:
        vals = (d(piece), d(pp), rhs)
        lines.append(InequalityLine(part, text, vals, _chain(vals)))
    return Verdict(tuple(lines))


def check_cor34(pairs: Sequence[tuple[GaloisLatticeModel, PhiReport]]) -> Verdict:
    """Aggregate bounds over all primes with ``delta = sum_l delta_l``.

    Each entry is a model of the same variety viewed at a different prime.
    With residue characteristic 0 the tame ranks are ``t~`` and ``a~``.
    """
    pairs = list(pairs)
    primes = [m.l for m, _ in pairs]
    if len(set(primes)) != len(primes):
        raise ModelError("each prime may appear only once")
    ranks = {m.ranks for m, _ in pairs}
    if None in ranks:
        raise ModelError("every model must declare ranks")
    if len(ranks) > 1:
        raise ModelError("rank declarations differ between primes")
    r = ranks.pop() if ranks else Ranks(0, 0, 0, 0, 0)
    for m, rep in pairs:
        if rep.l != m.l:
            raise ValueError("report computed at a different prime")
        if m.m_t is None or m.m_a is None:
            raise ModelError("model declares no multiplicities")
    if sum(m.m_t.rank() for m, _ in pairs) > r.t_tilde - r.t:
        raise ModelError("toric multiplicities exceed t~ - t")
    if sum(m.m_a.rank() for m, _ in pairs) > 2 * (r.a_tilde - r.a):
        raise ModelError("abelian multiplicities exceed 2(a~ - a)")

    def total(i, j):
        return sum(delta_l(m.l, rep.layers[(i, j)]) for m, rep in pairs)

    tt = r.t_tilde - r.t
    aa = 2 * (r.a_tilde - r.a)
    gens = max((len(rep.layers[(3, 4)]) for _, rep in pairs), default=0)
    lines = [InequalityLine(1, "Phi3 generated by t elements", (gens, r.t), gens <= r.t)]
    specs = [
        (2, "d(Phi2/Phi3) <= t_t-t", total(2, 3), tt),
        (3, "d(Phi1/Phi2) <= 2(a_t-a)", total(1, 2), aa),
        (4, "d(Phi/Phi1) <= t_t-t", total(0, 1), tt),
        (5, "d(Phi/Phi2) <= (t_t-t)+2(a_t-a)", total(0, 2), tt + aa),
        (6, "d(Phi1/Phi3) <= (t_t-t)+2(a_t-a)", total(1, 3), tt + aa),
    ]
    for part, text, lhs, rhs in specs:
        lines.append(InequalityLine(part, text, (lhs, rhs), lhs <= rhs))
    return Verdict(tuple(lines))
