"""Which component groups occur for given toric, abelian and unipotent ranks?

A finite abelian group G occurs for an abelian variety with ranks (t, a, u)
exactly when u is at least a sum of per-prime terms computed from the
invariants of G that remain after dropping the t largest.  This script
prints that bound for a few groups, builds witness plans, and rebuilds
each block as a lattice model to confirm its component group.

Run with ``python3 demos/realizability.py``.
"""

from neroncomp.abgroups import AbGroup, from_invariant_factors
from neroncomp.classify import RealizabilityQuery, block_models, end_to_end_check, is_realizable, plan, rhs_bound
from neroncomp.models import compute_phi


def describe(G: AbGroup) -> str:
    ns = G.to_invariant_factors()
    return " + ".join(f"Z/{n}" for n in ns) if ns else "0"


def main() -> None:
    z9 = AbGroup({3: (2,)})
    print(f"G = {describe(z9)}: least u with t = 0 is {rhs_bound(z9, 0)}")
    for u in (1, 2):
        q = RealizabilityQuery.make(z9, 0, 0, u)
        print(f"  (t, a, u) = (0, 0, {u}): realizable = {is_realizable(q)}")

    print("\nleast u for t = 0, 1, 2:")
    for ns in ([8], [4, 2], [2, 2, 2], [12, 2], [25], [9, 3]):
        G = from_invariant_factors(ns)
        bounds = [str(rhs_bound(G, t)) for t in range(3)]
        print(f"  {describe(G):16s} {', '.join(bounds)}")

    G = from_invariant_factors([60, 6, 2])
    q = RealizabilityQuery.make(G, 1, 1, 12)
    print(f"\nplan for G = {describe(G)} with (t, a, u) = (1, 1, 12):")
    p = plan(q)
    for b in p.blocks:
        print(f"  {b.kind:15s} dim {b.dim}  params {b.params}  group {describe(b.predicted_phi)}")

    print("\nrebuilding every block:")
    for b in p.blocks:
        for l, model in block_models(b).items():
            got = compute_phi(model).phi
            print(f"  {b.kind:15s} l={l}: predicted {list(b.predicted_phi.part(l))}, computed {list(got)}")
    print(f"end-to-end check: {end_to_end_check(p)}")


if __name__ == "__main__":
    main()
