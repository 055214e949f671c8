"""delta_l grows along the dominance order but not along the lexicographic one.

delta_l(e) = sum_j (l^(e'_j) - l^(e'_j - 1)) over the columns e' of the Young
diagram of e.  Moving a box from a shorter column to a longer column always
increases it, so delta_l is strictly monotone for dominance.  The
lexicographic order is a refinement of dominance that also compares
partitions dominance leaves incomparable, and there monotonicity fails.

Run with ``python3 demos/delta_orders.py``.
"""

from neroncomp.partitions import Order, conjugate, delta_l, lex_compare, majorizes, partitions_of


def lex_failures(l: int, max_n: int):
    for n in range(1, max_n + 1):
        parts = list(partitions_of(n))
        for p in parts:
            for q in parts:
                if lex_compare(p, q) == Order.GT and delta_l(l, p) <= delta_l(l, q):
                    yield p, q


def main() -> None:
    for l in (2, 3, 5):
        found = list(lex_failures(l, 10))
        print(f"l = {l}: {len(found)} lexicographic pairs with N <= 10 where delta does not increase")
        for p, q in found:
            dp, dq = delta_l(l, p), delta_l(l, q)
            relation = "equal" if dp == dq else "reversed"
            print(f"  {list(p)} > {list(q)} lexicographically; delta {dp} vs {dq} ({relation})")
            print(f"    columns {list(conjugate(p))} vs {list(conjugate(q))}; comparable in dominance: "
                  f"{majorizes(p, q) or majorizes(q, p)}")

    checked = 0
    for l in (2, 3, 5):
        for n in range(1, 11):
            parts = list(partitions_of(n))
            for p in parts:
                for q in parts:
                    if p != q and majorizes(p, q):
                        checked += 1
                        assert delta_l(l, p) > delta_l(l, q)
    print(f"\ndominance order: delta strictly increases on all {checked} comparable pairs")


if __name__ == "__main__":
    main()
