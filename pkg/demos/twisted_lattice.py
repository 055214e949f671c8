"""Walk through the three-step twisted lattice with a cyclic component group.

The lattice is Z[x]/(g) + Z[x]/(g h) with g = f_{l,1}...f_{l,r} and
h = f_{l,r+1}...f_{l,r+s}, and inertia acts by multiplication by x twisted
by a correction block C.  The component group is cyclic of order l^(2r+s)
even though each graded piece is only as large as l^r or l^s.

Run with ``python3 demos/twisted_lattice.py``.
"""

from neroncomp.errors import PrecisionError
from neroncomp.exactlinalg import IntMatrix, cyclo_product
from neroncomp.models import check_thm33, compute_phi, model_example54


def show_matrix(m: IntMatrix) -> None:
    width = max(len(str(x)) for row in m.tolist() for x in row)
    for row in m.tolist():
        print("    " + " ".join(str(x).rjust(width) for x in row))


def main() -> None:
    l, r, s = 2, 1, 1
    N = 2 * r + s + 2
    print(f"l = {l}, r = {r}, s = {s}; residues modulo {l}^{N}")
    print(f"g = {cyclo_product(l, 1, r)}, h = {cyclo_product(l, r + 1, r + s)} (coefficients, constant first)")

    model = model_example54(l, r, s, N)
    print(f"\ntau on Z^{model.rank}, entries modulo {l ** N}:")
    show_matrix(model.tau)

    rep = compute_phi(model)
    print(f"\nPhi has type {list(rep.phi)}, order {l ** rep.phi.size}")
    for (i, j), name in zip([(0, 1), (1, 2), (2, 3), (3, 4)], ["Phi/Phi1", "Phi1/Phi2", "Phi2/Phi3", "Phi3"]):
        print(f"  {name:10s} {list(rep.layer(i, j))}")

    # more l-adic digits must not change anything
    again = compute_phi(model_example54(l, r, s, N + 2))
    print(f"\nsame answer at precision {N + 2}: {again == rep}")

    print("\nfiltration bounds:")
    print(check_thm33(model, rep))

    # with too few digits the top divisor is only known modulo l^N
    try:
        compute_phi(model_example54(l, r, s, 3))
    except PrecisionError as exc:
        print(f"\nat precision 3: {exc}")

    print("\nlarger cases:")
    for l, r, s in [(2, 1, 2), (2, 2, 1), (3, 1, 1)]:
        rep = compute_phi(model_example54(l, r, s, 2 * r + s + 2))
        graded = [list(g) for g in rep.graded]
        print(f"  l={l} r={r} s={s}: Phi {list(rep.phi)}, graded {graded}")


if __name__ == "__main__":
    main()
