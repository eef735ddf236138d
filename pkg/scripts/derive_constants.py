"""Print derived constants: g(u^i) scalars, c_{i,m}, and oracle t_hat tables.

    python scripts/derive_constants.py --n 3
"""

import argparse

from hermarea.areamod import AreaModule, area_module, delta_measure
from hermarea.checks import c_im, g_u_constant
from hermarea.forms import derive_t_hat_table
from hermarea.poly import Coords, GradedPoly
from hermarea.tables import table_diff


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    args = ap.parse_args()
    n = args.n
    mod = area_module(n)

    print(f"g(u^i) = c_i Delta[2(n-i-1), n-i-1] at n={n}")
    for i in range(n):
        image = mod.frak_g(GradedPoly(Coords.TU, {(i, 0): 1}))
        target = delta_measure(n, 2 * (n - i - 1), n - i - 1)
        status = "ok" if image == target.scale(g_u_constant(i)) else "MISMATCH"
        print(f"  i={i}: c_i = {g_u_constant(i)}  [{status}]")

    print("\nc_{i,m}")
    for i in range(1, n):
        print("  " + "  ".join(f"c_{i},{m} = {c_im(i, m)}" for m in range(n - i)))

    print(f"\nt_hat table from invariant forms, n={n}")
    derived = AreaModule.raw_table(derive_t_hat_table(n))
    for src in sorted(derived):
        row = derived[src]
        image = " + ".join(f"({c}) {k}[{a},{b}]" for (k, a, b), c in sorted(row.items())) or "0"
        print(f"  {src[0]}[{src[1]},{src[2]}] -> {image}")
    diff = table_diff(derived, AreaModule.raw_table(mod.hat_t_table))
    print(f"\nagreement with closed formulas: {'yes' if not diff else f'{len(diff)} differences'}")


if __name__ == "__main__":
    main()
