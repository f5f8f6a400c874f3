"""Quick tour: build algebras, read off the metric properties.

Run with  python3 demos/tour.py
"""

import numpy as np

from liehermitian import (
    AlmostAbelianData,
    aa_report,
    build_almost_abelian,
    build_general,
    property_report,
)
from liehermitian.sampling import hopf_algebra


def show(name, rep):
    props = rep["properties"]
    on = sorted(k for k, v in props.items() if v is True)
    off = sorted(k for k, v in props.items() if v is False)
    print(f"{name}:")
    print("  holds:", ", ".join(on) or "(nothing)")
    print("  fails:", ", ".join(off) or "(nothing)")
    if rep["scalars"]["s"] is not None:
        s = rep["scalars"]
        print(f"  scalars: s={s['s']:+.4f}  s_hat={s['s_hat']:+.4f}"
              f"  s_b={s['s_b']:+.4f}")
    print()


# The abelian algebra carries the flat Kaehler metric; every predicate
# that can hold does.
show("abelian, n=3", property_report(build_general(3)))

# The diagonal Hopf algebra: pluriclosed with parallel torsion but never
# Kaehler.
show("hopf, n=2", property_report(hopf_algebra(2)))

# An almost abelian solvable algebra is determined by (lambda, v, A).
# This one is unimodular since lambda + 2 Re tr A = 0.
d = AlmostAbelianData(n=2, lam=1.0, v=np.zeros(1, dtype=complex),
                      A=np.array([[-0.5 + 0j]]))
show("solvable, lam=1", property_report(build_almost_abelian(d)))

# The family report recomputes every predicate from parameter-level
# closed forms and cross-checks them against the tensor engine; any
# disagreement raises instead of returning.
rep = aa_report(d)
print("closed-form/engine agreement confirmed for",
      len(rep["properties"]), "predicates")
print("eigenvalue data:", rep["eigen_data"]["doubled_real_parts"])
