"""
Domains over QF rings
=====================

Over a self-injective artinian ring the injective and projective modules
coincide. Here we look at Z4 and K4 = F2[x, y]/(x^2, y^2) and compare the
intersections of domains over the simples, the cyclics and everything in
the catalog against the injective classes.
"""

import numpy as np

from finmod import build_catalog, builtin_ring, is_qf, sier_verdict, sper_verdict
from finmod.domains import pair_table

for name in ("Z4", "K4"):
    R = builtin_ring(name)
    cat = build_catalog(R, 64, 2)
    print(f"\n{name}: QF={is_qf(R)}, {len(cat)} classes up to 64 elements")

    si = pair_table(cat, "si")  # si[i, j]: class i lies in InInv(class j)
    sp = pair_table(cat, "sp")
    col = {cid: j for j, cid in enumerate(cat.ids)}
    ids = np.array(cat.ids)

    for label, targets in [("simples", cat.simple_ids), ("cyclics", cat.cyclic_ids), ("all", cat.ids)]:
        cols = [col[c] for c in targets]
        in_all = set(ids[si[:, cols].all(axis=1)])
        pr_all = set(ids[sp[:, cols].all(axis=1)])
        print(f"  over {label:8s}: InInv meet = injectives? {in_all == set(cat.injective_ids)}"
              f" | PrInv meet = projectives? {pr_all == set(cat.projective_ids)}")

    cert = sum(sier_verdict(M, cat).certified and sper_verdict(M, cat).certified for _, M in cat)
    print(f"  modules with both verdicts certified: {cert}/{len(cat)}")
