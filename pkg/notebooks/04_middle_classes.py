"""
Middle classes at scale
=======================

A module with neither the smallest nor the largest possible domain sits in
a middle class. Over T2 (upper triangular 2x2 over F2) and over Z4 every
catalog module is either injective or indigent, and either projective or
p-indigent. R8 is shown for contrast.
"""

from finmod import build_catalog, builtin_ring, middle_class_report


def yn(b):
    return "x" if b else "."


for name in ("T2", "Z4", "R8"):
    R = builtin_ring(name)
    cat = build_catalog(R, 64, 2)
    rep = middle_class_report(R, cat)
    print(f"\n{name}: {len(rep['classes'])} classes, bound {rep['bound']}")
    print(f"  {'id':18s} inj indig proj p-indig")
    for row in rep["classes"]:
        print(f"  {row['id']:18s}  {yn(row['injective'])}    {yn(row['indigent'])}    "
              f"{yn(row['projective'])}     {yn(row['p_indigent'])}")
    print("  no subinjective middle class:", rep["no_subinjective_middle_class"])
    print("  no subprojective middle class:", rep["no_subprojective_middle_class"])
