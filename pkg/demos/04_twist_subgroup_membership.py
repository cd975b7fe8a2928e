"""The determinant homomorphism decides twist-subgroup membership.

On a closed nonorientable surface, twists have determinant +1 on first
homology and crosscap slides -1; the reflection's value depends on the
embedding.  Membership of the commutator entry Y switches between r and
r h accordingly.
"""

from twistcert import (
    CurveClass,
    OutOfScope,
    SurfaceSpec,
    det_hom,
    scl_upper_bound,
    select_case,
    word,
)

print("letter determinants (genus 8, orientable-complement embedding, k = 1):")
n8 = SurfaceSpec(False, 8)
for text in ("b", "a1^-1", "h", "r", "r h", "a1^-1 r h"):
    value = det_hom(word(text), n8, k=1)
    verdict = "in" if value == 1 else "not in"
    print(f"  det({text:10s}) = {value:+d}   ({verdict} twist subgroup)")

print("\nmembership of the reflection along the genus sequence 6, 8, 10, 12:")
for g in (6, 8, 10, 12):
    k = g // 2 - 3
    value = det_hom(word("r"), SurfaceSpec(False, g), k=k)
    print(f"  genus {g:>2} (k = {k}): det r = {value:+d}  "
          f"-> {'r works' if value == 1 else 'needs r h, unavailable here'}")

print("\ncase selection across the boundary:")
oc = CurveClass.parse("nonsep:oc")
for g in (6, 8, 10, 12):
    try:
        case = select_case(SurfaceSpec(False, g), oc, "twist-subgroup")
        bound = scl_upper_bound(case)
        print(f"  genus {g:>2}: {case.case_id}, Y built from {case.y_choice}, "
              f"scl bound {bound.value}")
    except OutOfScope as exc:
        print(f"  genus {g:>2}: out of scope (conjectural={exc.conjectural})")
