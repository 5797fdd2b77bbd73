"""A seeded sweep: every uniform instance certifies as a ball.

Generates general-position arrangements over a small (n, d) grid,
runs the full pipeline on each, and tabulates the bounded f-vectors
next to the geometric oracle's census.  Two classical counts show up
on the way: n generic lines in the plane bound C(n-1, 2) regions, and
the alternating sum of every row is 1.

Run:  python3 demos/04_seeded_census.py
"""

from math import comb

from omtop import bounded_face_census, generate_arrangement, verify_arrangement

GRID = [(n, 1) for n in (2, 4, 6)] + [(n, 2) for n in (3, 4, 5, 6)] + [
    (4, 3), (5, 3)
]

print(f"{'n':>3} {'d':>3} {'covectors':>10} {'f-vector':>14} "
      f"{'census':>14} {'euler':>6}  verdict")
for n, d in GRID:
    A = generate_arrangement(n, d, seed=1)
    rep = verify_arrangement(A, source=f"seed 1, n={n}, d={d}")
    f = tuple(rep.stages["bounded"]["f_vector"])
    census = bounded_face_census(A)
    euler = sum((-1) ** k * fk for k, fk in enumerate(f))
    print(f"{n:>3} {d:>3} {rep.instance['covectors']:>10} "
          f"{str(f):>14} {str(tuple(census)):>14} {euler:>6}  {rep.verdict}")
    assert tuple(census) == f
    assert euler == 1
    if d == 2:
        assert f[2] == comb(n - 1, 2)

print("\nevery row: census == f-vector, euler == 1, and for d=2 the")
print("top count is C(n-1, 2) -- the classical bounded-region formula.")
