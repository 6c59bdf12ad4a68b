#!/usr/bin/env python3
"""Radial profile of the steady nuclear polarization around one donor.

Close to the donor the trapped electron screens almost none of the
Coulomb field, so trapping/recombination barely modulates it and the
nuclei stay fully polarized by the hyperfine channel.  Further out the
modulated quadrupolar coupling takes over and the polarization
collapses.  The collapse happens sooner along the magnetic field
(smaller angular denominator) than perpendicular to it.

Writes profile.csv and profile.svg next to this script.
"""

from pathlib import Path

import numpy as np

from donor_halo import (half_polarization_radius, profile, quadrupolar_radius,
                        screening_fraction)
from donor_halo.svgplot import line_chart

F0 = 1e-2     # hyperfine/quadrupolar amplitude at half occupancy, GaAs-like

grid = np.linspace(0.05, 1.5, 160)
prof = profile(F0, grid)

print(f"competition amplitude f0 = {F0:g}")
print(f"half-polarization radius along the field     : "
      f"{half_polarization_radius(0.0, F0):.3f} a0*")
print(f"half-polarization radius perpendicular to it : "
      f"{half_polarization_radius(np.pi / 2, F0):.3f} a0*")
rho_q = quadrupolar_radius(F0)
print(f"sphere-averaged (quadrupolar) radius         : {rho_q:.3f} a0*")
print(f"enclosed-charge fraction there, s(rho_q)     : "
      f"{screening_fraction(rho_q):.4f}")
print("\nOnly about 3% of the electron orbital overlaps the polarized core:")
print("the nuclear field on the electron drops by the same factor.")

out = Path(__file__).resolve().parent
rows = ["r,p_parallel,p_perpendicular,p_avg"] + [
    f"{r:.6g},{a:.6g},{b:.6g},{c:.6g}"
    for r, a, b, c in zip(grid, prof.p_parallel, prof.p_perpendicular, prof.p_avg)
]
(out / "profile.csv").write_text("\n".join(rows) + "\n")
(out / "profile.svg").write_text(line_chart(
    [(grid, prof.p_parallel, "parallel"),
     (grid, prof.p_perpendicular, "perpendicular"),
     (grid, prof.p_avg, "sphere average")],
    xlabel="distance from donor (a0* units)",
    ylabel="normalized polarization",
    title=f"polarization profile, f0 = {F0:g}"))
print(f"\nwrote {out / 'profile.csv'} and {out / 'profile.svg'}")
