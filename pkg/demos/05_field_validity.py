#!/usr/bin/env python3
"""Where in magnetic field the spin-temperature rate picture holds.

Three bounds matter.  From below: the Zeeman reservoir must dominate
the spin-spin and quadrupolar local fields, and neighboring nuclei must
still flip-flop despite their different quadrupolar shifts (a radius-
dependent threshold, steep as 1/r^5).  From above: all fluctuations
must stay motionally narrowed.  The window is wide -- roughly 0.1 T to
10 T for GaAs nuclei half a Bohr radius from the donor.
"""

from donor_halo import (Geometry, build_report, get_material, render_report,
                        state_for_occupancy)
from donor_halo.validity import field_threshold, spin_temperature_eta

gaas = get_material("GaAs:As75")
state = state_for_occupancy(0.5, gaas)

eta = spin_temperature_eta(gaas)
print(f"spin-temperature prefactor eta = {eta * 1e9:.2f} nm T^(1/5)")
for r in (0.3, 0.5, 1.0, 2.0):
    b_min = field_threshold(r * gaas.bohr_radius, eta)
    print(f"  at r = {r:.1f} a0*: need B > {b_min * 1e3:.2f} mT for a common "
          "spin temperature")

print()
for b_field in (2e-4, 0.05, 1.0, 30.0):
    print(render_report(build_report(b_field, 0.5, state, Geometry(), gaas), gaas))
