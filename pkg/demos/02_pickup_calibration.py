# %% [markdown]
# # Calibrating the concentric-cylinder pickup
#
# The plate count and gaps of the capacitor array are unknown, so the pickup
# is a line through two anchors: 2 pF at rest and 15 pF at the 10 Pa drift.

# %%
from dataclasses import replace

from diaphragm_cell import mechanics as mech
from diaphragm_cell import pickup as pk

cell = mech.CellSpec()
fd = mech.assembly_drift(cell, 10.0).effective_pickup_displacement
plates = pk.calibrate(pk.PlateArray(), [(0.0, 2e-12), (fd, 15e-12)])
print(f"slope {plates.slope * 1e-2 / 1e-12:.3f} pF/cm, baseline {plates.baseline_capacitance * 1e12:.2f} pF")

# %% Out-of-sample: the plain structures at 10 Pa
for s in mech.Structure:
    d = mech.assembly_drift(replace(cell, structure=s), 10.0).effective_pickup_displacement
    print(f"{s.value:>10s}: {pk.array_capacitance(plates, d).capacitance * 1e12:6.2f} pF")

# %% First-principles coaxial estimate for comparison
geo = pk.PlateArray.from_geometry()
print(f"coaxial slope for {geo.plate_pair_count} plate pairs: {geo.slope * 1e-2 / 1e-12:.1f} pF/cm")

# %% Saturation once the plates are fully engaged
for x_cm in (1.0, 1.2, 1.4):
    r = pk.array_capacitance(plates, x_cm * 1e-2)
    print(x_cm, f"{r.capacitance * 1e12:.2f} pF", "saturated" if r.saturated else "")
