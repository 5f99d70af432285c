# %% [markdown]
# # Building and using the 4K linearization table

# %%
import numpy as np

from diaphragm_cell import digitizer as dg
from diaphragm_cell.rig import Rig

rig = Rig()
table = rig.table
print(f"gain {rig.bridge.gain:.4f}, {table.pressure_scale * 1e3:.4f} mPa per code")

# %% Raw ADC codes are compressed at the top by the bridge
for p in (0.0, 2.5, 5.0, 7.5, 10.0):
    print(f"{p:5.2f} Pa -> analog code {rig.analog_code(p):8.2f}")

# %% Table entries at a few ADC codes
idx = np.array([0, 512, 1024, 2048, 3072, 4095])
print(np.column_stack([idx, table.entries[idx], table.to_pressure(table.entries[idx])]))

# %% BCD display latch
state = dg.DisplayState()
for t, code in [(0.4, 100), (1.0, 200), (1.5, 300), (3.2, 4095)]:
    state = dg.display_tick(state, t, code)
    print(t, state.bcd_digits, state.last_latched)

# %% Export for an EPROM programmer
# dg.export_table(table, "lut.bin")
