# %% [markdown]
# # AC bridge and difference amplifier
#
# The LC tanks are chosen so that the bridge nulls at the 2 pF pickup
# baseline; the error then grows monotonically with pressure.

# %%
import numpy as np

from diaphragm_cell import bridge as br

net = br.BridgeNetwork()
print(f"null at {br.balance_capacitance(net) * 1e12:.3f} pF, f = {net.excitation_frequency:g} Hz")

# %%
for c_pf in np.arange(1.0, 16.0, 1.0):
    e = br.error_signal(net, c_pf * 1e-12)
    print(f"{c_pf:5.1f} pF  |e| = {e.amplitude:.4f} V  phase = {e.phase:+.3f}")

# %% Identical arms null at C_t = C_2 instead, which folds the 2-15 pF response
same = br.BridgeNetwork(c4=net.c3)
print(f"identical arms null at {br.balance_capacitance(same) * 1e12:.1f} pF")

# %% Amplifier
out = br.amplified_output(net.with_gain(10), br.PhasorSignal(0.05, 0.2))
print(out)
