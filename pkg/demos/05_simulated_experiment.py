# %% [markdown]
# # Simulated experiment: applied vs measured pressure

# %%
import numpy as np

from diaphragm_cell.rig import Rig, RunConfig, WaveformSpec

rig = Rig(RunConfig())
res = rig.run_experiment(WaveformSpec("sine", amplitude=4.0, offset=5.0, period=20.0,
                                      duration=40.0, sample_interval=0.5))
print(res.summary)

# %%
rec = np.array([[r.time, r.applied_pressure, r.capacitance * 1e12, r.adc_code,
                 r.measured_pressure] for r in res.records])
print(rec[:10])

# %% Figure datasets
paths = rig.emit_figure_datasets("figures")
print({k: str(v) for k, v in paths.items()})

# %% The same chain with the raw shell equations
formula = Rig(RunConfig(drift_mode="formula"))
print(f"formula-mode gain needed: {formula.bridge.gain:.3g}")
