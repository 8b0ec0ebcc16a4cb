# coding: utf-8

# # Reconstructing a state from Wigner samples
#
# Four phase points per qubit whose kernel axes form a tetrahedron give an
# informationally complete set of 4^n settings. Linear inversion then
# recovers rho.

# In[1]:

import numpy as np

from spinwigner import Kind, states, tomography, wigner

pts = tomography.tetrahedral_points(2)
a = tomography.design_matrix(pts, Kind.TENSOR)
print("settings", len(pts), "rank", np.linalg.matrix_rank(a), "condition", np.linalg.cond(a).round(2))

# In[2]:

# noiseless round trip with both kernels
rho = states.density(states.bell("phi-"))
for kind in (Kind.SU2N, Kind.TENSOR):
    res = tomography.reconstruct_density((pts, wigner.wigner_many(rho, pts, kind)), kind)
    print(kind.value, "Frobenius error", tomography.frobenius_distance(res.rho_hat, rho))

# In[3]:

# from simulated counts, with increasing shot budgets
for shots in [10**2, 10**3, 10**4, 10**5]:
    records = tomography.simulate_records(rho, pts, shots, seed=0)
    res = tomography.reconstruct_density(records, Kind.TENSOR, project=True)
    print(f"{shots:>6} shots: fidelity {tomography.fidelity(res.rho_hat, rho):.5f}")

# In[4]:

# readout error biases the estimate; the confusion-matrix correction removes most of it
noise = tomography.NoiseModel(readout_flip=0.046)
records = tomography.simulate_records(rho, pts, 10**5, noise=noise, seed=0)
raw = tomography.reconstruct_density(records, Kind.TENSOR, project=True)
fixed = tomography.reconstruct_density(records, Kind.TENSOR, project=True, readout_flip=0.046)
print("raw", round(tomography.fidelity(raw.rho_hat, rho), 4), "corrected", round(tomography.fidelity(fixed.rho_hat, rho), 4))
