# coding: utf-8

# # Two-qubit Wigner slices
#
# Bell states evaluated with both extended-parity kernels. The equal-angle
# slice puts every qubit at the same Euler angles; the theta-theta slice
# fixes phi = 0 on both qubits and sweeps the two polar angles.

# In[1]:

import numpy as np

from spinwigner import Kind, states, wigner

thetas = np.linspace(0, np.pi / 2, 9)
phis = np.pi * np.arange(8) / 8

# In[2]:

# Phi- under the SU(4) kernel, equal-angle slice
grid = wigner.equal_angle_slice(states.bell("phi-"), Kind.SU2N, thetas, phis)
print(np.round(grid.values, 3))

# The pole value is (1 + sqrt5) / 4 because <ZZ> = 1 for Phi-.

# In[3]:

print(grid.values[0, 0], (1 + np.sqrt(5)) / 4)

# In[4]:

# theta-theta slice of Psi+ for both kernels
t = np.pi * np.arange(16) / 16
for kind in (Kind.SU2N, Kind.TENSOR):
    g = wigner.theta_theta_slice(states.bell("psi+"), kind, t, t)
    print(kind.value, "min", g.values.min().round(4), "max", g.values.max().round(4))

# The tensor kernel spreads further: its correlation coefficient is 3
# rather than sqrt5, so the same structure has a larger range.

# In[5]:

# single-qubit marginals of a Bell state are flat at 1/2
f = wigner.marginal_slice(states.bell("psi+"), keep=0)
print([round(f(th, ph), 12) for th, ph in [(0, 0), (0.5, 1.0), (1.2, 2.5)]])
